#include "elab/kernel/expr_ops.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace elab {

traversal_stats & stats() {
    thread_local traversal_stats s;
    return s;
}

namespace {

expr instantiate_core(expr const & e, unsigned off, std::span<expr const> subst) {
    ++stats().visits;
    if (e.bound() <= off)
        return e;
    unsigned n = static_cast<unsigned>(subst.size());
    switch (e.kind()) {
    case expr_kind::bvar: {
        unsigned i = e.bvar_idx();
        if (i < off)
            return e;
        if (i - off < n)
            return lift_loose(subst[n - 1 - (i - off)], 0, off);
        return mk_bvar(i - n);
    }
    case expr_kind::app:
        return update_app(e, instantiate_core(e.app_fn(), off, subst), instantiate_core(e.app_arg(), off, subst));
    case expr_kind::lambda:
    case expr_kind::pi:
        return update_binder(e, instantiate_core(e.binder_domain(), off, subst),
                             instantiate_core(e.binder_body(), off + 1, subst));
    default: return e;
    }
}

expr abstract_core(expr const & e, unsigned off, std::span<expr const> locals) {
    ++stats().visits;
    if (!e.has_fvar() && e.bound() <= off)
        return e;
    unsigned n = static_cast<unsigned>(locals.size());
    switch (e.kind()) {
    case expr_kind::fvar:
        for (unsigned j = n; j-- > 0;)
            if (locals[j].fvar() == e.fvar())
                return mk_bvar(off + n - 1 - j);
        return e;
    case expr_kind::bvar: return e.bvar_idx() >= off ? mk_bvar(e.bvar_idx() + n) : e;
    case expr_kind::app:
        return update_app(e, abstract_core(e.app_fn(), off, locals), abstract_core(e.app_arg(), off, locals));
    case expr_kind::lambda:
    case expr_kind::pi:
        return update_binder(e, abstract_core(e.binder_domain(), off, locals),
                             abstract_core(e.binder_body(), off + 1, locals));
    default: return e;
    }
}

expr lift_core(expr const & e, unsigned off, unsigned s, unsigned d) {
    if (e.bound() <= s + off)
        return e;
    switch (e.kind()) {
    case expr_kind::bvar: return mk_bvar(e.bvar_idx() + d);
    case expr_kind::app: return update_app(e, lift_core(e.app_fn(), off, s, d), lift_core(e.app_arg(), off, s, d));
    case expr_kind::lambda:
    case expr_kind::pi:
        return update_binder(e, lift_core(e.binder_domain(), off, s, d), lift_core(e.binder_body(), off + 1, s, d));
    default: return e;
    }
}

expr lower_core(expr const & e, unsigned off, unsigned s, unsigned d) {
    if (e.bound() <= s + off)
        return e;
    switch (e.kind()) {
    case expr_kind::bvar: return mk_bvar(e.bvar_idx() - d);
    case expr_kind::app: return update_app(e, lower_core(e.app_fn(), off, s, d), lower_core(e.app_arg(), off, s, d));
    case expr_kind::lambda:
    case expr_kind::pi:
        return update_binder(e, lower_core(e.binder_domain(), off, s, d), lower_core(e.binder_body(), off + 1, s, d));
    default: return e;
    }
}

bool has_loose_core(expr const & e, unsigned i) {
    if (e.bound() <= i)
        return false;
    switch (e.kind()) {
    case expr_kind::bvar: return e.bvar_idx() == i;
    case expr_kind::app: return has_loose_core(e.app_fn(), i) || has_loose_core(e.app_arg(), i);
    case expr_kind::lambda:
    case expr_kind::pi: return has_loose_core(e.binder_domain(), i) || has_loose_core(e.binder_body(), i + 1);
    default: return false;
    }
}

expr replace_core(expr const & e, unsigned off, std::function<std::optional<expr>(expr const &, unsigned)> const & f) {
    if (auto r = f(e, off))
        return *r;
    switch (e.kind()) {
    case expr_kind::app: return update_app(e, replace_core(e.app_fn(), off, f), replace_core(e.app_arg(), off, f));
    case expr_kind::lambda:
    case expr_kind::pi:
        return update_binder(e, replace_core(e.binder_domain(), off, f), replace_core(e.binder_body(), off + 1, f));
    default: return e;
    }
}

void for_each_core(expr const & e, unsigned off, std::function<bool(expr const &, unsigned)> const & f) {
    if (!f(e, off))
        return;
    switch (e.kind()) {
    case expr_kind::app:
        for_each_core(e.app_fn(), off, f);
        for_each_core(e.app_arg(), off, f);
        return;
    case expr_kind::lambda:
    case expr_kind::pi:
        for_each_core(e.binder_domain(), off, f);
        for_each_core(e.binder_body(), off + 1, f);
        return;
    default: return;
    }
}

}  // namespace

expr instantiate(expr const & e, expr const & s) { return instantiate_core(e, 0, std::span<expr const>(&s, 1)); }

expr instantiate_rev(expr const & e, std::span<expr const> subst) {
    if (subst.empty())
        return e;
    return instantiate_core(e, 0, subst);
}

expr abstract(expr const & e, fvar_id l) {
    expr local = mk_fvar(l, name(), expr());
    return abstract_core(e, 0, std::span<expr const>(&local, 1));
}

expr abstract_locals(expr const & e, std::span<expr const> locals) {
    if (locals.empty())
        return e;
    return abstract_core(e, 0, locals);
}

namespace {

expr abstract_binders(expr_kind k, std::span<expr const> locals, expr const & t) {
    expr r = abstract_locals(t, locals);
    for (std::size_t i = locals.size(); i-- > 0;) {
        expr dom = abstract_locals(locals[i].local_type(), locals.first(i));
        r = mk_binder(k, locals[i].local_name(), dom, r, locals[i].info());
    }
    return r;
}

}  // namespace

expr abstract_lambda(std::span<expr const> locals, expr const & t) {
    return abstract_binders(expr_kind::lambda, locals, t);
}

expr abstract_pi(std::span<expr const> locals, expr const & t) { return abstract_binders(expr_kind::pi, locals, t); }

expr lift_loose(expr const & e, unsigned s, unsigned d) {
    if (d == 0)
        return e;
    return lift_core(e, 0, s, d);
}

expr lower_loose(expr const & e, unsigned s, unsigned d) {
    if (d == 0)
        return e;
    return lower_core(e, 0, s, d);
}

bool has_loose_bvar(expr const & e, unsigned i) { return has_loose_core(e, i); }

expr mk_arrow(expr const & domain, expr const & codomain) { return mk_pi("a", domain, lift_loose(codomain, 0, 1)); }

expr replace(expr const & e, std::function<std::optional<expr>(expr const &, unsigned)> const & f) {
    return replace_core(e, 0, f);
}

void for_each(expr const & e, std::function<bool(expr const &, unsigned)> const & f) { for_each_core(e, 0, f); }

expr subst_meta(expr const & e, meta_id m, expr const & s) {
    return replace(e, [&](expr const & x, unsigned off) -> std::optional<expr> {
        ++stats().visits;
        if (!x.has_meta())
            return x;
        if (x.is_meta() && x.meta() == m)
            return lift_loose(s, 0, off);
        return std::nullopt;
    });
}

expr subst_fvar(expr const & e, fvar_id l, expr const & s) {
    return replace(e, [&](expr const & x, unsigned off) -> std::optional<expr> {
        ++stats().visits;
        if (!x.has_fvar())
            return x;
        if (x.is_fvar() && x.fvar() == l)
            return lift_loose(s, 0, off);
        return std::nullopt;
    });
}

expr replace_levels(expr const & e, std::function<level(level const &)> const & f) {
    return replace(e, [&](expr const & x, unsigned) -> std::optional<expr> {
        if (!x.has_level_meta() && !x.has_level_param())
            return x;
        if (x.is_sort())
            return update_sort(x, f(x.sort_level()));
        if (x.is_constant()) {
            std::vector<level> ls;
            ls.reserve(x.const_levels().size());
            for (auto const & l : x.const_levels())
                ls.push_back(f(l));
            return update_constant(x, std::move(ls));
        }
        return std::nullopt;
    });
}

expr instantiate_level_params(expr const & e, std::vector<name> const & params, std::vector<level> const & levels) {
    if (params.empty() || !e.has_level_param())
        return e;
    return replace_levels(e, [&](level const & l) { return instantiate_params(l, params, levels); });
}

bool is_head_beta(expr const & e) { return e.is_app() && get_app_fn(e).is_lambda(); }

expr beta_apply(expr const & f, std::span<expr const> args) {
    expr r = f;
    std::size_t i = 0;
    while (i < args.size() && r.is_lambda()) {
        std::size_t k = 0;
        expr body = r;
        while (i + k < args.size() && body.is_lambda()) {
            body = body.binder_body();
            ++k;
        }
        r = instantiate_rev(body, args.subspan(i, k));
        i += k;
    }
    return mk_app(r, args.subspan(i));
}

expr head_beta(expr const & e) {
    if (!is_head_beta(e))
        return e;
    std::vector<expr> args = get_app_args(e);
    return beta_apply(get_app_fn(e), args);
}

namespace {

class meta_instantiator {
    meta_lookup const &                               m_metas;
    level_lookup const &                              m_levels;
    std::unordered_map<expr_cell const *, expr>       m_cache;

    level inst_level(level const & l) {
        if (!l.has_meta())
            return l;
        return replace_metas(l, [&](level_meta_id id) -> std::optional<level> {
            if (auto v = m_levels(id))
                return inst_level(*v);
            return std::nullopt;
        });
    }

public:
    meta_instantiator(meta_lookup const & m, level_lookup const & l) : m_metas(m), m_levels(l) {}

    expr visit(expr const & e) {
        if (!e.has_any_meta())
            return e;
        // cached results are only valid for closed subterms because
        // beta_apply lifts relative to the binding depth
        bool cacheable = e.bound() == 0;
        if (cacheable) {
            auto it = m_cache.find(e.raw());
            if (it != m_cache.end())
                return it->second;
        }
        expr r = visit_core(e);
        if (cacheable)
            m_cache.emplace(e.raw(), r);
        return r;
    }

    expr visit_core(expr const & e) {
        switch (e.kind()) {
        case expr_kind::sort: return update_sort(e, inst_level(e.sort_level()));
        case expr_kind::constant: {
            std::vector<level> ls;
            for (auto const & l : e.const_levels())
                ls.push_back(inst_level(l));
            return update_constant(e, std::move(ls));
        }
        case expr_kind::meta:
            if (auto v = m_metas(e.meta()))
                return visit(*v);
            return e;
        case expr_kind::app: {
            expr const & f = get_app_fn(e);
            if (f.is_meta()) {
                if (auto v = m_metas(f.meta())) {
                    expr fv = visit(*v);
                    std::vector<expr> args = get_app_args(e);
                    for (auto & a : args)
                        a = visit(a);
                    return head_beta(beta_apply(fv, args));
                }
            }
            return update_app(e, visit(e.app_fn()), visit(e.app_arg()));
        }
        case expr_kind::lambda:
        case expr_kind::pi: return update_binder(e, visit(e.binder_domain()), visit(e.binder_body()));
        default: return e;
        }
    }
};

}  // namespace

expr instantiate_metas(expr const & e, meta_lookup const & metas, level_lookup const & levels) {
    meta_instantiator inst(metas, levels);
    return inst.visit(e);
}

bool occurs_fvar(fvar_id l, expr const & e) {
    bool found = false;
    for_each(e, [&](expr const & x, unsigned) {
        if (found || !x.has_fvar())
            return false;
        if (x.is_fvar() && x.fvar() == l)
            found = true;
        return !found;
    });
    return found;
}

bool occurs_meta(meta_id m, expr const & e) {
    // the types of other metas count as occurrences too
    bool found = false;
    std::unordered_set<std::uint64_t> seen;
    std::vector<expr> todo{e};
    while (!found && !todo.empty()) {
        expr cur = std::move(todo.back());
        todo.pop_back();
        for_each(cur, [&](expr const & x, unsigned) {
            if (found || !x.has_meta())
                return false;
            if (x.is_meta()) {
                if (x.meta() == m)
                    found = true;
                else if (seen.insert(x.meta().value).second)
                    todo.push_back(x.local_type());
            }
            return !found;
        });
    }
    return found;
}

std::vector<expr> collect_metas(expr const & e) {
    std::vector<expr> out;
    std::unordered_set<std::uint64_t> seen;
    for_each(e, [&](expr const & x, unsigned) {
        if (!x.has_meta())
            return false;
        if (x.is_meta() && seen.insert(x.meta().value).second)
            out.push_back(x);
        return true;
    });
    return out;
}

std::vector<level_meta_id> collect_level_metas(expr const & e) {
    std::vector<level_meta_id> out;
    auto add = [&](level const & l) {
        for_each_meta(l, [&](level_meta_id id) {
            if (std::find(out.begin(), out.end(), id) == out.end())
                out.push_back(id);
        });
    };
    for_each(e, [&](expr const & x, unsigned) {
        if (!x.has_level_meta())
            return false;
        if (x.is_sort())
            add(x.sort_level());
        else if (x.is_constant())
            for (auto const & l : x.const_levels())
                add(l);
        return true;
    });
    return out;
}

std::vector<expr> collect_fvars(expr const & e) {
    std::vector<expr> out;
    std::unordered_set<std::uint64_t> seen;
    for_each(e, [&](expr const & x, unsigned) {
        if (!x.has_fvar())
            return false;
        if (x.is_fvar() && seen.insert(x.fvar().value).second)
            out.push_back(x);
        return true;
    });
    return out;
}

}  // namespace elab
