#include "elab/kernel/reduce.hpp"

#include <algorithm>

#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"

namespace elab {

bool can_unfold(constant_info const & c, transparency t) {
    if (!c.is_definition())
        return false;
    switch (t) {
    case transparency::all: return true;
    case transparency::default_: return c.hint() != reducibility::irreducible;
    case transparency::reducible_only: return c.hint() == reducibility::reducible;
    }
    return false;
}

std::optional<expr> unfold(environment const & env, expr const & t) {
    expr const & f = get_app_fn(t);
    if (!f.is_constant())
        return std::nullopt;
    auto c = env.find(f.const_name());
    if (!c || !c->is_definition())
        return std::nullopt;
    if (f.const_levels().size() != c->m_univ_params.size())
        return std::nullopt;
    expr v = instantiate_level_params(c->definition().m_value, c->m_univ_params, f.const_levels());
    std::vector<expr> args = get_app_args(t);
    return beta_apply(v, args);
}

std::optional<expr> unfold(environment const & env, expr const & t, transparency mode) {
    expr const & f = get_app_fn(t);
    if (!f.is_constant())
        return std::nullopt;
    auto c = env.find(f.const_name());
    if (!c || !can_unfold(*c, mode))
        return std::nullopt;
    return unfold(env, t);
}

recursor_val const * recursor_of(environment const & env, expr const & t) {
    expr const & f = get_app_fn(t);
    if (!f.is_constant())
        return nullptr;
    auto c = env.find(f.const_name());
    if (!c || !c->is_recursor())
        return nullptr;
    return &c->recursor();
}

namespace {

// One ι step, or nullopt.
std::optional<expr> iota_step(environment const & env, expr const & t, transparency mode) {
    expr const & f = get_app_fn(t);
    auto c = env.find(f.const_name());
    if (!c || !c->is_recursor())
        return std::nullopt;
    recursor_val const & rec = c->recursor();
    std::vector<expr> args = get_app_args(t);
    unsigned major_idx = rec.major_idx();
    if (args.size() <= major_idx)
        return std::nullopt;
    expr major = whnf(env, args[major_idx], mode);
    expr const & ctor = get_app_fn(major);
    if (!ctor.is_constant())
        return std::nullopt;
    auto rule = std::find_if(rec.m_rules.begin(), rec.m_rules.end(),
                             [&](recursor_rule const & r) { return r.m_constructor == ctor.const_name(); });
    if (rule == rec.m_rules.end())
        return std::nullopt;
    std::vector<expr> ctor_args = get_app_args(major);
    if (ctor_args.size() != rec.m_num_params + rule->m_num_fields)
        return std::nullopt;
    if (f.const_levels().size() != c->m_univ_params.size())
        return std::nullopt;
    expr rhs = instantiate_level_params(rule->m_rhs, c->m_univ_params, f.const_levels());
    std::vector<expr> rargs(args.begin(), args.begin() + rec.m_num_params + 1 + rec.m_num_minors);
    rargs.insert(rargs.end(), ctor_args.begin() + rec.m_num_params, ctor_args.end());
    rargs.insert(rargs.end(), args.begin() + major_idx + 1, args.end());
    return beta_apply(rhs, rargs);
}

}  // namespace

expr reduce_beta_iota(environment const & env, expr const & t, transparency mode) {
    expr r = t;
    while (true) {
        if (is_head_beta(r)) {
            r = head_beta(r);
            continue;
        }
        if (r.is_app() && get_app_fn(r).is_constant()) {
            if (auto n = iota_step(env, r, mode)) {
                r = *n;
                continue;
            }
        }
        return r;
    }
}

expr whnf(environment const & env, expr const & t, transparency mode) {
    expr r = t;
    while (true) {
        r = reduce_beta_iota(env, r, mode);
        if (auto u = unfold(env, r, mode)) {
            r = *u;
            continue;
        }
        return r;
    }
}

expr normalize(environment const & env, expr const & t) {
    expr w = whnf(env, t, transparency::all);
    switch (w.kind()) {
    case expr_kind::app: {
        std::vector<expr> args = get_app_args(w);
        for (auto & a : args)
            a = normalize(env, a);
        return mk_app(get_app_fn(w), args);
    }
    case expr_kind::lambda:
    case expr_kind::pi: {
        expr dom = normalize(env, w.binder_domain());
        expr l = mk_local(w.binder_name(), dom, w.info());
        expr body = normalize(env, instantiate(w.binder_body(), l));
        return mk_binder(w.kind(), w.binder_name(), dom, abstract(body, l.fvar()), w.info());
    }
    default: return w;
    }
}

std::optional<stuck_reason> is_stuck(environment const & env, expr const & t, transparency mode) {
    expr const & f = get_app_fn(t);
    if (f.is_meta())
        return stuck_reason{t, stuck_kind::application};
    if (recursor_val const * rec = recursor_of(env, t)) {
        std::vector<expr> args = get_app_args(t);
        if (args.size() <= rec->major_idx())
            return std::nullopt;
        expr major = whnf(env, args[rec->major_idx()], mode);
        if (auto r = is_stuck(env, major, mode))
            return stuck_reason{r->m_term, stuck_kind::recursor};
    }
    return std::nullopt;
}

unsigned depth(environment const & env, name const & f) {
    auto c = env.find(f);
    return c ? c->depth() : 0;
}

unsigned compute_depth(environment const & env, expr const & value) {
    unsigned d = 0;
    for_each(value, [&](expr const & x, unsigned) {
        if (x.is_constant())
            d = std::max(d, depth(env, x.const_name()));
        return true;
    });
    return d + 1;
}

}  // namespace elab
