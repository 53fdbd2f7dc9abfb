#include "elab/kernel/printer.hpp"

#include <sstream>

#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"

namespace elab {

namespace {

constexpr int prec_max = 1024;
constexpr int prec_app = 1000;
constexpr int prec_eq = 50;
constexpr int prec_arrow = 25;
constexpr int prec_binder = 0;

std::string paren(std::string const & s, bool p) { return p ? "(" + s + ")" : s; }

}  // namespace

std::string printer::operator()(expr const & e) { return pp(e).text; }

std::string printer::operator()(level const & l) { return pp_level(l, false); }

std::string printer::meta_name(expr const & m) {
    if (!m.local_name().is_anonymous())
        return "?" + m.local_name().str();
    auto [it, fresh] = m_meta_names.emplace(m.meta().value, static_cast<unsigned>(m_meta_names.size() + 1));
    return "?m_" + std::to_string(it->second);
}

std::string printer::pp_level(level const & l, bool nested) {
    if (auto n = to_nat(l))
        return std::to_string(*n);
    switch (l.kind()) {
    case level_kind::param: return l.param_name().str();
    case level_kind::meta: {
        auto [it, fresh] =
            m_level_meta_names.emplace(l.meta_id().value, static_cast<unsigned>(m_level_meta_names.size() + 1));
        return "?u_" + std::to_string(it->second);
    }
    case level_kind::succ: {
        unsigned k = 0;
        level b = l;
        while (b.is_succ()) {
            b = b.succ_of();
            ++k;
        }
        return paren(pp_level(b, true) + "+" + std::to_string(k), nested);
    }
    case level_kind::max:
        return paren("max " + pp_level(l.max_lhs(), true) + " " + pp_level(l.max_rhs(), true), nested);
    default: return "0";
    }
}

std::optional<unsigned> printer::numeral(expr const & e) const {
    unsigned n = 0;
    expr const * x = &e;
    while (true) {
        if (x->is_constant() && x->const_name() == name("nat.zero"))
            return n;
        if (x->is_app() && x->app_fn().is_constant() && x->app_fn().const_name() == name("nat.succ")) {
            ++n;
            x = &x->app_arg();
            continue;
        }
        return std::nullopt;
    }
}

name printer::fresh_binder_name(name const & n, expr const & body) {
    std::string base = n.is_anonymous() ? "x" : n.str();
    std::unordered_set<std::string> taken;
    for_each(body, [&](expr const & x, unsigned) {
        if (x.is_constant())
            taken.insert(x.const_name().str());
        else if (x.is_fvar())
            taken.insert(x.local_name().str());
        return true;
    });
    std::string cand = base;
    for (unsigned i = 1; m_used.count(cand) || taken.count(cand); ++i)
        cand = base + "_" + std::to_string(i);
    return name(cand);
}

bool printer::takes_implicit(expr const & f) const {
    expr ty;
    if (f.is_constant()) {
        if (auto c = m_env->find(f.const_name()))
            ty = c->m_type;
    } else if (f.is_fvar()) {
        ty = f.local_type();
    }
    for (; ty && ty.is_pi(); ty = ty.binder_body())
        if (ty.info() != binder_info::default_)
            return true;
    return false;
}

std::string printer::pp_arg(expr const & e) {
    result r = pp(e);
    return paren(r.text, r.prec < prec_max);
}

printer::result printer::pp(expr const & e) {
    switch (e.kind()) {
    case expr_kind::bvar: return {"#" + std::to_string(e.bvar_idx()), prec_max};
    case expr_kind::fvar: {
        std::string s = e.local_name().is_anonymous() ? std::string("_x") : e.local_name().str();
        return {(m_opts.m_explicit && takes_implicit(e) ? "@" : "") + s, prec_max};
    }
    case expr_kind::meta: return {meta_name(e), prec_max};
    case expr_kind::constant: {
        if (m_opts.m_numerals && e.const_name() == name("nat.zero"))
            return {"0", prec_max};
        std::string s = (m_opts.m_explicit && takes_implicit(e) ? "@" : "") + e.const_name().str();
        if (m_opts.m_explicit && !e.const_levels().empty()) {
            s += ".{";
            for (std::size_t i = 0; i < e.const_levels().size(); ++i)
                s += (i ? " " : "") + pp_level(e.const_levels()[i], true);
            s += "}";
        }
        return {s, prec_max};
    }
    case expr_kind::sort: {
        level l = normalize(e.sort_level());
        if (l.is_zero())
            return {"Prop", prec_max};
        if (l.is_succ()) {
            level p = l.succ_of();
            if (p.is_zero())
                return {"Type", prec_max};
            return {"Type.{" + pp_level(p, false) + "}", prec_max};
        }
        return {"Sort.{" + pp_level(l, false) + "}", prec_max};
    }
    case expr_kind::app: return pp_app(e);
    case expr_kind::lambda:
    case expr_kind::pi: return pp_binder(e);
    }
    return {"?", prec_max};
}

printer::result printer::pp_app(expr const & e) {
    if (m_opts.m_numerals)
        if (auto n = numeral(e))
            return {std::to_string(*n), prec_max};
    expr const & f = get_app_fn(e);
    std::vector<expr> args = get_app_args(e);
    if (!m_opts.m_explicit && f.is_constant() && f.const_name() == name("eq") && args.size() == 3) {
        result l = pp(args[1]);
        result r = pp(args[2]);
        return {paren(l.text, l.prec <= prec_eq) + " = " + paren(r.text, r.prec <= prec_eq), prec_eq};
    }
    // binder infos of the head, to hide implicit arguments
    std::vector<binder_info> infos;
    if (!m_opts.m_explicit) {
        expr ty;
        if (f.is_constant()) {
            if (auto c = m_env->find(f.const_name()))
                ty = c->m_type;
        } else if (f.is_fvar()) {
            ty = f.local_type();
        }
        while (ty && ty.is_pi()) {
            infos.push_back(ty.info());
            ty = ty.binder_body();
        }
    }
    std::string s = pp_arg(f);
    bool shown = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i < infos.size() && infos[i] != binder_info::default_)
            continue;
        s += " " + pp_arg(args[i]);
        shown = true;
    }
    return {s, shown ? prec_app : prec_max};
}

printer::result printer::pp_binder(expr const & e) {
    if (e.is_pi() && e.info() == binder_info::default_ && !has_loose_bvar(e.binder_body(), 0)) {
        result d = pp(e.binder_domain());
        result b = pp(lower_loose(e.binder_body(), 0, 1));
        return {paren(d.text, d.prec <= prec_arrow) + " -> " + paren(b.text, b.prec < prec_arrow), prec_arrow};
    }
    expr_kind k = e.kind();
    std::string s = k == expr_kind::lambda ? "fun" : "Π";
    std::vector<std::string> introduced;
    expr b = e;
    while (b.kind() == k &&
           !(k == expr_kind::pi && b.info() == binder_info::default_ && !has_loose_bvar(b.binder_body(), 0))) {
        std::string dom = pp(b.binder_domain()).text;
        expr body = b.binder_body();
        name n = fresh_binder_name(b.binder_name(), body);
        expr l = mk_local(n, expr(), b.info());
        std::string open = "(", close = ")";
        if (b.info() == binder_info::implicit)
            open = "{", close = "}";
        else if (b.info() == binder_info::inst_implicit)
            open = "[", close = "]";
        s += " " + open + n.str() + " : " + dom + close;
        m_used.insert(n.str());
        introduced.push_back(n.str());
        b = instantiate(body, l);
    }
    s += ", " + pp(b).text;
    for (auto const & n : introduced)
        m_used.erase(n);
    return {s, prec_binder};
}

std::string pp(environment const & env, expr const & e, print_options opts) {
    printer p(env, opts);
    return p(e);
}

}  // namespace elab
