#include "elab/solver/flex_rigid.hpp"

#include <algorithm>

#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"
#include "elab/kernel/type_checker.hpp"

namespace elab {

bool obviously_convertible(environment const & env, expr const & a, expr const & b, transparency mode) {
    if (a == b)
        return true;
    if (!a.has_any_meta() && !b.has_any_meta())
        return is_def_eq(env, a, b, mode);
    return whnf(env, a, mode) == whnf(env, b, mode);
}

namespace {

struct flex_problem {
    expr                m_meta;  // ?m
    std::vector<expr>   m_args;  // s1 ... sp
    expr                m_rigid; // t
    std::vector<expr>   m_xs;    // binders of ?m's type
};

std::optional<flex_problem> open_problem(environment const & env, eq_constraint const & c, substitution const & s) {
    bool left = is_meta_app(c.m_lhs);
    flex_problem p;
    expr const & flex = left ? c.m_lhs : c.m_rhs;
    p.m_meta = get_app_fn(flex);
    p.m_args = get_app_args(flex);
    p.m_rigid = left ? c.m_rhs : c.m_lhs;
    expr type = s.instantiate(p.m_meta.local_type());
    for (std::size_t i = 0; i < p.m_args.size(); ++i) {
        if (!type.is_pi())
            type = whnf(env, type);
        if (!type.is_pi())
            return std::nullopt;
        name n = type.binder_name().is_anonymous() ? name("x") : type.binder_name();
        p.m_xs.push_back(mk_local(n, type.binder_domain(), type.info()));
        type = instantiate(type.binder_body(), p.m_xs.back());
    }
    return p;
}

/// λ xs, h (?m1 xs) ... (?mk xs) with the ?mi typed along h's type.
expr mk_binding(environment const & env, std::vector<expr> const & xs, expr const & h, expr htype, unsigned k) {
    local_context ctx(xs);
    std::vector<expr> args;
    for (unsigned i = 0; i < k; ++i) {
        if (htype && !htype.is_pi())
            htype = whnf(env, htype);
        expr a;
        if (htype && htype.is_pi()) {
            a = ctx.mk_meta(htype.binder_domain());
            htype = instantiate(htype.binder_body(), a);
        } else {
            a = ctx.mk_meta_unknown_type();
            htype = expr();
        }
        args.push_back(a);
    }
    return abstract_lambda(xs, mk_app(h, args));
}

unsigned pi_arity(environment const & env, expr type) {
    unsigned k = 0;
    while (true) {
        if (!type.is_pi())
            type = whnf(env, type);
        if (!type.is_pi())
            return k;
        ++k;
        type = instantiate(type.binder_body(), mk_local(type.binder_name(), type.binder_domain()));
    }
}

/// λ xs, imitation of t's head, or nullopt when the head cannot be imitated.
std::optional<expr> imitate(environment const & env, std::vector<expr> const & xs, expr const & t) {
    if (t.is_sort())
        return abstract_lambda(xs, t);
    if (t.is_pi()) {
        local_context ctx(xs);
        expr dom = ctx.mk_type_meta();
        expr y = mk_local(t.binder_name(), dom, t.info());
        local_context inner = ctx;
        inner.push_existing(y);
        expr cod = inner.mk_type_meta();
        return abstract_lambda(xs, abstract_pi(std::vector<expr>{y}, cod));
    }
    expr const & f = get_app_fn(t);
    if (!f.is_constant() || recursor_of(env, t))
        return std::nullopt;
    auto info = env.find(f.const_name());
    if (!info)
        return std::nullopt;
    expr ftype = instantiate_level_params(info->m_type, info->m_univ_params, f.const_levels());
    return mk_binding(env, xs, f, ftype, get_app_num_args(t));
}

/// ?m occurs in t below heads that never reduce away.
bool occurs_rigidly(environment const & env, meta_id m, expr const & t) {
    switch (t.kind()) {
    case expr_kind::meta: return t.meta() == m;
    case expr_kind::pi: return occurs_rigidly(env, m, t.binder_domain()) || occurs_rigidly(env, m, t.binder_body());
    case expr_kind::lambda: return occurs_rigidly(env, m, t.binder_body());
    case expr_kind::app: {
        expr const & h = get_app_fn(t);
        if (h.is_meta())
            return h.meta() == m;
        if (h.is_constant()) {
            auto info = env.find(h.const_name());
            if (!info || info->is_definition() || recursor_of(env, t))
                return false;
        } else if (!h.is_fvar()) {
            return false;
        }
        for (auto const & a : get_app_args(t))
            if (occurs_rigidly(env, m, a))
                return true;
        return false;
    }
    default: return false;
    }
}

}  // namespace

alt_stream flex_rigid_alternatives(environment const & env, eq_constraint const & c, constraint_category cat,
                                   substitution const & s) {
    auto opened = open_problem(env, c, s);
    if (!opened)
        return alt_stream();
    flex_problem p = std::move(*opened);
    // with local arguments every instance of the flex side is smaller than the rigid side
    bool local_args = std::all_of(p.m_args.begin(), p.m_args.end(), [](expr const & a) { return a.is_fvar(); });
    if (local_args && occurs_rigidly(env, p.m_meta.meta(), p.m_rigid))
        return alt_stream();
    std::vector<std::function<std::vector<constraint>()>> thunks;
    auto push = [&](std::function<expr()> value) {
        thunks.push_back([c, m = p.m_meta, value = std::move(value)]() -> std::vector<constraint> {
            return {mk_eq(m, value(), c.m_j, c.m_mode), constraint(c)};
        });
    };
    expr const & t = p.m_rigid;
    expr const & f = get_app_fn(t);
    bool reducible_head = false;
    if (f.is_constant())
        if (auto info = env.find(f.const_name()))
            reducible_head = info->is_definition() && info->hint() == reducibility::reducible;

    // projections
    for (std::size_t i = 0; i < p.m_args.size(); ++i) {
        expr const & si = p.m_args[i];
        expr xi = p.m_xs[i];
        bool candidate = false;
        bool direct = false;
        if (si.is_fvar()) {
            if (f.is_fvar())
                candidate = si == f;
            else if (f.is_constant() && !recursor_of(env, t))
                candidate = reducible_head;
            else
                candidate = true;
        } else if (cat == constraint_category::flex_rigid || cat == constraint_category::recursor) {
            if (obviously_convertible(env, si, t, c.m_mode))
                candidate = direct = true;
            else
                candidate = is_meta_app(si) || is_stuck(env, si, c.m_mode).has_value();
        }
        if (!candidate)
            continue;
        std::vector<expr> xs = p.m_xs;
        if (direct) {
            push([xs, xi] { return abstract_lambda(xs, xi); });
        } else {
            push([&env, xs, xi] { return mk_binding(env, xs, xi, xi.local_type(), pi_arity(env, xi.local_type())); });
        }
    }

    // imitation after whnf for reducible heads, then plain imitation
    std::vector<expr> xs = p.m_xs;
    auto imitable = [&](expr const & e) {
        expr const & h = get_app_fn(e);
        return e.is_sort() || e.is_pi() || (h.is_constant() && !recursor_of(env, e) && env.contains(h.const_name()));
    };
    if (reducible_head) {
        expr w = whnf(env, t, c.m_mode);
        if (!(w == t) && imitable(w))
            push([&env, xs, w] { return *imitate(env, xs, w); });
    }
    if (imitable(t))
        push([&env, xs, t] { return *imitate(env, xs, t); });
    return mk_lazy_stream(std::move(thunks));
}

}  // namespace elab
