#include "elab/kernel/type_checker.hpp"

#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"

namespace elab {

level pi_level(level const & dom, level const & cod) {
    level c = normalize(cod);
    if (c.is_zero())
        return c;
    return normalize(mk_max(dom, c));
}

expr type_checker::infer(expr const & e) {
    switch (e.kind()) {
    case expr_kind::bvar: throw kernel_exception("unexpected bound variable");
    case expr_kind::fvar:
    case expr_kind::meta:
        if (!e.local_type())
            throw kernel_exception("variable without type");
        return e.local_type();
    case expr_kind::constant: {
        constant_info const & c = m_env.get(e.const_name());
        if (c.m_univ_params.size() != e.const_levels().size())
            throw kernel_exception("wrong number of universe levels for '" + e.const_name().str() + "'");
        return instantiate_level_params(c.m_type, c.m_univ_params, e.const_levels());
    }
    case expr_kind::sort: return mk_sort(mk_succ(e.sort_level()));
    case expr_kind::app: return infer_app(e);
    case expr_kind::lambda: return infer_lambda(e);
    case expr_kind::pi: return infer_pi(e);
    }
    throw kernel_exception("unreachable");
}

expr type_checker::infer_app(expr const & e) {
    std::vector<expr> args = get_app_args(e);
    expr ft = infer(get_app_fn(e));
    for (auto const & a : args) {
        if (!ft.is_pi())
            ft = ensure_pi(ft);
        if (m_check) {
            expr at = infer(a);
            if (!is_def_eq(at, ft.binder_domain()))
                throw kernel_exception("application type mismatch");
        }
        ft = instantiate(ft.binder_body(), a);
    }
    return ft;
}

expr type_checker::infer_lambda(expr const & e) {
    std::vector<expr> locals;
    expr b = e;
    while (b.is_lambda()) {
        expr dom = instantiate_rev(b.binder_domain(), locals);
        if (m_check)
            ensure_sort(infer(dom));
        locals.push_back(mk_local(b.binder_name(), dom, b.info()));
        b = b.binder_body();
    }
    expr body_type = infer(instantiate_rev(b, locals));
    return abstract_pi(locals, body_type);
}

expr type_checker::infer_pi(expr const & e) {
    std::vector<expr> locals;
    std::vector<level> levels;
    expr b = e;
    while (b.is_pi()) {
        expr dom = instantiate_rev(b.binder_domain(), locals);
        levels.push_back(ensure_sort(infer(dom)));
        locals.push_back(mk_local(b.binder_name(), dom, b.info()));
        b = b.binder_body();
    }
    level r = ensure_sort(infer(instantiate_rev(b, locals)));
    for (std::size_t i = levels.size(); i-- > 0;)
        r = pi_level(levels[i], r);
    return mk_sort(r);
}

level type_checker::ensure_sort(expr const & type) {
    if (type.is_sort())
        return type.sort_level();
    expr t = whnf(type);
    if (t.is_sort())
        return t.sort_level();
    if (m_out && is_stuck(m_env, t, m_mode)) {
        level u = mk_fresh_level_meta();
        m_out->push_back({type, mk_sort(u)});
        return u;
    }
    throw kernel_exception("type expected");
}

expr type_checker::ensure_pi(expr const & type) {
    if (type.is_pi())
        return type;
    expr t = whnf(type);
    if (t.is_pi())
        return t;
    if (m_out) {
        if (auto reason = is_stuck(m_env, t, m_mode)) {
            expr const & m = get_app_fn(reason->m_term);
            std::vector<expr> sargs = get_app_args(reason->m_term);
            // telescope of ?m's type over its arguments
            std::vector<expr> locals;
            expr mt = m.local_type();
            for (std::size_t i = 0; i < sargs.size(); ++i) {
                if (!mt.is_pi())
                    mt = whnf(mt);
                if (!mt.is_pi())
                    throw kernel_exception("function expected");
                locals.push_back(mk_local(mt.binder_name(), mt.binder_domain(), mt.info()));
                mt = instantiate(mt.binder_body(), locals.back());
            }
            expr m1 = mk_meta(fresh_id<meta_id>(), abstract_pi(locals, mk_sort(mk_fresh_level_meta())));
            expr y = mk_local("y", mk_app(m1, locals));
            std::vector<expr> locals_y = locals;
            locals_y.push_back(y);
            expr m2 = mk_meta(fresh_id<meta_id>(), abstract_pi(locals_y, mk_sort(mk_fresh_level_meta())));
            expr r = mk_pi("x", mk_app(m1, sargs), mk_app(mk_app(m2, sargs), mk_bvar(0)));
            m_out->push_back({type, r});
            return r;
        }
    }
    throw kernel_exception("function expected");
}

// conversion

std::optional<bool> type_checker::quick_def_eq(expr const & t, expr const & s) {
    if (t == s)
        return true;
    if (t.is_sort() && s.is_sort())
        return is_equivalent(t.sort_level(), s.sort_level());
    if ((t.is_lambda() && s.is_lambda()) || (t.is_pi() && s.is_pi()))
        return def_eq_binders(t, s);
    return std::nullopt;
}

bool type_checker::def_eq_binders(expr t, expr s) {
    std::vector<expr> locals;
    while (t.kind() == s.kind() && t.is_binder()) {
        expr dt = instantiate_rev(t.binder_domain(), locals);
        expr ds = instantiate_rev(s.binder_domain(), locals);
        if (!is_def_eq(dt, ds))
            return false;
        locals.push_back(mk_local(t.binder_name(), dt, t.info()));
        t = t.binder_body();
        s = s.binder_body();
    }
    return is_def_eq(instantiate_rev(t, locals), instantiate_rev(s, locals));
}

bool type_checker::def_eq_args(expr const & t, expr const & s) {
    expr const * x = &t;
    expr const * y = &s;
    while (x->is_app() && y->is_app()) {
        if (!is_def_eq(x->app_arg(), y->app_arg()))
            return false;
        x = &x->app_fn();
        y = &y->app_fn();
    }
    return !x->is_app() && !y->is_app();
}

namespace {

bool levels_equiv(std::vector<level> const & a, std::vector<level> const & b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_equivalent(a[i], b[i]))
            return false;
    return true;
}

}  // namespace

// Unfolds the side with the larger definition depth until both heads are
// stuck. Returns true when the two sides were found equal along the way.
bool type_checker::lazy_delta(expr & t, expr & s) {
    while (true) {
        expr const & ft = get_app_fn(t);
        expr const & fs = get_app_fn(s);
        constant_info_ptr ct = ft.is_constant() ? m_env.find(ft.const_name()) : nullptr;
        constant_info_ptr cs = fs.is_constant() ? m_env.find(fs.const_name()) : nullptr;
        bool ut = ct && can_unfold(*ct, m_mode);
        bool us = cs && can_unfold(*cs, m_mode);
        if (!ut && !us)
            return false;
        if (ut && us && ft.const_name() == fs.const_name()) {
            if (levels_equiv(ft.const_levels(), fs.const_levels()) && def_eq_args(t, s))
                return true;
            t = *unfold(m_env, t);
            s = *unfold(m_env, s);
        } else if (ut && us) {
            unsigned dt = ct->depth(), ds = cs->depth();
            if (dt >= ds)
                t = *unfold(m_env, t);
            if (ds >= dt)
                s = *unfold(m_env, s);
        } else if (ut) {
            t = *unfold(m_env, t);
        } else {
            s = *unfold(m_env, s);
        }
        t = reduce_beta_iota(m_env, t, m_mode);
        s = reduce_beta_iota(m_env, s, m_mode);
        if (t == s)
            return true;
    }
}

bool type_checker::try_eta(expr const & t, expr const & s) {
    // λ x : A, body  ≡  s  when body ≡ s x
    if (t.is_lambda() && !s.is_lambda()) {
        expr l = mk_local(t.binder_name(), t.binder_domain(), t.info());
        return is_def_eq(instantiate(t.binder_body(), l), mk_app(s, l));
    }
    return false;
}

bool type_checker::is_def_eq(expr const & t, expr const & s) {
    if (auto r = quick_def_eq(t, s))
        return *r;
    return def_eq_core(t, s);
}

bool type_checker::def_eq_core(expr const & t0, expr const & s0) {
    expr t = reduce_beta_iota(m_env, t0, m_mode);
    expr s = reduce_beta_iota(m_env, s0, m_mode);
    if (!t.is_same(t0) || !s.is_same(s0))
        if (auto r = quick_def_eq(t, s))
            return *r;
    if (lazy_delta(t, s))
        return true;
    if (auto r = quick_def_eq(t, s))
        return *r;
    expr const & ft = get_app_fn(t);
    expr const & fs = get_app_fn(s);
    if (ft.kind() == fs.kind() && get_app_num_args(t) == get_app_num_args(s)) {
        bool heads = false;
        switch (ft.kind()) {
        case expr_kind::constant:
            heads = ft.const_name() == fs.const_name() && levels_equiv(ft.const_levels(), fs.const_levels());
            break;
        case expr_kind::fvar: heads = ft.fvar() == fs.fvar(); break;
        case expr_kind::meta: heads = ft.meta() == fs.meta(); break;
        default: heads = false; break;
        }
        if (heads && def_eq_args(t, s))
            return true;
    }
    return try_eta(t, s) || try_eta(s, t);
}

typeof_result typeof(environment const & env, expr const & e) {
    typeof_result r;
    type_checker tc(env, transparency::default_, false, &r.m_constraints);
    r.m_type = tc.infer(e);
    return r;
}

typeof_result ensurefun(environment const & env, expr const & s) {
    typeof_result r;
    type_checker tc(env, transparency::default_, false, &r.m_constraints);
    r.m_type = tc.ensure_pi(tc.infer(s));
    return r;
}

bool is_def_eq(environment const & env, expr const & t, expr const & s, transparency mode) {
    type_checker tc(env, mode);
    return tc.is_def_eq(t, s);
}

expr check(environment const & env, expr const & e) {
    type_checker tc(env, transparency::all, true);
    return tc.infer(e);
}

}  // namespace elab
