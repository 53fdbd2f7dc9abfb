#include "elab/constraints/simp.hpp"

#include <algorithm>
#include <unordered_set>

#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"
#include "elab/kernel/printer.hpp"
#include "elab/kernel/type_checker.hpp"

namespace elab {

std::string_view to_string(constraint_category c) {
    switch (c) {
    case constraint_category::pattern: return "pattern";
    case constraint_category::ready: return "ready";
    case constraint_category::regular: return "regular";
    case constraint_category::delta: return "delta";
    case constraint_category::quasi_pattern: return "quasiPattern";
    case constraint_category::flex_rigid: return "flexRigid";
    case constraint_category::recursor: return "recursor";
    case constraint_category::postponed: return "postponed";
    case constraint_category::flex_flex: return "flexFlex";
    }
    return "?";
}

std::string mismatch_message(environment const & env, expr const & lhs, expr const & rhs) {
    printer p(env);
    return "type mismatch, " + p(lhs) + " =?= " + p(rhs);
}

namespace {

bool is_sort_level_eq(expr const & s, expr const & t) { return s.is_sort() && t.is_sort(); }

bool args_meta_free(std::vector<expr> const & xs) {
    return std::none_of(xs.begin(), xs.end(), [](expr const & x) { return x.has_any_meta(); });
}

class simplifier {
    environment const &         m_env;
    transparency                m_mode;
    justification               m_j;
    std::vector<eq_constraint>  m_out;

    [[noreturn]] void fail(expr const & s, expr const & t) const {
        throw unifier_exception(m_j, mismatch_message(m_env, s, t));
    }

    void residual(expr s, expr t) {
        if (!is_meta_app(s) && is_meta_app(t))
            std::swap(s, t);
        m_out.push_back(eq_constraint{std::move(s), std::move(t), m_j, m_mode});
    }

    bool stuck(expr const & e) const { return is_stuck(m_env, e, m_mode).has_value(); }

    void levels(level a, level b) {
        a = normalize(a);
        b = normalize(b);
        while (a.is_succ() && b.is_succ()) {
            a = a.succ_of();
            b = b.succ_of();
        }
        if (a == b)
            return;
        auto fail_levels = [&] { fail(mk_sort(a), mk_sort(b)); };
        if (!a.has_meta() && !b.has_meta())
            fail_levels();
        auto rigid = [](level const & l) { return l.is_zero() || l.is_param(); };
        if ((rigid(a) && (b.is_succ() || rigid(b))) || (rigid(b) && a.is_succ()))
            fail_levels();
        // ?u ≐ succ^k ?u
        auto succ_base = [](level l) {
            while (l.is_succ())
                l = l.succ_of();
            return l;
        };
        if (a.is_meta() && b.is_succ() && succ_base(b) == a)
            fail_levels();
        if (b.is_meta() && a.is_succ() && succ_base(a) == b)
            fail_levels();
        residual(mk_sort(a), mk_sort(b));
    }

    void const_levels(expr const & f, expr const & g) {
        auto const & ls = f.const_levels();
        auto const & gs = g.const_levels();
        if (ls.size() != gs.size())
            fail(f, g);
        for (std::size_t i = 0; i < ls.size(); ++i)
            levels(ls[i], gs[i]);
    }

    void argwise(std::vector<expr> const & xs, std::vector<expr> const & ys) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            go(xs[i], ys[i]);
    }

    /// Argwise decomposition attempted in isolation; false when it fails.
    bool try_argwise(expr const & f, expr const & g, std::vector<expr> const & xs, std::vector<expr> const & ys) {
        std::size_t mark = m_out.size();
        try {
            const_levels(f, g);
            argwise(xs, ys);
            return true;
        } catch (unifier_exception const &) {
            m_out.resize(mark);
            return false;
        }
    }

    /// λx:A, r x
    expr eta_expand(expr const & r) {
        typeof_result ft;
        try {
            ft = ensurefun(m_env, r);
        } catch (kernel_exception const &) {
            throw unifier_exception(m_j, "function expected, " + pp(m_env, r));
        }
        for (auto const & e : ft.m_constraints)
            go(e.m_lhs, e.m_rhs);
        expr const & pi = ft.m_type;
        return mk_lambda(pi.binder_name(), pi.binder_domain(), mk_app(lift_loose(r, 0, 1), mk_bvar(0)), pi.info());
    }

public:
    simplifier(environment const & env, transparency mode, justification j)
        : m_env(env), m_mode(mode), m_j(std::move(j)) {}

    std::vector<eq_constraint> take() { return std::move(m_out); }

    void go(expr s, expr t) {
        while (true) {
            if (s == t)
                return;
            if (!s.has_any_meta() && !t.has_any_meta()) {
                bool ok = false;
                try {
                    ok = is_def_eq(m_env, s, t, m_mode);
                } catch (kernel_exception const &) {
                }
                if (ok)
                    return;
                fail(s, t);
            }
            expr s2 = reduce_beta_iota(m_env, s, m_mode);
            expr t2 = reduce_beta_iota(m_env, t, m_mode);
            if (!s2.is_same(s) || !t2.is_same(t)) {
                s = std::move(s2);
                t = std::move(t2);
                continue;
            }
            if (is_sort_level_eq(s, t))
                return levels(s.sort_level(), t.sort_level());
            if (s.is_binder() && s.kind() == t.kind()) {
                go(s.binder_domain(), t.binder_domain());
                expr l = mk_local(s.binder_name(), s.binder_domain(), s.info());
                s = instantiate(s.binder_body(), l);
                t = instantiate(t.binder_body(), l);
                continue;
            }
            expr const & f = get_app_fn(s);
            expr const & g = get_app_fn(t);
            if (f.is_fvar() && g.is_fvar()) {
                if (f.fvar() != g.fvar() || get_app_num_args(s) != get_app_num_args(t))
                    fail(s, t);
                return argwise(get_app_args(s), get_app_args(t));
            }
            if (f.is_constant() && g.is_constant()) {
                std::vector<expr> xs = get_app_args(s);
                std::vector<expr> ys = get_app_args(t);
                if (f.const_name() == g.const_name() && xs.size() == ys.size()) {
                    constant_info_ptr info = m_env.find(f.const_name());
                    if (args_meta_free(xs) && args_meta_free(ys)) {
                        if (!(info && info->is_projection()) && try_argwise(f, g, xs, ys))
                            return;
                        auto us = unfold(m_env, s, m_mode);
                        auto ut = unfold(m_env, t, m_mode);
                        if (!us || !ut)
                            fail(s, t);
                        s = *us;
                        t = *ut;
                        continue;
                    }
                    if (!info || info->hint() != reducibility::reducible || !info->is_definition()) {
                        if (recursor_of(m_env, s) && (stuck(s) || stuck(t)))
                            return residual(s, t);
                        const_levels(f, g);
                        return argwise(xs, ys);
                    }
                    return residual(s, t);
                }
                unsigned df = depth(m_env, f.const_name());
                unsigned dg = depth(m_env, g.const_name());
                auto us = unfold(m_env, s, m_mode);
                auto ut = unfold(m_env, t, m_mode);
                if (df > dg && us) {
                    s = *us;
                    continue;
                }
                if (df < dg && ut) {
                    t = *ut;
                    continue;
                }
                if (us && ut) {
                    s = *us;
                    t = *ut;
                    continue;
                }
                // one side is blocked by irreducibility: unfold the other
                if (us && !stuck(t)) {
                    s = *us;
                    continue;
                }
                if (ut && !stuck(s)) {
                    t = *ut;
                    continue;
                }
            }
            if (s.is_lambda() != t.is_lambda()) {
                expr & r = s.is_lambda() ? t : s;
                expr const & other = s.is_lambda() ? s : t;
                if (!(is_meta_app(r) && is_pattern(r, other))) {
                    r = eta_expand(r);
                    continue;
                }
            }
            bool ss = stuck(s), st = stuck(t);
            if (!ss && !st) {
                // a definition facing a non-constant rigid term
                if (f.is_constant())
                    if (auto u = unfold(m_env, s, m_mode)) {
                        s = *u;
                        continue;
                    }
                if (g.is_constant())
                    if (auto u = unfold(m_env, t, m_mode)) {
                        t = *u;
                        continue;
                    }
                fail(s, t);
            }
            return residual(s, t);
        }
    }
};

}  // namespace

std::vector<eq_constraint> simp(environment const & env, eq_constraint const & c) {
    simplifier s(env, c.m_mode, c.m_j);
    s.go(c.m_lhs, c.m_rhs);
    return s.take();
}

bool is_pattern(expr const & lhs, expr const & rhs) {
    if (!is_meta_app(lhs))
        return false;
    std::vector<expr> args = get_app_args(lhs);
    std::unordered_set<std::uint64_t> ids;
    for (auto const & a : args)
        if (!a.is_fvar() || !ids.insert(a.fvar().value).second)
            return false;
    meta_id m = get_app_fn(lhs).meta();
    if (rhs.has_meta() && occurs_meta(m, rhs))
        return false;
    if (rhs.has_fvar())
        for (auto const & l : collect_fvars(rhs))
            if (!ids.count(l.fvar().value))
                return false;
    return true;
}

bool is_level_pattern(eq_constraint const & c) {
    if (!is_sort_level_eq(c.m_lhs, c.m_rhs))
        return false;
    level a = normalize(c.m_lhs.sort_level());
    level b = normalize(c.m_rhs.sort_level());
    return (a.is_meta() && !occurs_meta(a.meta_id(), b)) || (b.is_meta() && !occurs_meta(b.meta_id(), a));
}

constraint_category classify(environment const & env, eq_constraint const & c) {
    expr const & s = c.m_lhs;
    expr const & t = c.m_rhs;
    if (is_sort_level_eq(s, t))
        return is_level_pattern(c) ? constraint_category::pattern : constraint_category::flex_flex;
    expr const & f = get_app_fn(s);
    expr const & g = get_app_fn(t);
    if (f.is_constant() && g.is_constant() && f.const_name() == g.const_name()) {
        auto info = env.find(f.const_name());
        if (info && info->is_definition() && info->hint() == reducibility::reducible)
            return constraint_category::delta;
    }
    if (is_pattern(s, t) || is_pattern(t, s))
        return constraint_category::pattern;
    if (f.is_meta() && g.is_meta())
        return constraint_category::flex_flex;
    auto stuck_rec = [&](expr const & e) {
        return recursor_of(env, e) && is_stuck(env, e, c.m_mode).has_value();
    };
    if (stuck_rec(s) || stuck_rec(t))
        return constraint_category::recursor;
    if (!f.is_meta() && !g.is_meta())
        return constraint_category::postponed;
    std::vector<expr> args = get_app_args(f.is_meta() ? s : t);
    bool all_locals = std::all_of(args.begin(), args.end(), [](expr const & a) { return a.is_fvar(); });
    return all_locals ? constraint_category::quasi_pattern : constraint_category::flex_rigid;
}

}  // namespace elab
