#pragma once

#include <random>
#include <vector>

#include "elab/kernel/expr_ops.hpp"

namespace elab::test {

/// Random locally nameless terms over a fixed pool of free variables,
/// metavariables and constants. Loose indices up to `max_loose` - 1 occur.
class term_gen {
    std::mt19937      m_rng;
    std::vector<expr> m_fvars;
    std::vector<expr> m_metas;

    unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(m_rng); }

public:
    explicit term_gen(unsigned seed) : m_rng(seed) {
        expr ty = mk_constant("T");
        for (int i = 0; i < 4; ++i)
            m_fvars.push_back(mk_fvar(fresh_id<fvar_id>(), name("x" + std::to_string(i)), ty));
        for (int i = 0; i < 3; ++i)
            m_metas.push_back(mk_meta(fresh_id<meta_id>(), ty));
    }

    std::vector<expr> const & fvars() const { return m_fvars; }
    std::vector<expr> const & metas() const { return m_metas; }
    std::mt19937 & rng() { return m_rng; }

    expr leaf(unsigned depth_binders, unsigned max_loose) {
        switch (pick(5)) {
        case 0: return mk_bvar(pick(depth_binders + max_loose + 1));
        case 1: return m_fvars[pick(static_cast<unsigned>(m_fvars.size()))];
        case 2: return m_metas[pick(static_cast<unsigned>(m_metas.size()))];
        case 3: return mk_sort(mk_level_of_nat(pick(2)));
        default: return mk_constant(name("c" + std::to_string(pick(3))));
        }
    }

    expr operator()(unsigned size, unsigned binders = 0, unsigned max_loose = 2) {
        if (size <= 1)
            return leaf(binders, max_loose);
        switch (pick(3)) {
        case 0: {
            unsigned l = 1 + pick(size - 1);
            return mk_app((*this)(l, binders, max_loose), (*this)(size - l, binders, max_loose));
        }
        case 1: {
            unsigned l = 1 + pick(size - 1);
            return mk_lambda("y", (*this)(l, binders, max_loose), (*this)(size - l, binders + 1, max_loose));
        }
        default: {
            unsigned l = 1 + pick(size - 1);
            return mk_pi("y", (*this)(l, binders, max_loose), (*this)(size - l, binders + 1, max_loose));
        }
        }
    }

    /// Same shape as operator() but every leaf is closed.
    expr closed(unsigned size) {
        if (size <= 1)
            return pick(2) ? mk_constant(name("k" + std::to_string(pick(4)))) : mk_sort(mk_level_zero());
        unsigned l = 1 + pick(size - 1);
        return mk_app(closed(l), closed(size - l));
    }
};

// Reference traversals: no bound or flag checks, every node visited.

inline std::uint64_t & naive_visits() {
    static std::uint64_t v = 0;
    return v;
}

inline expr naive_lift(expr const & e, unsigned off, unsigned d) {
    switch (e.kind()) {
    case expr_kind::bvar: return e.bvar_idx() >= off ? mk_bvar(e.bvar_idx() + d) : e;
    case expr_kind::app: return mk_app(naive_lift(e.app_fn(), off, d), naive_lift(e.app_arg(), off, d));
    case expr_kind::lambda:
    case expr_kind::pi:
        return mk_binder(e.kind(), e.binder_name(), naive_lift(e.binder_domain(), off, d),
                         naive_lift(e.binder_body(), off + 1, d), e.info());
    default: return e;
    }
}

inline expr naive_instantiate(expr const & e, expr const & s, unsigned off = 0) {
    ++naive_visits();
    switch (e.kind()) {
    case expr_kind::bvar:
        if (e.bvar_idx() == off)
            return naive_lift(s, 0, off);
        if (e.bvar_idx() > off)
            return mk_bvar(e.bvar_idx() - 1);
        return e;
    case expr_kind::app: return mk_app(naive_instantiate(e.app_fn(), s, off), naive_instantiate(e.app_arg(), s, off));
    case expr_kind::lambda:
    case expr_kind::pi:
        return mk_binder(e.kind(), e.binder_name(), naive_instantiate(e.binder_domain(), s, off),
                         naive_instantiate(e.binder_body(), s, off + 1), e.info());
    default: return e;
    }
}

inline expr naive_abstract(expr const & e, fvar_id l, unsigned off = 0) {
    ++naive_visits();
    switch (e.kind()) {
    case expr_kind::fvar: return e.fvar() == l ? mk_bvar(off) : e;
    case expr_kind::bvar: return e.bvar_idx() >= off ? mk_bvar(e.bvar_idx() + 1) : e;
    case expr_kind::app: return mk_app(naive_abstract(e.app_fn(), l, off), naive_abstract(e.app_arg(), l, off));
    case expr_kind::lambda:
    case expr_kind::pi:
        return mk_binder(e.kind(), e.binder_name(), naive_abstract(e.binder_domain(), l, off),
                         naive_abstract(e.binder_body(), l, off + 1), e.info());
    default: return e;
    }
}

inline expr naive_subst_meta(expr const & e, meta_id m, expr const & s, unsigned off = 0) {
    ++naive_visits();
    switch (e.kind()) {
    case expr_kind::meta: return e.meta() == m ? naive_lift(s, 0, off) : e;
    case expr_kind::app:
        return mk_app(naive_subst_meta(e.app_fn(), m, s, off), naive_subst_meta(e.app_arg(), m, s, off));
    case expr_kind::lambda:
    case expr_kind::pi:
        return mk_binder(e.kind(), e.binder_name(), naive_subst_meta(e.binder_domain(), m, s, off),
                         naive_subst_meta(e.binder_body(), m, s, off + 1), e.info());
    default: return e;
    }
}

/// Largest loose index + 1, by full traversal.
inline unsigned naive_bound(expr const & e, unsigned off = 0) {
    switch (e.kind()) {
    case expr_kind::bvar: return e.bvar_idx() >= off ? e.bvar_idx() - off + 1 : 0;
    case expr_kind::app: return std::max(naive_bound(e.app_fn(), off), naive_bound(e.app_arg(), off));
    case expr_kind::lambda:
    case expr_kind::pi: return std::max(naive_bound(e.binder_domain(), off), naive_bound(e.binder_body(), off + 1));
    default: return 0;
    }
}

}  // namespace elab::test
