#pragma once

#include <utility>
#include <vector>

#include "elab/kernel/reduce.hpp"

namespace elab {

/// Equation produced while inferring types of terms containing
/// metavariables. The caller attaches a justification.
struct type_eq {
    expr m_lhs;
    expr m_rhs;
};

/// Type inference and conversion.
///
/// In inference mode (the default) argument types are not checked and a
/// stuck function or sort type produces fresh metavariables plus an
/// equation. In checking mode every application and binder is checked and
/// stuck types are errors.
class type_checker {
    environment const &   m_env;
    transparency          m_mode;
    bool                  m_check;
    std::vector<type_eq> * m_out;

    expr infer_app(expr const & e);
    expr infer_lambda(expr const & e);
    expr infer_pi(expr const & e);

    bool def_eq_core(expr const & t, expr const & s);
    bool def_eq_binders(expr t, expr s);
    bool def_eq_args(expr const & t, expr const & s);
    std::optional<bool> quick_def_eq(expr const & t, expr const & s);
    bool lazy_delta(expr & t, expr & s);
    bool try_eta(expr const & t, expr const & s);

public:
    /// `out` receives the equations generated by ensurefun/ensure_sort; when
    /// null, stuck types raise kernel_exception.
    type_checker(environment const & env, transparency mode = transparency::default_, bool check = false,
                 std::vector<type_eq> * out = nullptr)
        : m_env(env), m_mode(mode), m_check(check), m_out(out) {}

    environment const & env() const { return m_env; }

    expr infer(expr const & e);
    /// Brings `type` to a Π-type.
    expr ensure_pi(expr const & type);
    /// Brings `type` to a sort and returns its level.
    level ensure_sort(expr const & type);

    bool is_def_eq(expr const & t, expr const & s);
    expr whnf(expr const & e) const { return elab::whnf(m_env, e, m_mode); }
};

struct typeof_result {
    expr                 m_type;
    std::vector<type_eq> m_constraints;
};

/// Inferred type of `e`, plus equations arising from stuck function types.
typeof_result typeof(environment const & env, expr const & e);
/// Ensures `s` has a function type; see type_checker::ensure_pi.
typeof_result ensurefun(environment const & env, expr const & s);

/// Meta-free conversion under `mode` (the kernel uses `all`).
bool is_def_eq(environment const & env, expr const & t, expr const & s, transparency mode = transparency::all);

/// Full kernel check of a closed term; returns its type.
expr check(environment const & env, expr const & e);

/// Level of the Π-type with domain level `dom` and codomain level `cod`.
level pi_level(level const & dom, level const & cod);

}  // namespace elab
