#pragma once

#include "elab/constraints/simp.hpp"
#include "elab/constraints/substitution.hpp"

namespace elab {

/// Candidate bindings for the flexible head of `c` (?m s1 ... sp ≐ t):
/// projections first, then imitation of t's head, then imitation of the
/// weak head normal form of t when t's head is a reducible constant. Each
/// alternative assigns ?m and restates `c`.
alt_stream flex_rigid_alternatives(environment const & env, eq_constraint const & c, constraint_category cat,
                                   substitution const & s);

/// Whether `a` and `b` are convertible as far as can be decided without
/// unification: kernel conversion when metavariable free, otherwise
/// structural equality of their weak head normal forms.
bool obviously_convertible(environment const & env, expr const & a, expr const & b, transparency mode);

}  // namespace elab
