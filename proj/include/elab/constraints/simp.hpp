#pragma once

#include <string_view>
#include <vector>

#include "elab/constraints/constraint.hpp"

namespace elab {

/// Solver priority classes, lowest first.
enum class constraint_category : std::uint8_t {
    pattern,
    ready,
    regular,
    delta,
    quasi_pattern,
    flex_rigid,
    recursor,
    postponed,
    flex_flex,
};

std::string_view to_string(constraint_category c);

/// Decomposes `c` into residual constraints that simp cannot break down
/// further. Throws unifier_exception carrying c's justification when the
/// two sides clearly disagree.
std::vector<eq_constraint> simp(environment const & env, eq_constraint const & c);

/// Category of a residual constraint returned by simp.
constraint_category classify(environment const & env, eq_constraint const & c);

/// ?m l1 ... ln ≐ t with the li pairwise distinct locals, every local of t
/// among them and ?m not occurring in t.
bool is_pattern(expr const & lhs, expr const & rhs);

/// Bare level metavariable equation `sort ?u ≐ sort l` (either side) with
/// ?u not occurring in l.
bool is_level_pattern(eq_constraint const & c);

/// Message used when simp rejects a constraint.
std::string mismatch_message(environment const & env, expr const & lhs, expr const & rhs);

}  // namespace elab
