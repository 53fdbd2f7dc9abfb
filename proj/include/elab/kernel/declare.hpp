#pragma once

#include <vector>

#include "elab/kernel/environment.hpp"

namespace elab {

/// Kernel entry point: checks a fully elaborated declaration under
/// transparency `all` and returns the extended environment. Inductive
/// families additionally get their constructors and recursor.
environment check_declaration(environment const & env, declaration const & d);

/// Defines the projections of a single-constructor, non-indexed inductive
/// `s`, named `s.<field>`. The structure argument is instance implicit when
/// `self_inst_implicit` is set. Projections are reducible and flagged.
environment add_projections(environment const & env, name const & s, bool self_inst_implicit);

/// Names of the fields of structure `s`, in order.
std::vector<name> structure_fields(environment const & env, name const & s);

}  // namespace elab
