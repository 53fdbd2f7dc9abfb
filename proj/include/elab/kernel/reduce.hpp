#pragma once

#include <optional>

#include "elab/kernel/environment.hpp"

namespace elab {

enum class transparency : std::uint8_t {
    default_,        // reducible and semireducible definitions
    reducible_only,  // type class resolution
    all,             // kernel conversion, hints ignored
};

bool can_unfold(constant_info const & c, transparency t);

/// δ-step at the head: f's value instantiated with f's levels and applied to
/// the arguments, then β-reduced at the head. nullopt when the head is not
/// a definition.
std::optional<expr> unfold(environment const & env, expr const & t);
/// Same as unfold, but only when the head may be unfolded under `mode`.
std::optional<expr> unfold(environment const & env, expr const & t, transparency mode);

/// Head β and ι until neither applies. The major premise of a recursor is
/// brought to whnf under `mode` to expose a constructor.
expr reduce_beta_iota(environment const & env, expr const & t, transparency mode = transparency::default_);

expr whnf(environment const & env, expr const & t, transparency mode = transparency::default_);

/// Full normal form under `all`: whnf, then normalize arguments and binder
/// bodies.
expr normalize(environment const & env, expr const & t);

enum class stuck_kind : std::uint8_t { application, recursor };

struct stuck_reason {
    /// The metavariable application blocking computation.
    expr       m_term;
    stuck_kind m_kind;
};

/// Looks at `t`'s head without unfolding it.
std::optional<stuck_reason> is_stuck(environment const & env, expr const & t,
                                     transparency mode = transparency::default_);

/// 0 for non-definitions, the stored depth otherwise.
unsigned depth(environment const & env, name const & f);
/// 1 + maximum depth of the constants in `value`.
unsigned compute_depth(environment const & env, expr const & value);

/// Recursor info when `t` is headed by a recursor.
recursor_val const * recursor_of(environment const & env, expr const & t);

}  // namespace elab
