#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "elab/kernel/expr.hpp"

namespace elab {

/// Node-visit counters for the traversal operations below. Tests reset and
/// read them to check that closed or free-variable-free subtrees are skipped.
struct traversal_stats {
    std::uint64_t visits = 0;
};
traversal_stats & stats();

/// Replaces loose index 0 by `s` and lowers the other loose indices by one.
expr instantiate(expr const & e, expr const & s);
/// Replaces loose index i < n by subst[n - 1 - i] (so the last element
/// fills index 0) and lowers the remaining loose indices by n.
expr instantiate_rev(expr const & e, std::span<expr const> subst);

/// Replaces free variable `l` by index 0, shifting pre-existing loose
/// indices up by one.
expr abstract(expr const & e, fvar_id l);
/// Multi-variable abstract: locals[n - 1] becomes index 0.
expr abstract_locals(expr const & e, std::span<expr const> locals);

/// λ (x1 : A1) ... (xn : An[...]), t[li := xi]; binder infos and names are
/// taken from the free variables.
expr abstract_lambda(std::span<expr const> locals, expr const & t);
expr abstract_pi(std::span<expr const> locals, expr const & t);

/// Adds `d` to every loose index >= `s`.
expr lift_loose(expr const & e, unsigned s, unsigned d);
/// Subtracts `d` from every loose index >= `s`; indices in [s, s + d) must
/// not occur.
expr lower_loose(expr const & e, unsigned s, unsigned d);
bool has_loose_bvar(expr const & e, unsigned i);

/// Non-dependent function type.
expr mk_arrow(expr const & domain, expr const & codomain);

expr subst_meta(expr const & e, meta_id m, expr const & s);
expr subst_fvar(expr const & e, fvar_id l, expr const & s);

expr instantiate_level_params(expr const & e, std::vector<name> const & params, std::vector<level> const & levels);

using meta_lookup  = std::function<std::optional<expr>(meta_id)>;
using level_lookup = std::function<std::optional<level>(level_meta_id)>;

/// Replaces metavariables (and level metavariables) by their values,
/// β-reducing at the head wherever an instantiated metavariable is applied.
expr instantiate_metas(expr const & e, meta_lookup const & metas, level_lookup const & levels);

/// Generic rewriting. `f(e, offset)` returns a replacement or nullopt to
/// descend into `e`. `offset` is the number of binders crossed.
expr replace(expr const & e, std::function<std::optional<expr>(expr const &, unsigned)> const & f);
/// Pre-order visit; returning false skips the children.
void for_each(expr const & e, std::function<bool(expr const &, unsigned)> const & f);

expr head_beta(expr const & e);
/// β-reduces `f` applied to `args` as far as `f`'s leading λs allow.
expr beta_apply(expr const & f, std::span<expr const> args);
bool is_head_beta(expr const & e);

bool occurs_fvar(fvar_id l, expr const & e);
bool occurs_meta(meta_id m, expr const & e);
/// Metavariables in order of first occurrence, deduplicated.
std::vector<expr> collect_metas(expr const & e);
std::vector<level_meta_id> collect_level_metas(expr const & e);
std::vector<expr> collect_fvars(expr const & e);
/// Applies `f` to every level occurring in sorts and constant instances.
expr replace_levels(expr const & e, std::function<level(level const &)> const & f);

}  // namespace elab
