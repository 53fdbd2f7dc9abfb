#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elab/kernel/expr.hpp"
#include "elab/util/span.hpp"

namespace elab {

enum class preterm_kind : std::uint8_t { ident, app, lambda, pi, placeholder, sort, annotated, numeral };

struct preterm_node;
using preterm = std::shared_ptr<const preterm_node>;

/// Parser output. Universe levels are kernel levels in which the parameter
/// `_` stands for a hole.
struct preterm_node {
    preterm_kind m_kind = preterm_kind::placeholder;
    source_span  m_span;
    /// Identifier or binder name (anonymous for `A -> B`).
    name m_name;
    /// `@f`: no implicit argument insertion.
    bool m_explicit = false;
    /// Explicit universe instance `f.{u v}`.
    std::optional<std::vector<level>> m_levels;
    /// app: function / argument; binders: domain (may be null for λ) / body;
    /// annotated: term / type.
    preterm     m_lhs;
    preterm     m_rhs;
    binder_info m_info = binder_info::default_;
    /// Sort level; for `Sort.{l}` the level itself, `Type` is succ 0.
    level    m_level;
    unsigned m_value = 0;
};

preterm mk_pident(name const & n, source_span s, bool explicit_ = false,
                  std::optional<std::vector<level>> levels = std::nullopt);
preterm mk_papp(preterm f, preterm a);
preterm mk_plambda(name const & n, preterm domain, preterm body, binder_info bi, source_span s);
preterm mk_ppi(name const & n, preterm domain, preterm body, binder_info bi, source_span s);
preterm mk_pplaceholder(source_span s);
preterm mk_psort(level const & l, source_span s);
preterm mk_pannotated(preterm t, preterm type, source_span s);
preterm mk_pnumeral(unsigned n, source_span s);

/// Level hole marker.
level mk_level_hole();
bool is_level_hole(level const & l);

/// Structural equality ignoring spans.
bool same_preterm(preterm const & a, preterm const & b);

/// Surface syntax that parses back to a structurally equal preterm.
std::string to_string(preterm const & p);

}  // namespace elab
