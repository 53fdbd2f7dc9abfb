#pragma once

#include <optional>
#include <vector>

#include "elab/kernel/expr.hpp"

namespace elab {

/// Creates a fresh free variable.
expr mk_local(name const & n, expr const & type, binder_info bi = binder_info::default_);

/// Telescope of free variables (l1 : A1) ... (ln : An).
class local_context {
    std::vector<expr> m_locals;

public:
    local_context() = default;
    explicit local_context(std::vector<expr> locals) : m_locals(std::move(locals)) {}

    std::vector<expr> const & locals() const { return m_locals; }
    std::size_t size() const { return m_locals.size(); }
    bool empty() const { return m_locals.empty(); }

    /// Extends the telescope with a fresh local and returns it.
    expr push(name const & n, expr const & type, binder_info bi = binder_info::default_);
    void push_existing(expr const & local) { m_locals.push_back(local); }
    /// Most recent local with display name `n`.
    std::optional<expr> find(name const & n) const;

    /// ?m l1 ... ln where ?m : Π (l1 : A1) ... (ln : An), type.
    expr mk_meta(expr const & type, name const & display = name()) const;
    /// Hole of unknown type: ?mt : Π ctx, sort ?u and ?m : Π ctx, ?mt ctx.
    expr mk_meta_unknown_type(name const & display = name()) const;
    /// ?t ctx : sort ?u, a fresh type whose universe is unknown.
    expr mk_type_meta() const;
};

}  // namespace elab
