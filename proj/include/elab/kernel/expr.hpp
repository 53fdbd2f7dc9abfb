#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "elab/kernel/level.hpp"
#include "elab/kernel/name.hpp"

namespace elab {

enum class expr_kind : std::uint8_t { bvar, fvar, constant, meta, sort, app, lambda, pi };

enum class binder_info : std::uint8_t { default_, implicit, inst_implicit };

struct expr_cell;

/// Locally nameless term.
///
/// Every node caches a loose-bound-variable upper bound, free-variable and
/// metavariable bits and a structural hash. A default constructed expr is
/// null and only meaningful as an "absent" marker.
class expr {
    std::shared_ptr<const expr_cell> m_ptr;

public:
    expr() = default;
    explicit expr(std::shared_ptr<const expr_cell> p) : m_ptr(std::move(p)) {}

    bool is_null() const { return !m_ptr; }
    explicit operator bool() const { return static_cast<bool>(m_ptr); }

    expr_kind kind() const;
    bool is_bvar() const { return kind() == expr_kind::bvar; }
    bool is_fvar() const { return kind() == expr_kind::fvar; }
    bool is_constant() const { return kind() == expr_kind::constant; }
    bool is_meta() const { return kind() == expr_kind::meta; }
    bool is_sort() const { return kind() == expr_kind::sort; }
    bool is_app() const { return kind() == expr_kind::app; }
    bool is_lambda() const { return kind() == expr_kind::lambda; }
    bool is_pi() const { return kind() == expr_kind::pi; }
    bool is_binder() const { return is_lambda() || is_pi(); }

    unsigned bvar_idx() const;

    fvar_id fvar() const;
    meta_id meta() const;
    /// Type of a free variable or metavariable.
    expr const & local_type() const;
    /// Display name of a free variable, metavariable or binder.
    name const & local_name() const;
    binder_info info() const;

    name const & const_name() const;
    std::vector<level> const & const_levels() const;

    level const & sort_level() const;

    expr const & app_fn() const;
    expr const & app_arg() const;

    name const & binder_name() const { return local_name(); }
    expr const & binder_domain() const;
    expr const & binder_body() const;

    /// Every loose de Bruijn index in this subtree is below bound().
    unsigned bound() const;
    bool has_fvar() const;
    bool has_meta() const;
    bool has_level_meta() const;
    bool has_level_param() const;
    bool has_any_meta() const { return has_meta() || has_level_meta(); }
    std::size_t hash() const;

    expr_cell const * raw() const { return m_ptr.get(); }
    bool is_same(expr const & o) const { return m_ptr == o.m_ptr; }
};

/// Structural equality. Binder names and binder infos are ignored, free
/// variables and metavariables compare by id.
bool operator==(expr const & a, expr const & b);

expr mk_bvar(unsigned idx);
expr mk_fvar(fvar_id id, name const & n, expr const & type, binder_info bi = binder_info::default_);
expr mk_constant(name const & n, std::vector<level> levels = {});
expr mk_meta(meta_id id, expr const & type, name const & n = name());
expr mk_sort(level const & l);
expr mk_app(expr const & f, expr const & a);
expr mk_app(expr const & f, std::span<expr const> args);
expr mk_app(expr const & f, std::initializer_list<expr> args);
expr mk_lambda(name const & n, expr const & domain, expr const & body, binder_info bi = binder_info::default_);
expr mk_pi(name const & n, expr const & domain, expr const & body, binder_info bi = binder_info::default_);
expr mk_binder(expr_kind k, name const & n, expr const & domain, expr const & body, binder_info bi);

expr mk_prop();
expr mk_type();

/// Replaces the children of `e`, reusing `e` when nothing changed.
expr update_app(expr const & e, expr const & f, expr const & a);
expr update_binder(expr const & e, expr const & domain, expr const & body);
expr update_sort(expr const & e, level const & l);
expr update_constant(expr const & e, std::vector<level> levels);

expr const & get_app_fn(expr const & e);
std::vector<expr> get_app_args(expr const & e);
unsigned get_app_num_args(expr const & e);
/// Collects `e`'s head into `fn` and its arguments into `args`.
void get_app_spine(expr const & e, expr & fn, std::vector<expr> & args);

bool is_constant_app(expr const & e);
/// True for ?m a1 ... an (n >= 0).
bool is_meta_app(expr const & e);
bool is_fvar_app(expr const & e);

std::size_t expr_size(expr const & e);

}  // namespace elab

template <>
struct std::hash<elab::expr> {
    std::size_t operator()(elab::expr const & e) const noexcept { return e.hash(); }
};
