#pragma once

#include <optional>
#include <vector>

#include "elab/kernel/declaration.hpp"
#include "elab/util/pmap.hpp"

namespace elab {

struct coercion_info {
    name     m_coercion;
    name     m_from;
    name     m_to;
    /// Number of arguments before the coerced value.
    unsigned m_num_args = 0;
};

/// Immutable set of committed declarations plus attribute tables. Extension
/// returns a new environment that shares structure with the old one.
class environment {
    pmap<name, constant_info_ptr>          m_constants;
    pmap<name, bool>                       m_classes;
    pmap<name, std::vector<name>>          m_instances;
    pmap<name, std::vector<coercion_info>> m_coercions;
    pmap<name, std::vector<name>>          m_aliases;
    unsigned                               m_next_order = 0;

public:
    environment() = default;

    constant_info_ptr find(name const & n) const;
    /// Throws kernel_exception when `n` is unknown.
    constant_info const & get(name const & n) const;
    bool contains(name const & n) const { return m_constants.contains(n); }
    std::size_t size() const { return m_constants.size(); }

    /// Adds an already checked constant. Throws on duplicate names.
    environment add(constant_info info) const;
    /// Replaces an existing constant (used by reducibility attributes and
    /// projection flagging).
    environment replace(constant_info info) const;

    environment set_reducibility(name const & n, reducibility r) const;

    environment add_class(name const & n) const;
    bool is_class(name const & n) const { return m_classes.contains(n); }
    environment add_instance(name const & cls, name const & inst) const;
    std::vector<name> instances_of(name const & cls) const;

    environment add_coercion(coercion_info c) const;
    std::vector<coercion_info> coercions_from(name const & from) const;
    std::vector<coercion_info> coercions_to(name const & to) const;
    std::optional<coercion_info> find_coercion(name const & from, name const & to) const;

    environment add_alias(name const & alias, name const & target) const;
    std::vector<name> aliases_of(name const & alias) const;

    template <class F>
    void for_each_constant(F && f) const {
        m_constants.for_each([&](name const &, constant_info_ptr const & c) { f(*c); });
    }
};

}  // namespace elab
