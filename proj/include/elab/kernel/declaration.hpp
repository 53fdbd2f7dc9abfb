#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "elab/kernel/expr.hpp"

namespace elab {

enum class reducibility : std::uint8_t { reducible, semireducible, irreducible };

char const * to_string(reducibility r);

/// Surface-level declaration handed to the kernel checker.
struct axiom_decl {
    name              m_name;
    std::vector<name> m_univ_params;
    expr              m_type;
};

struct definition_decl {
    name              m_name;
    std::vector<name> m_univ_params;
    expr              m_type;
    expr              m_value;
    reducibility      m_hint = reducibility::semireducible;
};

struct inductive_decl {
    name                                  m_name;
    std::vector<name>                     m_univ_params;
    unsigned                              m_num_params = 0;
    expr                                  m_type;
    std::vector<std::pair<name, expr>>    m_constructors;
};

using declaration = std::variant<axiom_decl, definition_decl, inductive_decl>;

name const & decl_name(declaration const & d);

/// Information stored in the environment for each constant.
struct axiom_val {};

struct projection_info {
    name     m_structure;
    unsigned m_num_params = 0;
    unsigned m_index = 0;
};

struct definition_val {
    expr                           m_value;
    reducibility                   m_hint = reducibility::semireducible;
    unsigned                       m_depth = 0;
    std::optional<projection_info> m_projection;
};

struct inductive_val {
    unsigned          m_num_params = 0;
    unsigned          m_num_indices = 0;
    std::vector<name> m_constructors;
    bool              m_is_prop = false;
    name              m_recursor;
};

struct constructor_val {
    name     m_inductive;
    unsigned m_index = 0;
    unsigned m_num_params = 0;
    unsigned m_num_fields = 0;
};

struct recursor_rule {
    name     m_constructor;
    unsigned m_num_fields = 0;
    /// λ params motive minors fields, minor applied to fields and recursive calls.
    expr m_rhs;
};

struct recursor_val {
    name                       m_inductive;
    unsigned                   m_num_params = 0;
    unsigned                   m_num_minors = 0;
    unsigned                   m_num_indices = 0;
    std::vector<recursor_rule> m_rules;

    unsigned major_idx() const { return m_num_params + 1 + m_num_minors + m_num_indices; }
};

using constant_val = std::variant<axiom_val, definition_val, inductive_val, constructor_val, recursor_val>;

struct constant_info {
    name              m_name;
    std::vector<name> m_univ_params;
    expr              m_type;
    constant_val      m_val;
    /// Position in declaration order.
    unsigned m_order = 0;

    bool is_definition() const { return std::holds_alternative<definition_val>(m_val); }
    bool is_axiom() const { return std::holds_alternative<axiom_val>(m_val); }
    bool is_inductive() const { return std::holds_alternative<inductive_val>(m_val); }
    bool is_constructor() const { return std::holds_alternative<constructor_val>(m_val); }
    bool is_recursor() const { return std::holds_alternative<recursor_val>(m_val); }

    definition_val const & definition() const { return std::get<definition_val>(m_val); }
    inductive_val const & inductive() const { return std::get<inductive_val>(m_val); }
    constructor_val const & constructor() const { return std::get<constructor_val>(m_val); }
    recursor_val const & recursor() const { return std::get<recursor_val>(m_val); }

    /// Reducibility of definitions; other constants report irreducible.
    reducibility hint() const;
    /// Definition depth, 0 for non-definitions.
    unsigned depth() const;
    bool is_projection() const;
};

using constant_info_ptr = std::shared_ptr<const constant_info>;

}  // namespace elab
