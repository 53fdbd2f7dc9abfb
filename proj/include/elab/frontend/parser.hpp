#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elab/elaborator/preterm.hpp"
#include "elab/frontend/lexer.hpp"

namespace elab {

struct binder {
    name        m_name;
    preterm     m_type;
    binder_info m_info = binder_info::default_;
    source_span m_span;
};

enum class command_kind : std::uint8_t {
    definition,
    axiom,
    inductive,
    structure,
    attribute,
    namespace_open,
    namespace_close,
    open,
    check,
    eval,
    example,
    universe,
    /// Unparsable input, kept so diagnostics stay in file order.
    error,
};

/// Constructor of an inductive type; for structures the single
/// constructor's binders are the fields.
struct constructor_decl {
    name                m_name;
    std::vector<binder> m_binders;
    preterm             m_type;
    source_span         m_span;
};

struct command {
    command_kind m_kind = command_kind::error;
    source_span  m_span;
    /// Keyword as written (`definition`, `theorem`, `class`, ...).
    std::string m_keyword;
    /// Declared name, namespace or universe names.
    std::vector<name> m_names;
    std::vector<name> m_univ_params;
    std::vector<std::string> m_attributes;
    std::vector<binder> m_binders;
    preterm m_type;
    preterm m_value;
    std::vector<constructor_decl> m_constructors;
    std::string m_message;
};

class parse_error : public std::runtime_error {
    source_span m_span;

public:
    parse_error(source_span s, std::string const & msg) : std::runtime_error(msg), m_span(s) {}
    source_span const & span() const { return m_span; }
};

/// Parses a whole file. Syntax errors become `error` commands and parsing
/// resumes at the next command keyword.
std::vector<command> parse_file(std::string_view text, unsigned file = 0);

/// Parses a single term; throws parse_error.
preterm parse_term(std::string_view text, unsigned file = 0);

/// Surface form that parses back to a structurally equal command.
std::string to_string(command const & c);
bool same_command(command const & a, command const & b);

/// Folds binders into a Π (or λ) preterm around `body`.
preterm fold_pi(std::vector<binder> const & bs, preterm body);
preterm fold_lambda(std::vector<binder> const & bs, preterm body);

}  // namespace elab
