#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "elab/util/span.hpp"

namespace elab {

enum class token_kind : std::uint8_t { ident, keyword, number, symbol, eof, error };

struct token {
    token_kind  m_kind = token_kind::eof;
    std::string m_text;
    source_span m_span;
};

/// Splits UTF-8 source into tokens. `λ`, `Π`, `∀` and `→` are symbols;
/// dotted names form a single identifier. Comments are `--` to end of line
/// and nestable `/- ... -/`.
std::vector<token> tokenize(std::string_view text, unsigned file = 0);

bool is_command_keyword(std::string_view s);

}  // namespace elab
