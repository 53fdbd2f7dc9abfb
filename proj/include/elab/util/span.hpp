#pragma once

#include <compare>
#include <string>

namespace elab {

/// Region of a source file, 1-based lines and columns, end exclusive.
struct source_span {
    unsigned m_file = 0;
    unsigned m_line = 0;
    unsigned m_col = 0;
    unsigned m_end_line = 0;
    unsigned m_end_col = 0;

    bool empty() const { return m_line == 0; }
    bool contains(source_span const & o) const;
    friend bool operator==(source_span const &, source_span const &) = default;
    friend auto operator<=>(source_span const &, source_span const &) = default;
};

source_span join(source_span const & a, source_span const & b);
std::string to_string(source_span const & s);

}  // namespace elab
