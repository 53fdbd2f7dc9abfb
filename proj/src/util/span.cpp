#include "elab/util/span.hpp"

#include <tuple>

namespace elab {

bool source_span::contains(source_span const & o) const {
    if (empty() || o.empty())
        return false;
    auto begin = std::tie(m_line, m_col);
    auto end = std::tie(m_end_line, m_end_col);
    return m_file == o.m_file && begin <= std::tie(o.m_line, o.m_col) && std::tie(o.m_end_line, o.m_end_col) <= end;
}

source_span join(source_span const & a, source_span const & b) {
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    source_span r = a;
    if (std::tie(b.m_line, b.m_col) < std::tie(r.m_line, r.m_col)) {
        r.m_line = b.m_line;
        r.m_col = b.m_col;
    }
    if (std::tie(b.m_end_line, b.m_end_col) > std::tie(r.m_end_line, r.m_end_col)) {
        r.m_end_line = b.m_end_line;
        r.m_end_col = b.m_end_col;
    }
    return r;
}

std::string to_string(source_span const & s) {
    return std::to_string(s.m_line) + ":" + std::to_string(s.m_col);
}

}  // namespace elab
