#include "elab/kernel/name.hpp"

#include <atomic>
#include <stdexcept>

namespace elab {

name::name(std::string_view s) : m_str(s) {
    if (m_str.empty())
        return;
    if (m_str.front() == '.' || m_str.back() == '.' || m_str.find("..") != std::string::npos)
        throw std::invalid_argument("name with empty segment: '" + m_str + "'");
}

name::name(name const & prefix, std::string_view last) {
    if (last.empty())
        throw std::invalid_argument("name with empty segment");
    m_str = prefix.is_anonymous() ? std::string(last) : prefix.m_str + "." + std::string(last);
}

std::vector<std::string> name::components() const {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= m_str.size() && !m_str.empty()) {
        std::size_t dot = m_str.find('.', start);
        if (dot == std::string::npos) {
            out.push_back(m_str.substr(start));
            break;
        }
        out.push_back(m_str.substr(start, dot - start));
        start = dot + 1;
    }
    return out;
}

std::string name::last() const {
    auto dot = m_str.rfind('.');
    return dot == std::string::npos ? m_str : m_str.substr(dot + 1);
}

name name::prefix() const {
    auto dot = m_str.rfind('.');
    return dot == std::string::npos ? name() : name(std::string_view(m_str).substr(0, dot));
}

bool name::has_prefix(name const & p) const {
    if (p.is_anonymous())
        return true;
    return m_str.size() > p.m_str.size() && m_str.compare(0, p.m_str.size(), p.m_str) == 0 &&
           m_str[p.m_str.size()] == '.';
}

name name::drop_prefix(name const & p) const {
    if (p.is_anonymous())
        return *this;
    return name(std::string_view(m_str).substr(p.m_str.size() + 1));
}

std::ostream & operator<<(std::ostream & out, name const & n) { return out << n.str(); }

std::uint64_t next_unique_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace elab
