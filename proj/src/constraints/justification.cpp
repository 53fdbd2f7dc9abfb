#include "elab/constraints/justification.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace elab {

struct justification_cell {
    justification_kind m_kind;
    source_span        m_origin;
    std::string        m_description;
    assumption_id      m_assumption{};
    justification      m_lhs;
    justification      m_rhs;
    std::uint64_t      m_max = 0;
};

justification_kind justification::kind() const { return m_ptr ? m_ptr->m_kind : justification_kind::none; }
source_span const & justification::origin() const { return m_ptr->m_origin; }
std::string const & justification::description() const { return m_ptr->m_description; }
assumption_id justification::assumption() const { return m_ptr->m_assumption; }
justification const & justification::lhs() const { return m_ptr->m_lhs; }
justification const & justification::rhs() const { return m_ptr->m_rhs; }
std::uint64_t justification::max_assumption() const { return m_ptr ? m_ptr->m_max : 0; }

justification mk_asserted(source_span origin, std::string description) {
    auto c = std::make_shared<justification_cell>();
    c->m_kind = justification_kind::asserted;
    c->m_origin = origin;
    c->m_description = std::move(description);
    return justification(std::move(c));
}

justification mk_assumption(assumption_id id) {
    auto c = std::make_shared<justification_cell>();
    c->m_kind = justification_kind::assumption;
    c->m_assumption = id;
    c->m_max = id.value;
    return justification(std::move(c));
}

justification mk_join(justification const & a, justification const & b) {
    if (a.is_none() || a.raw() == b.raw())
        return b;
    if (b.is_none())
        return a;
    auto c = std::make_shared<justification_cell>();
    c->m_kind = justification_kind::join;
    c->m_lhs = a;
    c->m_rhs = b;
    c->m_max = std::max(a.max_assumption(), b.max_assumption());
    return justification(std::move(c));
}

namespace {

// Visits every node once; `f` returns false to prune below a node.
void walk(justification const & j, std::function<bool(justification const &)> const & f) {
    std::unordered_set<justification_cell const *> seen;
    std::vector<justification> todo{j};
    while (!todo.empty()) {
        justification x = todo.back();
        todo.pop_back();
        if (x.is_none() || !seen.insert(x.raw()).second || !f(x))
            continue;
        if (x.kind() == justification_kind::join) {
            todo.push_back(x.rhs());
            todo.push_back(x.lhs());
        }
    }
}

}  // namespace

bool depends_on(justification const & j, assumption_id a) {
    bool found = false;
    walk(j, [&](justification const & x) {
        if (found || x.max_assumption() < a.value)
            return false;
        if (x.kind() == justification_kind::assumption && x.assumption() == a)
            found = true;
        return !found;
    });
    return found;
}

std::vector<assumption_id> assumptions(justification const & j) {
    std::vector<assumption_id> r;
    walk(j, [&](justification const & x) {
        if (x.max_assumption() == 0)
            return false;
        if (x.kind() == justification_kind::assumption)
            r.push_back(x.assumption());
        return true;
    });
    std::sort(r.begin(), r.end(), [](auto a, auto b) { return a.value < b.value; });
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::vector<justification> asserted_leaves(justification const & j) {
    std::vector<justification> r;
    walk(j, [&](justification const & x) {
        if (x.kind() == justification_kind::asserted)
            r.push_back(x);
        return true;
    });
    return r;
}

}  // namespace elab
