#pragma once

#include <memory>
#include <string>
#include <vector>

#include "elab/kernel/name.hpp"
#include "elab/util/span.hpp"

namespace elab {

enum class justification_kind : std::uint8_t { none, asserted, assumption, join };

struct justification_cell;

/// Provenance of a constraint: a DAG whose leaves are asserted source
/// origins and case-split assumptions. The empty justification depends on
/// nothing.
class justification {
    std::shared_ptr<const justification_cell> m_ptr;

    explicit justification(std::shared_ptr<const justification_cell> p) : m_ptr(std::move(p)) {}
    friend justification mk_asserted(source_span, std::string);
    friend justification mk_assumption(assumption_id);
    friend justification mk_join(justification const &, justification const &);

public:
    justification() = default;

    justification_kind kind() const;
    bool is_none() const { return !m_ptr; }

    source_span const & origin() const;
    std::string const & description() const;
    assumption_id assumption() const;
    justification const & lhs() const;
    justification const & rhs() const;

    /// Largest assumption id in the DAG, 0 when there is none.
    std::uint64_t max_assumption() const;

    justification_cell const * raw() const { return m_ptr.get(); }
};

justification mk_asserted(source_span origin, std::string description);
justification mk_assumption(assumption_id id);
/// Joining with the empty justification returns the other side.
justification mk_join(justification const & a, justification const & b);

bool depends_on(justification const & j, assumption_id a);
/// Assumption ids in `j`, ascending.
std::vector<assumption_id> assumptions(justification const & j);
/// Asserted leaves of `j` in left-to-right order, duplicates removed.
std::vector<justification> asserted_leaves(justification const & j);

}  // namespace elab
