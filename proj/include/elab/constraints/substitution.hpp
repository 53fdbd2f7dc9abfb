#pragma once

#include <optional>

#include "elab/constraints/justification.hpp"
#include "elab/kernel/expr.hpp"
#include "elab/util/pmap.hpp"

namespace elab {

/// Persistent assignment of metavariables, each with the justification of
/// the constraint that produced it. Stored values may mention metavariables
/// assigned later; lookups resolve them transitively.
class substitution {
public:
    struct expr_assignment {
        expr          m_value;
        justification m_j;
        friend bool operator==(expr_assignment const & a, expr_assignment const & b) {
            return a.m_value == b.m_value && a.m_j.raw() == b.m_j.raw();
        }
    };
    struct level_assignment {
        level         m_value;
        justification m_j;
        friend bool operator==(level_assignment const & a, level_assignment const & b) {
            return a.m_value == b.m_value && a.m_j.raw() == b.m_j.raw();
        }
    };

private:
    pmap<meta_id, expr_assignment>        m_exprs;
    pmap<level_meta_id, level_assignment> m_levels;

public:
    bool is_assigned(meta_id m) const { return m_exprs.contains(m); }
    bool is_assigned(level_meta_id m) const { return m_levels.contains(m); }
    expr_assignment const * find(meta_id m) const { return m_exprs.find(m); }
    level_assignment const * find(level_meta_id m) const { return m_levels.find(m); }

    void assign(meta_id m, expr value, justification j);
    void assign(level_meta_id m, level value, justification j);

    std::size_t size() const { return m_exprs.size(); }
    std::size_t level_size() const { return m_levels.size(); }

    /// Replaces assigned metavariables, head β-reducing where an assigned
    /// metavariable heads an application. The justifications of all used
    /// assignments are joined into `j`.
    expr instantiate(expr const & e, justification & j) const;
    expr instantiate(expr const & e) const;
    level instantiate(level const & l, justification & j) const;
    level instantiate(level const & l) const;

    /// Whether any metavariable of `e` (or any level metavariable) is assigned.
    bool has_assigned(expr const & e) const;

    template <class F>
    void for_each(F && f) const {
        m_exprs.for_each([&](meta_id m, expr_assignment const & a) { f(m, a); });
    }
    template <class F>
    void for_each_level(F && f) const {
        m_levels.for_each([&](level_meta_id m, level_assignment const & a) { f(m, a); });
    }

    bool same_root(substitution const & o) const {
        return m_exprs.same_root(o.m_exprs) && m_levels.same_root(o.m_levels);
    }
    friend bool operator==(substitution const & a, substitution const & b) {
        return a.m_exprs == b.m_exprs && a.m_levels == b.m_levels;
    }
};

}  // namespace elab
