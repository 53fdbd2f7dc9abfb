#pragma once

#include <functional>
#include <string>
#include <vector>

#include "elab/constraints/simp.hpp"
#include "elab/constraints/substitution.hpp"

namespace elab {

enum class trace_kind : std::uint8_t { enqueue, pop, assign, split_push, backtrack, resolve_skip };

std::string_view to_string(trace_kind k);

struct trace_event {
    trace_kind                 m_kind;
    /// Metavariable the event is about, 0 when none.
    std::uint64_t              m_meta = 0;
    constraint_category        m_category = constraint_category::pattern;
    std::vector<assumption_id> m_deps;
    /// Case split concerned by split-push, backtrack and resolve-skip.
    assumption_id              m_split{};
    /// Diagnostic label of the split (split-push only); not rendered.
    std::string                m_label;
};

/// `EVENT kind=<k> meta=<id> cat=<category> jdeps=[ids]`
std::string to_string(trace_event const & e);

struct solver_options {
    unsigned                                 m_max_steps = 10000;
    std::function<void(trace_event const &)> m_trace;
};

enum class solve_status : std::uint8_t { solved, failed, budget_exceeded };

struct solve_result {
    solve_status               m_status = solve_status::solved;
    substitution               m_subst;
    /// Flex-flex constraints left unassigned.
    std::vector<eq_constraint> m_residue;
    /// Justification of the final error when failed.
    justification              m_j;
    std::string                m_message;
    unsigned                   m_steps = 0;

    bool ok() const { return m_status == solve_status::solved; }
};

/// Queue key: category first, then enqueue ticket.
struct queue_key {
    constraint_category m_category;
    std::uint64_t       m_ticket;
    friend bool operator==(queue_key const &, queue_key const &) = default;
    friend auto operator<=>(queue_key const &, queue_key const &) = default;
};

struct queued_constraint {
    constraint                 m_constraint;
    std::vector<meta_id>       m_metas;
    std::vector<level_meta_id> m_level_metas;
};
bool operator==(queued_constraint const & a, queued_constraint const & b);

/// Q, U and S. Copying is constant time.
struct solver_state {
    pmap<queue_key, queued_constraint>               m_queue;
    pmap<meta_id, pmap<queue_key, char>>             m_index;
    pmap<level_meta_id, pmap<queue_key, char>>       m_level_index;
    substitution                                     m_subst;
    friend bool operator==(solver_state const &, solver_state const &) = default;
};

/// Backtracking constraint solver. One instance per problem.
class solver {
    struct case_split {
        solver_state  m_saved;
        assumption_id m_assumption;
        justification m_j;
        alt_stream    m_alts;
        std::string   m_label;
        /// Label of the alternative being explored, and why earlier ones failed.
        std::string              m_current;
        std::vector<std::string> m_failures;
    };

    environment const &     m_env;
    solver_options          m_opts;
    solver_state            m_state;
    std::vector<case_split> m_splits;
    std::uint64_t           m_ticket = 0;
    unsigned                m_steps = 0;
    constraint_category     m_current_category = constraint_category::pattern;

    void trace(trace_kind k, std::uint64_t meta, constraint_category cat, justification const & j,
               assumption_id split = {}, std::string label = {}) const;

    void visit(constraint const & c);
    void visit_eq(eq_constraint const & c);
    void visit_choice(choice_constraint const & c);
    void assign(eq_constraint const & c);
    void assign_level(eq_constraint const & c);
    void enqueue(constraint const & c, constraint_category cat);
    queued_constraint remove(queue_key const & k);
    void revisit(pmap<queue_key, char> const & keys);

    void process(alt_stream z, justification const & j, std::string label = {}, std::uint64_t meta = 0);
    void visit_alternative(alternative const & a, justification const & j);
    void resolve(justification j, std::string msg);

    void process_eq(eq_constraint const & c, constraint_category cat);
    void process_delta(eq_constraint const & c);
    void process_recursor(eq_constraint const & c);

    bool discharge_flex_flex();
    solve_result run(std::function<void()> const & start);

public:
    solver(environment const & env, solver_options opts = {}) : m_env(env), m_opts(std::move(opts)) {}

    solve_result solve(std::vector<constraint> const & cs);
    /// After a successful solve, rejects that solution and backtracks into
    /// the open case splits for another one.
    solve_result next_solution();

    /// Current (Q, U, S); used by tests to check snapshot integrity.
    solver_state const & state() const { return m_state; }
    std::size_t num_splits() const { return m_splits.size(); }
};

solve_result solve(environment const & env, std::vector<constraint> const & cs, solver_options opts = {});

/// Category of a queued constraint under substitution `s`.
constraint_category priority_of(environment const & env, constraint const & c);

}  // namespace elab
