#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "elab/constraints/justification.hpp"
#include "elab/kernel/reduce.hpp"

namespace elab {

class substitution;
class alt_stream;

/// Raised by simp and the solver when a constraint cannot hold.
class unifier_exception : public std::runtime_error {
    justification m_j;

public:
    unifier_exception(justification j, std::string const & msg) : std::runtime_error(msg), m_j(std::move(j)) {}
    justification const & j() const { return m_j; }
};

/// lhs ≐ rhs. Constraints created for type class resolution carry
/// transparency reducible_only.
struct eq_constraint {
    expr          m_lhs;
    expr          m_rhs;
    justification m_j;
    transparency  m_mode = transparency::default_;
};

/// Produces the alternatives of a choice constraint from its metavariable
/// application, its (instantiated) type and the current substitution.
using chooser = std::function<alt_stream(expr const & meta_app, expr const & type, substitution const & s)>;

struct choice_constraint {
    /// ?m l1 ... ln
    expr          m_meta;
    expr          m_type;
    chooser       m_chooser;
    /// Postponed until the type is metavariable free.
    bool          m_ondemand = false;
    justification m_j;
    /// Error summary used when no alternative succeeds.
    std::string   m_label;
    /// Append the instantiated type to the summary.
    bool          m_label_type = false;
};

class constraint {
    std::variant<eq_constraint, choice_constraint> m_val;

public:
    constraint(eq_constraint c) : m_val(std::move(c)) {}
    constraint(choice_constraint c) : m_val(std::move(c)) {}

    bool is_eq() const { return std::holds_alternative<eq_constraint>(m_val); }
    bool is_choice() const { return !is_eq(); }
    eq_constraint const & eq() const { return std::get<eq_constraint>(m_val); }
    choice_constraint const & choice() const { return std::get<choice_constraint>(m_val); }
    justification const & j() const { return is_eq() ? eq().m_j : choice().m_j; }
};

constraint mk_eq(expr lhs, expr rhs, justification j, transparency mode = transparency::default_);
/// Copy of `c` whose justification is joined with `j`.
constraint join_justification(constraint const & c, justification const & j);

/// One way of satisfying a choice constraint. A failed alternative defers
/// an error raised while it was being built.
struct alternative {
    std::vector<constraint>      m_constraints;
    std::optional<justification> m_failure;
    std::string                  m_message;
    /// Shown in diagnostics when every alternative of a split fails.
    std::string                  m_label;
};

/// Lazy, single-pass sequence of alternatives.
class alt_stream {
public:
    using generator = std::function<std::optional<alternative>()>;

private:
    std::shared_ptr<generator> m_next;
    std::shared_ptr<unsigned>  m_pulls = std::make_shared<unsigned>(0);

public:
    alt_stream() = default;
    explicit alt_stream(generator g) : m_next(std::make_shared<generator>(std::move(g))) {}

    std::optional<alternative> pull();
    /// Number of alternatives pulled so far.
    unsigned pulls() const { return *m_pulls; }
};

alt_stream mk_stream(std::vector<alternative> alts);
/// Each thunk runs only when its alternative is pulled; a unifier_exception
/// it raises becomes a failed alternative.
/// `labels[i]` names the i-th alternative in diagnostics.
alt_stream mk_lazy_stream(std::vector<std::function<std::vector<constraint>()>> thunks,
                          std::vector<std::string> labels = {});

}  // namespace elab
