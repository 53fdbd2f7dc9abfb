#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "elab/elaborator/preterm.hpp"
#include "elab/kernel/local_context.hpp"
#include "elab/solver/solver.hpp"

namespace elab {

/// Namespaces enclosing the current command, outermost first.
struct scope {
    std::vector<name> m_namespaces;

    name current() const { return m_namespaces.empty() ? name() : m_namespaces.back(); }
};

struct diagnostic_note {
    source_span m_span;
    std::string m_message;
};

/// Error reported to the user. The notes list the source origins the
/// failure depends on.
class elab_error : public std::runtime_error {
    source_span                  m_span;
    std::vector<diagnostic_note> m_notes;

public:
    elab_error(source_span s, std::string const & msg, std::vector<diagnostic_note> notes = {})
        : std::runtime_error(msg), m_span(s), m_notes(std::move(notes)) {}
    source_span const & span() const { return m_span; }
    std::vector<diagnostic_note> const & notes() const { return m_notes; }
};

struct elab_options {
    unsigned                                 m_max_steps = 10000;
    std::function<void(trace_event const &)> m_trace;
};

/// Maximum nesting of instance premises.
inline constexpr unsigned max_instance_depth = 32;

/// Translates preterms into terms, accumulating the constraints that make
/// them type correct. Every constraint is justified by the span of the
/// preterm that produced it.
class preprocessor {
public:
    struct hole {
        meta_id     m_meta;
        source_span m_span;
        std::string m_what;
        /// Type of the hole inside its own context.
        expr        m_type;
    };

private:
    environment             m_env;
    scope                   m_scope;
    std::vector<constraint> m_constraints;
    std::vector<hole>       m_holes;
    /// Instance choices waiting for the end of their application.
    std::vector<constraint> m_instances;

    void flush_instances(std::size_t mark);
    void emit(expr const & lhs, expr const & rhs, justification const & j);
    expr mk_hole(local_context const & ctx, expr const & type, source_span s, std::string what);
    std::vector<level> const_levels(name const & n, preterm const & p);

    expr visit_constant(name const & n, preterm const & p, local_context const & ctx);
    expr visit_app(preterm const & p, local_context const & ctx);
    expr visit_binder(preterm const & p, local_context const & ctx);
    expr visit_sort(preterm const & p);
    expr visit_annotated(preterm const & p, local_context const & ctx);
    expr visit_numeral(preterm const & p);

    expr overload_choice(std::vector<name> const & cands, preterm const & p, local_context const & ctx);

public:
    preprocessor(environment env, scope sc) : m_env(std::move(env)), m_scope(std::move(sc)) {}

    environment const & env() const { return m_env; }

    expr visit(preterm const & p, local_context const & ctx);
    /// Visits a preterm that must denote a type.
    expr visit_type(preterm const & p, local_context const & ctx);
    /// Type of `e`; equations raised by stuck types are emitted under `j`.
    expr infer(expr const & e, justification const & j);
    void ensure_type(expr const & e, justification const & j);

    /// Constant candidates for identifier `n`, in declaration order.
    std::vector<name> resolve(name const & n) const;
    /// Adds implicit arguments while the type of `r` is an implicit Π.
    /// Instance choices are held back until the enclosing application is done.
    expr insert_implicits(expr r, expr & type, local_context const & ctx, source_span s);
    /// Argument `s` of type `c` passed where `a` is expected.
    expr coerce_arg(expr const & s, expr const & c, expr const & a, local_context const & ctx,
                    justification const & j);
    /// Asserts `typeof(e) ≐ expected` at `s`, inserting the constraint at
    /// position `at` of the constraint list.
    void expect(expr const & e, expr const & expected, source_span s, std::size_t at);

    std::vector<constraint> const & constraints() const { return m_constraints; }
    std::vector<constraint> take_constraints() {
        flush_instances(0);
        return std::move(m_constraints);
    }
    std::optional<hole> hole_of(meta_id m) const;
};

/// Ondemand instance search for `?m ctx : type` (type class resolution).
choice_constraint mk_instance_choice(environment const & env, local_context const & ctx, expr const & meta_app,
                                     expr const & type, justification const & j, unsigned depth = 0);

/// The alternatives of instance resolution for goal `type`: one per
/// matching local or global instance, local instances first, in
/// declaration order otherwise. Empty when the goal is not a class.
alt_stream typeclass_resolve(environment const & env, local_context const & ctx, expr const & meta_app,
                             expr const & type, substitution const & s, unsigned depth = 0);

struct coercion_app {
    expr m_value;
    /// Source type expected by the coercion, and the coerced type.
    expr m_domain;
    expr m_type;
};

/// Applies coercion `c` to `s`, with metavariables for its parameters.
coercion_app mk_coercion_app(environment const & env, local_context const & ctx, coercion_info const & c,
                             expr const & s);

struct elab_result {
    expr              m_value;
    expr              m_type;
    std::vector<name> m_univ_params;
};

/// Elaborates `value` against the optional `type`, solves, substitutes and
/// kernel checks. `univ_params` lists declared universe parameters;
/// parameters occurring in the result are appended, and universe
/// metavariables left open become fresh parameters.
elab_result elaborate(environment const & env, scope const & sc, preterm const & type, preterm const & value,
                      std::vector<name> univ_params = {}, elab_options const & opts = {});

/// Elaborates a type (for axioms and inductive signatures).
elab_result elaborate_type(environment const & env, scope const & sc, preterm const & type,
                           std::vector<name> univ_params = {}, elab_options const & opts = {});

/// Diagnostic for a solver failure: the innermost asserted origins of `j`
/// in source order.
elab_error failure_error(justification const & j, std::string const & msg, source_span fallback);

}  // namespace elab
