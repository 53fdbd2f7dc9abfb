#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "elab/elaborator/elaborator.hpp"
#include "elab/frontend/parser.hpp"

namespace elab {

struct frontend_options {
    elab_options m_elab;
    /// ANSI colors in diagnostics.
    bool m_color = false;
};

/// Source text of the built-in prelude.
std::string_view prelude_source();

/// Processes commands in order against a growing environment. A failing
/// command is reported and skipped; later commands still run.
class frontend {
    environment              m_env;
    scope                    m_scope;
    std::vector<std::string> m_file_names;
    std::vector<std::string> m_sources;
    std::ostream &           m_out;
    frontend_options         m_opts;
    unsigned                 m_errors = 0;

    void process(command const & c);
    void definition(command const & c);
    void axiom(command const & c);
    void inductive(command const & c);
    void apply_attribute(name const & n, std::string const & attr, source_span s);
    void open(command const & c);
    name resolve_constant(name const & n, source_span s) const;
    name decl_name(command const & c) const { return m_scope.current() + c.m_names.front(); }

    std::string location(source_span const & s) const;
    std::string excerpt(source_span const & s) const;
    void report(source_span const & s, std::string const & msg, std::vector<diagnostic_note> const & notes = {});

public:
    explicit frontend(std::ostream & out, frontend_options opts = {}) : m_out(out), m_opts(std::move(opts)) {}

    void run(std::string_view text, std::string const & file_name);
    /// Loads the prelude without tracing.
    void load_prelude();

    unsigned num_errors() const { return m_errors; }
    environment const & env() const { return m_env; }
    scope const & current_scope() const { return m_scope; }
};

/// CLI driver: exit code 0 when the file elaborates cleanly, 1 when there
/// were diagnostics and 2 when the file cannot be read.
int run_file(std::string const & path, frontend_options const & opts, bool prelude, std::ostream & out,
             std::ostream & err);

}  // namespace elab
