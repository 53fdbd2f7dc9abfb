#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "elab/frontend/frontend.hpp"

int main(int argc, char ** argv) {
    CLI::App app{"Elaborator for a small dependent type theory"};
    std::string file;
    bool trace = false;
    bool no_color = false;
    bool no_prelude = false;
    unsigned max_steps = 10000;
    app.add_option("file", file, "Source file")->required();
    app.add_flag("--trace-elab", trace, "Print solver events to stderr");
    app.add_option("--max-steps", max_steps, "Solver step budget per declaration")->check(CLI::PositiveNumber);
    app.add_flag("--no-color", no_color, "Plain diagnostics");
    app.add_flag("--no-prelude", no_prelude, "Do not load the built-in prelude");
    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    elab::frontend_options opts;
    opts.m_elab.m_max_steps = max_steps;
    opts.m_color = !no_color && isatty(STDOUT_FILENO);
    if (trace)
        opts.m_elab.m_trace = [](elab::trace_event const & e) { std::cerr << elab::to_string(e) << "\n"; };
    return elab::run_file(file, opts, !no_prelude, std::cout, std::cerr);
}
