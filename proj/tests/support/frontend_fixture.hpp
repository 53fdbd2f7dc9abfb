#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "elab/frontend/frontend.hpp"
#include "elab/kernel/printer.hpp"

namespace elab::test {

struct run_output {
    std::string m_out;
    unsigned    m_errors = 0;
    environment m_env;
    scope       m_scope;
};

inline run_output run_text(std::string_view text, bool prelude = true, frontend_options opts = {}) {
    std::ostringstream out;
    frontend f(out, std::move(opts));
    if (prelude)
        f.load_prelude();
    unsigned before = f.num_errors();
    f.run(text, "test.elab");
    return {out.str(), f.num_errors() - before, f.env(), f.current_scope()};
}

/// Prelude environment, loaded once.
inline environment const & prelude_env() {
    static environment const env = run_text("").m_env;
    return env;
}

/// Elaborates a term against `env` with no expected type.
inline elab_result elab_term(environment const & env, std::string_view text, elab_options const & opts = {}) {
    return elaborate(env, scope{}, nullptr, parse_term(text, 1), {}, opts);
}

inline std::string pp_term(environment const & env, expr const & e) { return pp(env, e); }

}  // namespace elab::test
