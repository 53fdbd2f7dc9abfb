#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>

#include "elab/kernel/environment.hpp"

namespace elab {

struct print_options {
    /// Print every argument and universe instance (`@f.{u} A x`), producing
    /// text that re-elaborates to the same term.
    bool m_explicit = false;
    /// Render nat.succ/nat.zero chains as numerals.
    bool m_numerals = true;
};

/// Pretty printer. Metavariables are numbered by first appearance, so one
/// printer instance should be reused for all terms of a single message.
class printer {
    environment const *                         m_env;
    print_options                               m_opts;
    std::unordered_map<std::uint64_t, unsigned> m_meta_names;
    std::unordered_map<std::uint64_t, unsigned> m_level_meta_names;
    std::unordered_set<std::string>             m_used;

    struct result {
        std::string text;
        int         prec;
    };

    result pp(expr const & e);
    result pp_app(expr const & e);
    result pp_binder(expr const & e);
    std::string pp_arg(expr const & e);
    bool takes_implicit(expr const & f) const;
    std::string pp_level(level const & l, bool nested);
    std::string meta_name(expr const & m);
    name fresh_binder_name(name const & n, expr const & body);
    std::optional<unsigned> numeral(expr const & e) const;

public:
    explicit printer(environment const & env, print_options opts = {}) : m_env(&env), m_opts(opts) {}

    std::string operator()(expr const & e);
    std::string operator()(level const & l);
};

std::string pp(environment const & env, expr const & e, print_options opts = {});

}  // namespace elab
