#include "elab/frontend/frontend.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "elab/kernel/declare.hpp"
#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/printer.hpp"

namespace elab {

namespace {

std::optional<reducibility> hint_of(std::vector<std::string> const & attrs) {
    std::optional<reducibility> r;
    for (auto const & a : attrs) {
        if (a == "reducible")
            r = reducibility::reducible;
        else if (a == "semireducible")
            r = reducibility::semireducible;
        else if (a == "irreducible")
            r = reducibility::irreducible;
    }
    return r;
}

std::vector<binder> as_implicit(std::vector<binder> bs) {
    for (auto & b : bs)
        b.m_info = binder_info::implicit;
    return bs;
}

preterm applied_to_params(name const & n, std::vector<binder> const & params, source_span s) {
    preterm r = mk_pident(n, s);
    for (auto const & b : params)
        r = mk_papp(r, mk_pident(b.m_name, s));
    return r;
}

std::optional<name> head_of(environment const & env, expr const & e) {
    expr const & f = get_app_fn(whnf(env, e));
    if (f.is_constant())
        return f.const_name();
    return std::nullopt;
}

}  // namespace

std::string frontend::location(source_span const & s) const {
    std::string f = s.m_file < m_file_names.size() ? m_file_names[s.m_file] : std::string("?");
    if (s.empty())
        return f;
    return f + ":" + to_string(s);
}

std::string frontend::excerpt(source_span const & s) const {
    if (s.empty() || s.m_file >= m_sources.size())
        return {};
    std::string_view text = m_sources[s.m_file];
    std::size_t pos = 0;
    for (unsigned line = 1; line < s.m_line && pos != std::string_view::npos; ++line) {
        pos = text.find('\n', pos);
        if (pos != std::string_view::npos)
            ++pos;
    }
    if (pos == std::string_view::npos)
        return {};
    std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    // columns count code points
    auto offset = [&](unsigned col) {
        std::size_t i = 0;
        for (unsigned c = 1; c < col && i < line.size(); ++c) {
            ++i;
            while (i < line.size() && (static_cast<unsigned char>(line[i]) & 0xC0) == 0x80)
                ++i;
        }
        return i;
    };
    std::size_t b = offset(s.m_col);
    std::size_t e = s.m_end_line == s.m_line ? offset(s.m_end_col) : line.size();
    std::string r(line.substr(b, e > b ? e - b : 0));
    if (s.m_end_line != s.m_line)
        r += " ...";
    if (r.size() > 60)
        r = r.substr(0, 57) + "...";
    return r;
}

void frontend::report(source_span const & s, std::string const & msg, std::vector<diagnostic_note> const & notes) {
    ++m_errors;
    std::string err = m_opts.m_color ? "\033[1;31merror\033[0m" : "error";
    std::string note = m_opts.m_color ? "\033[1;36mnote\033[0m" : "note";
    m_out << location(s) << ": " << err << ": " << msg << "\n";
    for (auto const & n : notes) {
        m_out << "  " << location(n.m_span) << ": " << note << ": " << n.m_message;
        std::string x = excerpt(n.m_span);
        if (!x.empty())
            m_out << " '" << x << "'";
        m_out << "\n";
    }
}

void frontend::run(std::string_view text, std::string const & file_name) {
    unsigned id = static_cast<unsigned>(m_file_names.size());
    m_file_names.push_back(file_name);
    m_sources.emplace_back(text);
    for (auto const & c : parse_file(text, id))
        process(c);
}

void frontend::load_prelude() {
    auto trace = std::exchange(m_opts.m_elab.m_trace, nullptr);
    run(prelude_source(), "prelude");
    m_opts.m_elab.m_trace = std::move(trace);
}

void frontend::process(command const & c) {
    try {
        switch (c.m_kind) {
        case command_kind::error: report(c.m_span, c.m_message); return;
        case command_kind::definition: return definition(c);
        case command_kind::axiom: return axiom(c);
        case command_kind::inductive:
        case command_kind::structure: return inductive(c);
        case command_kind::attribute:
            for (auto const & n : c.m_names) {
                name full = resolve_constant(n, c.m_span);
                for (auto const & a : c.m_attributes)
                    apply_attribute(full, a, c.m_span);
            }
            return;
        case command_kind::namespace_open:
            m_scope.m_namespaces.push_back(m_scope.current() + c.m_names.front());
            return;
        case command_kind::namespace_close: {
            if (m_scope.m_namespaces.empty())
                throw elab_error(c.m_span, "'end' without open namespace");
            name cur = m_scope.current();
            if (!c.m_names.empty() && cur != cur.prefix() + c.m_names.front())
                throw elab_error(c.m_span, "namespace '" + cur.str() + "' closed with '" + c.m_names.front().str() + "'");
            m_scope.m_namespaces.pop_back();
            return;
        }
        case command_kind::open: return open(c);
        case command_kind::universe: return;
        case command_kind::check: {
            elab_result r = elaborate(m_env, m_scope, nullptr, c.m_value, {}, m_opts.m_elab);
            printer p(m_env);
            std::string v = p(r.m_value);
            m_out << v << " : " << p(r.m_type) << "\n";
            return;
        }
        case command_kind::eval: {
            elab_result r = elaborate(m_env, m_scope, nullptr, c.m_value, {}, m_opts.m_elab);
            m_out << pp(m_env, normalize(m_env, r.m_value)) << "\n";
            return;
        }
        case command_kind::example:
            elaborate(m_env, m_scope, fold_pi(c.m_binders, c.m_type), fold_lambda(c.m_binders, c.m_value), {},
                      m_opts.m_elab);
            return;
        }
    } catch (elab_error const & e) {
        report(e.span().empty() ? c.m_span : e.span(), e.what(), e.notes());
    } catch (kernel_exception const & e) {
        report(c.m_span, e.what());
    }
}

void frontend::definition(command const & c) {
    name n = decl_name(c);
    preterm type = c.m_type ? fold_pi(c.m_binders, c.m_type) : nullptr;
    preterm value = fold_lambda(c.m_binders, c.m_value);
    elab_result r = elaborate(m_env, m_scope, type, value, c.m_univ_params, m_opts.m_elab);
    reducibility hint = hint_of(c.m_attributes).value_or(c.m_keyword == "abbreviation" ? reducibility::reducible
                                                                                        : reducibility::semireducible);
    m_env = check_declaration(m_env, definition_decl{n, r.m_univ_params, r.m_type, r.m_value, hint});
    for (auto const & a : c.m_attributes)
        if (!hint_of({a}))
            apply_attribute(n, a, c.m_span);
    if (c.m_keyword == "instance")
        apply_attribute(n, "instance", c.m_span);
}

void frontend::axiom(command const & c) {
    name n = decl_name(c);
    elab_result r = elaborate_type(m_env, m_scope, fold_pi(c.m_binders, c.m_type), c.m_univ_params, m_opts.m_elab);
    m_env = check_declaration(m_env, axiom_decl{n, r.m_univ_params, r.m_value});
    for (auto const & a : c.m_attributes)
        apply_attribute(n, a, c.m_span);
}

void frontend::inductive(command const & c) {
    name n = decl_name(c);
    bool structure = c.m_kind == command_kind::structure;
    preterm sort = c.m_type ? c.m_type : mk_psort(mk_level_one(), c.m_span);
    elab_result ty = elaborate_type(m_env, m_scope, fold_pi(c.m_binders, sort), c.m_univ_params, m_opts.m_elab);
    environment tmp = m_env.add(constant_info{n, ty.m_univ_params, ty.m_value, axiom_val{}});

    std::vector<binder> params = as_implicit(c.m_binders);
    inductive_decl d{n, ty.m_univ_params, static_cast<unsigned>(c.m_binders.size()), ty.m_value, {}};
    for (auto const & k : c.m_constructors) {
        preterm result = k.m_type ? k.m_type
                                  : applied_to_params(c.m_names.front(), c.m_binders, k.m_span.empty() ? c.m_span : k.m_span);
        preterm kt = fold_pi(params, fold_pi(k.m_binders, result));
        elab_result r = elaborate_type(tmp, m_scope, kt, ty.m_univ_params, m_opts.m_elab);
        if (r.m_univ_params.size() != ty.m_univ_params.size())
            throw elab_error(k.m_span, "constructor '" + k.m_name.str() + "' uses universe levels not declared by '" +
                                           n.str() + "'");
        d.m_constructors.emplace_back(n + k.m_name, r.m_value);
    }
    bool is_class = c.m_keyword == "class" ||
                    std::find(c.m_attributes.begin(), c.m_attributes.end(), "class") != c.m_attributes.end();
    m_env = check_declaration(m_env, d);
    if (structure)
        m_env = add_projections(m_env, n, is_class);
    if (c.m_keyword == "class")
        m_env = m_env.add_class(n);
    for (auto const & a : c.m_attributes)
        apply_attribute(n, a, c.m_span);
}

name frontend::resolve_constant(name const & n, source_span s) const {
    preprocessor p(m_env, m_scope);
    std::vector<name> cs = p.resolve(n);
    if (cs.empty())
        throw elab_error(s, "unknown declaration '" + n.str() + "'");
    if (cs.size() > 1)
        throw elab_error(s, "ambiguous declaration '" + n.str() + "'");
    return cs.front();
}

void frontend::apply_attribute(name const & n, std::string const & attr, source_span s) {
    constant_info const & info = m_env.get(n);
    if (auto r = hint_of({attr})) {
        if (!info.is_definition())
            throw elab_error(s, "'" + n.str() + "' is not a definition");
        m_env = m_env.set_reducibility(n, *r);
        return;
    }
    if (attr == "class") {
        if (!info.is_inductive())
            throw elab_error(s, "'" + n.str() + "' is not an inductive type");
        m_env = m_env.add_class(n);
        return;
    }
    expr t = info.m_type;
    unsigned arity = 0;
    expr last_domain;
    while (t.is_pi()) {
        last_domain = t.binder_domain();
        t = t.binder_body();
        ++arity;
    }
    if (attr == "instance") {
        auto cls = head_of(m_env, t);
        if (!cls || !m_env.is_class(*cls))
            throw elab_error(s, "'" + n.str() + "' is not an instance of a class");
        m_env = m_env.add_instance(*cls, n);
        return;
    }
    if (attr == "coercion") {
        if (arity == 0 || has_loose_bvar(t, 0))
            throw elab_error(s, "'" + n.str() + "' is not a coercion");
        auto from = head_of(m_env, last_domain);
        auto to = head_of(m_env, t);
        if (!from || !to)
            throw elab_error(s, "coercion '" + n.str() + "' must map between type families");
        if (*from == *to)
            throw elab_error(s, "'" + n.str() + "' is not a coercion");
        m_env = m_env.add_coercion(coercion_info{n, *from, *to, arity - 1});
    }
}

void frontend::open(command const & c) {
    for (auto const & ns : c.m_names) {
        std::vector<name> targets;
        for (auto it = m_scope.m_namespaces.rbegin(); it != m_scope.m_namespaces.rend(); ++it)
            targets.push_back(*it + ns);
        targets.push_back(ns);
        bool found = false;
        for (auto const & full : targets) {
            std::vector<std::pair<name, name>> aliases;
            m_env.for_each_constant([&](constant_info const & k) {
                if (k.m_name.has_prefix(full))
                    aliases.emplace_back(k.m_name.drop_prefix(full), k.m_name);
            });
            std::sort(aliases.begin(), aliases.end());
            for (auto const & [a, t] : aliases)
                m_env = m_env.add_alias(a, t);
            if (!aliases.empty()) {
                found = true;
                break;
            }
        }
        if (!found)
            throw elab_error(c.m_span, "unknown namespace '" + ns.str() + "'");
    }
}

int run_file(std::string const & path, frontend_options const & opts, bool prelude, std::ostream & out,
             std::ostream & err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "elab: cannot read '" << path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    frontend f(out, opts);
    if (prelude)
        f.load_prelude();
    f.run(buf.str(), path);
    return f.num_errors() ? 1 : 0;
}

}  // namespace elab
