#include "elab/frontend/parser.hpp"

#include <algorithm>
#include <array>

namespace elab {

namespace {

constexpr std::array<std::string_view, 6> attribute_names{"reducible", "semireducible", "irreducible",
                                                          "class",     "instance",      "coercion"};

bool is_attribute(std::string_view s) {
    return std::find(attribute_names.begin(), attribute_names.end(), s) != attribute_names.end();
}

class parser {
    std::vector<token> m_tokens;
    std::size_t        m_pos = 0;

    token const & peek(std::size_t k = 0) const { return m_tokens[std::min(m_pos + k, m_tokens.size() - 1)]; }
    token const & last() const { return m_tokens[m_pos ? m_pos - 1 : 0]; }

    bool is(std::string_view s, std::size_t k = 0) const {
        token const & t = peek(k);
        return (t.m_kind == token_kind::symbol || t.m_kind == token_kind::keyword) && t.m_text == s;
    }
    bool is_ident(std::size_t k = 0) const { return peek(k).m_kind == token_kind::ident; }

    [[noreturn]] void fail(std::string const & msg) const {
        token const & t = peek();
        std::string got = t.m_kind == token_kind::eof ? "end of input" : "'" + t.m_text + "'";
        throw parse_error(t.m_span, msg + ", got " + got);
    }

    token const & next() { return m_tokens[m_pos < m_tokens.size() - 1 ? m_pos++ : m_pos]; }

    void expect(std::string_view s) {
        if (!is(s))
            fail("expected '" + std::string(s) + "'");
        next();
    }

    bool accept(std::string_view s) {
        if (!is(s))
            return false;
        next();
        return true;
    }

    name ident() {
        if (!is_ident())
            fail("expected identifier");
        return name(next().m_text);
    }

    source_span since(source_span const & start) const { return join(start, last().m_span); }

    // levels

    bool level_atom_start() const { return peek().m_kind == token_kind::number || is_ident() || is("_") || is("("); }

    level level_atom() {
        if (peek().m_kind == token_kind::number)
            return mk_level_of_nat(static_cast<unsigned>(std::stoul(next().m_text)));
        if (accept("_"))
            return mk_level_hole();
        if (accept("(")) {
            level l = level_expr();
            expect(")");
            return l;
        }
        return mk_level_param(ident());
    }

    level level_expr() {
        if (accept("max")) {
            level l = level_atom();
            if (!level_atom_start())
                fail("expected universe level");
            while (level_atom_start())
                l = mk_max(l, level_atom());
            return l;
        }
        level l = level_atom();
        while (accept("+")) {
            if (peek().m_kind != token_kind::number)
                fail("expected number");
            unsigned n = static_cast<unsigned>(std::stoul(next().m_text));
            for (unsigned i = 0; i < n; ++i)
                l = mk_succ(l);
        }
        return l;
    }

    std::vector<level> level_list() {
        expect(".{");
        std::vector<level> ls;
        while (!is("}"))
            ls.push_back(level_expr());
        expect("}");
        return ls;
    }

    // terms

    bool arg_start() const {
        token const & t = peek();
        if (t.m_kind == token_kind::ident || t.m_kind == token_kind::number)
            return true;
        return is("@") || is("_") || is("(") || is("Type") || is("Prop") || is("Sort") || binder_keyword();
    }

    bool binder_keyword() const { return is("fun") || is("λ") || is("Π") || is("forall") || is("∀"); }

    preterm arg() {
        source_span start = peek().m_span;
        if (is_ident() || is("@")) {
            bool explicit_ = accept("@");
            name n = ident();
            std::optional<std::vector<level>> ls;
            if (is(".{"))
                ls = level_list();
            return mk_pident(n, since(start), explicit_, std::move(ls));
        }
        if (peek().m_kind == token_kind::number)
            return mk_pnumeral(static_cast<unsigned>(std::stoul(next().m_text)), start);
        if (accept("_"))
            return mk_pplaceholder(start);
        if (accept("Prop"))
            return mk_psort(mk_level_zero(), start);
        if (accept("Type")) {
            level l = mk_level_zero();
            if (is(".{")) {
                next();
                l = level_expr();
                expect("}");
            }
            return mk_psort(mk_succ(l), since(start));
        }
        if (accept("Sort")) {
            if (!is(".{"))
                fail("expected '.{' after Sort");
            next();
            level l = level_expr();
            expect("}");
            return mk_psort(l, since(start));
        }
        if (accept("(")) {
            preterm t = term();
            if (accept(":")) {
                preterm ty = term();
                expect(")");
                return mk_pannotated(t, ty, since(start));
            }
            expect(")");
            return t;
        }
        fail("expected term");
    }

    preterm app_term() {
        preterm f = arg();
        while (arg_start()) {
            if (binder_keyword())
                return mk_papp(f, term());
            f = mk_papp(f, arg());
        }
        return f;
    }

    /// `a + b` is `add a b`, left associative.
    preterm sum_term() {
        preterm a = app_term();
        while (is("+")) {
            source_span s = peek().m_span;
            next();
            a = mk_papp(mk_papp(mk_pident("add", s), a), app_term());
        }
        return a;
    }

    preterm eq_term() {
        preterm a = sum_term();
        if (is("=")) {
            source_span s = peek().m_span;
            next();
            preterm b = sum_term();
            return mk_papp(mk_papp(mk_pident("eq", s), a), b);
        }
        return a;
    }

public:
    explicit parser(std::vector<token> ts) : m_tokens(std::move(ts)) {}

    bool done() const { return peek().m_kind == token_kind::eof; }

    preterm term() {
        source_span start = peek().m_span;
        if (accept("fun") || accept("λ")) {
            std::vector<binder> bs = binder_group(false);
            expect(",");
            preterm body = term();
            source_span s = since(start);
            for (auto it = bs.rbegin(); it != bs.rend(); ++it)
                body = mk_plambda(it->m_name, it->m_type, body, it->m_info, s);
            return body;
        }
        if (accept("Π") || accept("forall") || accept("∀")) {
            std::vector<binder> bs = binder_group(true);
            expect(",");
            preterm body = term();
            source_span s = since(start);
            for (auto it = bs.rbegin(); it != bs.rend(); ++it)
                body = mk_ppi(it->m_name, it->m_type, body, it->m_info, s);
            return body;
        }
        preterm lhs = eq_term();
        if (accept("->") || accept("→")) {
            preterm rhs = term();
            return mk_ppi(name(), lhs, rhs, binder_info::default_, since(start));
        }
        return lhs;
    }

    name binder_name() {
        if (accept("_"))
            return name("_");
        return ident();
    }

    /// Bare names and bracketed groups in any order, with an optional `: T` for trailing bare names.
    /// Π binders without a type get a hole.
    std::vector<binder> binder_group(bool pi) {
        std::vector<binder> out;
        std::vector<std::pair<name, source_span>> bare;
        auto flush = [&](preterm const & type) {
            for (auto const & [n, sp] : bare)
                out.push_back(binder{n, type ? type : pi ? mk_pplaceholder(sp) : preterm{}, binder_info::default_, sp});
            bare.clear();
        };
        while (true) {
            if (is("(") || is("{") || is("[")) {
                flush(nullptr);
                bracketed(out);
            } else if (is_ident() || is("_")) {
                source_span sp = peek().m_span;
                bare.emplace_back(binder_name(), sp);
            } else {
                break;
            }
        }
        if (out.empty() && bare.empty())
            fail("expected binder");
        if (!bare.empty() && accept(":"))
            flush(term());
        flush(nullptr);
        return out;
    }

    void bracketed(std::vector<binder> & out) {
        source_span start = peek().m_span;
        std::string open = next().m_text;
        std::string close = open == "(" ? ")" : open == "{" ? "}" : "]";
        binder_info bi = open == "(" ? binder_info::default_
                         : open == "{" ? binder_info::implicit
                                       : binder_info::inst_implicit;
        std::vector<name> ns;
        while (is_ident() || is("_"))
            ns.push_back(binder_name());
        if (ns.empty())
            fail("expected binder name");
        expect(":");
        preterm type = term();
        expect(close);
        for (auto const & n : ns)
            out.push_back(binder{n, type, bi, since(start)});
    }

    /// Declaration binders up to `:` or `:=`.
    std::vector<binder> decl_binders() {
        std::vector<binder> out;
        while (is("(") || is("{") || (is("[") && !attribute_ahead()))
            bracketed(out);
        return out;
    }

    bool attribute_ahead() const {
        return is("[") && attribute_at(1) && is("]", 2);
    }

    /// Attribute names include the keywords `class` and `instance`.
    bool attribute_at(std::size_t k) const {
        token const & t = peek(k);
        return (t.m_kind == token_kind::ident || t.m_kind == token_kind::keyword) && is_attribute(t.m_text);
    }

    void attributes(std::vector<std::string> & out) {
        while (attribute_ahead()) {
            next();
            out.push_back(next().m_text);
            next();
        }
    }

    std::vector<name> univ_decl() {
        std::vector<name> us;
        if (accept(".{")) {
            while (!is("}"))
                us.push_back(ident());
            expect("}");
        }
        return us;
    }

    command parse_command() {
        command c;
        source_span start = peek().m_span;
        if (accept("@[")) {
            while (true) {
                if (!attribute_at(0))
                    fail("expected attribute");
                c.m_attributes.push_back(next().m_text);
                if (!accept(","))
                    break;
            }
            expect("]");
        }
        token const & kw = peek();
        if (kw.m_kind != token_kind::keyword)
            fail("expected command");
        c.m_keyword = next().m_text;
        std::string const & k = c.m_keyword;
        if (k == "definition" || k == "def" || k == "theorem" || k == "lemma" || k == "instance" ||
            k == "abbreviation") {
            c.m_kind = command_kind::definition;
            c.m_names.push_back(ident());
            c.m_univ_params = univ_decl();
            attributes(c.m_attributes);
            c.m_binders = decl_binders();
            if (accept(":"))
                c.m_type = term();
            expect(":=");
            c.m_value = term();
        } else if (k == "axiom" || k == "constant") {
            c.m_kind = command_kind::axiom;
            c.m_names.push_back(ident());
            c.m_univ_params = univ_decl();
            attributes(c.m_attributes);
            c.m_binders = decl_binders();
            expect(":");
            c.m_type = term();
        } else if (k == "inductive") {
            c.m_kind = command_kind::inductive;
            c.m_names.push_back(ident());
            c.m_univ_params = univ_decl();
            attributes(c.m_attributes);
            c.m_binders = decl_binders();
            if (accept(":"))
                c.m_type = term();
            accept(":=");
            while (is("|")) {
                source_span cs = peek().m_span;
                next();
                constructor_decl d;
                d.m_name = ident();
                d.m_binders = decl_binders();
                if (accept(":"))
                    d.m_type = term();
                d.m_span = since(cs);
                c.m_constructors.push_back(std::move(d));
            }
        } else if (k == "structure" || k == "class") {
            c.m_kind = command_kind::structure;
            c.m_names.push_back(ident());
            c.m_univ_params = univ_decl();
            attributes(c.m_attributes);
            c.m_binders = decl_binders();
            if (accept(":"))
                c.m_type = term();
            expect(":=");
            constructor_decl d;
            d.m_name = "mk";
            d.m_span = peek().m_span;
            if (is_ident() && is("::", 1)) {
                d.m_name = ident();
                next();
            }
            d.m_binders = decl_binders();
            d.m_span = since(d.m_span);
            c.m_constructors.push_back(std::move(d));
        } else if (k == "attribute") {
            c.m_kind = command_kind::attribute;
            attributes(c.m_attributes);
            while (is_ident())
                c.m_names.push_back(ident());
            attributes(c.m_attributes);
            if (c.m_names.empty() || c.m_attributes.empty())
                fail("expected attribute and declaration names");
        } else if (k == "namespace") {
            c.m_kind = command_kind::namespace_open;
            c.m_names.push_back(ident());
        } else if (k == "end") {
            c.m_kind = command_kind::namespace_close;
            if (is_ident())
                c.m_names.push_back(ident());
        } else if (k == "open") {
            c.m_kind = command_kind::open;
            while (is_ident())
                c.m_names.push_back(ident());
            if (c.m_names.empty())
                fail("expected namespace");
        } else if (k == "universe" || k == "universes") {
            c.m_kind = command_kind::universe;
            while (is_ident())
                c.m_names.push_back(ident());
        } else if (k == "check" || k == "eval") {
            c.m_kind = k == "check" ? command_kind::check : command_kind::eval;
            c.m_value = term();
        } else if (k == "example") {
            c.m_kind = command_kind::example;
            c.m_binders = decl_binders();
            expect(":");
            c.m_type = term();
            expect(":=");
            c.m_value = term();
        } else {
            m_pos--;
            fail("expected command");
        }
        c.m_span = since(start);
        return c;
    }

    /// Skips to the next command keyword after an error.
    void recover() {
        if (!done())
            next();
        while (!done() && !(peek().m_kind == token_kind::keyword && is_command_keyword(peek().m_text)))
            next();
    }
};

std::string binder_text(binder const & b) {
    std::string open = "(", close = ")";
    if (b.m_info == binder_info::implicit)
        open = "{", close = "}";
    else if (b.m_info == binder_info::inst_implicit)
        open = "[", close = "]";
    return open + b.m_name.str() + " : " + to_string(b.m_type) + close;
}

bool same_binders(std::vector<binder> const & a, std::vector<binder> const & b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].m_name != b[i].m_name || a[i].m_info != b[i].m_info || !same_preterm(a[i].m_type, b[i].m_type))
            return false;
    return true;
}

}  // namespace

std::vector<command> parse_file(std::string_view text, unsigned file) {
    std::vector<command> out;
    std::vector<token> clean;
    // unknown characters and open comments are reported where they occur, then skipped
    for (auto const & t : tokenize(text, file)) {
        if (t.m_kind != token_kind::error) {
            clean.push_back(t);
            continue;
        }
        command c;
        c.m_span = t.m_span;
        c.m_message = t.m_text == "/-" ? "unterminated comment" : "unexpected character '" + t.m_text + "'";
        out.push_back(c);
    }
    bool sort = !out.empty();
    parser p(std::move(clean));
    while (!p.done()) {
        try {
            out.push_back(p.parse_command());
        } catch (parse_error const & e) {
            command c;
            c.m_span = e.span();
            c.m_message = e.what();
            out.push_back(c);
            p.recover();
        }
    }
    if (sort)
        std::stable_sort(out.begin(), out.end(),
                         [](command const & a, command const & b) { return a.m_span < b.m_span; });
    return out;
}

preterm parse_term(std::string_view text, unsigned file) {
    parser p(tokenize(text, file));
    preterm t = p.term();
    if (!p.done())
        throw parse_error(source_span{}, "unexpected input after term");
    return t;
}

preterm fold_pi(std::vector<binder> const & bs, preterm body) {
    for (auto it = bs.rbegin(); it != bs.rend(); ++it)
        body = mk_ppi(it->m_name, it->m_type, body, it->m_info, join(it->m_span, body->m_span));
    return body;
}

preterm fold_lambda(std::vector<binder> const & bs, preterm body) {
    for (auto it = bs.rbegin(); it != bs.rend(); ++it)
        body = mk_plambda(it->m_name, it->m_type, body, it->m_info, join(it->m_span, body->m_span));
    return body;
}

std::string to_string(command const & c) {
    std::string s;
    auto names = [&](std::vector<name> const & ns) {
        for (auto const & n : ns)
            s += " " + n.str();
    };
    auto univs = [&]() {
        if (c.m_univ_params.empty())
            return;
        s += ".{";
        for (std::size_t i = 0; i < c.m_univ_params.size(); ++i)
            s += (i ? " " : "") + c.m_univ_params[i].str();
        s += "}";
    };
    auto attrs = [&]() {
        for (auto const & a : c.m_attributes)
            s += " [" + a + "]";
    };
    auto binders = [&](std::vector<binder> const & bs) {
        for (auto const & b : bs)
            s += " " + binder_text(b);
    };
    switch (c.m_kind) {
    case command_kind::definition:
    case command_kind::axiom:
    case command_kind::inductive:
    case command_kind::structure:
        s = c.m_keyword + " " + c.m_names.front().str();
        univs();
        attrs();
        binders(c.m_binders);
        if (c.m_type)
            s += " : " + to_string(c.m_type);
        if (c.m_kind == command_kind::definition)
            s += " := " + to_string(c.m_value);
        if (c.m_kind == command_kind::inductive) {
            for (auto const & k : c.m_constructors) {
                s += "\n| " + k.m_name.str();
                binders(k.m_binders);
                if (k.m_type)
                    s += " : " + to_string(k.m_type);
            }
        }
        if (c.m_kind == command_kind::structure) {
            s += " := " + c.m_constructors.front().m_name.str() + " ::";
            binders(c.m_constructors.front().m_binders);
        }
        return s;
    case command_kind::attribute:
        s = "attribute";
        names(c.m_names);
        attrs();
        return s;
    case command_kind::namespace_open: return "namespace " + c.m_names.front().str();
    case command_kind::namespace_close:
        s = "end";
        names(c.m_names);
        return s;
    case command_kind::open:
        s = "open";
        names(c.m_names);
        return s;
    case command_kind::universe:
        s = "universes";
        names(c.m_names);
        return s;
    case command_kind::check: return "check " + to_string(c.m_value);
    case command_kind::eval: return "eval " + to_string(c.m_value);
    case command_kind::example:
        s = "example";
        binders(c.m_binders);
        return s + " : " + to_string(c.m_type) + " := " + to_string(c.m_value);
    case command_kind::error: return "-- " + c.m_message;
    }
    return s;
}

bool same_command(command const & a, command const & b) {
    if (a.m_kind != b.m_kind || a.m_names != b.m_names || a.m_univ_params != b.m_univ_params ||
        a.m_attributes != b.m_attributes || !same_binders(a.m_binders, b.m_binders) ||
        !same_preterm(a.m_type, b.m_type) || !same_preterm(a.m_value, b.m_value) ||
        a.m_constructors.size() != b.m_constructors.size())
        return false;
    for (std::size_t i = 0; i < a.m_constructors.size(); ++i) {
        auto const & x = a.m_constructors[i];
        auto const & y = b.m_constructors[i];
        if (x.m_name != y.m_name || !same_binders(x.m_binders, y.m_binders) || !same_preterm(x.m_type, y.m_type))
            return false;
    }
    return true;
}

}  // namespace elab
