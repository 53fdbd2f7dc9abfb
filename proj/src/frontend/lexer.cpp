#include "elab/frontend/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace elab {

namespace {

constexpr std::array<std::string_view, 21> command_keywords{
    "definition", "theorem",   "lemma",     "instance", "axiom",  "constant", "inductive",
    "structure",  "class",     "attribute", "namespace", "end",   "open",     "check",
    "eval",       "example",   "universe",  "universes", "def",   "@[",       "abbreviation"};

constexpr std::array<std::string_view, 6> term_keywords{"fun", "forall", "Type", "Prop", "Sort", "max"};

/// Multi-byte symbols recognised verbatim.
constexpr std::array<std::string_view, 4> unicode_symbols{"λ", "Π", "∀", "→"};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_rest(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

class lexer {
    std::string_view   m_text;
    unsigned           m_file;
    std::size_t        m_pos = 0;
    unsigned           m_line = 1;
    unsigned           m_col = 1;
    std::vector<token> m_out;

    bool at(std::string_view s) const { return m_text.substr(m_pos, s.size()) == s; }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && m_pos < m_text.size(); ++i, ++m_pos) {
            unsigned char c = static_cast<unsigned char>(m_text[m_pos]);
            if (c == '\n') {
                ++m_line;
                m_col = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++m_col;
            }
        }
    }

    std::string_view unicode_symbol() const {
        for (auto s : unicode_symbols)
            if (at(s))
                return s;
        return {};
    }

    void skip_space() {
        while (m_pos < m_text.size()) {
            if (std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
                advance(1);
            } else if (at("--")) {
                while (m_pos < m_text.size() && m_text[m_pos] != '\n')
                    advance(1);
            } else if (at("/-")) {
                token open;
                open.m_kind = token_kind::error;
                open.m_text = "/-";
                open.m_span.m_file = m_file;
                open.m_span.m_line = m_line;
                open.m_span.m_col = m_col;
                unsigned depth = 0;
                do {
                    if (at("/-")) {
                        ++depth;
                        advance(2);
                    } else if (at("-/")) {
                        --depth;
                        advance(2);
                    } else {
                        advance(1);
                    }
                } while (depth > 0 && m_pos < m_text.size());
                if (depth > 0) {
                    open.m_span.m_end_line = m_line;
                    open.m_span.m_end_col = m_col;
                    m_out.push_back(std::move(open));
                }
            } else {
                return;
            }
        }
    }

    void push(token_kind k, std::size_t n) {
        token t;
        t.m_kind = k;
        t.m_text = std::string(m_text.substr(m_pos, n));
        t.m_span.m_file = m_file;
        t.m_span.m_line = m_line;
        t.m_span.m_col = m_col;
        advance(n);
        t.m_span.m_end_line = m_line;
        t.m_span.m_end_col = m_col;
        m_out.push_back(std::move(t));
    }

    std::size_t ident_length() const {
        std::size_t i = m_pos;
        while (true) {
            if (i >= m_text.size() || !ident_start(static_cast<unsigned char>(m_text[i])))
                break;
            std::string_view rest = m_text.substr(i);
            bool sym = std::any_of(unicode_symbols.begin(), unicode_symbols.end(),
                                   [&](std::string_view s) { return rest.substr(0, s.size()) == s; });
            if (sym)
                break;
            while (i < m_text.size() && ident_rest(static_cast<unsigned char>(m_text[i]))) {
                rest = m_text.substr(i);
                if (std::any_of(unicode_symbols.begin(), unicode_symbols.end(),
                                [&](std::string_view s) { return rest.substr(0, s.size()) == s; }))
                    break;
                ++i;
            }
            // a dot continues the name only when a name segment follows
            if (i + 1 < m_text.size() && m_text[i] == '.' &&
                ident_start(static_cast<unsigned char>(m_text[i + 1])))
                ++i;
            else
                break;
        }
        return i - m_pos;
    }

public:
    lexer(std::string_view text, unsigned file) : m_text(text), m_file(file) {}

    std::vector<token> run() {
        while (true) {
            skip_space();
            if (m_pos >= m_text.size())
                break;
            unsigned char c = static_cast<unsigned char>(m_text[m_pos]);
            if (auto s = unicode_symbol(); !s.empty()) {
                push(token_kind::symbol, s.size());
            } else if (at("@[")) {
                push(token_kind::keyword, 2);
            } else if (ident_start(c)) {
                std::size_t n = ident_length();
                std::string_view word = m_text.substr(m_pos, n);
                if (word == "_") {
                    push(token_kind::symbol, 1);
                } else {
                    bool kw = std::find(command_keywords.begin(), command_keywords.end(), word) !=
                                  command_keywords.end() ||
                              std::find(term_keywords.begin(), term_keywords.end(), word) != term_keywords.end();
                    push(kw ? token_kind::keyword : token_kind::ident, n);
                }
            } else if (std::isdigit(c)) {
                std::size_t n = 0;
                while (m_pos + n < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos + n])))
                    ++n;
                push(token_kind::number, n);
            } else if (at(":=") || at("->") || at(".{") || at("::")) {
                push(token_kind::symbol, 2);
            } else if (std::string_view("(){}[]:,=@|+.").find(static_cast<char>(c)) != std::string_view::npos) {
                push(token_kind::symbol, 1);
            } else {
                push(token_kind::error, 1);
            }
        }
        token e;
        e.m_kind = token_kind::eof;
        e.m_span = source_span{m_file, m_line, m_col, m_line, m_col};
        m_out.push_back(e);
        return std::move(m_out);
    }
};

}  // namespace

std::vector<token> tokenize(std::string_view text, unsigned file) { return lexer(text, file).run(); }

bool is_command_keyword(std::string_view s) {
    return std::find(command_keywords.begin(), command_keywords.end(), s) != command_keywords.end();
}

}  // namespace elab
