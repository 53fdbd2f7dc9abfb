#include "elab/elaborator/preterm.hpp"

namespace elab {

namespace {

preterm mk(preterm_node n) { return std::make_shared<const preterm_node>(std::move(n)); }

constexpr int prec_arrow = 25;
constexpr int prec_app = 1000;
constexpr int prec_max = 1024;

std::string paren(std::string const & s, bool p) { return p ? "(" + s + ")" : s; }

std::optional<unsigned> literal_nat(level const & l) {
    unsigned n = 0;
    level c = l;
    for (; c.is_succ(); c = c.succ_of())
        ++n;
    if (!c.is_zero())
        return std::nullopt;
    return n;
}

std::string level_text(level const & l, bool nested) {
    if (is_level_hole(l))
        return "_";
    if (auto n = literal_nat(l))
        return std::to_string(*n);
    switch (l.kind()) {
    case level_kind::param: return l.param_name().str();
    case level_kind::succ: return paren(level_text(l.succ_of(), true) + "+1", nested);
    case level_kind::max:
        return paren("max " + level_text(l.max_lhs(), true) + " " + level_text(l.max_rhs(), true), nested);
    default: return "_";
    }
}

struct text {
    std::string s;
    int         prec;
};

text print(preterm const & p);

std::string arg(preterm const & p) {
    text t = print(p);
    return paren(t.s, t.prec < prec_max);
}

text print(preterm const & p) {
    switch (p->m_kind) {
    case preterm_kind::ident: {
        std::string s = (p->m_explicit ? "@" : "") + p->m_name.str();
        if (p->m_levels) {
            s += ".{";
            for (std::size_t i = 0; i < p->m_levels->size(); ++i)
                s += (i ? " " : "") + level_text((*p->m_levels)[i], true);
            s += "}";
        }
        return {s, prec_max};
    }
    case preterm_kind::app: {
        text f = print(p->m_lhs);
        return {paren(f.s, f.prec < prec_app) + " " + arg(p->m_rhs), prec_app};
    }
    case preterm_kind::lambda:
    case preterm_kind::pi: {
        if (p->m_kind == preterm_kind::pi && p->m_name.is_anonymous()) {
            text d = print(p->m_lhs);
            text b = print(p->m_rhs);
            return {paren(d.s, d.prec <= prec_arrow) + " -> " + paren(b.s, b.prec < prec_arrow), prec_arrow};
        }
        std::string s = p->m_kind == preterm_kind::lambda ? "fun " : "Π ";
        std::string open = "(", close = ")";
        if (p->m_info == binder_info::implicit)
            open = "{", close = "}";
        else if (p->m_info == binder_info::inst_implicit)
            open = "[", close = "]";
        if (p->m_lhs)
            s += open + p->m_name.str() + " : " + print(p->m_lhs).s + close;
        else
            s += p->m_name.str();
        return {s + ", " + print(p->m_rhs).s, 0};
    }
    case preterm_kind::placeholder: return {"_", prec_max};
    case preterm_kind::sort: {
        level const & l = p->m_level;
        if (l.is_zero())
            return {"Prop", prec_max};
        if (l.is_succ() && l.succ_of().is_zero())
            return {"Type", prec_max};
        if (l.is_succ())
            return {"Type.{" + level_text(l.succ_of(), false) + "}", prec_max};
        return {"Sort.{" + level_text(l, false) + "}", prec_max};
    }
    case preterm_kind::annotated:
        return {"(" + print(p->m_lhs).s + " : " + print(p->m_rhs).s + ")", prec_max};
    case preterm_kind::numeral: return {std::to_string(p->m_value), prec_max};
    }
    return {"_", prec_max};
}

}  // namespace

level mk_level_hole() { return mk_level_param("_"); }

bool is_level_hole(level const & l) { return l.kind() == level_kind::param && l.param_name() == name("_"); }

preterm mk_pident(name const & n, source_span s, bool explicit_, std::optional<std::vector<level>> levels) {
    preterm_node r;
    r.m_kind = preterm_kind::ident;
    r.m_span = s;
    r.m_name = n;
    r.m_explicit = explicit_;
    r.m_levels = std::move(levels);
    return mk(std::move(r));
}

preterm mk_papp(preterm f, preterm a) {
    preterm_node r;
    r.m_kind = preterm_kind::app;
    r.m_span = join(f->m_span, a->m_span);
    r.m_lhs = std::move(f);
    r.m_rhs = std::move(a);
    return mk(std::move(r));
}

preterm mk_plambda(name const & n, preterm domain, preterm body, binder_info bi, source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::lambda;
    r.m_span = s;
    r.m_name = n;
    r.m_lhs = std::move(domain);
    r.m_rhs = std::move(body);
    r.m_info = bi;
    return mk(std::move(r));
}

preterm mk_ppi(name const & n, preterm domain, preterm body, binder_info bi, source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::pi;
    r.m_span = s;
    r.m_name = n;
    r.m_lhs = std::move(domain);
    r.m_rhs = std::move(body);
    r.m_info = bi;
    return mk(std::move(r));
}

preterm mk_pplaceholder(source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::placeholder;
    r.m_span = s;
    return mk(std::move(r));
}

preterm mk_psort(level const & l, source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::sort;
    r.m_span = s;
    r.m_level = l;
    return mk(std::move(r));
}

preterm mk_pannotated(preterm t, preterm type, source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::annotated;
    r.m_span = s;
    r.m_lhs = std::move(t);
    r.m_rhs = std::move(type);
    return mk(std::move(r));
}

preterm mk_pnumeral(unsigned n, source_span s) {
    preterm_node r;
    r.m_kind = preterm_kind::numeral;
    r.m_span = s;
    r.m_value = n;
    return mk(std::move(r));
}

bool same_preterm(preterm const & a, preterm const & b) {
    if (!a || !b)
        return !a && !b;
    if (a->m_kind != b->m_kind)
        return false;
    switch (a->m_kind) {
    case preterm_kind::ident:
        return a->m_name == b->m_name && a->m_explicit == b->m_explicit && a->m_levels == b->m_levels;
    case preterm_kind::app:
    case preterm_kind::annotated: return same_preterm(a->m_lhs, b->m_lhs) && same_preterm(a->m_rhs, b->m_rhs);
    case preterm_kind::lambda:
    case preterm_kind::pi:
        return a->m_name == b->m_name && a->m_info == b->m_info && same_preterm(a->m_lhs, b->m_lhs) &&
               same_preterm(a->m_rhs, b->m_rhs);
    case preterm_kind::placeholder: return true;
    case preterm_kind::sort: return a->m_level == b->m_level;
    case preterm_kind::numeral: return a->m_value == b->m_value;
    }
    return false;
}

std::string to_string(preterm const & p) { return print(p).s; }

}  // namespace elab
