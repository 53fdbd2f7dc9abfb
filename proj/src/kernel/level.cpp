#include "elab/kernel/level.hpp"

#include <algorithm>
#include <sstream>

namespace elab {

struct level_cell {
    level_kind                        kind;
    std::shared_ptr<const level_cell> a;
    std::shared_ptr<const level_cell> b;
    name          param;
    level_meta_id meta{};
    bool          has_meta = false;
    bool          has_param = false;
    std::size_t   hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::shared_ptr<const level_cell> const & zero_cell() {
    static auto const cell = [] {
        auto c = std::make_shared<level_cell>();
        c->kind = level_kind::zero;
        c->hash = 17;
        return std::shared_ptr<const level_cell>(c);
    }();
    return cell;
}

}  // namespace

level::level() : m_ptr(zero_cell()) {}

level_kind level::kind() const { return m_ptr->kind; }
level level::succ_of() const { return level(m_ptr->a); }
level level::max_lhs() const { return level(m_ptr->a); }
level level::max_rhs() const { return level(m_ptr->b); }
name const & level::param_name() const { return m_ptr->param; }
level_meta_id level::meta_id() const { return m_ptr->meta; }
bool level::has_meta() const { return m_ptr->has_meta; }
bool level::has_param() const { return m_ptr->has_param; }
std::size_t level::hash() const { return m_ptr->hash; }

bool operator==(level const & a, level const & b) {
    if (a.m_ptr == b.m_ptr)
        return true;
    if (a.kind() != b.kind() || a.hash() != b.hash())
        return false;
    switch (a.kind()) {
    case level_kind::zero: return true;
    case level_kind::succ: return a.succ_of() == b.succ_of();
    case level_kind::max: return a.max_lhs() == b.max_lhs() && a.max_rhs() == b.max_rhs();
    case level_kind::param: return a.param_name() == b.param_name();
    case level_kind::meta: return a.meta_id() == b.meta_id();
    }
    return false;
}

level mk_level_zero() { return level(zero_cell()); }
level mk_level_one() { return mk_succ(mk_level_zero()); }

level mk_succ(level const & l) {
    auto c = std::make_shared<level_cell>();
    c->kind = level_kind::succ;
    c->a = l.m_ptr;
    c->has_meta = l.has_meta();
    c->has_param = l.has_param();
    c->hash = mix(31, l.hash());
    return level(std::move(c));
}

level mk_max(level const & a, level const & b) {
    auto c = std::make_shared<level_cell>();
    c->kind = level_kind::max;
    c->a = a.m_ptr;
    c->b = b.m_ptr;
    c->has_meta = a.has_meta() || b.has_meta();
    c->has_param = a.has_param() || b.has_param();
    c->hash = mix(mix(37, a.hash()), b.hash());
    return level(std::move(c));
}

level mk_level_param(name const & n) {
    auto c = std::make_shared<level_cell>();
    c->kind = level_kind::param;
    c->param = n;
    c->has_param = true;
    c->hash = mix(41, std::hash<name>()(n));
    return level(std::move(c));
}

level mk_level_meta(level_meta_id id) {
    auto c = std::make_shared<level_cell>();
    c->kind = level_kind::meta;
    c->meta = id;
    c->has_meta = true;
    c->hash = mix(43, std::hash<std::uint64_t>()(id.value));
    return level(std::move(c));
}

level mk_fresh_level_meta() { return mk_level_meta(fresh_id<level_meta_id>()); }

level mk_level_of_nat(unsigned n) {
    level r;
    for (unsigned i = 0; i < n; ++i)
        r = mk_succ(r);
    return r;
}

namespace {

// A normalized level is a max over terms `succ^offset(base)` where base is
// zero, a parameter or a metavariable.
struct level_term {
    level    base;
    unsigned offset;
};

int base_rank(level const & b) {
    switch (b.kind()) {
    case level_kind::zero: return 0;
    case level_kind::param: return 1;
    default: return 2;
    }
}

bool base_less(level const & x, level const & y) {
    int rx = base_rank(x), ry = base_rank(y);
    if (rx != ry)
        return rx < ry;
    if (x.is_param())
        return x.param_name() < y.param_name();
    if (x.is_meta())
        return x.meta_id() < y.meta_id();
    return false;
}

bool base_eq(level const & x, level const & y) { return !base_less(x, y) && !base_less(y, x); }

void collect_terms(level const & l, unsigned offset, std::vector<level_term> & out) {
    switch (l.kind()) {
    case level_kind::succ: collect_terms(l.succ_of(), offset + 1, out); return;
    case level_kind::max:
        collect_terms(l.max_lhs(), offset, out);
        collect_terms(l.max_rhs(), offset, out);
        return;
    default: out.push_back({l, offset}); return;
    }
}

std::vector<level_term> normal_terms(level const & l) {
    std::vector<level_term> terms;
    collect_terms(l, 0, terms);
    std::sort(terms.begin(), terms.end(), [](level_term const & x, level_term const & y) {
        if (base_less(x.base, y.base))
            return true;
        if (base_less(y.base, x.base))
            return false;
        return x.offset > y.offset;
    });
    std::vector<level_term> uniq;
    for (auto const & t : terms)
        if (uniq.empty() || !base_eq(uniq.back().base, t.base))
            uniq.push_back(t);
    // zero+k is dominated by any other operand with offset >= k
    if (uniq.size() > 1 && uniq.front().base.is_zero()) {
        unsigned k = uniq.front().offset;
        bool dominated = std::any_of(uniq.begin() + 1, uniq.end(), [&](level_term const & t) { return t.offset >= k; });
        if (dominated)
            uniq.erase(uniq.begin());
    }
    return uniq;
}

level rebuild(level_term const & t) {
    level r = t.base;
    for (unsigned i = 0; i < t.offset; ++i)
        r = mk_succ(r);
    return r;
}

}  // namespace

level normalize(level const & l) {
    auto terms = normal_terms(l);
    level r = rebuild(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        r = mk_max(rebuild(terms[i]), r);
    return r;
}

bool is_equivalent(level const & a, level const & b) { return a == b || normalize(a) == normalize(b); }

bool is_geq(level const & a, level const & b) {
    auto ta = normal_terms(a);
    auto tb = normal_terms(b);
    for (auto const & t : tb) {
        bool covered = std::any_of(ta.begin(), ta.end(), [&](level_term const & s) {
            if (t.base.is_zero())
                return s.offset >= t.offset;
            return base_eq(s.base, t.base) && s.offset >= t.offset;
        });
        if (!covered)
            return false;
    }
    return true;
}

std::optional<unsigned> to_nat(level const & l) {
    auto terms = normal_terms(l);
    if (terms.size() == 1 && terms[0].base.is_zero())
        return terms[0].offset;
    return std::nullopt;
}

level instantiate_params(level const & l, std::vector<name> const & params, std::vector<level> const & values) {
    if (!l.has_param())
        return l;
    switch (l.kind()) {
    case level_kind::succ: return mk_succ(instantiate_params(l.succ_of(), params, values));
    case level_kind::max:
        return mk_max(instantiate_params(l.max_lhs(), params, values), instantiate_params(l.max_rhs(), params, values));
    case level_kind::param:
        for (std::size_t i = 0; i < params.size() && i < values.size(); ++i)
            if (params[i] == l.param_name())
                return values[i];
        return l;
    default: return l;
    }
}

level replace_metas(level const & l, std::function<std::optional<level>(level_meta_id)> const & f) {
    if (!l.has_meta())
        return l;
    switch (l.kind()) {
    case level_kind::succ: return mk_succ(replace_metas(l.succ_of(), f));
    case level_kind::max: return mk_max(replace_metas(l.max_lhs(), f), replace_metas(l.max_rhs(), f));
    case level_kind::meta:
        if (auto v = f(l.meta_id()))
            return *v;
        return l;
    default: return l;
    }
}

void for_each_meta(level const & l, std::function<void(level_meta_id)> const & f) {
    if (!l.has_meta())
        return;
    switch (l.kind()) {
    case level_kind::succ: for_each_meta(l.succ_of(), f); return;
    case level_kind::max:
        for_each_meta(l.max_lhs(), f);
        for_each_meta(l.max_rhs(), f);
        return;
    case level_kind::meta: f(l.meta_id()); return;
    default: return;
    }
}

bool occurs_meta(level_meta_id m, level const & l) {
    bool found = false;
    for_each_meta(l, [&](level_meta_id x) { found = found || x == m; });
    return found;
}

namespace {

void print(std::ostream & out, level const & l, bool nested) {
    if (auto n = to_nat(l)) {
        out << *n;
        return;
    }
    unsigned k = 0;
    level base = l;
    while (base.is_succ()) {
        base = base.succ_of();
        ++k;
    }
    if (k > 0 && !base.is_max()) {
        if (nested)
            out << "(";
        print(out, base, true);
        out << "+" << k;
        if (nested)
            out << ")";
        return;
    }
    switch (l.kind()) {
    case level_kind::param: out << l.param_name(); return;
    case level_kind::meta: out << "?u" << l.meta_id().value; return;
    case level_kind::max:
        if (nested)
            out << "(";
        out << "max ";
        print(out, l.max_lhs(), true);
        out << " ";
        print(out, l.max_rhs(), true);
        if (nested)
            out << ")";
        return;
    default:
        if (nested)
            out << "(";
        out << "succ ";
        print(out, l.succ_of(), true);
        if (nested)
            out << ")";
        return;
    }
}

}  // namespace

std::string to_string(level const & l) {
    std::ostringstream out;
    print(out, l, false);
    return out.str();
}

}  // namespace elab
