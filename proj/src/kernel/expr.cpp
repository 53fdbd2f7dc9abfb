#include "elab/kernel/expr.hpp"

#include <algorithm>
#include <cassert>

namespace elab {

struct expr_cell {
    expr_kind          kind;
    unsigned           bound = 0;
    bool               has_fvar = false;
    bool               has_meta = false;
    bool               has_level_meta = false;
    bool               has_level_param = false;
    binder_info        info = binder_info::default_;
    std::size_t        hash = 0;
    unsigned           idx = 0;
    std::uint64_t      id = 0;
    name               nm;
    std::vector<level> levels;
    level              lvl;
    expr               a;
    expr               b;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::shared_ptr<expr_cell> new_cell(expr_kind k) {
    auto c = std::make_shared<expr_cell>();
    c->kind = k;
    return c;
}

}  // namespace

expr_kind expr::kind() const { return m_ptr->kind; }
unsigned expr::bvar_idx() const { return m_ptr->idx; }
fvar_id expr::fvar() const { return fvar_id{m_ptr->id}; }
meta_id expr::meta() const { return meta_id{m_ptr->id}; }
expr const & expr::local_type() const { return m_ptr->a; }
name const & expr::local_name() const { return m_ptr->nm; }
binder_info expr::info() const { return m_ptr->info; }
name const & expr::const_name() const { return m_ptr->nm; }
std::vector<level> const & expr::const_levels() const { return m_ptr->levels; }
level const & expr::sort_level() const { return m_ptr->lvl; }
expr const & expr::app_fn() const { return m_ptr->a; }
expr const & expr::app_arg() const { return m_ptr->b; }
expr const & expr::binder_domain() const { return m_ptr->a; }
expr const & expr::binder_body() const { return m_ptr->b; }
unsigned expr::bound() const { return m_ptr->bound; }
bool expr::has_fvar() const { return m_ptr->has_fvar; }
bool expr::has_meta() const { return m_ptr->has_meta; }
bool expr::has_level_meta() const { return m_ptr->has_level_meta; }
bool expr::has_level_param() const { return m_ptr->has_level_param; }
std::size_t expr::hash() const { return m_ptr->hash; }

bool operator==(expr const & a, expr const & b) {
    if (a.is_same(b))
        return true;
    if (a.is_null() || b.is_null())
        return false;
    if (a.kind() != b.kind() || a.hash() != b.hash())
        return false;
    switch (a.kind()) {
    case expr_kind::bvar: return a.bvar_idx() == b.bvar_idx();
    case expr_kind::fvar: return a.fvar() == b.fvar();
    case expr_kind::meta: return a.meta() == b.meta();
    case expr_kind::constant: return a.const_name() == b.const_name() && a.const_levels() == b.const_levels();
    case expr_kind::sort: return a.sort_level() == b.sort_level();
    case expr_kind::app: {
        // iterate down the spine to keep recursion shallow on long applications
        expr const * x = &a;
        expr const * y = &b;
        while (x->is_app() && y->is_app()) {
            if (x->is_same(*y))
                return true;
            if (x->hash() != y->hash() || !(x->app_arg() == y->app_arg()))
                return false;
            x = &x->app_fn();
            y = &y->app_fn();
        }
        return *x == *y;
    }
    case expr_kind::lambda:
    case expr_kind::pi: return a.binder_domain() == b.binder_domain() && a.binder_body() == b.binder_body();
    }
    return false;
}

expr mk_bvar(unsigned idx) {
    auto c = new_cell(expr_kind::bvar);
    c->idx = idx;
    c->bound = idx + 1;
    c->hash = mix(3, idx);
    return expr(std::move(c));
}

expr mk_fvar(fvar_id id, name const & n, expr const & type, binder_info bi) {
    assert(!type || type.bound() == 0);
    auto c = new_cell(expr_kind::fvar);
    c->id = id.value;
    c->nm = n;
    c->a = type;
    c->info = bi;
    c->has_fvar = true;
    c->hash = mix(5, id.value);
    return expr(std::move(c));
}

expr mk_constant(name const & n, std::vector<level> levels) {
    auto c = new_cell(expr_kind::constant);
    std::size_t h = mix(7, std::hash<name>()(n));
    for (auto const & l : levels) {
        h = mix(h, l.hash());
        c->has_level_meta = c->has_level_meta || l.has_meta();
        c->has_level_param = c->has_level_param || l.has_param();
    }
    c->nm = n;
    c->levels = std::move(levels);
    c->hash = h;
    return expr(std::move(c));
}

expr mk_meta(meta_id id, expr const & type, name const & n) {
    assert(!type || type.bound() == 0);
    auto c = new_cell(expr_kind::meta);
    c->id = id.value;
    c->a = type;
    c->nm = n;
    c->has_meta = true;
    c->hash = mix(11, id.value);
    return expr(std::move(c));
}

expr mk_sort(level const & l) {
    auto c = new_cell(expr_kind::sort);
    c->lvl = l;
    c->has_level_meta = l.has_meta();
    c->has_level_param = l.has_param();
    c->hash = mix(13, l.hash());
    return expr(std::move(c));
}

expr mk_app(expr const & f, expr const & a) {
    auto c = new_cell(expr_kind::app);
    c->bound = std::max(f.bound(), a.bound());
    c->has_fvar = f.has_fvar() || a.has_fvar();
    c->has_meta = f.has_meta() || a.has_meta();
    c->has_level_meta = f.has_level_meta() || a.has_level_meta();
    c->has_level_param = f.has_level_param() || a.has_level_param();
    c->hash = mix(mix(17, f.hash()), a.hash());
    c->a = f;
    c->b = a;
    return expr(std::move(c));
}

expr mk_app(expr const & f, std::span<expr const> args) {
    expr r = f;
    for (auto const & a : args)
        r = mk_app(r, a);
    return r;
}

expr mk_app(expr const & f, std::initializer_list<expr> args) {
    return mk_app(f, std::span<expr const>(args.begin(), args.size()));
}

expr mk_binder(expr_kind k, name const & n, expr const & domain, expr const & body, binder_info bi) {
    auto c = new_cell(k);
    unsigned bb = body.bound();
    c->bound = std::max(domain.bound(), bb > 0 ? bb - 1 : 0);
    c->has_fvar = domain.has_fvar() || body.has_fvar();
    c->has_meta = domain.has_meta() || body.has_meta();
    c->has_level_meta = domain.has_level_meta() || body.has_level_meta();
    c->has_level_param = domain.has_level_param() || body.has_level_param();
    c->hash = mix(mix(k == expr_kind::lambda ? 19 : 23, domain.hash()), body.hash());
    c->nm = n;
    c->info = bi;
    c->a = domain;
    c->b = body;
    return expr(std::move(c));
}

expr mk_lambda(name const & n, expr const & domain, expr const & body, binder_info bi) {
    return mk_binder(expr_kind::lambda, n, domain, body, bi);
}

expr mk_pi(name const & n, expr const & domain, expr const & body, binder_info bi) {
    return mk_binder(expr_kind::pi, n, domain, body, bi);
}

expr mk_prop() { return mk_sort(mk_level_zero()); }
expr mk_type() { return mk_sort(mk_level_one()); }

expr update_app(expr const & e, expr const & f, expr const & a) {
    if (f.is_same(e.app_fn()) && a.is_same(e.app_arg()))
        return e;
    return mk_app(f, a);
}

expr update_binder(expr const & e, expr const & domain, expr const & body) {
    if (domain.is_same(e.binder_domain()) && body.is_same(e.binder_body()))
        return e;
    return mk_binder(e.kind(), e.binder_name(), domain, body, e.info());
}

expr update_sort(expr const & e, level const & l) {
    if (l.raw() == e.sort_level().raw())
        return e;
    return mk_sort(l);
}

expr update_constant(expr const & e, std::vector<level> levels) {
    bool same = levels.size() == e.const_levels().size();
    for (std::size_t i = 0; same && i < levels.size(); ++i)
        same = levels[i].raw() == e.const_levels()[i].raw();
    if (same)
        return e;
    return mk_constant(e.const_name(), std::move(levels));
}

expr const & get_app_fn(expr const & e) {
    expr const * r = &e;
    while (r->is_app())
        r = &r->app_fn();
    return *r;
}

std::vector<expr> get_app_args(expr const & e) {
    std::vector<expr> args;
    expr const * r = &e;
    while (r->is_app()) {
        args.push_back(r->app_arg());
        r = &r->app_fn();
    }
    std::reverse(args.begin(), args.end());
    return args;
}

unsigned get_app_num_args(expr const & e) {
    unsigned n = 0;
    expr const * r = &e;
    while (r->is_app()) {
        ++n;
        r = &r->app_fn();
    }
    return n;
}

void get_app_spine(expr const & e, expr & fn, std::vector<expr> & args) {
    fn = get_app_fn(e);
    args = get_app_args(e);
}

bool is_constant_app(expr const & e) { return get_app_fn(e).is_constant(); }
bool is_meta_app(expr const & e) { return get_app_fn(e).is_meta(); }
bool is_fvar_app(expr const & e) { return get_app_fn(e).is_fvar(); }

std::size_t expr_size(expr const & e) {
    switch (e.kind()) {
    case expr_kind::app: return 1 + expr_size(e.app_fn()) + expr_size(e.app_arg());
    case expr_kind::lambda:
    case expr_kind::pi: return 1 + expr_size(e.binder_domain()) + expr_size(e.binder_body());
    default: return 1;
    }
}

}  // namespace elab
