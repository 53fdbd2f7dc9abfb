#include "elab/elaborator/elaborator.hpp"

#include <algorithm>

#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/printer.hpp"
#include "elab/kernel/type_checker.hpp"

namespace elab {

namespace {

std::optional<name> head_constant(expr const & e) {
    expr const & f = get_app_fn(e);
    if (f.is_constant())
        return f.const_name();
    return std::nullopt;
}

bool is_flex(environment const & env, expr const & e) {
    return is_meta_app(e) || is_stuck(env, e, transparency::default_).has_value();
}

level replace_holes(level const & l) {
    if (is_level_hole(l))
        return mk_fresh_level_meta();
    switch (l.kind()) {
    case level_kind::succ: return mk_succ(replace_holes(l.succ_of()));
    case level_kind::max: return mk_max(replace_holes(l.max_lhs()), replace_holes(l.max_rhs()));
    default: return l;
    }
}

void sort_by_order(environment const & env, std::vector<name> & ns) {
    std::stable_sort(ns.begin(), ns.end(),
                     [&](name const & a, name const & b) { return env.get(a).m_order < env.get(b).m_order; });
}

}  // namespace

void preprocessor::emit(expr const & lhs, expr const & rhs, justification const & j) {
    // metavariable-free equations that already hold carry no information
    if (!lhs.has_any_meta() && !rhs.has_any_meta() &&
        (lhs == rhs || is_def_eq(m_env, lhs, rhs, transparency::default_)))
        return;
    m_constraints.push_back(mk_eq(lhs, rhs, j));
}

expr preprocessor::infer(expr const & e, justification const & j) {
    typeof_result r = typeof(m_env, e);
    for (auto const & c : r.m_constraints)
        emit(c.m_lhs, c.m_rhs, j);
    return r.m_type;
}

void preprocessor::ensure_type(expr const & e, justification const & j) {
    expr t = infer(e, j);
    if (!whnf(m_env, t).is_sort())
        emit(t, mk_sort(mk_fresh_level_meta()), j);
}

expr preprocessor::mk_hole(local_context const & ctx, expr const & type, source_span s, std::string what) {
    expr m = type ? ctx.mk_meta(type) : ctx.mk_meta_unknown_type();
    expr t = get_app_fn(m).local_type();
    for (auto const & a : get_app_args(m))
        t = instantiate(t.binder_body(), a);
    m_holes.push_back(hole{get_app_fn(m).meta(), s, std::move(what), t});
    return m;
}

std::optional<preprocessor::hole> preprocessor::hole_of(meta_id m) const {
    for (auto const & h : m_holes)
        if (h.m_meta == m)
            return h;
    return std::nullopt;
}

std::vector<name> preprocessor::resolve(name const & n) const {
    std::vector<name> out;
    auto add = [&](name const & c) {
        if (m_env.contains(c) && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    };
    for (auto it = m_scope.m_namespaces.rbegin(); it != m_scope.m_namespaces.rend(); ++it)
        add(*it + n);
    add(n);
    for (auto const & a : m_env.aliases_of(n))
        add(a);
    sort_by_order(m_env, out);
    return out;
}

std::vector<level> preprocessor::const_levels(name const & n, preterm const & p) {
    constant_info const & c = m_env.get(n);
    std::vector<level> ls;
    if (p->m_levels) {
        if (p->m_levels->size() != c.m_univ_params.size())
            throw elab_error(p->m_span, "'" + n.str() + "' expects " + std::to_string(c.m_univ_params.size()) +
                                            " universe levels");
        for (auto const & l : *p->m_levels)
            ls.push_back(replace_holes(l));
        return ls;
    }
    for (std::size_t i = 0; i < c.m_univ_params.size(); ++i)
        ls.push_back(mk_fresh_level_meta());
    return ls;
}

expr preprocessor::visit(preterm const & p, local_context const & ctx) {
    switch (p->m_kind) {
    case preterm_kind::ident:
    case preterm_kind::app: return visit_app(p, ctx);
    case preterm_kind::lambda:
    case preterm_kind::pi: return visit_binder(p, ctx);
    case preterm_kind::placeholder: return mk_hole(ctx, expr(), p->m_span, "placeholder");
    case preterm_kind::sort: return visit_sort(p);
    case preterm_kind::annotated: return visit_annotated(p, ctx);
    case preterm_kind::numeral: return visit_numeral(p);
    }
    throw elab_error(p->m_span, "unexpected preterm");
}

expr preprocessor::visit_type(preterm const & p, local_context const & ctx) {
    expr t = visit(p, ctx);
    ensure_type(t, mk_asserted(p->m_span, "type expected"));
    return t;
}

void preprocessor::flush_instances(std::size_t mark) {
    for (std::size_t i = mark; i < m_instances.size(); ++i)
        m_constraints.push_back(std::move(m_instances[i]));
    m_instances.erase(m_instances.begin() + static_cast<std::ptrdiff_t>(mark), m_instances.end());
}

expr preprocessor::visit_constant(name const & n, preterm const & p, local_context const & ctx) {
    expr c = mk_constant(n, const_levels(n, p));
    if (p->m_explicit)
        return c;
    std::size_t mark = m_instances.size();
    expr type = infer(c, mk_asserted(p->m_span, "constant"));
    c = insert_implicits(c, type, ctx, p->m_span);
    flush_instances(mark);
    return c;
}

expr preprocessor::insert_implicits(expr r, expr & type, local_context const & ctx, source_span s) {
    while (true) {
        expr w = whnf(m_env, type);
        if (!w.is_pi() || w.info() == binder_info::default_)
            return r;
        std::string what = "implicit argument '" + w.binder_name().str() + "'";
        expr m = mk_hole(ctx, w.binder_domain(), s, what);
        if (w.info() == binder_info::inst_implicit)
            m_instances.push_back(mk_instance_choice(m_env, ctx, m, w.binder_domain(),
                                                     mk_asserted(s, "instance argument")));
        r = mk_app(r, m);
        type = instantiate(w.binder_body(), m);
    }
}

expr preprocessor::visit_app(preterm const & p, local_context const & ctx) {
    std::vector<preterm> args;
    preterm h = p;
    while (h->m_kind == preterm_kind::app) {
        args.push_back(h->m_rhs);
        h = h->m_lhs;
    }
    std::reverse(args.begin(), args.end());

    bool explicit_ = false;
    expr f;
    if (h->m_kind == preterm_kind::ident) {
        explicit_ = h->m_explicit;
        std::optional<expr> local;
        if (!h->m_levels)
            local = ctx.find(h->m_name);
        if (local) {
            f = *local;
        } else {
            std::vector<name> cands = resolve(h->m_name);
            if (cands.empty())
                throw elab_error(h->m_span, "unknown identifier '" + h->m_name.str() + "'");
            if (cands.size() == 1) {
                f = mk_constant(cands.front(), const_levels(cands.front(), h));
            } else {
                f = overload_choice(cands, h, ctx);
                explicit_ = true;
            }
        }
    } else {
        f = visit(h, ctx);
    }

    // instance goals of this spine are queued after its arguments
    std::size_t mark = m_instances.size();
    justification jf = mk_asserted(h->m_span, "function");
    expr fty = infer(f, jf);
    for (auto const & a : args) {
        if (!explicit_)
            f = insert_implicits(f, fty, ctx, h->m_span);
        justification ja = mk_asserted(a->m_span, "argument");
        expr w = whnf(m_env, fty);
        if (!w.is_pi()) {
            std::vector<type_eq> out;
            type_checker tc(m_env, transparency::default_, false, &out);
            w = tc.ensure_pi(fty);
            for (auto const & c : out)
                emit(c.m_lhs, c.m_rhs, mk_asserted(p->m_span, "function expected"));
        }
        expr s = visit(a, ctx);
        expr c = infer(s, ja);
        s = coerce_arg(s, c, w.binder_domain(), ctx, ja);
        f = mk_app(f, s);
        fty = instantiate(w.binder_body(), s);
    }
    if (!explicit_)
        f = insert_implicits(f, fty, ctx, p->m_span);
    flush_instances(mark);
    return f;
}

expr preprocessor::overload_choice(std::vector<name> const & cands, preterm const & p, local_context const & ctx) {
    expr m = mk_hole(ctx, expr(), p->m_span, "overloaded '" + p->m_name.str() + "'");
    environment env = m_env;
    scope sc = m_scope;
    chooser ch = [env, sc, cands, p, ctx](expr const & meta_app, expr const & type, substitution const &) {
        std::vector<std::function<std::vector<constraint>()>> thunks;
        std::vector<std::string> labels;
        for (auto const & n : cands) {
            labels.push_back(n.str());
            thunks.push_back([=]() {
                preprocessor sub(env, sc);
                justification j = mk_asserted(p->m_span, "overloaded '" + p->m_name.str() + "'");
                expr r = sub.visit_constant(n, p, ctx);
                expr rt = sub.infer(r, j);
                std::vector<constraint> out{mk_eq(type, rt, j), mk_eq(meta_app, r, j)};
                for (auto & c : sub.take_constraints())
                    out.push_back(std::move(c));
                return out;
            });
        }
        return mk_lazy_stream(std::move(thunks), std::move(labels));
    };
    justification j = mk_asserted(p->m_span, "overloaded '" + p->m_name.str() + "'");
    expr type = infer(m, j);
    choice_constraint c{m, type, std::move(ch), false, j,
                        "no overload of '" + p->m_name.str() + "' applies", false};
    m_constraints.push_back(std::move(c));
    return m;
}

expr preprocessor::coerce_arg(expr const & s, expr const & c, expr const & a, local_context const & ctx,
                              justification const & j) {
    expr cw = whnf(m_env, c);
    expr aw = whnf(m_env, a);
    auto hc = head_constant(cw);
    auto ha = head_constant(aw);
    bool flex_c = is_flex(m_env, cw);
    bool flex_a = is_flex(m_env, aw);
    if (hc && ha && !flex_c && !flex_a && *hc != *ha) {
        if (auto co = m_env.find_coercion(*hc, *ha)) {
            coercion_app r = mk_coercion_app(m_env, ctx, *co, s);
            emit(c, r.m_domain, j);
            emit(r.m_type, a, j);
            return r.m_value;
        }
    }
    std::vector<coercion_info> cos;
    if (flex_a && !flex_c && hc)
        cos = m_env.coercions_from(*hc);
    else if (flex_c && !flex_a && ha)
        cos = m_env.coercions_to(*ha);
    if (cos.empty()) {
        emit(c, a, j);
        return s;
    }

    expr m = mk_hole(ctx, a, j.origin(), "coercion");
    environment env = m_env;
    chooser ch = [env, ctx, s, c, cos](expr const & meta_app, expr const & type, substitution const & S) {
        // heads known by now rule out alternatives
        std::optional<name> from, to;
        if (expr cw = whnf(env, S.instantiate(c)); !is_flex(env, cw))
            from = head_constant(cw);
        if (expr tw = whnf(env, type); !is_flex(env, tw))
            to = head_constant(tw);
        std::vector<std::function<std::vector<constraint>()>> thunks;
        std::vector<std::string> labels;
        if (!from || !to || *from == *to) {
            labels.push_back(pp(env, s));
            thunks.push_back([=]() {
                return std::vector<constraint>{mk_eq(c, type, justification()), mk_eq(meta_app, s, justification())};
            });
        }
        for (auto const & co : cos) {
            if ((from && co.m_from != *from) || (to && co.m_to != *to))
                continue;
            labels.push_back(co.m_coercion.str());
            thunks.push_back([=]() {
                coercion_app r = mk_coercion_app(env, ctx, co, s);
                return std::vector<constraint>{mk_eq(c, r.m_domain, justification()),
                                               mk_eq(r.m_type, type, justification()),
                                               mk_eq(meta_app, r.m_value, justification())};
            });
        }
        return mk_lazy_stream(std::move(thunks), std::move(labels));
    };
    m_constraints.push_back(choice_constraint{m, a, std::move(ch), true, j, "cannot coerce argument to", true});
    return m;
}

void preprocessor::expect(expr const & e, expr const & expected, source_span s, std::size_t at) {
    justification j = mk_asserted(s, "expected type");
    std::vector<constraint> saved(m_constraints.begin() + static_cast<std::ptrdiff_t>(at), m_constraints.end());
    m_constraints.erase(m_constraints.begin() + static_cast<std::ptrdiff_t>(at), m_constraints.end());
    expr t = infer(e, j);
    emit(t, expected, j);
    m_constraints.insert(m_constraints.end(), saved.begin(), saved.end());
}

expr preprocessor::visit_binder(preterm const & p, local_context const & ctx) {
    justification j = mk_asserted(p->m_span, "binder");
    expr dom;
    if (p->m_lhs) {
        dom = visit(p->m_lhs, ctx);
        ensure_type(dom, mk_asserted(p->m_lhs->m_span, "type expected"));
    } else {
        dom = mk_hole(ctx, mk_sort(mk_fresh_level_meta()), p->m_span, "type of '" + p->m_name.str() + "'");
    }
    local_context inner = ctx;
    expr x = inner.push(p->m_name, dom, p->m_info);
    expr body = visit(p->m_rhs, inner);
    std::vector<expr> xs{x};
    if (p->m_kind == preterm_kind::pi) {
        ensure_type(body, mk_asserted(p->m_rhs->m_span, "type expected"));
        return abstract_pi(xs, body);
    }
    return abstract_lambda(xs, body);
}

expr preprocessor::visit_sort(preterm const & p) { return mk_sort(replace_holes(p->m_level)); }

expr preprocessor::visit_annotated(preterm const & p, local_context const & ctx) {
    expr type = visit_type(p->m_rhs, ctx);
    expr t = visit(p->m_lhs, ctx);
    justification j = mk_asserted(p->m_span, "type ascription");
    return coerce_arg(t, infer(t, j), type, ctx, j);
}

expr preprocessor::visit_numeral(preterm const & p) {
    if (!m_env.contains("nat.zero") || !m_env.contains("nat.succ"))
        throw elab_error(p->m_span, "numerals require nat");
    expr r = mk_constant("nat.zero");
    for (unsigned i = 0; i < p->m_value; ++i)
        r = mk_app(mk_constant("nat.succ"), r);
    return r;
}

coercion_app mk_coercion_app(environment const & env, local_context const & ctx, coercion_info const & c,
                             expr const & s) {
    constant_info const & info = env.get(c.m_coercion);
    std::vector<level> ls;
    for (std::size_t i = 0; i < info.m_univ_params.size(); ++i)
        ls.push_back(mk_fresh_level_meta());
    expr f = mk_constant(c.m_coercion, ls);
    expr ty = instantiate_level_params(info.m_type, info.m_univ_params, ls);
    for (unsigned i = 0; i < c.m_num_args; ++i) {
        ty = whnf(env, ty);
        expr m = ctx.mk_meta(ty.binder_domain());
        f = mk_app(f, m);
        ty = instantiate(ty.binder_body(), m);
    }
    ty = whnf(env, ty);
    return coercion_app{mk_app(f, s), ty.binder_domain(), instantiate(ty.binder_body(), s)};
}

choice_constraint mk_instance_choice(environment const & env, local_context const & ctx, expr const & meta_app,
                                     expr const & type, justification const & j, unsigned depth) {
    chooser ch = [env, ctx, depth](expr const & m, expr const & t, substitution const & s) {
        return typeclass_resolve(env, ctx, m, t, s, depth);
    };
    return choice_constraint{meta_app, type, std::move(ch), true, j, "failed to synthesize instance", true};
}

alt_stream typeclass_resolve(environment const & env, local_context const & ctx, expr const & meta_app,
                             expr const & type, substitution const & s, unsigned depth) {
    if (depth >= max_instance_depth)
        return mk_stream({alternative{{}, justification(),
                                      "maximum instance depth (" + std::to_string(max_instance_depth) + ") reached",
                                      "depth limit"}});
    expr goal = whnf(env, s.instantiate(type), transparency::reducible_only);
    auto cls = head_constant(goal);
    if (!cls || !env.is_class(*cls))
        return mk_stream({});

    struct candidate {
        expr        m_term;
        expr        m_type;
        std::string m_label;
    };
    std::vector<candidate> cands;
    auto const & locals = ctx.locals();
    for (auto it = locals.rbegin(); it != locals.rend(); ++it) {
        expr lt = s.instantiate(it->local_type());
        expr w = lt;
        while (w.is_pi())
            w = w.binder_body();
        if (head_constant(whnf(env, w, transparency::reducible_only)) == cls)
            cands.push_back(candidate{*it, lt, it->local_name().str()});
    }
    std::vector<name> globals = env.instances_of(*cls);
    sort_by_order(env, globals);
    for (auto const & n : globals)
        cands.push_back(candidate{expr(), expr(), n.str()});

    std::vector<std::function<std::vector<constraint>()>> thunks;
    std::vector<std::string> labels;
    for (auto const & c : cands) {
        labels.push_back(c.m_label);
        thunks.push_back([env, ctx, meta_app, type, depth, c]() {
            expr e = c.m_term;
            expr ty = c.m_type;
            if (!e) {
                constant_info const & info = env.get(name(c.m_label));
                std::vector<level> ls;
                for (std::size_t i = 0; i < info.m_univ_params.size(); ++i)
                    ls.push_back(mk_fresh_level_meta());
                e = mk_constant(info.m_name, ls);
                ty = instantiate_level_params(info.m_type, info.m_univ_params, ls);
            }
            std::vector<constraint> premises;
            while (ty.is_pi()) {
                expr m = ctx.mk_meta(ty.binder_domain());
                if (ty.info() == binder_info::inst_implicit)
                    premises.push_back(mk_instance_choice(env, ctx, m, ty.binder_domain(), justification(), depth + 1));
                e = mk_app(e, m);
                ty = instantiate(ty.binder_body(), m);
            }
            std::vector<constraint> out{mk_eq(ty, type, justification(), transparency::reducible_only),
                                        mk_eq(meta_app, e, justification(), transparency::reducible_only)};
            out.insert(out.end(), premises.begin(), premises.end());
            return out;
        });
    }
    return mk_lazy_stream(std::move(thunks), std::move(labels));
}

elab_error failure_error(justification const & j, std::string const & msg, source_span fallback) {
    std::vector<justification> leaves = asserted_leaves(j);
    std::vector<diagnostic_note> notes;
    for (auto const & l : leaves) {
        bool outer = false;
        for (auto const & o : leaves)
            if (o.origin() != l.origin() && l.origin().contains(o.origin()))
                outer = true;
        if (outer)
            continue;
        diagnostic_note n{l.origin(), l.description()};
        bool dup = std::any_of(notes.begin(), notes.end(), [&](diagnostic_note const & x) {
            return x.m_span == n.m_span && x.m_message == n.m_message;
        });
        if (!dup)
            notes.push_back(n);
    }
    std::stable_sort(notes.begin(), notes.end(),
                     [](diagnostic_note const & a, diagnostic_note const & b) { return a.m_span < b.m_span; });
    source_span s = notes.empty() ? fallback : notes.front().m_span;
    return elab_error(s, msg, std::move(notes));
}

namespace {

void collect_params(level const & l, std::vector<name> & out) {
    switch (l.kind()) {
    case level_kind::param:
        if (std::find(out.begin(), out.end(), l.param_name()) == out.end())
            out.push_back(l.param_name());
        break;
    case level_kind::succ: collect_params(l.succ_of(), out); break;
    case level_kind::max:
        collect_params(l.max_lhs(), out);
        collect_params(l.max_rhs(), out);
        break;
    default: break;
    }
}

void collect_params(expr const & e, std::vector<name> & out) {
    for_each(e, [&](expr const & x, unsigned) {
        if (x.is_sort())
            collect_params(x.sort_level(), out);
        else if (x.is_constant())
            for (auto const & l : x.const_levels())
                collect_params(l, out);
        else if (x.is_fvar() && x.local_type())
            collect_params(x.local_type(), out);
        return true;
    });
}

/// Sequential composition of solver substitutions.
struct substitution_chain {
    std::vector<substitution> m_subs;

    expr operator()(expr e) const {
        for (auto const & s : m_subs)
            e = s.instantiate(e);
        return e;
    }
};

elab_result finish(preprocessor & pp, expr value, expr type, std::vector<name> params, elab_options const & opts,
                   source_span span) {
    environment const & env = pp.env();
    solver_options so{opts.m_max_steps, opts.m_trace};
    std::vector<constraint> cs = pp.take_constraints();
    substitution_chain chain;
    // level residue left by the solver is settled by defaulting metavariables to 0
    for (unsigned round = 0;; ++round) {
        solve_result r = solve(env, cs, so);
        if (r.m_status == solve_status::budget_exceeded)
            throw elab_error(span, r.m_message);
        if (r.m_status == solve_status::failed)
            throw failure_error(r.m_j, r.m_message, span);
        chain.m_subs.push_back(r.m_subst);
        if (r.m_residue.empty())
            break;
        cs.clear();
        std::optional<level_meta_id> pick;
        for (auto const & c : r.m_residue) {
            expr l = chain(c.m_lhs), rr = chain(c.m_rhs);
            if (!l.is_sort() || !rr.is_sort() || round > 16) {
                printer p(env);
                std::string lhs = p(l);
                std::string msg = "unsolved constraint " + lhs + " =?= " + p(rr);
                throw failure_error(c.m_j, msg, span);
            }
            if (!pick)
                for_each_meta(mk_max(l.sort_level(), rr.sort_level()), [&](level_meta_id m) {
                    if (!pick)
                        pick = m;
                });
            cs.push_back(mk_eq(l, rr, c.m_j, c.m_mode));
        }
        if (pick)
            cs.push_back(mk_eq(mk_sort(mk_level_meta(*pick)), mk_prop(), justification()));
    }
    value = chain(value);
    type = chain(type);

    std::vector<expr> holes = collect_metas(type);
    for (auto const & m : collect_metas(value))
        if (std::find(holes.begin(), holes.end(), m) == holes.end())
            holes.push_back(m);
    if (!holes.empty()) {
        printer p(env);
        std::vector<diagnostic_note> notes;
        for (auto const & m : holes) {
            if (auto h = pp.hole_of(m.meta()))
                notes.push_back({h->m_span, "cannot infer " + h->m_what + " : " + p(chain(h->m_type))});
        }
        std::stable_sort(notes.begin(), notes.end(),
                         [](diagnostic_note const & a, diagnostic_note const & b) { return a.m_span < b.m_span; });
        std::string msg = notes.size() == 1 ? std::string("unsolved placeholder")
                                            : std::to_string(notes.size()) + " unsolved placeholders";
        source_span at = notes.empty() ? span : notes.front().m_span;
        throw elab_error(at, msg, std::move(notes));
    }

    // universe metavariables left open become parameters
    collect_params(type, params);
    collect_params(value, params);
    std::vector<std::pair<level_meta_id, level>> generalized;
    auto generalize = [&](level_meta_id m) -> std::optional<level> {
        for (auto const & [k, l] : generalized)
            if (k == m)
                return l;
        std::string base = "u_";
        unsigned i = 1;
        while (std::find(params.begin(), params.end(), name(base + std::to_string(i))) != params.end())
            ++i;
        name n(base + std::to_string(i));
        params.push_back(n);
        generalized.emplace_back(m, mk_level_param(n));
        return generalized.back().second;
    };
    auto no_metas = [](meta_id) -> std::optional<expr> { return std::nullopt; };
    type = instantiate_metas(type, no_metas, generalize);
    value = instantiate_metas(value, no_metas, generalize);

    try {
        check(env, type);
        expr inferred = check(env, value);
        if (!is_def_eq(env, inferred, type))
            throw kernel_exception("type mismatch after elaboration");
    } catch (kernel_exception const & e) {
        throw elab_error(span, std::string("internal error, kernel rejected elaborated term: ") + e.what());
    }
    return elab_result{value, type, params};
}

}  // namespace

elab_result elaborate(environment const & env, scope const & sc, preterm const & type, preterm const & value,
                      std::vector<name> univ_params, elab_options const & opts) {
    preprocessor pp(env, sc);
    local_context ctx;
    try {
        expr t;
        if (type)
            t = pp.visit_type(type, ctx);
        std::size_t at = pp.constraints().size();
        expr v = pp.visit(value, ctx);
        if (type)
            pp.expect(v, t, value->m_span, at);
        else
            t = pp.infer(v, mk_asserted(value->m_span, "value"));
        source_span span = type ? join(type->m_span, value->m_span) : value->m_span;
        return finish(pp, v, t, std::move(univ_params), opts, span);
    } catch (kernel_exception const & e) {
        throw elab_error(value->m_span, e.what());
    }
}

elab_result elaborate_type(environment const & env, scope const & sc, preterm const & type,
                           std::vector<name> univ_params, elab_options const & opts) {
    preprocessor pp(env, sc);
    local_context ctx;
    try {
        expr t = pp.visit_type(type, ctx);
        expr s = pp.infer(t, mk_asserted(type->m_span, "type expected"));
        return finish(pp, t, s, std::move(univ_params), opts, type->m_span);
    } catch (kernel_exception const & e) {
        throw elab_error(type->m_span, e.what());
    }
}

}  // namespace elab
