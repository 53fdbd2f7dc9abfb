#include "elab/solver/solver.hpp"

#include <sstream>

#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/printer.hpp"
#include "elab/kernel/type_checker.hpp"
#include "elab/solver/flex_rigid.hpp"

namespace elab {

std::string_view to_string(trace_kind k) {
    switch (k) {
    case trace_kind::enqueue: return "enqueue";
    case trace_kind::pop: return "pop";
    case trace_kind::assign: return "assign";
    case trace_kind::split_push: return "split-push";
    case trace_kind::backtrack: return "backtrack";
    case trace_kind::resolve_skip: return "resolve-skip";
    }
    return "?";
}

std::string to_string(trace_event const & e) {
    std::ostringstream out;
    out << "EVENT kind=" << to_string(e.m_kind) << " meta=" << e.m_meta << " cat=" << to_string(e.m_category)
        << " jdeps=[";
    for (std::size_t i = 0; i < e.m_deps.size(); ++i)
        out << (i ? "," : "") << e.m_deps[i].value;
    out << "]";
    return out.str();
}

bool operator==(queued_constraint const & a, queued_constraint const & b) {
    constraint const & x = a.m_constraint;
    constraint const & y = b.m_constraint;
    if (x.is_eq() != y.is_eq() || x.j().raw() != y.j().raw())
        return false;
    if (x.is_eq())
        return x.eq().m_lhs == y.eq().m_lhs && x.eq().m_rhs == y.eq().m_rhs && x.eq().m_mode == y.eq().m_mode;
    return x.choice().m_meta == y.choice().m_meta && x.choice().m_type == y.choice().m_type &&
           x.choice().m_ondemand == y.choice().m_ondemand;
}

constraint_category priority_of(environment const & env, constraint const & c) {
    if (c.is_eq())
        return classify(env, c.eq());
    choice_constraint const & ch = c.choice();
    if (!ch.m_ondemand)
        return constraint_category::regular;
    return ch.m_type.has_any_meta() ? constraint_category::postponed : constraint_category::ready;
}

namespace {

struct solve_failure {
    justification m_j;
    std::string   m_message;
};

struct budget_exceeded {};

void collect_level_metas_of(level const & l, std::vector<level_meta_id> & out) {
    for_each_meta(l, [&](level_meta_id m) { out.push_back(m); });
}

/// Metavariables whose assignment may change how `c` is handled.
void blocking_metas(environment const & env, eq_constraint const & c, constraint_category cat,
                    std::vector<meta_id> & metas, std::vector<level_meta_id> & levels) {
    if (c.m_lhs.is_sort() && c.m_rhs.is_sort()) {
        collect_level_metas_of(c.m_lhs.sort_level(), levels);
        collect_level_metas_of(c.m_rhs.sort_level(), levels);
        return;
    }
    if (cat == constraint_category::delta || cat == constraint_category::postponed) {
        for (expr const * side : {&c.m_lhs, &c.m_rhs}) {
            for (auto const & m : collect_metas(*side))
                metas.push_back(m.meta());
            for (auto m : collect_level_metas(*side))
                levels.push_back(m);
        }
        return;
    }
    for (expr const * side : {&c.m_lhs, &c.m_rhs}) {
        if (is_meta_app(*side))
            metas.push_back(get_app_fn(*side).meta());
        else if (auto r = is_stuck(env, *side, c.m_mode))
            metas.push_back(get_app_fn(r->m_term).meta());
    }
}

template <class Id>
void index_add(pmap<Id, pmap<queue_key, char>> & index, Id m, queue_key k) {
    pmap<queue_key, char> keys;
    if (auto p = index.find(m))
        keys = *p;
    keys.insert(k, 1);
    index.insert(m, keys);
}

template <class Id>
void index_remove(pmap<Id, pmap<queue_key, char>> & index, Id m, queue_key k) {
    auto p = index.find(m);
    if (!p)
        return;
    pmap<queue_key, char> keys = *p;
    keys.erase(k);
    if (keys.empty())
        index.erase(m);
    else
        index.insert(m, keys);
}

std::vector<constraint> to_constraints(std::vector<eq_constraint> const & cs) {
    return std::vector<constraint>(cs.begin(), cs.end());
}

}  // namespace

void solver::trace(trace_kind k, std::uint64_t meta, constraint_category cat, justification const & j,
                   assumption_id split, std::string label) const {
    if (m_opts.m_trace)
        m_opts.m_trace(trace_event{k, meta, cat, assumptions(j), split, std::move(label)});
}

void solver::visit(constraint const & c) {
    if (c.is_eq())
        visit_eq(c.eq());
    else
        visit_choice(c.choice());
}

void solver::visit_eq(eq_constraint const & c) {
    eq_constraint d = c;
    substitution const & s = m_state.m_subst;
    if (s.has_assigned(d.m_lhs) || s.has_assigned(d.m_rhs)) {
        d.m_lhs = s.instantiate(d.m_lhs, d.m_j);
        d.m_rhs = s.instantiate(d.m_rhs, d.m_j);
    }
    std::vector<eq_constraint> residue;
    try {
        residue = simp(m_env, d);
    } catch (kernel_exception const & e) {
        throw unifier_exception(d.m_j, e.what());
    }
    for (auto const & r : residue) {
        if (m_state.m_subst.has_assigned(r.m_lhs) || m_state.m_subst.has_assigned(r.m_rhs)) {
            visit_eq(r);
            continue;
        }
        constraint_category cat = classify(m_env, r);
        if (cat != constraint_category::pattern)
            enqueue(r, cat);
        else if (r.m_lhs.is_sort())
            assign_level(r);
        else
            assign(r);
    }
}

void solver::assign_level(eq_constraint const & c) {
    level a = normalize(c.m_lhs.sort_level());
    level b = normalize(c.m_rhs.sort_level());
    if (!(a.is_meta() && !occurs_meta(a.meta_id(), b)))
        std::swap(a, b);
    level_meta_id m = a.meta_id();
    m_state.m_subst.assign(m, b, c.m_j);
    trace(trace_kind::assign, m.value, constraint_category::pattern, c.m_j);
    if (auto keys = m_state.m_level_index.find(m)) {
        pmap<queue_key, char> ks = *keys;
        m_state.m_level_index.erase(m);
        revisit(ks);
    }
}

void solver::assign(eq_constraint const & c) {
    bool left = is_pattern(c.m_lhs, c.m_rhs);
    expr const & p = left ? c.m_lhs : c.m_rhs;
    expr const & t = left ? c.m_rhs : c.m_lhs;
    expr m = get_app_fn(p);
    std::vector<expr> locals = get_app_args(p);
    // binder domains come from local types and may mention assigned metas
    expr value = m_state.m_subst.instantiate(abstract_lambda(locals, t));

    // when ?m's type is not fully known, its instance must agree with t's type
    std::vector<eq_constraint> typing;
    if (m_state.m_subst.instantiate(m.local_type()).has_any_meta()) {
        try {
            typeof_result expected = typeof(m_env, p);
            typeof_result actual = typeof(m_env, t);
            for (auto const * r : {&expected, &actual})
                for (auto const & e : r->m_constraints)
                    typing.push_back(eq_constraint{e.m_lhs, e.m_rhs, c.m_j, c.m_mode});
            typing.push_back(eq_constraint{expected.m_type, actual.m_type, c.m_j, c.m_mode});
        } catch (kernel_exception const & e) {
            throw unifier_exception(c.m_j, e.what());
        }
    }

    m_state.m_subst.assign(m.meta(), value, c.m_j);
    trace(trace_kind::assign, m.meta().value, constraint_category::pattern, c.m_j);
    if (auto keys = m_state.m_index.find(m.meta())) {
        pmap<queue_key, char> ks = *keys;
        m_state.m_index.erase(m.meta());
        revisit(ks);
    }
    for (auto const & e : typing)
        visit_eq(e);
}

void solver::visit_choice(choice_constraint const & c) {
    choice_constraint d = c;
    d.m_type = m_state.m_subst.instantiate(d.m_type, d.m_j);
    enqueue(d, priority_of(m_env, d));
}

void solver::enqueue(constraint const & c, constraint_category cat) {
    queue_key k{cat, ++m_ticket};
    queued_constraint q{c, {}, {}};
    std::uint64_t head = 0;
    if (c.is_eq()) {
        blocking_metas(m_env, c.eq(), cat, q.m_metas, q.m_level_metas);
    } else {
        choice_constraint const & ch = c.choice();
        head = get_app_fn(ch.m_meta).meta().value;
        if (ch.m_ondemand) {
            for (auto const & m : collect_metas(ch.m_type))
                q.m_metas.push_back(m.meta());
            q.m_level_metas = collect_level_metas(ch.m_type);
        }
    }
    for (auto m : q.m_metas)
        index_add(m_state.m_index, m, k);
    for (auto m : q.m_level_metas)
        index_add(m_state.m_level_index, m, k);
    if (!head && !q.m_metas.empty())
        head = q.m_metas.front().value;
    m_state.m_queue.insert(k, q);
    trace(trace_kind::enqueue, head, cat, c.j());
}

queued_constraint solver::remove(queue_key const & k) {
    queued_constraint q = *m_state.m_queue.find(k);
    m_state.m_queue.erase(k);
    for (auto m : q.m_metas)
        index_remove(m_state.m_index, m, k);
    for (auto m : q.m_level_metas)
        index_remove(m_state.m_level_index, m, k);
    return q;
}

void solver::revisit(pmap<queue_key, char> const & keys) {
    std::vector<queue_key> ks;
    keys.for_each([&](queue_key const & k, char) { ks.push_back(k); });
    for (auto const & k : ks)
        if (m_state.m_queue.contains(k))
            visit(remove(k).m_constraint);
}

void solver::process(alt_stream z, justification const & j, std::string label, std::uint64_t meta) {
    auto a = z.pull();
    if (!a)
        throw unifier_exception(j, label.empty() ? "no alternative applies" : label);
    assumption_id id = fresh_id<assumption_id>();
    justification ja = mk_assumption(id);
    trace(trace_kind::split_push, meta, m_current_category, ja, id, label);
    m_splits.push_back(case_split{m_state, id, j, std::move(z), std::move(label), a->m_label, {}});
    visit_alternative(*a, mk_join(ja, j));
}

void solver::visit_alternative(alternative const & a, justification const & j) {
    if (a.m_failure)
        throw unifier_exception(mk_join(*a.m_failure, j), a.m_message);
    for (auto const & c : a.m_constraints)
        visit(join_justification(c, j));
}

void solver::resolve(justification j, std::string msg) {
    while (true) {
        if (m_splits.empty())
            throw solve_failure{j, msg};
        case_split & top = m_splits.back();
        if (!depends_on(j, top.m_assumption)) {
            trace(trace_kind::resolve_skip, 0, constraint_category::pattern, mk_assumption(top.m_assumption),
                  top.m_assumption);
            m_splits.pop_back();
            continue;
        }
        m_state = top.m_saved;
        trace(trace_kind::backtrack, 0, constraint_category::pattern, j, top.m_assumption);
        if (!top.m_current.empty())
            top.m_failures.push_back(top.m_current + ": " + msg);
        auto a = top.m_alts.pull();
        justification jc = top.m_j;
        if (!a) {
            j = mk_join(j, jc);
            if (!top.m_label.empty() && !top.m_failures.empty()) {
                msg = top.m_label;
                for (auto const & f : top.m_failures)
                    msg += "\n  " + f;
            }
            m_splits.pop_back();
            continue;
        }
        top.m_current = a->m_label;
        try {
            visit_alternative(*a, mk_join(jc, j));
            return;
        } catch (unifier_exception const & e) {
            j = e.j();
            msg = e.what();
        }
    }
}

void solver::process_delta(eq_constraint const & c) {
    environment const & env = m_env;
    std::vector<std::function<std::vector<constraint>()>> alts;
    alts.push_back([&env, c]() {
        std::vector<eq_constraint> out;
        expr const & f = get_app_fn(c.m_lhs);
        expr const & g = get_app_fn(c.m_rhs);
        auto const & fl = f.const_levels();
        auto const & gl = g.const_levels();
        for (std::size_t i = 0; i < fl.size() && i < gl.size(); ++i)
            for (auto & r : simp(env, eq_constraint{mk_sort(fl[i]), mk_sort(gl[i]), c.m_j, c.m_mode}))
                out.push_back(r);
        std::vector<expr> xs = get_app_args(c.m_lhs);
        std::vector<expr> ys = get_app_args(c.m_rhs);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (auto & r : simp(env, eq_constraint{xs[i], ys[i], c.m_j, c.m_mode}))
                out.push_back(r);
        return to_constraints(out);
    });
    alts.push_back([&env, c]() {
        auto l = unfold(env, c.m_lhs, c.m_mode);
        auto r = unfold(env, c.m_rhs, c.m_mode);
        if (!l || !r)
            throw unifier_exception(c.m_j, "cannot unfold");
        return to_constraints(simp(env, eq_constraint{*l, *r, c.m_j, c.m_mode}));
    });
    process(mk_lazy_stream(std::move(alts)), c.m_j);
}

void solver::process_recursor(eq_constraint const & c) {
    if (is_meta_app(c.m_lhs) || is_meta_app(c.m_rhs))
        return process(flex_rigid_alternatives(m_env, c, constraint_category::recursor, m_state.m_subst), c.m_j);
    expr const & f = get_app_fn(c.m_lhs);
    expr const & g = get_app_fn(c.m_rhs);
    if (f.is_constant() && g.is_constant() && f.const_name() == g.const_name() &&
        get_app_num_args(c.m_lhs) == get_app_num_args(c.m_rhs)) {
        environment const & env = m_env;
        std::vector<std::function<std::vector<constraint>()>> alts;
        alts.push_back([&env, c, f, g]() {
            std::vector<constraint> out;
            auto const & fl = f.const_levels();
            auto const & gl = g.const_levels();
            for (std::size_t i = 0; i < fl.size() && i < gl.size(); ++i)
                out.push_back(mk_eq(mk_sort(fl[i]), mk_sort(gl[i]), c.m_j, c.m_mode));
            std::vector<expr> xs = get_app_args(c.m_lhs);
            std::vector<expr> ys = get_app_args(c.m_rhs);
            for (std::size_t i = 0; i < xs.size(); ++i)
                out.push_back(mk_eq(xs[i], ys[i], c.m_j, c.m_mode));
            return out;
        });
        return process(mk_lazy_stream(std::move(alts)), c.m_j);
    }
    throw unifier_exception(c.m_j, mismatch_message(m_env, c.m_lhs, c.m_rhs));
}

void solver::process_eq(eq_constraint const & c, constraint_category cat) {
    switch (cat) {
    case constraint_category::delta: return process_delta(c);
    case constraint_category::quasi_pattern:
    case constraint_category::flex_rigid:
        return process(flex_rigid_alternatives(m_env, c, cat, m_state.m_subst), c.m_j);
    case constraint_category::recursor: return process_recursor(c);
    default: throw unifier_exception(c.m_j, mismatch_message(m_env, c.m_lhs, c.m_rhs));
    }
}

bool solver::discharge_flex_flex() {
    std::vector<queue_key> stale;
    substitution const & s = m_state.m_subst;
    m_state.m_queue.for_each([&](queue_key const & k, queued_constraint const & q) {
        constraint const & c = q.m_constraint;
        if (c.is_eq() && (s.has_assigned(c.eq().m_lhs) || s.has_assigned(c.eq().m_rhs)))
            stale.push_back(k);
    });
    for (auto const & k : stale)
        visit(remove(k).m_constraint);
    return !stale.empty();
}

solve_result solver::solve(std::vector<constraint> const & cs) {
    return run([&] {
        for (auto const & c : cs)
            visit(c);
    });
}

solve_result solver::next_solution() {
    justification all;
    for (auto const & sp : m_splits)
        all = mk_join(all, mk_assumption(sp.m_assumption));
    return run([&] { throw unifier_exception(all, "solution rejected"); });
}

solve_result solver::run(std::function<void()> const & start) {
    solve_result result;
    bool started = false;
    while (true) {
        try {
            if (!started) {
                started = true;
                start();
            }
            while (auto top = m_state.m_queue.min()) {
                queue_key k = top->first;
                if (k.m_category == constraint_category::flex_flex) {
                    if (discharge_flex_flex())
                        continue;
                    break;
                }
                queued_constraint q = remove(k);
                if (++m_steps > m_opts.m_max_steps)
                    throw budget_exceeded{};
                constraint const & c = q.m_constraint;
                m_current_category = k.m_category;
                trace(trace_kind::pop, q.m_metas.empty() ? 0 : q.m_metas.front().value, k.m_category, c.j());
                try {
                if (c.is_eq()) {
                    eq_constraint const & e = c.eq();
                    if (m_state.m_subst.has_assigned(e.m_lhs) || m_state.m_subst.has_assigned(e.m_rhs))
                        visit_eq(e);
                    else
                        process_eq(e, k.m_category);
                } else {
                    choice_constraint const & ch = c.choice();
                    justification j = ch.m_j;
                    expr type = m_state.m_subst.instantiate(ch.m_type, j);
                    std::string label = ch.m_label;
                    if (ch.m_label_type)
                        label += " " + pp(m_env, type);
                    process(ch.m_chooser(ch.m_meta, type, m_state.m_subst), j, std::move(label),
                            get_app_fn(ch.m_meta).meta().value);
                }
                } catch (kernel_exception const & e) {
                    throw unifier_exception(c.j(), e.what());
                }
            }
            result.m_status = solve_status::solved;
            result.m_subst = m_state.m_subst;
            m_state.m_queue.for_each([&](queue_key const &, queued_constraint const & q) {
                if (q.m_constraint.is_eq())
                    result.m_residue.push_back(q.m_constraint.eq());
            });
            break;
        } catch (unifier_exception const & e) {
            try {
                resolve(e.j(), e.what());
            } catch (solve_failure const & f) {
                result.m_status = solve_status::failed;
                result.m_j = f.m_j;
                result.m_message = f.m_message;
                break;
            }
        } catch (budget_exceeded const &) {
            result.m_status = solve_status::budget_exceeded;
            result.m_message = "maximum number of steps (" + std::to_string(m_opts.m_max_steps) + ") exceeded";
            break;
        }
    }
    result.m_steps = m_steps;
    return result;
}

solve_result solve(environment const & env, std::vector<constraint> const & cs, solver_options opts) {
    solver s(env, std::move(opts));
    return s.solve(cs);
}

}  // namespace elab
