#pragma once

#include "elab/kernel/declare.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"
#include "elab/kernel/type_checker.hpp"

namespace elab::test {

inline expr nat() { return mk_constant("nat"); }
inline expr zero() { return mk_constant("nat.zero"); }
inline expr succ(expr const & e) { return mk_app(mk_constant("nat.succ"), e); }
inline expr num(unsigned n) {
    expr r = zero();
    for (unsigned i = 0; i < n; ++i)
        r = succ(r);
    return r;
}

/// nat, add (recursing on the second argument), bool, int axioms and
/// `sub := λ x y, add x (uminus y)` built directly through the kernel.
inline environment kernel_env(reducibility sub_hint = reducibility::reducible) {
    environment env;
    env = check_declaration(env, inductive_decl{"nat", {}, 0, mk_type(),
                                                {{"nat.zero", nat()}, {"nat.succ", mk_arrow(nat(), nat())}}});
    expr boolean = mk_constant("bool");
    env = check_declaration(env, inductive_decl{"bool", {}, 0, mk_type(),
                                                {{"bool.true", boolean}, {"bool.false", boolean}}});
    // add := λ x y, @nat.rec.{1} (λ _, nat) x (λ n r, succ r) y
    expr x = mk_local("x", nat());
    expr y = mk_local("y", nat());
    expr n = mk_local("n", nat());
    expr r = mk_local("r", nat());
    expr motive = mk_lambda("a", nat(), nat());
    expr step = abstract_lambda(std::vector<expr>{n, r}, succ(r));
    expr body = mk_app(mk_constant("nat.rec", {mk_level_one()}), {motive, x, step, y});
    env = check_declaration(env, definition_decl{"add", {}, mk_arrow(nat(), mk_arrow(nat(), nat())),
                                                 abstract_lambda(std::vector<expr>{x, y}, body)});
    expr integer = mk_constant("int");
    env = check_declaration(env, axiom_decl{"int", {}, mk_type()});
    env = check_declaration(env, axiom_decl{"int.add", {}, mk_arrow(integer, mk_arrow(integer, integer))});
    env = check_declaration(env, axiom_decl{"int.uminus", {}, mk_arrow(integer, integer)});
    expr a = mk_local("a", integer);
    expr b = mk_local("b", integer);
    expr sub_body = mk_app(mk_constant("int.add"), {a, mk_app(mk_constant("int.uminus"), b)});
    env = check_declaration(env, definition_decl{"int.sub", {}, mk_arrow(integer, mk_arrow(integer, integer)),
                                                 abstract_lambda(std::vector<expr>{a, b}, sub_body), sub_hint});
    return env;
}

inline expr add(expr const & a, expr const & b) { return mk_app(mk_constant("add"), {a, b}); }

}  // namespace elab::test
