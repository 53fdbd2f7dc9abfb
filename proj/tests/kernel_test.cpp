#include <doctest.h>

#include "elab/kernel/exception.hpp"
#include "elab/kernel/printer.hpp"
#include "support/kernel_fixture.hpp"
#include "support/random_terms.hpp"

using namespace elab;
using namespace elab::test;

TEST_CASE("names") {
    name n("a.foo");
    CHECK(n.last() == "foo");
    CHECK(n.prefix() == name("a"));
    CHECK(n.has_prefix("a"));
    CHECK_FALSE(name("ab.c").has_prefix("a"));
    CHECK(n.drop_prefix("a") == name("foo"));
    CHECK(name("a") + name("b.c") == name("a.b.c"));
    CHECK_THROWS_AS(name("a..b"), std::invalid_argument);
    CHECK(n.components() == std::vector<std::string>{"a", "foo"});
}

TEST_CASE("fresh ids are unique and increasing") {
    auto a = fresh_id<meta_id>();
    auto b = fresh_id<meta_id>();
    CHECK(a < b);
}

TEST_CASE("level normalization") {
    level u = mk_level_param("u");
    level v = mk_level_param("v");
    level one = mk_level_one();
    CHECK(normalize(mk_max(u, u)) == u);
    CHECK(normalize(mk_max(v, u)) == normalize(mk_max(u, v)));
    CHECK(normalize(mk_max(one, mk_succ(u))) == mk_succ(u));
    CHECK(normalize(mk_succ(mk_max(u, mk_level_zero()))) == mk_succ(u));
    CHECK(is_equivalent(mk_max(mk_max(u, v), u), mk_max(v, u)));
    CHECK(to_nat(mk_max(one, mk_level_of_nat(3))) == 3u);
    CHECK(is_geq(mk_succ(u), u));
    CHECK(is_geq(mk_max(u, v), v));
    CHECK_FALSE(is_geq(u, v));
    CHECK_FALSE(is_geq(u, one));
    level m = mk_fresh_level_meta();
    CHECK(normalize(mk_max(m, m)).has_meta());

    // idempotence over a few shapes
    std::vector<level> shapes{mk_max(mk_succ(v), mk_max(u, one)), mk_succ(mk_max(u, mk_succ(u))),
                              mk_max(mk_level_zero(), mk_max(m, mk_succ(m)))};
    for (auto const & l : shapes)
        CHECK(normalize(normalize(l)) == normalize(l));
}

TEST_CASE("cached bound") {
    CHECK(mk_bvar(3).bound() == 4);
    expr t = mk_app(mk_bvar(1), mk_constant("c"));
    expr s = mk_app(mk_bvar(4), mk_constant("c"));
    CHECK(t.bound() == 2);
    CHECK(mk_app(t, s).bound() == 5);
    CHECK(mk_lambda("x", mk_constant("A"), mk_bvar(0)).bound() == 0);
    CHECK(mk_lambda("x", mk_bvar(2), mk_bvar(0)).bound() == 3);
}

TEST_CASE("cached flags") {
    expr l = mk_local("l", mk_constant("A"));
    expr m = mk_meta(fresh_id<meta_id>(), mk_constant("A"));
    CHECK(l.has_fvar());
    CHECK_FALSE(l.has_meta());
    CHECK(mk_app(mk_constant("f"), m).has_meta());
    CHECK_FALSE(mk_app(mk_constant("f"), m).has_fvar());
    CHECK(mk_sort(mk_fresh_level_meta()).has_level_meta());
}

TEST_CASE("instantiate") {
    expr c = mk_constant("c");
    expr f = mk_constant("f");
    expr g = mk_constant("g");
    CHECK(instantiate(mk_bvar(0), c) == c);
    CHECK(instantiate(mk_app(f, mk_app(mk_bvar(0), g)), c) == mk_app(f, mk_app(c, g)));
    CHECK(instantiate(mk_bvar(2), c) == mk_bvar(1));
    CHECK(instantiate(mk_lambda("x", c, mk_app(mk_bvar(1), mk_bvar(0))), c) ==
          mk_lambda("x", c, mk_app(c, mk_bvar(0))));
    expr closed = mk_app(f, g);
    CHECK(instantiate(closed, c).is_same(closed));
}

TEST_CASE("abstract") {
    expr f = mk_constant("f");
    expr l = mk_local("l", mk_constant("A"));
    CHECK(abstract(mk_app(f, l), l.fvar()) == mk_app(f, mk_bvar(0)));
    stats().visits = 0;
    expr c = mk_app(f, mk_constant("c"));
    CHECK(abstract(c, l.fvar()).is_same(c));
    CHECK(stats().visits == 1);
    expr t = mk_app(mk_app(f, mk_bvar(0)), mk_bvar(1));
    CHECK(abstract(instantiate(t, l), l.fvar()) == t);
}

TEST_CASE("abstract_lambda builds a dependent telescope") {
    expr A = mk_constant("A");
    expr B = mk_constant("B");
    expr g = mk_constant("g");
    CHECK(abstract_lambda({}, g) == g);
    expr l = mk_local("l", A);
    CHECK(abstract_lambda(std::vector<expr>{l}, mk_app(g, l)) == mk_lambda("x", A, mk_app(g, mk_bvar(0))));
    expr l1 = mk_local("l1", A);
    expr l2 = mk_local("l2", mk_app(B, l1));
    expr r = abstract_lambda(std::vector<expr>{l1, l2}, mk_app(g, {l1, l2}));
    expr expected = mk_lambda("x1", A, mk_lambda("x2", mk_app(B, mk_bvar(0)), mk_app(g, {mk_bvar(1), mk_bvar(0)})));
    CHECK(r == expected);
}

TEST_CASE("subst_meta") {
    expr A = mk_constant("A");
    expr a = mk_constant("a");
    expr f = mk_constant("f");
    expr m = mk_meta(fresh_id<meta_id>(), mk_arrow(A, A));
    CHECK(subst_meta(mk_app(m, a), m.meta(), f) == mk_app(f, a));
    expr t = mk_app(f, a);
    CHECK(subst_meta(t, m.meta(), f).is_same(t));
}

TEST_CASE("mk_meta over a context") {
    local_context empty;
    expr A = mk_constant("A");
    expr B = mk_constant("B");
    expr C = mk_constant("C");
    expr m0 = empty.mk_meta(A);
    CHECK(m0.is_meta());
    CHECK(m0.local_type() == A);
    local_context ctx;
    expr x = ctx.push("x", A);
    expr y = ctx.push("y", B);
    expr m = ctx.mk_meta(C);
    CHECK(get_app_args(m) == std::vector<expr>{x, y});
    CHECK(get_app_fn(m).local_type() == mk_pi("x", A, mk_pi("y", B, C)));
    local_context c1;
    expr x1 = c1.push("x", A);
    expr h = c1.mk_meta_unknown_type();
    expr mt = get_app_fn(h).local_type();
    REQUIRE(mt.is_pi());
    expr cod = mt.binder_body();
    CHECK(is_meta_app(cod));
    CHECK(get_app_args(cod) == std::vector<expr>{mk_bvar(0)});
    (void)x1;
}

TEST_CASE("property: optimized traversals agree with the reference") {
    term_gen gen(7);
    for (int i = 0; i < 500; ++i) {
        expr t = gen(1 + i % 40);
        CHECK(naive_bound(t) <= t.bound());
        expr s = gen.closed(3);
        CHECK(instantiate(t, s) == naive_instantiate(t, s));
        expr l = gen.fvars()[i % gen.fvars().size()];
        CHECK(abstract(t, l.fvar()) == naive_abstract(t, l.fvar()));
        expr m = gen.metas()[i % gen.metas().size()];
        CHECK(subst_meta(t, m.meta(), s) == naive_subst_meta(t, m.meta(), s));
    }
}

TEST_CASE("property: instantiate after abstract is free-variable substitution") {
    term_gen gen(11);
    for (int i = 0; i < 300; ++i) {
        expr t = gen(1 + i % 30, 0, 0);
        if (t.bound() != 0)
            continue;
        expr l = gen.fvars()[i % gen.fvars().size()];
        expr s = gen.closed(4);
        CHECK(instantiate(abstract(t, l.fvar()), s) == subst_fvar(t, l.fvar(), s));
    }
}

TEST_CASE("structural sharing of untouched subtrees") {
    expr big = mk_app(mk_constant("f"), mk_app(mk_constant("g"), mk_constant("h")));
    expr t = mk_app(big, mk_bvar(0));
    expr r = instantiate(t, mk_constant("c"));
    CHECK(r.app_fn().is_same(big));
}

TEST_CASE("nat recursor") {
    environment env = kernel_env();
    constant_info const & rec = env.get("nat.rec");
    REQUIRE(rec.is_recursor());
    CHECK(rec.m_univ_params.size() == 1);
    level l = mk_level_param(rec.m_univ_params[0]);
    // Π {C : nat → Sort l} (zero : C 0) (succ : Π n, C n → C (succ n)) (n : nat), C n
    expr C = mk_local("C", mk_arrow(nat(), mk_sort(l)), binder_info::implicit);
    expr n = mk_local("n", nat());
    expr ih = mk_local("ih", mk_app(C, n));
    expr z = mk_local("zero", mk_app(C, zero()));
    expr s = mk_local("succ", abstract_pi(std::vector<expr>{n, ih}, mk_app(C, succ(n))));
    expr major = mk_local("n", nat());
    expr expected = abstract_pi(std::vector<expr>{C, z, s, major}, mk_app(C, major));
    CHECK(rec.m_type == expected);
    CHECK(rec.recursor().major_idx() == 3);
    CHECK(rec.m_type.info() == binder_info::implicit);
}

TEST_CASE("reduction") {
    environment env = kernel_env();
    expr A = nat();
    expr a = num(3);
    CHECK(reduce_beta_iota(env, mk_app(mk_lambda("x", A, mk_bvar(0)), a)) == a);
    expr motive = mk_lambda("a", nat(), nat());
    expr zs = mk_lambda("n", nat(), mk_lambda("r", nat(), mk_bvar(0)));
    expr rec0 = mk_app(mk_constant("nat.rec", {mk_level_one()}), {motive, num(7), zs, zero()});
    CHECK(reduce_beta_iota(env, rec0) == num(7));
    CHECK(get_app_fn(whnf(env, add(num(2), num(2)))) == mk_constant("nat.succ"));
    CHECK(normalize(env, add(num(2), num(2))) == num(4));
    CHECK(depth(env, "add") == 1);
    CHECK(depth(env, "int.sub") == 1);
    expr n = mk_local("n", nat());
    env = check_declaration(env, definition_decl{"double", {}, mk_arrow(nat(), nat()),
                                                 abstract_lambda(std::vector<expr>{n}, add(n, n))});
    CHECK(depth(env, "double") == 2);
    CHECK(depth(env, "nat.rec") == 0);
    CHECK_FALSE(unfold(env, zero()).has_value());
}

TEST_CASE("whnf respects transparency") {
    environment env = kernel_env(reducibility::semireducible);
    expr a = mk_local("a", mk_constant("int"));
    expr b = mk_local("b", mk_constant("int"));
    expr t = mk_app(mk_constant("int.sub"), {b, a});
    expr d = whnf(env, t, transparency::default_);
    CHECK(get_app_fn(d) == mk_constant("int.add"));
    CHECK(whnf(env, t, transparency::reducible_only) == t);
    environment irr = kernel_env(reducibility::irreducible);
    CHECK(whnf(irr, t, transparency::default_) == t);
    CHECK(get_app_fn(whnf(irr, t, transparency::all)) == mk_constant("int.add"));
}

TEST_CASE("unfold under level instantiation") {
    environment env = kernel_env();
    level u = mk_level_param("u");
    expr A = mk_local("A", mk_sort(u), binder_info::implicit);
    expr x = mk_local("x", A);
    expr id_type = abstract_pi(std::vector<expr>{A, x}, A);
    expr id_val = abstract_lambda(std::vector<expr>{A, x}, x);
    env = check_declaration(env, definition_decl{"id", {"u"}, id_type, id_val});
    expr t = mk_app(mk_constant("id", {mk_level_one()}), {nat(), num(1)});
    auto r = unfold(env, t);
    REQUIRE(r.has_value());
    CHECK(*r == num(1));
    CHECK(is_def_eq(env, typeof(env, *r).m_type, typeof(env, t).m_type));
}

TEST_CASE("is_stuck") {
    environment env = kernel_env();
    expr A = nat();
    expr m = mk_meta(fresh_id<meta_id>(), mk_arrow(A, mk_arrow(A, A)));
    expr a = mk_local("a", A);
    auto r1 = is_stuck(env, mk_app(m, {a, a}));
    REQUIRE(r1);
    CHECK(r1->m_kind == stuck_kind::application);
    expr m1 = mk_meta(fresh_id<meta_id>(), mk_arrow(A, A));
    expr motive = mk_lambda("a", nat(), nat());
    expr zs = mk_lambda("n", nat(), mk_lambda("r", nat(), mk_bvar(0)));
    expr rec = mk_app(mk_constant("nat.rec", {mk_level_one()}), {motive, zero(), zs, mk_app(m1, a)});
    auto r2 = is_stuck(env, rec);
    REQUIRE(r2);
    CHECK(r2->m_kind == stuck_kind::recursor);
    CHECK(r2->m_term == mk_app(m1, a));
    CHECK_FALSE(is_stuck(env, mk_app(mk_constant("nat.succ"), a)));
}

TEST_CASE("typeof and ensurefun") {
    environment env = kernel_env();
    auto r = typeof(env, mk_lambda("x", nat(), mk_bvar(0)));
    CHECK(r.m_type == mk_arrow(nat(), nat()));
    CHECK(r.m_constraints.empty());
    CHECK(typeof(env, mk_prop()).m_type == mk_type());
    // Π x : nat, Prop lives in Type; Π x : nat, (p : Prop) stays in Prop
    CHECK(typeof(env, mk_arrow(nat(), mk_prop())).m_type == mk_sort(mk_level_one()));
    expr p = mk_local("p", mk_prop());
    CHECK(typeof(env, mk_arrow(nat(), p)).m_type == mk_prop());

    expr s = mk_local("s", mk_arrow(nat(), nat()));
    CHECK(ensurefun(env, s).m_type == mk_arrow(nat(), nat()));
    CHECK(ensurefun(env, s).m_constraints.empty());

    expr a = mk_local("a", nat());
    expr m = mk_meta(fresh_id<meta_id>(), mk_arrow(nat(), mk_type()));
    expr f = mk_local("f", mk_app(m, a));
    auto e = ensurefun(env, f);
    REQUIRE(e.m_type.is_pi());
    REQUIRE(e.m_constraints.size() == 1);
    CHECK(e.m_constraints[0].m_lhs == mk_app(m, a));
    CHECK(is_meta_app(e.m_type.binder_domain()));
    CHECK(get_app_args(e.m_type.binder_domain()) == std::vector<expr>{a});

    expr n = mk_local("n", nat());
    CHECK_THROWS_AS(ensurefun(env, n), kernel_exception);
}

TEST_CASE("kernel conversion") {
    environment env = kernel_env();
    CHECK(is_def_eq(env, add(num(2), num(2)), num(4)));
    expr x = mk_local("x", nat());
    CHECK(is_def_eq(env, add(x, zero()), x));
    CHECK_FALSE(is_def_eq(env, nat(), mk_constant("bool")));
    expr f = mk_local("f", mk_arrow(nat(), nat()));
    CHECK(is_def_eq(env, mk_lambda("y", nat(), mk_app(f, mk_bvar(0))), f));
    CHECK(is_def_eq(env, mk_sort(mk_max(mk_level_one(), mk_level_zero())), mk_type()));
    CHECK_FALSE(is_def_eq(env, num(3), num(4)));
}

TEST_CASE("property: whnf is idempotent and sound") {
    environment env = kernel_env();
    std::vector<expr> ts{add(num(2), num(3)), add(add(num(1), num(1)), num(2)), succ(add(num(0), num(2))),
                         mk_app(mk_lambda("x", nat(), add(mk_bvar(0), num(1))), num(5))};
    for (auto const & t : ts) {
        for (auto mode : {transparency::reducible_only, transparency::default_, transparency::all}) {
            expr w = whnf(env, t, mode);
            CHECK(whnf(env, w, mode) == w);
            CHECK(is_def_eq(env, t, w));
            CHECK(is_def_eq(env, typeof(env, w).m_type, typeof(env, t).m_type));
        }
    }
}

TEST_CASE("declaration checking") {
    environment env = kernel_env();
    CHECK_THROWS_AS(check_declaration(env, definition_decl{"bad", {}, nat(), mk_constant("bool.true")}),
                    kernel_exception);
    try {
        check_declaration(env, definition_decl{"bad", {}, nat(), mk_constant("bool.true")});
    } catch (kernel_exception const & e) {
        std::string msg = e.what();
        CHECK(msg.find("bool") != std::string::npos);
        CHECK(msg.find("nat") != std::string::npos);
    }
    CHECK_THROWS_AS(check_declaration(env, axiom_decl{"nat", {}, mk_type()}), kernel_exception);
    // non-positive occurrence
    expr bad = mk_constant("bad");
    CHECK_THROWS_AS(check_declaration(env, inductive_decl{"bad", {}, 0, mk_type(),
                                                          {{"bad.mk", mk_arrow(mk_arrow(bad, nat()), bad)}}}),
                    kernel_exception);
    env = check_declaration(env, definition_decl{"two", {}, nat(), num(2)});
    CHECK(env.get("two").depth() == 1);
}

TEST_CASE("indexed families and structures") {
    environment env = kernel_env();
    // inductive eq {A : Sort u} (a : A) : A → Prop | refl : eq a a
    level u = mk_level_param("u");
    expr A = mk_local("A", mk_sort(u), binder_info::implicit);
    expr a = mk_local("a", A);
    expr eq_c = mk_constant("eq", {u});
    expr eq_type = abstract_pi(std::vector<expr>{A, a}, mk_arrow(A, mk_prop()));
    expr refl_type = abstract_pi(std::vector<expr>{A, a}, mk_app(eq_c, {A, a, a}));
    env = check_declaration(env, inductive_decl{"eq", {"u"}, 2, eq_type, {{"eq.refl", refl_type}}});
    constant_info const & rec = env.get("eq.rec");
    CHECK(rec.m_univ_params.size() == 2);  // large elimination
    CHECK(rec.recursor().m_num_indices == 1);

    // structure prod (A B : Type) := (fst : A) (snd : B)
    expr X = mk_local("A", mk_type(), binder_info::implicit);
    expr Y = mk_local("B", mk_type(), binder_info::implicit);
    expr prod = mk_app(mk_constant("prod"), {X, Y});
    expr fst = mk_local("fst", X);
    expr snd = mk_local("snd", Y);
    expr mk_type_ = abstract_pi(std::vector<expr>{X, Y, fst, snd}, prod);
    env = check_declaration(env, inductive_decl{"prod", {}, 2, mk_arrow(mk_type(), mk_arrow(mk_type(), mk_type())),
                                                {{"prod.mk", mk_type_}}});
    env = add_projections(env, "prod", false);
    CHECK(env.get("prod.fst").is_projection());
    CHECK(env.get("prod.snd").hint() == reducibility::reducible);
    expr pair = mk_app(mk_constant("prod.mk"), {nat(), mk_constant("bool"), num(1), mk_constant("bool.true")});
    expr p1 = mk_app(mk_constant("prod.fst"), {nat(), mk_constant("bool"), pair});
    CHECK(whnf(env, p1) == num(1));
}

TEST_CASE("printer") {
    environment env = kernel_env();
    printer p(env);
    CHECK(p(num(3)) == "3");
    CHECK(p(mk_arrow(nat(), nat())) == "nat -> nat");
    CHECK(p(mk_lambda("x", nat(), mk_bvar(0))) == "fun (x : nat), x");
    expr m = mk_meta(fresh_id<meta_id>(), nat());
    expr m2 = mk_meta(fresh_id<meta_id>(), nat());
    CHECK(p(add(m2, m)) == "add ?m_1 ?m_2");
    CHECK(p(mk_prop()) == "Prop");
    CHECK(p(mk_sort(mk_level_of_nat(2))) == "Type.{1}");
}
