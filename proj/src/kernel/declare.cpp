#include "elab/kernel/declare.hpp"

#include <algorithm>

#include "elab/kernel/exception.hpp"
#include "elab/kernel/expr_ops.hpp"
#include "elab/kernel/local_context.hpp"
#include "elab/kernel/printer.hpp"
#include "elab/kernel/type_checker.hpp"

namespace elab {

namespace {

void check_closed(expr const & e, name const & n) {
    if (e.has_any_meta())
        throw kernel_exception("declaration '" + n.str() + "' contains metavariables");
    if (e.has_fvar() || e.bound() != 0)
        throw kernel_exception("declaration '" + n.str() + "' is not closed");
}

void check_level_params(expr const & e, std::vector<name> const & params, name const & n) {
    for_each(e, [&](expr const & x, unsigned) {
        if (!x.has_level_param())
            return false;
        auto check = [&](level const & l) {
            if (!l.has_param())
                return;
            std::vector<level> stack{l};
            while (!stack.empty()) {
                level t = stack.back();
                stack.pop_back();
                if (t.is_param() && std::find(params.begin(), params.end(), t.param_name()) == params.end())
                    throw kernel_exception("undeclared universe parameter '" + t.param_name().str() + "' in '" +
                                           n.str() + "'");
                if (t.is_succ())
                    stack.push_back(t.succ_of());
                if (t.is_max()) {
                    stack.push_back(t.max_lhs());
                    stack.push_back(t.max_rhs());
                }
            }
        };
        if (x.is_sort())
            check(x.sort_level());
        if (x.is_constant())
            for (auto const & l : x.const_levels())
                check(l);
        return true;
    });
}

level check_type(environment const & env, expr const & type) {
    type_checker tc(env, transparency::all, true);
    return tc.ensure_sort(tc.infer(type));
}

environment add_axiom(environment const & env, axiom_decl const & d) {
    check_closed(d.m_type, d.m_name);
    check_level_params(d.m_type, d.m_univ_params, d.m_name);
    check_type(env, d.m_type);
    return env.add(constant_info{d.m_name, d.m_univ_params, d.m_type, axiom_val{}});
}

environment add_definition(environment const & env, definition_decl const & d) {
    check_closed(d.m_type, d.m_name);
    check_closed(d.m_value, d.m_name);
    check_level_params(d.m_type, d.m_univ_params, d.m_name);
    check_level_params(d.m_value, d.m_univ_params, d.m_name);
    if (env.contains(d.m_name))
        throw kernel_exception("duplicate declaration '" + d.m_name.str() + "'");
    check_type(env, d.m_type);
    type_checker tc(env, transparency::all, true);
    expr vt = tc.infer(d.m_value);
    if (!tc.is_def_eq(vt, d.m_type)) {
        printer p(env);
        throw kernel_exception("type mismatch in '" + d.m_name.str() + "': value has type " + p(vt) +
                               " but is expected to have type " + p(d.m_type));
    }
    definition_val v;
    v.m_value = d.m_value;
    v.m_hint = d.m_hint;
    v.m_depth = compute_depth(env, d.m_value);
    return env.add(constant_info{d.m_name, d.m_univ_params, d.m_type, v});
}

// Telescope of Π binders opened with fresh locals, whnf'd as needed.
expr open_pis(environment const & env, expr t, std::vector<expr> & locals, std::size_t max = SIZE_MAX) {
    while (locals.size() < max) {
        if (!t.is_pi())
            t = whnf(env, t, transparency::all);
        if (!t.is_pi())
            break;
        expr l = mk_local(t.binder_name(), t.binder_domain(), t.info());
        locals.push_back(l);
        t = instantiate(t.binder_body(), l);
    }
    return t;
}

bool mentions(expr const & e, name const & n) {
    bool found = false;
    for_each(e, [&](expr const & x, unsigned) {
        if (found)
            return false;
        if (x.is_constant() && x.const_name() == n)
            found = true;
        return true;
    });
    return found;
}

struct field_info {
    expr              m_local;
    bool              m_recursive = false;
    std::vector<expr> m_ys;       // for recursive fields: Π ys, I params idx
    std::vector<expr> m_indices;  // indices of the recursive occurrence
};

struct ctor_info {
    name                    m_name;
    expr                    m_type;
    std::vector<field_info> m_fields;
    std::vector<expr>       m_result_indices;
};

class inductive_builder {
    environment        m_env;   // with I added
    inductive_decl     m_decl;
    std::vector<expr>  m_params;
    std::vector<expr>  m_indices;
    level              m_level;
    bool               m_is_prop = false;
    std::vector<ctor_info> m_ctors;
    expr               m_ind_const;

    expr ind_app(std::vector<expr> const & indices) const {
        expr r = mk_app(m_ind_const, m_params);
        return mk_app(r, indices);
    }

    // I params idx with the exact parameter locals
    bool is_valid_ind_app(expr const & t, std::vector<expr> & indices) const {
        expr const & f = get_app_fn(t);
        if (!f.is_constant() || f.const_name() != m_decl.m_name)
            return false;
        std::vector<expr> args = get_app_args(t);
        if (args.size() != m_params.size() + m_indices.size())
            return false;
        for (std::size_t i = 0; i < m_params.size(); ++i)
            if (!(args[i] == m_params[i]))
                return false;
        indices.assign(args.begin() + m_params.size(), args.end());
        for (auto const & ix : indices)
            if (mentions(ix, m_decl.m_name))
                return false;
        return true;
    }

    void check_ctor(name const & cname, expr const & ctype) {
        check_closed(ctype, cname);
        check_level_params(ctype, m_decl.m_univ_params, cname);
        check_type(m_env, ctype);
        ctor_info ci{cname, ctype, {}, {}};
        expr t = ctype;
        // parameters must coincide with the inductive's
        for (std::size_t i = 0; i < m_params.size(); ++i) {
            if (!t.is_pi())
                throw kernel_exception("constructor '" + cname.str() + "' does not take the inductive's parameters");
            if (!is_def_eq(m_env, t.binder_domain(), m_params[i].local_type()))
                throw kernel_exception("parameter mismatch in constructor '" + cname.str() + "'");
            t = instantiate(t.binder_body(), m_params[i]);
        }
        while (true) {
            if (!t.is_pi())
                t = whnf(m_env, t, transparency::all);
            if (!t.is_pi())
                break;
            expr dom = t.binder_domain();
            expr l = mk_local(t.binder_name(), dom, t.info());
            field_info fi{l, false, {}, {}};
            if (mentions(dom, m_decl.m_name)) {
                std::vector<expr> ys;
                expr r = open_pis(m_env, dom, ys);
                for (auto const & y : ys)
                    if (mentions(y.local_type(), m_decl.m_name))
                        throw kernel_exception("non-positive occurrence of '" + m_decl.m_name.str() +
                                               "' in constructor '" + cname.str() + "'");
                std::vector<expr> idx;
                if (!is_valid_ind_app(r, idx))
                    throw kernel_exception("invalid occurrence of '" + m_decl.m_name.str() + "' in constructor '" +
                                           cname.str() + "' (nested and mutual inductives are not supported)");
                fi.m_recursive = true;
                fi.m_ys = ys;
                fi.m_indices = idx;
            } else if (!m_is_prop) {
                type_checker tc(m_env, transparency::all);
                level fl = tc.ensure_sort(tc.infer(dom));
                if (!is_geq(m_level, fl))
                    throw kernel_exception("universe level of field of constructor '" + cname.str() +
                                           "' is too big for the inductive type");
            }
            ci.m_fields.push_back(fi);
            t = instantiate(t.binder_body(), l);
        }
        if (!is_valid_ind_app(t, ci.m_result_indices))
            throw kernel_exception("constructor '" + cname.str() + "' must return '" + m_decl.m_name.str() + "'");
        m_ctors.push_back(std::move(ci));
    }

    bool large_elim() const {
        if (!m_is_prop || m_ctors.empty())
            return true;
        if (m_ctors.size() > 1)
            return false;
        ctor_info const & c = m_ctors.front();
        for (auto const & f : c.m_fields) {
            type_checker tc(m_env, transparency::all);
            level fl = tc.ensure_sort(tc.infer(f.m_local.local_type()));
            if (normalize(fl).is_zero())
                continue;
            bool in_index = std::any_of(c.m_result_indices.begin(), c.m_result_indices.end(),
                                        [&](expr const & ix) { return ix == f.m_local; });
            if (!in_index)
                return false;
        }
        return true;
    }

    name fresh_level_name() const {
        std::string base = "l";
        auto const & ps = m_decl.m_univ_params;
        while (std::find(ps.begin(), ps.end(), name(base)) != ps.end())
            base += "'";
        return name(base);
    }

public:
    explicit inductive_builder(environment const & env, inductive_decl d) : m_decl(std::move(d)) {
        check_closed(m_decl.m_type, m_decl.m_name);
        check_level_params(m_decl.m_type, m_decl.m_univ_params, m_decl.m_name);
        if (env.contains(m_decl.m_name))
            throw kernel_exception("duplicate declaration '" + m_decl.m_name.str() + "'");
        check_type(env, m_decl.m_type);
        std::vector<expr> tele;
        expr r = open_pis(env, m_decl.m_type, tele);
        if (!r.is_sort())
            throw kernel_exception("inductive type '" + m_decl.m_name.str() + "' must end in a sort");
        if (tele.size() < m_decl.m_num_params)
            throw kernel_exception("inductive type '" + m_decl.m_name.str() + "' has too few parameters");
        m_params.assign(tele.begin(), tele.begin() + m_decl.m_num_params);
        m_indices.assign(tele.begin() + m_decl.m_num_params, tele.end());
        m_level = r.sort_level();
        m_is_prop = normalize(m_level).is_zero();
        std::vector<level> lvls;
        for (auto const & p : m_decl.m_univ_params)
            lvls.push_back(mk_level_param(p));
        m_ind_const = mk_constant(m_decl.m_name, lvls);
        // the inductive itself is available while checking constructors
        inductive_val iv;
        iv.m_num_params = m_decl.m_num_params;
        iv.m_num_indices = static_cast<unsigned>(m_indices.size());
        iv.m_is_prop = m_is_prop;
        m_env = env.add(constant_info{m_decl.m_name, m_decl.m_univ_params, m_decl.m_type, iv});
        for (auto const & [cn, ct] : m_decl.m_constructors) {
            if (!cn.has_prefix(m_decl.m_name))
                throw kernel_exception("constructor '" + cn.str() + "' must be in namespace '" + m_decl.m_name.str() +
                                       "'");
            check_ctor(cn, ct);
        }
    }

    environment build() {
        name rec_name = m_decl.m_name + name("rec");
        bool large = large_elim();
        std::vector<name> rec_params;
        level motive_level;
        if (large) {
            name u = fresh_level_name();
            rec_params.push_back(u);
            motive_level = mk_level_param(u);
        }
        rec_params.insert(rec_params.end(), m_decl.m_univ_params.begin(), m_decl.m_univ_params.end());
        std::vector<level> rec_levels;
        for (auto const & p : rec_params)
            rec_levels.push_back(mk_level_param(p));
        expr rec_const = mk_constant(rec_name, rec_levels);

        // params become implicit in the recursor
        std::vector<expr> params;
        for (auto const & p : m_params) {
            expr ty = abstract_locals(p.local_type(), std::span<expr const>(m_params).first(params.size()));
            params.push_back(mk_local(p.local_name(), instantiate_rev(ty, params), binder_info::implicit));
        }
        auto subst_params = [&](expr const & e) {
            expr r = abstract_locals(e, m_params);
            return instantiate_rev(r, params);
        };
        std::vector<expr> indices;
        for (auto const & ix : m_indices) {
            expr ty = abstract_locals(subst_params(ix.local_type()), std::span<expr const>(m_indices).first(indices.size()));
            ty = instantiate_rev(ty, indices);
            indices.push_back(mk_local(ix.local_name(), ty, binder_info::implicit));
        }
        expr ind_params = mk_app(m_ind_const, params);
        expr major = mk_local("n", mk_app(ind_params, indices));
        std::vector<expr> motive_tele = indices;
        motive_tele.push_back(major);
        // motive binders are explicit within its own type
        std::vector<expr> motive_binders;
        for (auto const & l : motive_tele)
            motive_binders.push_back(mk_fvar(l.fvar(), l.local_name(), l.local_type(), binder_info::default_));
        expr motive_type = abstract_pi(motive_binders, mk_sort(motive_level));
        expr motive = mk_local("C", motive_type, binder_info::implicit);

        // minor premises
        std::vector<expr> minors;
        std::vector<std::vector<expr>> ctor_fields;  // fields re-expressed over `params`
        std::vector<std::vector<expr>> ctor_ihs;
        for (auto const & c : m_ctors) {
            std::vector<expr> fields;
            std::vector<expr> field_src;
            for (auto const & f : c.m_fields)
                field_src.push_back(f.m_local);
            for (auto const & f : c.m_fields) {
                expr ty = subst_params(f.m_local.local_type());
                ty = instantiate_rev(abstract_locals(ty, std::span<expr const>(field_src).first(fields.size())), fields);
                fields.push_back(mk_local(f.m_local.local_name(), ty, binder_info::default_));
            }
            auto over_fields = [&](expr const & e) {
                return instantiate_rev(abstract_locals(subst_params(e), field_src), fields);
            };
            std::vector<expr> ihs;
            for (std::size_t i = 0; i < c.m_fields.size(); ++i) {
                field_info const & f = c.m_fields[i];
                if (!f.m_recursive)
                    continue;
                std::vector<expr> ys;
                for (auto const & y : f.m_ys) {
                    expr ty = over_fields(y.local_type());
                    ty = instantiate_rev(abstract_locals(ty, std::span<expr const>(f.m_ys).first(ys.size())), ys);
                    ys.push_back(mk_local(y.local_name(), ty, y.info()));
                }
                std::vector<expr> idx;
                for (auto const & ix : f.m_indices)
                    idx.push_back(instantiate_rev(abstract_locals(over_fields(ix), f.m_ys), ys));
                expr app = mk_app(mk_app(motive, idx), mk_app(fields[i], ys));
                expr ih_ty = abstract_pi(ys, app);
                ihs.push_back(mk_local(name("ih_" + fields[i].local_name().last()), ih_ty));
            }
            std::vector<expr> res_idx;
            for (auto const & ix : c.m_result_indices)
                res_idx.push_back(over_fields(ix));
            std::vector<level> ind_levels = m_ind_const.const_levels();
            expr ctor_app = mk_app(mk_app(mk_constant(c.m_name, ind_levels), params), fields);
            expr minor_body = mk_app(mk_app(motive, res_idx), ctor_app);
            std::vector<expr> minor_tele = fields;
            minor_tele.insert(minor_tele.end(), ihs.begin(), ihs.end());
            expr minor_ty = abstract_pi(minor_tele, minor_body);
            minors.push_back(mk_local(name(c.m_name.last()), minor_ty));
            ctor_fields.push_back(fields);
            ctor_ihs.push_back(ihs);
        }

        std::vector<expr> rec_tele = params;
        rec_tele.push_back(motive);
        rec_tele.insert(rec_tele.end(), minors.begin(), minors.end());
        rec_tele.insert(rec_tele.end(), indices.begin(), indices.end());
        rec_tele.push_back(major);
        expr rec_type = abstract_pi(rec_tele, mk_app(mk_app(motive, indices), major));

        // iota rules
        std::vector<recursor_rule> rules;
        for (std::size_t k = 0; k < m_ctors.size(); ++k) {
            ctor_info const & c = m_ctors[k];
            std::vector<expr> const & fields = ctor_fields[k];
            std::vector<expr> ih_vals;
            std::size_t ih_i = 0;
            for (std::size_t i = 0; i < c.m_fields.size(); ++i) {
                if (!c.m_fields[i].m_recursive)
                    continue;
                expr ih_ty = ctor_ihs[k][ih_i++].local_type();
                // λ ys, rec params C minors idx (f ys)
                std::vector<expr> ys;
                expr t = ih_ty;
                while (t.is_pi()) {
                    expr y = mk_local(t.binder_name(), t.binder_domain(), t.info());
                    ys.push_back(y);
                    t = instantiate(t.binder_body(), y);
                }
                // t = C idx (f ys)
                std::vector<expr> cargs = get_app_args(t);
                std::vector<expr> call_args = params;
                call_args.push_back(motive);
                call_args.insert(call_args.end(), minors.begin(), minors.end());
                call_args.insert(call_args.end(), cargs.begin(), cargs.end());
                ih_vals.push_back(abstract_lambda(ys, mk_app(rec_const, call_args)));
            }
            std::vector<expr> lam_tele = params;
            lam_tele.push_back(motive);
            lam_tele.insert(lam_tele.end(), minors.begin(), minors.end());
            lam_tele.insert(lam_tele.end(), fields.begin(), fields.end());
            expr body = mk_app(mk_app(minors[k], fields), ih_vals);
            rules.push_back(recursor_rule{c.m_name, static_cast<unsigned>(fields.size()), abstract_lambda(lam_tele, body)});
        }

        // commit
        environment env = m_env;
        inductive_val iv = env.get(m_decl.m_name).inductive();
        for (auto const & c : m_ctors)
            iv.m_constructors.push_back(c.m_name);
        iv.m_recursor = rec_name;
        constant_info ind = env.get(m_decl.m_name);
        ind.m_val = iv;
        env = env.replace(ind);
        for (std::size_t k = 0; k < m_ctors.size(); ++k) {
            constructor_val cv{m_decl.m_name, static_cast<unsigned>(k), m_decl.m_num_params,
                               static_cast<unsigned>(m_ctors[k].m_fields.size())};
            env = env.add(constant_info{m_ctors[k].m_name, m_decl.m_univ_params, m_ctors[k].m_type, cv});
        }
        recursor_val rv;
        rv.m_inductive = m_decl.m_name;
        rv.m_num_params = m_decl.m_num_params;
        rv.m_num_minors = static_cast<unsigned>(m_ctors.size());
        rv.m_num_indices = static_cast<unsigned>(m_indices.size());
        rv.m_rules = std::move(rules);
        env = env.add(constant_info{rec_name, rec_params, rec_type, rv});
        // sanity: the generated recursor type is well formed
        check_type(env, rec_type);
        return env;
    }
};

}  // namespace

environment check_declaration(environment const & env, declaration const & d) {
    return std::visit(
        [&](auto const & x) -> environment {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, axiom_decl>)
                return add_axiom(env, x);
            else if constexpr (std::is_same_v<T, definition_decl>)
                return add_definition(env, x);
            else
                return inductive_builder(env, x).build();
        },
        d);
}

std::vector<name> structure_fields(environment const & env, name const & s) {
    constant_info const & c = env.get(s);
    if (!c.is_inductive() || c.inductive().m_constructors.size() != 1 || c.inductive().m_num_indices != 0)
        throw kernel_exception("'" + s.str() + "' is not a structure");
    constant_info const & mk = env.get(c.inductive().m_constructors.front());
    std::vector<name> out;
    expr t = mk.m_type;
    for (unsigned i = 0; t.is_pi(); ++i, t = t.binder_body())
        if (i >= c.inductive().m_num_params)
            out.push_back(t.binder_name());
    return out;
}

environment add_projections(environment const & env0, name const & s, bool self_inst_implicit) {
    environment env = env0;
    constant_info const & ind = env.get(s);
    std::vector<name> fields = structure_fields(env, s);
    inductive_val const & iv = ind.inductive();
    constant_info const & mk = env.get(iv.m_constructors.front());
    constant_info const & rec = env.get(iv.m_recursor);
    bool large = rec.m_univ_params.size() > ind.m_univ_params.size();

    std::vector<level> ind_levels;
    for (auto const & p : ind.m_univ_params)
        ind_levels.push_back(mk_level_param(p));
    std::vector<expr> params;
    std::vector<expr> ctor_fields;
    expr t = mk.m_type;
    for (unsigned i = 0; i < iv.m_num_params; ++i) {
        expr l = mk_local(t.binder_name(), t.binder_domain(), binder_info::implicit);
        params.push_back(l);
        t = instantiate(t.binder_body(), l);
    }
    expr self_type = mk_app(mk_constant(s, ind_levels), params);
    expr self = mk_local("s", self_type, self_inst_implicit ? binder_info::inst_implicit : binder_info::default_);
    std::vector<expr> projs;  // proj_j params self
    for (std::size_t i = 0; i < fields.size(); ++i) {
        // field type with earlier fields replaced by their projections of self
        expr fty = t.binder_domain();
        expr fl = mk_local(t.binder_name(), fty);
        ctor_fields.push_back(fl);
        expr fty_self = fty;
        for (std::size_t j = 0; j < i; ++j)
            fty_self = subst_fvar(fty_self, ctor_fields[j].fvar(), projs[j]);
        type_checker tc(env, transparency::all);
        level u = tc.ensure_sort(tc.infer(fty_self));
        if (!large && !normalize(u).is_zero())
            throw kernel_exception("cannot project data out of proposition '" + s.str() + "'");
        expr major = mk_local("x", self_type);
        expr motive = abstract_lambda(std::vector<expr>{major},
                                      subst_fvar(fty_self, self.fvar(), major));
        std::vector<level> rec_levels;
        if (large)
            rec_levels.push_back(u);
        rec_levels.insert(rec_levels.end(), ind_levels.begin(), ind_levels.end());
        std::vector<expr> minor_fields;
        // rebuild all constructor fields for the minor premise
        expr mt = mk.m_type;
        for (unsigned k = 0; k < iv.m_num_params; ++k)
            mt = instantiate(mt.binder_body(), params[k]);
        while (mt.is_pi()) {
            expr l = mk_local(mt.binder_name(), mt.binder_domain());
            minor_fields.push_back(l);
            mt = instantiate(mt.binder_body(), l);
        }
        expr minor = abstract_lambda(minor_fields, minor_fields[i]);
        expr value_body =
            mk_app(mk_app(mk_app(mk_constant(iv.m_recursor, rec_levels), params), {motive, minor}), self);
        std::vector<expr> tele = params;
        tele.push_back(self);
        expr value = abstract_lambda(tele, value_body);
        expr type = abstract_pi(tele, fty_self);
        name pname = s + fields[i];
        env = check_declaration(env, definition_decl{pname, ind.m_univ_params, type, value, reducibility::reducible});
        constant_info pc = env.get(pname);
        definition_val dv = pc.definition();
        dv.m_projection = projection_info{s, iv.m_num_params, static_cast<unsigned>(i)};
        pc.m_val = dv;
        env = env.replace(pc);
        projs.push_back(mk_app(mk_app(mk_constant(pname, ind_levels), params), self));
        t = instantiate(t.binder_body(), fl);
    }
    return env;
}

}  // namespace elab
