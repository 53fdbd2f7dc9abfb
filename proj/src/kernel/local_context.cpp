#include "elab/kernel/local_context.hpp"

#include "elab/kernel/expr_ops.hpp"

namespace elab {

expr mk_local(name const & n, expr const & type, binder_info bi) {
    return mk_fvar(fresh_id<fvar_id>(), n, type, bi);
}

expr local_context::push(name const & n, expr const & type, binder_info bi) {
    expr l = mk_local(n, type, bi);
    m_locals.push_back(l);
    return l;
}

std::optional<expr> local_context::find(name const & n) const {
    for (auto it = m_locals.rbegin(); it != m_locals.rend(); ++it)
        if (it->local_name() == n)
            return *it;
    return std::nullopt;
}

expr local_context::mk_meta(expr const & type, name const & display) const {
    expr m = elab::mk_meta(fresh_id<meta_id>(), abstract_pi(m_locals, type), display);
    return mk_app(m, m_locals);
}

expr local_context::mk_type_meta() const { return mk_meta(mk_sort(mk_fresh_level_meta())); }

expr local_context::mk_meta_unknown_type(name const & display) const { return mk_meta(mk_type_meta(), display); }

}  // namespace elab
