#include "elab/constraints/substitution.hpp"

#include <unordered_map>

#include "elab/kernel/expr_ops.hpp"

namespace elab {

void substitution::assign(meta_id m, expr value, justification j) {
    m_exprs.insert(m, expr_assignment{std::move(value), std::move(j)});
}

void substitution::assign(level_meta_id m, level value, justification j) {
    m_levels.insert(m, level_assignment{std::move(value), std::move(j)});
}

level substitution::instantiate(level const & l, justification & j) const {
    if (!l.has_meta() || m_levels.empty())
        return l;
    return replace_metas(l, [&](level_meta_id m) -> std::optional<level> {
        auto a = m_levels.find(m);
        if (!a)
            return std::nullopt;
        j = mk_join(j, a->m_j);
        return instantiate(a->m_value, j);
    });
}

level substitution::instantiate(level const & l) const {
    justification j;
    return instantiate(l, j);
}

expr substitution::instantiate(expr const & e, justification & j) const {
    if (!e.has_any_meta() || (m_exprs.empty() && m_levels.empty()))
        return e;
    std::unordered_map<std::uint64_t, expr> cache;
    level_lookup levels = [&](level_meta_id l) -> std::optional<level> {
        if (!m_levels.contains(l))
            return std::nullopt;
        return instantiate(mk_level_meta(l), j);
    };
    meta_lookup metas;
    metas = [&](meta_id m) -> std::optional<expr> {
        auto a = m_exprs.find(m);
        if (!a)
            return std::nullopt;
        j = mk_join(j, a->m_j);
        if (auto it = cache.find(m.value); it != cache.end())
            return it->second;
        expr v = a->m_value.has_any_meta() ? instantiate_metas(a->m_value, metas, levels)
                                           : a->m_value;
        cache.emplace(m.value, v);
        return v;
    };
    return instantiate_metas(e, metas, levels);
}

expr substitution::instantiate(expr const & e) const {
    justification j;
    return instantiate(e, j);
}

bool substitution::has_assigned(expr const & e) const {
    if (!e.has_any_meta())
        return false;
    bool found = false;
    elab::for_each(e, [&](expr const & x, unsigned) {
        if (found || !x.has_any_meta())
            return false;
        if (x.is_meta() && m_exprs.contains(x.meta()))
            found = true;
        else if (x.is_sort())
            for_each_meta(x.sort_level(), [&](level_meta_id m) { found = found || m_levels.contains(m); });
        else if (x.is_constant())
            for (auto const & l : x.const_levels())
                for_each_meta(l, [&](level_meta_id m) { found = found || m_levels.contains(m); });
        return !found;
    });
    return found;
}

}  // namespace elab
