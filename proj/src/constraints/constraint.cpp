#include "elab/constraints/constraint.hpp"

#include "elab/kernel/exception.hpp"

namespace elab {

constraint mk_eq(expr lhs, expr rhs, justification j, transparency mode) {
    return eq_constraint{std::move(lhs), std::move(rhs), std::move(j), mode};
}

constraint join_justification(constraint const & c, justification const & j) {
    if (c.is_eq()) {
        eq_constraint r = c.eq();
        r.m_j = mk_join(r.m_j, j);
        return r;
    }
    choice_constraint r = c.choice();
    r.m_j = mk_join(r.m_j, j);
    return r;
}

std::optional<alternative> alt_stream::pull() {
    if (!m_next)
        return std::nullopt;
    auto r = (*m_next)();
    if (r)
        ++*m_pulls;
    else
        m_next.reset();
    return r;
}

alt_stream mk_stream(std::vector<alternative> alts) {
    auto xs = std::make_shared<std::vector<alternative>>(std::move(alts));
    auto i = std::make_shared<std::size_t>(0);
    return alt_stream([xs, i]() -> std::optional<alternative> {
        if (*i >= xs->size())
            return std::nullopt;
        return (*xs)[(*i)++];
    });
}

alt_stream mk_lazy_stream(std::vector<std::function<std::vector<constraint>()>> thunks,
                          std::vector<std::string> labels) {
    auto xs = std::make_shared<std::vector<std::function<std::vector<constraint>()>>>(std::move(thunks));
    auto ls = std::make_shared<std::vector<std::string>>(std::move(labels));
    auto i = std::make_shared<std::size_t>(0);
    return alt_stream([xs, ls, i]() -> std::optional<alternative> {
        if (*i >= xs->size())
            return std::nullopt;
        std::size_t k = (*i)++;
        std::string label = k < ls->size() ? (*ls)[k] : std::string();
        try {
            return alternative{(*xs)[k](), std::nullopt, {}, label};
        } catch (unifier_exception const & e) {
            return alternative{{}, e.j(), e.what(), label};
        } catch (kernel_exception const & e) {
            return alternative{{}, justification(), e.what(), label};
        }
    });
}

}  // namespace elab
