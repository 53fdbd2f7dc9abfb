#include "elab/kernel/declaration.hpp"

namespace elab {

char const * to_string(reducibility r) {
    switch (r) {
    case reducibility::reducible: return "reducible";
    case reducibility::semireducible: return "semireducible";
    case reducibility::irreducible: return "irreducible";
    }
    return "?";
}

name const & decl_name(declaration const & d) {
    return std::visit([](auto const & x) -> name const & { return x.m_name; }, d);
}

reducibility constant_info::hint() const {
    if (auto const * d = std::get_if<definition_val>(&m_val))
        return d->m_hint;
    return reducibility::irreducible;
}

unsigned constant_info::depth() const {
    if (auto const * d = std::get_if<definition_val>(&m_val))
        return d->m_depth;
    return 0;
}

bool constant_info::is_projection() const {
    auto const * d = std::get_if<definition_val>(&m_val);
    return d && d->m_projection.has_value();
}

}  // namespace elab
