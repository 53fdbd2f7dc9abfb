#include "elab/kernel/environment.hpp"

#include <algorithm>

#include "elab/kernel/exception.hpp"

namespace elab {

constant_info_ptr environment::find(name const & n) const {
    if (auto const * p = m_constants.find(n))
        return *p;
    return nullptr;
}

constant_info const & environment::get(name const & n) const {
    if (auto const * p = m_constants.find(n))
        return **p;
    throw kernel_exception("unknown constant '" + n.str() + "'");
}

environment environment::add(constant_info info) const {
    if (contains(info.m_name))
        throw kernel_exception("duplicate declaration '" + info.m_name.str() + "'");
    environment r = *this;
    info.m_order = r.m_next_order++;
    name n = info.m_name;
    r.m_constants.insert(n, std::make_shared<const constant_info>(std::move(info)));
    return r;
}

environment environment::replace(constant_info info) const {
    auto old = find(info.m_name);
    if (!old)
        throw kernel_exception("unknown constant '" + info.m_name.str() + "'");
    environment r = *this;
    info.m_order = old->m_order;
    name n = info.m_name;
    r.m_constants.insert(n, std::make_shared<const constant_info>(std::move(info)));
    return r;
}

environment environment::set_reducibility(name const & n, reducibility h) const {
    constant_info info = get(n);
    auto * d = std::get_if<definition_val>(&info.m_val);
    if (!d)
        throw kernel_exception("'" + n.str() + "' is not a definition");
    d->m_hint = h;
    return replace(std::move(info));
}

environment environment::add_class(name const & n) const {
    if (!contains(n))
        throw kernel_exception("unknown constant '" + n.str() + "'");
    environment r = *this;
    r.m_classes.insert(n, true);
    return r;
}

environment environment::add_instance(name const & cls, name const & inst) const {
    environment r = *this;
    std::vector<name> xs = instances_of(cls);
    if (std::find(xs.begin(), xs.end(), inst) == xs.end())
        xs.push_back(inst);
    r.m_instances.insert(cls, xs);
    return r;
}

std::vector<name> environment::instances_of(name const & cls) const {
    if (auto const * p = m_instances.find(cls))
        return *p;
    return {};
}

environment environment::add_coercion(coercion_info c) const {
    environment r = *this;
    std::vector<coercion_info> xs = coercions_from(c.m_from);
    xs.push_back(std::move(c));
    r.m_coercions.insert(xs.back().m_from, xs);
    return r;
}

std::vector<coercion_info> environment::coercions_from(name const & from) const {
    if (auto const * p = m_coercions.find(from))
        return *p;
    return {};
}

std::vector<coercion_info> environment::coercions_to(name const & to) const {
    std::vector<coercion_info> out;
    m_coercions.for_each([&](name const &, std::vector<coercion_info> const & xs) {
        for (auto const & c : xs)
            if (c.m_to == to)
                out.push_back(c);
    });
    std::sort(out.begin(), out.end(), [&](coercion_info const & a, coercion_info const & b) {
        return get(a.m_coercion).m_order < get(b.m_coercion).m_order;
    });
    return out;
}

std::optional<coercion_info> environment::find_coercion(name const & from, name const & to) const {
    for (auto const & c : coercions_from(from))
        if (c.m_to == to)
            return c;
    return std::nullopt;
}

environment environment::add_alias(name const & alias, name const & target) const {
    environment r = *this;
    std::vector<name> xs = aliases_of(alias);
    if (std::find(xs.begin(), xs.end(), target) == xs.end())
        xs.push_back(target);
    r.m_aliases.insert(alias, xs);
    return r;
}

std::vector<name> environment::aliases_of(name const & alias) const {
    if (auto const * p = m_aliases.find(alias))
        return *p;
    return {};
}

}  // namespace elab
