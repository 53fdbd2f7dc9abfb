#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace elab {

/// Hierarchical identifier such as `nat.rec` or `a.foo`.
///
/// Stored as its dotted rendering; segments are never empty.
class name {
    std::string m_str;

public:
    name() = default;
    /* implicit */ name(char const * s) : name(std::string_view(s)) {}
    /* implicit */ name(std::string_view s);
    /* implicit */ name(std::string const & s) : name(std::string_view(s)) {}
    name(name const & prefix, std::string_view last);

    bool is_anonymous() const { return m_str.empty(); }
    std::string const & str() const { return m_str; }

    std::vector<std::string> components() const;
    /// Last segment, e.g. `foo` for `a.foo`.
    std::string last() const;
    /// Everything but the last segment; anonymous for atomic names.
    name prefix() const;
    /// True when `p` is a (strict) prefix of this name at segment boundaries.
    bool has_prefix(name const & p) const;
    /// Removes the prefix `p` from this name. Requires `has_prefix(p)`.
    name drop_prefix(name const & p) const;

    friend bool operator==(name const & a, name const & b) = default;
    friend auto operator<=>(name const & a, name const & b) = default;
};

inline name operator+(name const & a, name const & b) {
    if (a.is_anonymous())
        return b;
    if (b.is_anonymous())
        return a;
    return name(a.str() + "." + b.str());
}

std::ostream & operator<<(std::ostream & out, name const & n);

/// Unique identifier tagged with the kind of object it names.
template <class Tag>
struct strong_id {
    std::uint64_t value = 0;
    friend bool operator==(strong_id, strong_id) = default;
    friend auto operator<=>(strong_id, strong_id) = default;
};

struct fvar_tag {};
struct meta_tag {};
struct level_meta_tag {};
struct assumption_tag {};

using fvar_id       = strong_id<fvar_tag>;
using meta_id       = strong_id<meta_tag>;
using level_meta_id = strong_id<level_meta_tag>;
using assumption_id = strong_id<assumption_tag>;

/// Global monotone counter shared by all fresh-object generators.
std::uint64_t next_unique_id();

template <class Id>
Id fresh_id() {
    return Id{next_unique_id()};
}

}  // namespace elab

template <class Tag>
struct std::hash<elab::strong_id<Tag>> {
    std::size_t operator()(elab::strong_id<Tag> id) const noexcept { return std::hash<std::uint64_t>()(id.value); }
};

template <>
struct std::hash<elab::name> {
    std::size_t operator()(elab::name const & n) const noexcept { return std::hash<std::string>()(n.str()); }
};
