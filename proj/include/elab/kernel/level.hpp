#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elab/kernel/name.hpp"

namespace elab {

enum class level_kind : std::uint8_t { zero, succ, max, param, meta };

struct level_cell;

/// Universe level term. Immutable and cheap to copy.
class level {
    std::shared_ptr<const level_cell> m_ptr;
    explicit level(std::shared_ptr<const level_cell> p) : m_ptr(std::move(p)) {}
    friend level mk_level_zero();
    friend level mk_succ(level const &);
    friend level mk_max(level const &, level const &);
    friend level mk_level_param(name const &);
    friend level mk_level_meta(level_meta_id);

public:
    level();  // zero

    level_kind kind() const;
    bool is_zero() const { return kind() == level_kind::zero; }
    bool is_succ() const { return kind() == level_kind::succ; }
    bool is_max() const { return kind() == level_kind::max; }
    bool is_param() const { return kind() == level_kind::param; }
    bool is_meta() const { return kind() == level_kind::meta; }

    level succ_of() const;
    level max_lhs() const;
    level max_rhs() const;
    name const & param_name() const;
    level_meta_id meta_id() const;

    bool has_meta() const;
    bool has_param() const;
    std::size_t hash() const;

    level_cell const * raw() const { return m_ptr.get(); }

    friend bool operator==(level const & a, level const & b);
};

level mk_level_zero();
level mk_level_one();
level mk_succ(level const & l);
level mk_max(level const & a, level const & b);
level mk_level_param(name const & n);
level mk_level_meta(level_meta_id id);
level mk_fresh_level_meta();
level mk_level_of_nat(unsigned n);

/// Canonical form: succ pushed inward, max flattened, operands sorted and
/// deduplicated, dominated operands dropped. Idempotent.
level normalize(level const & l);
/// Equality modulo normalization.
bool is_equivalent(level const & a, level const & b);
/// Sound check that `a >= b` under every assignment of params and metas.
bool is_geq(level const & a, level const & b);

/// If `l` normalizes to `succ^k(zero)` returns k.
std::optional<unsigned> to_nat(level const & l);

level instantiate_params(level const & l, std::vector<name> const & params, std::vector<level> const & values);
level replace_metas(level const & l, std::function<std::optional<level>(level_meta_id)> const & f);
void for_each_meta(level const & l, std::function<void(level_meta_id)> const & f);
bool occurs_meta(level_meta_id m, level const & l);

std::string to_string(level const & l);

}  // namespace elab
