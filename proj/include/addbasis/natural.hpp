#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace addbasis {

using Natural = std::uint64_t;

// Overflow-checked arithmetic on naturals: nullopt on wrap.
std::optional<Natural> checked_add(Natural a, Natural b) noexcept;
std::optional<Natural> checked_mul(Natural a, Natural b) noexcept;
std::optional<Natural> checked_pow(Natural base, unsigned exp) noexcept;

// Throwing variants used where the spec requires an overflow error.
Natural add_or_throw(Natural a, Natural b, std::string_view what);
Natural mul_or_throw(Natural a, Natural b, std::string_view what);
Natural pow_or_throw(Natural base, unsigned exp, std::string_view what);

/// Largest r with r^k <= n.
Natural integer_root(Natural n, unsigned k) noexcept;

/// Parses a decimal natural, optionally in scientific notation ("2.1e5").
/// The value must be an exact integer: "1.25e1" is rejected.
Natural parse_natural(std::string_view text);

}  // namespace addbasis
