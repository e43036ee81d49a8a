#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cunningham {

/// All domain quantities are exact integers of unbounded size; chain
/// elements grow geometrically, so fixed-width types are unusable past a
/// handful of steps.
using Integer = mpz_class;

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

/// Strict decimal parse: optional leading '-', digits only, no blanks.
/// Returns nullopt on any malformed input instead of GMP's permissive read.
std::optional<Integer> parse_decimal(std::string_view text);

}  // namespace cunningham
