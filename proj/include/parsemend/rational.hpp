#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace parsemend {

// All scores, thresholds and percentages are exact rationals so that
// accumulated values and rendered reports are bit-stable across runs.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-2", "4/5", "0.8" or ".5" into an exact rational.
std::optional<Rational> rational_from_string(std::string_view text);

/// Canonical "n" or "n/d" form (denominator omitted when 1).
std::string ratio_string(const Rational& value);

/// Fixed-point rendering with `places` fractional digits, rounding half
/// away from zero. decimal_string(1/10, 1) == "0.1".
std::string decimal_string(const Rational& value, int places);

/// `fraction` is in [0,1]; renders a one-decimal percentage: 18/32 -> "56.3".
std::string percent_string(const Rational& fraction);

}  // namespace parsemend
