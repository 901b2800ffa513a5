#include "parsemend/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace parsemend {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
  if (text.empty() || text.size() > 18) return false;  // keeps int64 arithmetic safe
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return false;
  std::int64_t value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  out = negative ? -value : value;
  return true;
}

std::int64_t pow10(int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  return scale;
}

}  // namespace

std::optional<Rational> rational_from_string(std::string_view text) {
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    if (!parse_int(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    bool negative = !whole.empty() && whole[0] == '-';
    std::int64_t whole_value = 0;
    if (!whole.empty() && whole != "-" && whole != "+") {
      if (!parse_int(whole, whole_value)) return std::nullopt;
    }
    std::int64_t frac_value = 0;
    if (!parse_int(frac, frac_value) || frac_value < 0) return std::nullopt;
    std::int64_t scale = pow10(static_cast<int>(frac.size()));
    std::int64_t magnitude = std::abs(whole_value) * scale + frac_value;
    return Rational(negative ? -magnitude : magnitude, scale);
  }

  std::int64_t value = 0;
  if (!parse_int(text, value)) return std::nullopt;
  return Rational(value);
}

std::string ratio_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string decimal_string(const Rational& value, int places) {
  const std::int64_t scale = pow10(places);
  const std::int64_t n = value.numerator();
  const std::int64_t d = value.denominator();  // boost keeps d > 0
  // round(n*scale/d) half away from zero, in integer arithmetic
  const std::int64_t scaled_num = n * scale;
  std::int64_t rounded;
  if (scaled_num >= 0) {
    rounded = (2 * scaled_num + d) / (2 * d);
  } else {
    rounded = -((2 * -scaled_num + d) / (2 * d));
  }
  const bool negative = rounded < 0;
  std::int64_t magnitude = negative ? -rounded : rounded;
  std::string digits = std::to_string(magnitude);
  if (places == 0) return (negative ? "-" : "") + digits;
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - places, ".");
  return (negative ? "-" : "") + digits;
}

std::string percent_string(const Rational& fraction) {
  return decimal_string(fraction * 100, 1);
}

}  // namespace parsemend
