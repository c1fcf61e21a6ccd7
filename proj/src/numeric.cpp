#include "circpierce/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "circpierce/errors.hpp"

namespace circpierce {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_bigint(std::string_view s, std::string_view whole) {
  if (!is_integer_text(s)) {
    throw InputError("malformed rational coordinate '" + std::string(whole) + "'");
  }
  bool negative = s.front() == '-';
  if (s.front() == '-' || s.front() == '+') s.remove_prefix(1);
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

std::string_view to_string(NumericKind kind) {
  return kind == NumericKind::rational ? "rational" : "floating";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

BigInt floor_of(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(Rational(-x)); }

Rational reduce_mod1(const Rational& x) { return x - Rational(floor_of(x)); }

double reduce_mod1(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite coordinate");
  double r = x - std::floor(x);
  // floor(x) == x - tiny can round r up to exactly 1
  if (r >= 1.0) r = 0.0;
  return r;
}

LiteralClass classify_literal(std::string_view text) {
  text = trim(text);
  if (text.find('/') != std::string_view::npos) return LiteralClass::rational;
  if (is_integer_text(text)) return LiteralClass::integer;
  return LiteralClass::decimal;
}

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text, whole));
  BigInt num = parse_bigint(trim(text.substr(0, slash)), whole);
  BigInt den = parse_bigint(trim(text.substr(slash + 1)), whole);
  if (den == 0) throw InputError("zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

double parse_decimal(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("malformed decimal coordinate '" + std::string(whole) + "'");
  }
  if (!std::isfinite(value)) {
    throw InputError("non-finite coordinate '" + std::string(whole) + "'");
  }
  return value;
}

std::string format_rational(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

std::string format_decimal(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw InvariantViolation("to_chars failed");
  return std::string(buf.data(), ptr);
}

}  // namespace circpierce
