#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace circpierce {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The two numeric kinds a coordinate may carry.
enum class NumericKind { rational, floating };

template <class T>
concept CircleScalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <CircleScalar T>
inline constexpr NumericKind kind_of = std::same_as<T, Rational> ? NumericKind::rational
                                                                 : NumericKind::floating;

std::string_view to_string(NumericKind kind);

/// Exact quotient num/den in lowest terms.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Largest integer not above x.
BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

/// Reduces x into [0, 1).
Rational reduce_mod1(const Rational& x);
double reduce_mod1(double x);

/// Syntactic class of a textual coordinate.
enum class LiteralClass { rational, decimal, integer };

/// "3/7" and "-1/4" are rational; "0.15", "1e-3" are decimal; "0" is integer
/// and adopts whichever kind its neighbours use.
LiteralClass classify_literal(std::string_view text);

Rational parse_rational(std::string_view text);
double parse_decimal(std::string_view text);

/// "num/den", always with an explicit denominator.
std::string format_rational(const Rational& x);

/// Shortest decimal that round-trips to the same double.
std::string format_decimal(double x);

inline std::string format_scalar(const Rational& x) { return format_rational(x); }
inline std::string format_scalar(double x) { return format_decimal(x); }

inline double to_double(const Rational& x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }

}  // namespace circpierce
