#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace roughren {

/// Exact arbitrary-precision rational. All algebraic identities are checked in
/// this type; float mode only ever appears in sampled path data.
using Rational = mpq_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.125" (converted exactly).
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Shortest round-trippable decimal form ("%.17g").
std::string to_string(double x);

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
S from_rational(const Rational& q);

template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.get_d(); }

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const Rational& q) { return std::fabs(q.get_d()); }

/// Exact zero test in exact mode, bitwise zero in float mode.
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Deviation test: tol = 0 means exact equality (any nonzero rational fails).
template <class S>
bool exceeds(const S& diff, double tol) {
  if (tol == 0) return !is_zero(diff);
  return magnitude(diff) > tol;
}

}  // namespace roughren
