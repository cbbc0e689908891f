#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <string>

namespace kemeny_lab {

/// Exact scalar: arbitrary-precision rational, always kept in lowest terms
/// with positive denominator (guaranteed by the backend). Expression
/// templates are off so arithmetic yields Rational values directly.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// A whole computation runs either in exact (Rational) or float (double)
/// mode; the two are never mixed inside one matrix.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;

  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  /// Serializes as "a/b", or plain "a" when the denominator is 1.
  static std::string to_string(const Rational& x) {
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;

  static double abs(double x) { return std::fabs(x); }

  static double to_double(double x) { return x; }

  /// Shortest representation that round-trips to the same double.
  static std::string to_string(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
  }
};

template <class S>
S scalar_abs(const S& x) {
  return ScalarTraits<S>::abs(x);
}

}  // namespace kemeny_lab
