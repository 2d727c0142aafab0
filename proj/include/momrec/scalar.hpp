#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace momrec {

// Exact rational arithmetic, used for forward moments and test oracles.
using Rational = boost::multiprecision::mpq_rational;

// Working precision for the reconstruction pipelines when fed exact data.
// Monomial moment problems lose roughly one digit per moment index, so a
// double-precision pipeline only covers small configurations.
inline constexpr unsigned kRealDigits = 200;
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kRealDigits>,
    boost::multiprecision::et_off>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

// Rounds to nearest.
double to_double(const Rational& v);

template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double> && std::is_same_v<From, Rational>) {
    return to_double(v);
  } else if constexpr (std::is_same_v<To, double>) {
    return static_cast<double>(v);
  } else if constexpr (std::is_same_v<From, double>) {
    // doubles are exact dyadic rationals; no rounding happens here
    return To(v);
  } else if constexpr (std::is_same_v<To, Real> && std::is_same_v<From, Rational>) {
    return Real(boost::multiprecision::numerator(v)) /
           Real(boost::multiprecision::denominator(v));
  } else {
    return static_cast<To>(v);
  }
}

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Parses "p/q", a decimal literal, or an integer into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& v);

}  // namespace momrec
