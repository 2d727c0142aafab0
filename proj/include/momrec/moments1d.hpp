#pragma once

#include <cstddef>
#include <vector>

#include "momrec/errors.hpp"
#include "momrec/polycore.hpp"

namespace momrec {

/// Power moments m_0, m_1, ... of a function on the line.
template <class T>
struct BasicMomentTable1D {
  std::vector<T> values;

  std::size_t size() const { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }

  template <class U>
  BasicMomentTable1D<U> cast() const {
    BasicMomentTable1D<U> out;
    out.values.reserve(values.size());
    for (const auto& v : values) out.values.push_back(scalar_cast<U>(v));
    return out;
  }
};

using MomentTable1D = BasicMomentTable1D<double>;

/// m_alpha = sum_n int_{xi_n}^{xi_{n+1}} x^alpha pieces[n](x) dx for
/// alpha = 0..count-1. Piece-exact; with T = Rational the result is exact.
template <class T>
BasicMomentTable1D<T> moments_pp(const BasicPiecewisePolynomial<T>& g, std::size_t count) {
  if constexpr (std::is_same_v<T, double>) {
    // exact accumulation, one rounding per moment
    return moments_pp(g.template cast<Rational>(), count).template cast<double>();
  }
  g.validate();
  if (count == 0) fail(ErrorCode::InvalidInput, "moment count must be positive");
  BasicMomentTable1D<T> out;
  out.values.assign(count, T(0));
  const std::size_t top = count + g.max_degree() + 1;
  for (std::size_t n = 0; n < g.pieces.size(); ++n) {
    const auto& c = g.pieces[n].coeffs();
    if (c.empty()) continue;
    // diff[e] = hi^e - lo^e
    std::vector<T> diff(top + 1);
    T lo_pow(1), hi_pow(1);
    for (std::size_t e = 0; e <= top; ++e) {
      diff[e] = hi_pow - lo_pow;
      lo_pow *= g.breakpoints[n];
      hi_pow *= g.breakpoints[n + 1];
    }
    for (std::size_t a = 0; a < count; ++a) {
      T acc(0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t e = a + i + 1;
        acc += c[i] * diff[e] / T(static_cast<long>(e));
      }
      out.values[a] += acc;
    }
  }
  return out;
}

/// Moments of the order-th distributional derivative of g:
///   d_alpha = (-1)^order * alpha (alpha-1) ... (alpha-order+1) * m_{alpha-order}.
/// The result is indexed from alpha = 0 and has length(m) + order entries;
/// entries with alpha < order are 0 (integration by parts kills them).
template <class T>
std::vector<T> derivative_moments(const BasicMomentTable1D<T>& m, unsigned order) {
  if (m.values.empty()) fail(ErrorCode::InsufficientMoments, "derivative_moments needs at least one moment");
  if (order == 0) return m.values;
  if (order > m.values.size())
    fail(ErrorCode::InsufficientMoments, "derivative order exceeds the number of moments");
  std::vector<T> d(m.values.size() + order, T(0));
  const T sign = (order % 2 == 0) ? T(1) : T(-1);
  for (std::size_t a = order; a < d.size(); ++a) {
    T falling(1);
    for (unsigned t = 0; t < order; ++t) falling *= T(static_cast<long>(a - t));
    d[a] = sign * falling * m.values[a - order];
  }
  return d;
}

}  // namespace momrec
