#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "momrec/moments1d.hpp"
#include "momrec/polycore.hpp"

namespace momrec {

/// Sparse Laurent polynomial in n variables; exponents may be negative.
class LaurentPolynomial {
 public:
  using Exponent = std::vector<int>;

  explicit LaurentPolynomial(std::size_t dim = 1) : dim_(dim) {}

  /// Adds c * z^e; zero results are erased.
  void add(const Exponent& e, double c);

  std::size_t dim() const noexcept { return dim_; }
  const std::map<Exponent, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::vector<Exponent> support() const;

  double constant_term() const;
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

 private:
  std::size_t dim_;
  std::map<Exponent, double> terms_;
};

/// n-th Legendre polynomial by the three-term recurrence.
template <class T>
BasicPolynomial<T> legendre(std::size_t n) {
  BasicPolynomial<T> prev{T(1)}, cur{T(0), T(1)};
  if (n == 0) return prev;
  const BasicPolynomial<T> x{T(0), T(1)};
  for (std::size_t k = 1; k < n; ++k) {
    // ((2k+1) x L_k - k L_{k-1}) / (k+1)
    auto next = ((x * cur) * T(static_cast<long>(2 * k + 1)) - prev * T(static_cast<long>(k))) /
                T(static_cast<long>(k + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// m_j = int_{-1}^{1} x^j L_n(x) dx, j = 0..count-1.
template <class T>
BasicMomentTable1D<T> legendre_moments(std::size_t n, std::size_t count) {
  if (count == 0) fail(ErrorCode::InvalidInput, "moment count must be positive");
  BasicPiecewisePolynomial<T> g{{T(-1), T(1)}, {legendre<T>(n)}};
  return moments_pp(g, count);
}

struct Rectangle {
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
};

struct WaveVerdict {
  bool invisible = false;
  Polynomial F;  // int f dy, a function of x
  Polynomial H;  // int f dx, a function of y
  /// For visible f: the monomial x^degree (axis 'x') or y^degree (axis 'y')
  /// of the first nonzero marginal coefficient.
  char witness_axis = 0;
  std::size_t witness_degree = 0;
  /// Smallest k with int int f * (witness variable)^k != 0.
  std::size_t witness_moment = 0;
};

/// Invisibility for the family {Q(x) + R(y)}: both marginals must vanish.
/// Marginal coefficients with magnitude <= tol count as zero.
WaveVerdict wave_invisibility(const BivariatePolynomial& f, const Rectangle& r, double tol);

/// m_k = int_iv P^k q dx for k = 0..k_max.
template <class T>
std::vector<T> power_moment_scan(const BasicPolynomial<T>& P, const BasicPolynomial<T>& q, const T& lo, const T& hi,
                                 std::size_t k_max) {
  if (k_max < 1) fail(ErrorCode::InvalidInput, "k_max must be positive");
  std::vector<T> out;
  BasicPolynomial<T> pk{T(1)};
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.push_back(integrate(pk * q, lo, hi));
    pk = pk * P;
  }
  return out;
}

/// Exact scan for double inputs (doubles are converted without rounding).
std::vector<double> power_moment_scan(const Polynomial& P, const Polynomial& q, const RealInterval& iv,
                                      std::size_t k_max);

struct CCVerdict {
  bool holds = false;
  bool endpoints_match = false;
  bool p_decomposes = false;
  bool q_decomposes = false;
  double p_residual = 0;  // size of the non-constant W-adic remainders
  double q_residual = 0;
  std::optional<Polynomial> p_outer;  // P = p_outer(W)
  std::optional<Polynomial> q_outer;  // Q = q_outer(W), Q' = q, Q(a) = 0
  std::vector<double> scan;           // m_0..m_20 when the condition holds
};

/// Composition condition with the supplied inner polynomial W.
CCVerdict verify_cc(const Polynomial& P, const Polynomial& q, const Polynomial& W, const RealInterval& iv,
                    double tol);

struct MCCResult {
  double integral = 0;
  double residual = 0;  // |integral|
  double bound = 0;     // 1e-8 * box area * max |integrand|
  double radius = 0;    // box is [-radius, radius]^2
  bool passed = false;
};

/// int_{P <= 1} Q(P) dP/dx_j over the plane by midpoint quadrature on a
/// symmetric level x level grid with indicator weighting. Passes when the
/// residual is within `bound`, or within quad_tol if that is larger.
MCCResult verify_mcc_example(const BivariatePolynomial& P, int axis, const Polynomial& Q, double quad_tol,
                             std::size_t level = 256);

struct LaurentVerdict {
  bool predicted_invisible = false;  // 0 outside the convex hull of the support
  std::vector<double> constant_terms;  // of f^k, k = 1..k_max
  bool consistent = false;  // all terms vanish exactly when predicted_invisible
};

/// Exact test of 0 in conv(points) by Caratheodory enumeration.
bool origin_in_hull(const std::vector<std::vector<int>>& points);

LaurentVerdict laurent_invisibility(const LaurentPolynomial& f, std::size_t k_max);

}  // namespace momrec
