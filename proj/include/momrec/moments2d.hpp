#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "momrec/errors.hpp"
#include "momrec/moments1d.hpp"
#include "momrec/polycore.hpp"

namespace momrec {

template <class T>
struct BasicStrip {
  BasicPolynomial<T> lower;
  BasicPolynomial<T> upper;
};

template <class T>
struct BasicDomainInterval {
  T x_min = T(0);
  T x_max = T(0);
  std::vector<BasicStrip<T>> strips;  // bottom to top
};

/// Planar domain: over each x-interval, a union of vertical strips
/// lower_l(x) <= y <= upper_l(x).
template <class T>
struct BasicDomainSpec {
  std::vector<BasicDomainInterval<T>> intervals;

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& iv : intervals)
      for (const auto& s : iv.strips)
        d = std::max({d, s.lower.degree().value_or(0), s.upper.degree().value_or(0)});
    return d;
  }

  template <class U>
  BasicDomainSpec<U> cast() const {
    BasicDomainSpec<U> out;
    for (const auto& iv : intervals) {
      BasicDomainInterval<U> c;
      c.x_min = scalar_cast<U>(iv.x_min);
      c.x_max = scalar_cast<U>(iv.x_max);
      for (const auto& s : iv.strips) c.strips.push_back({s.lower.template cast<U>(), s.upper.template cast<U>()});
      out.intervals.push_back(std::move(c));
    }
    return out;
  }
};

using Strip = BasicStrip<double>;
using DomainInterval = BasicDomainInterval<double>;
using DomainSpec = BasicDomainSpec<double>;

/// values[beta][alpha] = m_{alpha,beta}.
template <class T>
struct BasicMomentTable2D {
  std::size_t alpha_max = 0;
  std::size_t beta_max = 0;
  std::vector<std::vector<T>> values;

  const T& at(std::size_t alpha, std::size_t beta) const {
    if (beta >= values.size() || alpha >= values[beta].size())
      fail(ErrorCode::IndexOutOfRange, "moment index outside the table");
    return values[beta][alpha];
  }

  void validate() const {
    if (values.size() != beta_max + 1) fail(ErrorCode::InvalidMoments, "table must have beta_max + 1 rows");
    for (const auto& row : values)
      if (row.size() != alpha_max + 1) fail(ErrorCode::InvalidMoments, "every row needs alpha_max + 1 entries");
  }

  template <class U>
  BasicMomentTable2D<U> cast() const {
    BasicMomentTable2D<U> out{alpha_max, beta_max, {}};
    for (const auto& row : values) {
      std::vector<U> r;
      for (const auto& v : row) r.push_back(scalar_cast<U>(v));
      out.values.push_back(std::move(r));
    }
    return out;
  }
};

using MomentTable2D = BasicMomentTable2D<double>;

/// Checks contiguity of the intervals and strip ordering at 33 Chebyshev
/// points inside each interval. Throws InvalidDomain.
void validate_domain(const DomainSpec& g);

template <class T>
void validate_domain(const BasicDomainSpec<T>& g) {
  if constexpr (std::is_same_v<T, double>)
    validate_domain(g);
  else
    validate_domain(g.template cast<double>());
}

/// Psi_beta(x) = (1/(beta+1)) sum_l [upper_l(x)^{beta+1} - lower_l(x)^{beta+1}],
/// with one piece per domain interval.
template <class T>
BasicPiecewisePolynomial<T> psi(const BasicDomainSpec<T>& g, std::size_t beta) {
  BasicPiecewisePolynomial<T> out;
  for (const auto& iv : g.intervals) {
    if (out.breakpoints.empty()) out.breakpoints.push_back(iv.x_min);
    out.breakpoints.push_back(iv.x_max);
    BasicPolynomial<T> acc;
    const auto e = static_cast<unsigned>(beta + 1);
    for (const auto& s : iv.strips) acc += power(s.upper, e) - power(s.lower, e);
    out.pieces.push_back(acc * T(T(1) / T(static_cast<long>(beta + 1))));
  }
  return out;
}

/// m_{alpha,beta} for alpha <= alpha_max, beta <= beta_max, exact for the
/// integrand (polynomial); T = Rational gives exact values.
template <class T>
BasicMomentTable2D<T> moments2d(const BasicDomainSpec<T>& g, std::size_t alpha_max, std::size_t beta_max) {
  validate_domain(g);
  BasicMomentTable2D<T> out{alpha_max, beta_max, {}};
  for (std::size_t beta = 0; beta <= beta_max; ++beta)
    out.values.push_back(moments_pp(psi(g, beta), alpha_max + 1).values);
  return out;
}

template <class T>
BasicMomentTable1D<T> psi_moments(const BasicMomentTable2D<T>& m, std::size_t beta) {
  if (beta > m.beta_max || beta >= m.values.size())
    fail(ErrorCode::IndexOutOfRange, "beta " + std::to_string(beta) + " exceeds beta_max");
  return {m.values[beta]};
}

// Symmetric domains {y^2 <= f(x)} with a cubic f.

struct EllipticMoments {
  double m00 = 0, m10 = 0, m20 = 0, m30 = 0, m40 = 0, m02 = 0, m12 = 0;

  /// Normalized value M_{alpha,2beta} = ((2beta+1)/2) m_{alpha,2beta}; only
  /// the seven stored (alpha, 2beta) pairs are available.
  double M(int alpha, int two_beta) const;
  void validate() const;
};

/// Roots x1 < x2 bounding the oval of y^2 = ax^3+bx^2+cx+d, plus the third
/// root x3. Throws NotElliptic unless there are three distinct real roots.
struct OvalRoots {
  double x1 = 0, x2 = 0, x3 = 0;
};
OvalRoots oval_roots(double a, double b, double c, double d);

/// Raw moment m_{alpha,2beta} = (2/(2beta+1)) int_{x1}^{x2} x^alpha f^{beta+1/2} dx.
double elliptic_moment(double a, double b, double c, double d, int alpha, int beta, double quad_tol);

EllipticMoments elliptic_moments(double a, double b, double c, double d, double quad_tol);

struct Relation43Residual {
  int alpha = 0;
  int beta = 0;
  double residual = 0;
};

struct Relation43Report {
  std::vector<Relation43Residual> residuals;
  double max_residual = 0;
  bool passed = false;
};

/// Key (alpha, 2beta) -> M_{alpha,2beta}.
using MValueMap = std::map<std::pair<int, int>, double>;

/// Residuals of M_{a,2b+2} = a M_{a+3,2b} + b M_{a+2,2b} + c M_{a+1,2b} + d M_{a,2b}
/// for the curve coefficients `coeffs` = (a,b,c,d). Checks `pairs` when given
/// (MissingMoment if a value is absent), otherwise every checkable pair.
Relation43Report check_relation_43(const EllipticMoments& e, const MValueMap& extended,
                                   const std::array<double, 4>& coeffs, double tol,
                                   const std::vector<std::pair<int, int>>& pairs = {});

}  // namespace momrec
