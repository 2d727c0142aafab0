#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "momrec/errors.hpp"
#include "momrec/scalar.hpp"

namespace momrec {

/// Dense univariate polynomial, coeffs[i] multiplies x^i.
///
/// The coefficient vector is kept trimmed: the last stored entry is nonzero,
/// and the zero polynomial stores nothing. Instantiate with `double` for the
/// floating pipeline, `Rational` for exact work and `Real` for the
/// multiprecision pipeline.
template <class T>
class BasicPolynomial {
 public:
  using value_type = T;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  BasicPolynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static BasicPolynomial constant(const T& c) { return BasicPolynomial({c}); }
  static BasicPolynomial monomial(std::size_t degree, const T& c = T(1)) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = c;
    return BasicPolynomial(std::move(v));
  }

  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Degree, or nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  /// Coefficient of x^i; zero past the degree.
  T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  template <class U>
  BasicPolynomial<U> cast() const {
    std::vector<U> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(scalar_cast<U>(c));
    return BasicPolynomial<U>(std::move(v));
  }

  BasicPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * T(static_cast<long>(i));
    return BasicPolynomial(std::move(v));
  }

  /// Primitive vanishing at 0.
  BasicPolynomial antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<T> v(coeffs_.size() + 1, T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / T(static_cast<long>(i + 1));
    return BasicPolynomial(std::move(v));
  }

  T max_abs_coeff() const {
    T m(0);
    for (const auto& c : coeffs_) m = std::max(m, abs_value(c));
    return m;
  }

  /// Zeroes coefficients with |c| <= threshold, then trims.
  BasicPolynomial chopped(const T& threshold) const {
    std::vector<T> v = coeffs_;
    for (auto& c : v)
      if (abs_value(c) <= threshold) c = T(0);
    return BasicPolynomial(std::move(v));
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPolynomial& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  BasicPolynomial& operator/=(const T& s) {
    for (auto& c : coeffs_) c /= s;
    trim();
    return *this;
  }

  friend BasicPolynomial operator*(BasicPolynomial a, const T& s) { return a *= s; }
  friend BasicPolynomial operator/(BasicPolynomial a, const T& s) { return a /= s; }
  friend BasicPolynomial operator*(const T& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator-(BasicPolynomial a) { return a *= T(-1); }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return BasicPolynomial(std::move(v));
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using Polynomial = BasicPolynomial<double>;
using RationalPolynomial = BasicPolynomial<Rational>;
using RealPolynomial = BasicPolynomial<Real>;

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  RealInterval() = default;
  RealInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) fail(ErrorCode::InvalidInput, "interval requires lo <= hi");
  }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

template <class T>
T eval(const BasicPolynomial<T>& p, const T& x) {
  return p(x);
}

template <class T>
BasicPolynomial<T> antiderivative(const BasicPolynomial<T>& p) {
  return p.antiderivative();
}

template <class T>
BasicPolynomial<T> derivative(const BasicPolynomial<T>& p) {
  return p.derivative();
}

/// p^m by repeated squaring; p^0 = 1 (also for the zero polynomial).
template <class T>
BasicPolynomial<T> power(const BasicPolynomial<T>& p, unsigned m) {
  BasicPolynomial<T> result = BasicPolynomial<T>::constant(T(1));
  BasicPolynomial<T> base = p;
  while (m > 0) {
    if (m & 1u) result = result * base;
    m >>= 1u;
    if (m > 0) base = base * base;
  }
  return result;
}

/// p(q(x)).
template <class T>
BasicPolynomial<T> compose(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  BasicPolynomial<T> acc;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + BasicPolynomial<T>::constant(*it);
  return acc;
}

/// Definite integral over [lo, hi].
template <class T>
T integrate(const BasicPolynomial<T>& p, const T& lo, const T& hi) {
  const auto P = p.antiderivative();
  return P(hi) - P(lo);
}

/// Euclidean division a = q*b + r with deg r < deg b.
template <class T>
std::pair<BasicPolynomial<T>, BasicPolynomial<T>> divmod(const BasicPolynomial<T>& a,
                                                         const BasicPolynomial<T>& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  std::vector<T> rem = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  if (rem.size() < d.size()) return {BasicPolynomial<T>(), a};
  std::vector<T> quo(rem.size() - db, T(0));
  for (std::size_t k = quo.size(); k-- > 0;) {
    const T f = rem[k + db] / d.back();
    quo[k] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= f * d[j];
    rem[k + db] = T(0);
  }
  rem.resize(db);
  return {BasicPolynomial<T>(std::move(quo)), BasicPolynomial<T>(std::move(rem))};
}

/// All complex roots (with multiplicity) via eigenvalues of the balanced
/// companion matrix. Throws ZeroPolynomial for p == 0.
template <class T>
std::vector<std::complex<T>> complex_roots(const BasicPolynomial<T>& p);

/// Distinct real roots of p inside iv, sorted. Roots closer than tol are
/// merged to their mean.
template <class T>
std::vector<T> real_roots_in(const BasicPolynomial<T>& p, const T& lo, const T& hi, const T& tol);

inline std::vector<double> real_roots_in(const Polynomial& p, const RealInterval& iv, double tol) {
  return real_roots_in<double>(p, iv.lo, iv.hi, tol);
}

/// Merges sorted values into clusters whose consecutive gaps are <= tol and
/// returns the cluster means.
template <class T>
std::vector<T> merge_close(std::vector<T> sorted_values, const T& tol) {
  std::vector<T> out;
  std::size_t i = 0;
  while (i < sorted_values.size()) {
    std::size_t j = i + 1;
    T sum = sorted_values[i];
    while (j < sorted_values.size() && sorted_values[j] - sorted_values[j - 1] <= tol) {
      sum += sorted_values[j];
      ++j;
    }
    out.push_back(sum / T(static_cast<long>(j - i)));
    i = j;
  }
  return out;
}

/// Piecewise polynomial g with pieces[n] valid on [breakpoints[n], breakpoints[n+1]],
/// zero outside [breakpoints.front(), breakpoints.back()].
template <class T>
struct BasicPiecewisePolynomial {
  std::vector<T> breakpoints;
  std::vector<BasicPolynomial<T>> pieces;

  void validate() const {
    if (breakpoints.size() < 2) fail(ErrorCode::InvalidInput, "piecewise polynomial needs >= 2 breakpoints");
    if (pieces.size() + 1 != breakpoints.size())
      fail(ErrorCode::InvalidInput, "piece count must be breakpoint count - 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i - 1] < breakpoints[i]))
        fail(ErrorCode::InvalidInput, "breakpoints must be strictly increasing");
  }

  std::size_t interior_breakpoints() const { return breakpoints.size() - 2; }

  std::size_t max_degree() const {
    std::size_t n = 0;
    for (const auto& p : pieces) n = std::max(n, p.degree().value_or(0));
    return n;
  }

  /// Value at x; at an interior breakpoint the right-hand piece is used.
  T operator()(const T& x) const {
    if (x < breakpoints.front() || x > breakpoints.back()) return T(0);
    for (std::size_t n = pieces.size(); n-- > 0;)
      if (x >= breakpoints[n]) return pieces[n](x);
    return T(0);
  }

  template <class U>
  BasicPiecewisePolynomial<U> cast() const {
    BasicPiecewisePolynomial<U> out;
    for (const auto& b : breakpoints) out.breakpoints.push_back(scalar_cast<U>(b));
    for (const auto& p : pieces) out.pieces.push_back(p.template cast<U>());
    return out;
  }
};

using PiecewisePolynomial = BasicPiecewisePolynomial<double>;

/// Polynomial in two variables, coeffs[i][j] multiplies x^i y^j.
struct BivariatePolynomial {
  std::vector<std::vector<double>> coeffs;

  double operator()(double x, double y) const;
  BivariatePolynomial partial(int axis) const;  // axis 1 = x, 2 = y
  bool is_zero() const;
};

}  // namespace momrec
