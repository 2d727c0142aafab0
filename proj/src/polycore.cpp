#include "momrec/polycore.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace momrec {

namespace {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch balancing restricted to powers of two, so the scaling is
// exact in every scalar type.
template <class T>
void balance(Matrix<T>& m) {
  using std::abs;
  const Eigen::Index n = m.rows();
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      T row(0), col(0);
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i) continue;
        row += abs_value(T(m(i, k)));
        col += abs_value(T(m(k, i)));
      }
      if (row == T(0) || col == T(0)) continue;
      T f(1);
      const T total = row + col;
      while (col < row / T(2)) {
        col *= T(4);
        row /= T(4);
        f *= T(2);
      }
      while (col > row * T(2)) {
        col /= T(4);
        row *= T(4);
        f /= T(2);
      }
      if (row + col < T(0.95) * total) {
        changed = true;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

template <class T>
T scaled_residual(const BasicPolynomial<T>& p, const T& x) {
  T num(0), den(0), xp(1);
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    den += abs_value(T(c[i] * xp));
    xp *= x;
  }
  num = abs_value(p(x));
  return den == T(0) ? T(0) : T(num / den);
}

template <class T>
T newton_polish(const BasicPolynomial<T>& p, T x) {
  const auto dp = p.derivative();
  T best = abs_value(p(x));
  for (int it = 0; it < 60 && best > T(0); ++it) {
    const T d = dp(x);
    if (d == T(0)) break;
    const T next = x - p(x) / d;
    const T val = abs_value(p(next));
    if (!(val < best)) break;
    best = val;
    x = next;
  }
  return x;
}

template <class T>
bool companion_eigenvalues(const std::vector<T>& c, std::vector<std::complex<T>>& out) {
  const std::size_t n = c.size() - 1;
  Matrix<T> comp = Matrix<T>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = T(1);
  for (std::size_t i = 0; i < n; ++i)
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = T(-c[i] / c[n]);
  balance(comp);
  Eigen::EigenSolver<Matrix<T>> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(200 * n));
  solver.compute(comp, false);
  if (solver.info() != Eigen::Success) return false;
  const auto& ev = solver.eigenvalues();
  out.clear();
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.emplace_back(ev(i).real(), ev(i).imag());
  return true;
}

}  // namespace

template <class T>
std::vector<std::complex<T>> complex_roots(const BasicPolynomial<T>& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial are undefined");
  std::vector<T> c = p.coeffs();
  std::vector<std::complex<T>> roots;
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == T(0)) ++shift;
  for (std::size_t i = 0; i < shift; ++i) roots.emplace_back(T(0), T(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  const std::size_t n = c.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.emplace_back(T(-c[0] / c[1]), T(0));
    return roots;
  }
  std::vector<std::complex<T>> ev;
  if (!companion_eigenvalues(c, ev)) {
    // Clusters near the origin defeat the relative deflation test of the QR
    // iteration. Move every root to |y| >= 1 and try again.
    T bound(0);
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, abs_value(T(c[i] / c[n])));
    const T s = bound + T(1);
    const auto q = compose(BasicPolynomial<T>(c), BasicPolynomial<T>{T(-s), T(1)});
    if (!companion_eigenvalues(q.coeffs(), ev))
      fail(ErrorCode::RankDeficient, "companion eigenvalue iteration did not converge");
    for (auto& z : ev) z -= std::complex<T>(s, T(0));
  }
  for (const auto& z : ev) roots.push_back(z);
  return roots;
}

template <class T>
std::vector<T> real_roots_in(const BasicPolynomial<T>& p, const T& lo, const T& hi, const T& tol) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "real_roots_in on the zero polynomial");
  if (!(tol > T(0))) fail(ErrorCode::InvalidInput, "tol must be positive");
  const T eps = std::numeric_limits<T>::epsilon();
  std::vector<T> found;
  for (const auto& z : complex_roots(p)) {
    const T mag = abs_value(z.real()) + abs_value(z.imag());
    bool real = abs_value(z.imag()) <= tol * (T(1) + mag);
    T x = z.real();
    if (!real) real = scaled_residual(p, x) <= T(1000) * eps;
    if (!real) continue;
    x = newton_polish(p, x);
    if (x < lo - tol || x > hi + tol) continue;
    found.push_back(std::min(std::max(x, lo), hi));
  }
  std::sort(found.begin(), found.end());
  return merge_close(std::move(found), tol);
}

template std::vector<std::complex<double>> complex_roots(const Polynomial&);
template std::vector<std::complex<Real>> complex_roots(const RealPolynomial&);
template std::vector<double> real_roots_in(const Polynomial&, const double&, const double&, const double&);
template std::vector<Real> real_roots_in(const RealPolynomial&, const Real&, const Real&, const Real&);

double BivariatePolynomial::operator()(double x, double y) const {
  double acc = 0.0;
  for (auto i = coeffs.size(); i-- > 0;) {
    double row = 0.0;
    for (auto j = coeffs[i].size(); j-- > 0;) row = row * y + coeffs[i][j];
    acc = acc * x + row;
  }
  return acc;
}

BivariatePolynomial BivariatePolynomial::partial(int axis) const {
  BivariatePolynomial out;
  if (axis == 1) {
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
      std::vector<double> row = coeffs[i];
      for (auto& c : row) c *= static_cast<double>(i);
      out.coeffs.push_back(std::move(row));
    }
  } else if (axis == 2) {
    for (const auto& r : coeffs) {
      std::vector<double> row;
      for (std::size_t j = 1; j < r.size(); ++j) row.push_back(r[j] * static_cast<double>(j));
      out.coeffs.push_back(std::move(row));
    }
  } else {
    fail(ErrorCode::InvalidInput, "axis must be 1 or 2");
  }
  return out;
}

bool BivariatePolynomial::is_zero() const {
  for (const auto& r : coeffs)
    for (double c : r)
      if (c != 0.0) return false;
  return true;
}

double to_double(const Rational& v) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, v.backend().data(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

namespace {

// Base 10 only.
boost::multiprecision::mpz_int parse_integer(const std::string& digits, const std::string& text) {
  boost::multiprecision::mpz_int z;
  std::string d = digits;
  if (!d.empty() && d[0] == '+') d.erase(0, 1);
  if (d.empty() || mpz_set_str(z.backend().data(), d.c_str(), 10) != 0)
    fail(ErrorCode::InvalidInput, "bad number '" + text + "'");
  return z;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto num = parse_integer(text.substr(0, slash), text);
    const auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  // decimal literal with optional exponent, read exactly
  std::string mant = text;
  long exp10 = 0;
  const auto e = mant.find_first_of("eE");
  if (e != std::string::npos) {
    exp10 = std::stol(mant.substr(e + 1));
    mant = mant.substr(0, e);
  }
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+") fail(ErrorCode::InvalidInput, "bad number '" + text + "'");
  if (mant[0] == '+') mant.erase(0, 1);
  for (std::size_t i = (mant[0] == '-') ? 1 : 0; i < mant.size(); ++i)
    if (mant[i] < '0' || mant[i] > '9') fail(ErrorCode::InvalidInput, "bad number '" + text + "'");
  Rational v{parse_integer(mant, text)};
  boost::multiprecision::mpz_int scale = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                    static_cast<unsigned>(std::labs(exp10)));
  return exp10 >= 0 ? Rational(v * scale) : Rational(v / scale);
}

std::string to_string(const Rational& v) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(v);
  if (boost::multiprecision::denominator(v) != 1) os << '/' << boost::multiprecision::denominator(v);
  return os.str();
}

}  // namespace momrec
