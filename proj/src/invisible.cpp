#include "momrec/invisible.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace momrec {

void LaurentPolynomial::add(const Exponent& e, double c) {
  if (e.size() != dim_) fail(ErrorCode::InvalidInput, "exponent dimension mismatch");
  const double v = (terms_[e] += c);
  if (v == 0.0) terms_.erase(e);
}

std::vector<LaurentPolynomial::Exponent> LaurentPolynomial::support() const {
  std::vector<Exponent> out;
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

double LaurentPolynomial::constant_term() const {
  auto it = terms_.find(Exponent(dim_, 0));
  return it == terms_.end() ? 0.0 : it->second;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.dim_ != b.dim_) fail(ErrorCode::InvalidInput, "dimension mismatch");
  LaurentPolynomial out(a.dim_);
  LaurentPolynomial::Exponent e(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

namespace {

RationalPolynomial exact(const Polynomial& p) { return p.cast<Rational>(); }

// Coefficients of the marginal int_{lo}^{hi} f d(var); var = 2 integrates y.
RationalPolynomial marginal(const BivariatePolynomial& f, int var, double lo, double hi) {
  std::vector<Rational> out;
  const Rational a(lo), b(hi);
  auto span = [&](std::size_t j) {
    Rational pa(1), pb(1);
    for (std::size_t t = 0; t <= j; ++t) {
      pa *= a;
      pb *= b;
    }
    return (pb - pa) / Rational(static_cast<long>(j + 1));
  };
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    for (std::size_t j = 0; j < f.coeffs[i].size(); ++j) {
      const std::size_t keep = var == 2 ? i : j, drop = var == 2 ? j : i;
      if (out.size() <= keep) out.resize(keep + 1, Rational(0));
      out[keep] += Rational(f.coeffs[i][j]) * span(drop);
    }
  return RationalPolynomial(out);
}

// Splits p into sum_i r_i W^i with deg r_i < deg W. Returns the outer
// polynomial built from the constant parts and the largest non-constant
// remainder coefficient.
std::pair<Polynomial, double> w_adic(const Polynomial& p, const Polynomial& w) {
  std::vector<double> outer;
  double worst = 0;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    auto [q, r] = divmod(rest, w);
    outer.push_back(r[0]);
    for (std::size_t i = 1; i < r.coeffs().size(); ++i) worst = std::max(worst, std::abs(r[i]));
    rest = q;
  }
  return {Polynomial(outer), worst};
}

bool decision(double residual, double tol, const char* what) {
  if (residual <= tol) return true;
  if (residual >= 1e3 * tol) return false;
  fail(ErrorCode::DecompositionInconclusive,
       std::string(what) + " remainder " + std::to_string(residual) + " lies between tol and 1e3 tol");
}

// Upper bound for int_iv |p| from the coefficients.
double abs_integral_bound(const RationalPolynomial& p, double lo, double hi) {
  const double r = std::max(std::abs(lo), std::abs(hi));
  double s = 0, rp = r;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i, rp *= r)
    s += std::abs(static_cast<double>(p.coeffs()[i])) * rp / static_cast<double>(i + 1);
  return 2 * s;
}

}  // namespace

WaveVerdict wave_invisibility(const BivariatePolynomial& f, const Rectangle& r, double tol) {
  if (!(r.x_min < r.x_max && r.y_min < r.y_max)) fail(ErrorCode::InvalidDomain, "rectangle must be nondegenerate");
  const auto F = marginal(f, 2, r.y_min, r.y_max).chopped(Rational(tol));
  const auto H = marginal(f, 1, r.x_min, r.x_max).chopped(Rational(tol));
  WaveVerdict v;
  v.F = F.cast<double>();
  v.H = H.cast<double>();
  v.invisible = F.is_zero() && H.is_zero();
  if (v.invisible) return v;
  const bool on_x = !F.is_zero();
  const auto& g = on_x ? F : H;
  v.witness_axis = on_x ? 'x' : 'y';
  std::size_t i = 0;
  while (g[i] == 0) ++i;
  v.witness_degree = i;
  const Rational lo(on_x ? r.x_min : r.y_min), hi(on_x ? r.x_max : r.y_max);
  for (std::size_t k = 0;; ++k)
    if (integrate(g * RationalPolynomial::monomial(k), lo, hi) != 0) {
      v.witness_moment = k;
      break;
    }
  return v;
}

std::vector<double> power_moment_scan(const Polynomial& P, const Polynomial& q, const RealInterval& iv,
                                      std::size_t k_max) {
  const auto m = power_moment_scan(exact(P), exact(q), Rational(iv.lo), Rational(iv.hi), k_max);
  std::vector<double> out;
  for (const auto& v : m) out.push_back(to_double(v));
  return out;
}

CCVerdict verify_cc(const Polynomial& P, const Polynomial& q, const Polynomial& W, const RealInterval& iv,
                    double tol) {
  if (!(tol > 0)) fail(ErrorCode::InvalidInput, "tol must be positive");
  if (W.degree().value_or(0) < 1) fail(ErrorCode::InvalidInput, "W must be nonconstant");
  CCVerdict v;
  const double wa = W(iv.lo), wb = W(iv.hi);
  v.endpoints_match = std::abs(wa - wb) <= tol * std::max(1.0, std::abs(wa));
  if (!v.endpoints_match) return v;

  Polynomial Q = q.antiderivative();
  Q -= Polynomial{Q(iv.lo)};
  const double wscale = std::max(1.0, W.max_abs_coeff());
  auto [po, pres] = w_adic(P, W);
  auto [qo, qres] = w_adic(Q, W);
  v.p_residual = pres / std::max({1.0, P.max_abs_coeff(), wscale});
  v.q_residual = qres / std::max({1.0, Q.max_abs_coeff(), wscale});
  v.p_decomposes = decision(v.p_residual, tol, "P");
  v.q_decomposes = decision(v.q_residual, tol, "Q");
  v.holds = v.p_decomposes && v.q_decomposes;
  if (!v.holds) return v;
  v.p_outer = po;
  v.q_outer = qo;

  constexpr std::size_t kScan = 20;
  const auto Pe = exact(P), qe = exact(q);
  const auto m = power_moment_scan(Pe, qe, Rational(iv.lo), Rational(iv.hi), kScan);
  RationalPolynomial pk{1};
  for (std::size_t k = 0; k <= kScan; ++k) {
    const double val = to_double(m[k]);
    v.scan.push_back(val);
    const double bound = 1e-12 * std::max(1.0, abs_integral_bound(pk * qe, iv.lo, iv.hi));
    if (std::abs(val) > bound)
      fail(ErrorCode::InconsistentVerdict, "composition condition holds but m_" + std::to_string(k) + " = " +
                                               std::to_string(val));
    pk = pk * Pe;
  }
  return v;
}

MCCResult verify_mcc_example(const BivariatePolynomial& P, int axis, const Polynomial& Q, double quad_tol,
                             std::size_t level) {
  if (axis != 1 && axis != 2) fail(ErrorCode::InvalidInput, "axis must be 1 or 2");
  if (level < 2) fail(ErrorCode::InvalidInput, "quadrature level must be at least 2");
  const auto dP = P.partial(axis);

  constexpr int kAngles = 720;
  auto outside_on_circle = [&](double rad) {
    for (int k = 0; k < kAngles; ++k) {
      const double t = 2 * M_PI * k / kAngles;
      if (!(P(rad * std::cos(t), rad * std::sin(t)) > 1)) return false;
    }
    return true;
  };
  double R = 1;
  for (int step = 0;; ++step, R *= 2) {
    if (step > 20) fail(ErrorCode::UnboundedSublevelSet, "{P <= 1} not contained in any sampled disk");
    if (outside_on_circle(R) && outside_on_circle(2 * R) && outside_on_circle(4 * R)) break;
  }

  const double h = 2 * R / static_cast<double>(level);
  const double half = static_cast<double>(level) / 2;
  long double sum = 0;
  double gmax = 0;
  for (std::size_t i = 0; i < level; ++i) {
    const double x = (static_cast<double>(i) + 0.5 - half) * h;
    for (std::size_t k = 0; k < level; ++k) {
      const double y = (static_cast<double>(k) + 0.5 - half) * h;
      const double p = P(x, y);
      if (p > 1) continue;
      const double g = Q(p) * dP(x, y);
      sum += g;
      gmax = std::max(gmax, std::abs(g));
    }
  }
  MCCResult r;
  r.radius = R;
  r.integral = static_cast<double>(sum) * h * h;
  r.residual = std::abs(r.integral);
  const double area = 4 * R * R;
  r.bound = 1e-8 * area * gmax;
  r.passed = r.residual <= std::max(r.bound, quad_tol);
  return r;
}

bool origin_in_hull(const std::vector<std::vector<int>>& points) {
  if (points.empty()) return false;
  const std::size_t n = points.front().size();
  for (const auto& p : points) {
    if (p.size() != n) fail(ErrorCode::InvalidInput, "points must share a dimension");
    if (std::all_of(p.begin(), p.end(), [](int v) { return v == 0; })) return true;
  }
  // 0 = sum lambda_i p_i, sum lambda_i = 1, lambda >= 0 over subsets of size <= n + 1.
  const std::size_t N = points.size();
  std::vector<std::size_t> idx;
  bool found = false;
  auto test = [&]() {
    const std::size_t m = idx.size();
    // (n + 1) x (m + 1) augmented system
    std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(m + 1, Rational(0)));
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t r = 0; r < n; ++r) a[r][c] = points[idx[c]][r];
      a[n][c] = 1;
    }
    a[n][m] = 1;
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < m && row <= n; ++c) {
      std::size_t piv = row;
      while (piv <= n && a[piv][c] == 0) ++piv;
      if (piv > n) return false;  // affinely dependent subset; a smaller one covers it
      std::swap(a[piv], a[row]);
      for (std::size_t r = 0; r <= n; ++r) {
        if (r == row || a[r][c] == 0) continue;
        const Rational f = a[r][c] / a[row][c];
        for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[row][k];
      }
      pivot_col.push_back(c);
      ++row;
    }
    for (std::size_t r = row; r <= n; ++r)
      if (a[r][m] != 0) return false;  // inconsistent
    for (std::size_t r = 0; r < row; ++r)
      if (a[r][m] / a[r][pivot_col[r]] < 0) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (found) return;
    if (!idx.empty() && test()) {
      found = true;
      return;
    }
    if (idx.size() == n + 1) return;
    for (std::size_t i = start; i < N && !found; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return found;
}

LaurentVerdict laurent_invisibility(const LaurentPolynomial& f, std::size_t k_max) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "f must be nonzero");
  if (k_max < 1) fail(ErrorCode::InvalidInput, "k_max must be positive");
  LaurentVerdict v;
  v.predicted_invisible = !origin_in_hull(f.support());
  double l1 = 0;
  for (const auto& [e, c] : f.terms()) l1 += std::abs(c);
  LaurentPolynomial pk = f;
  bool all_zero = true;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) pk = pk * f;
    const double ct = pk.constant_term();
    v.constant_terms.push_back(ct);
    if (std::abs(ct) > 1e-12 * std::pow(l1, static_cast<double>(k))) all_zero = false;
  }
  v.consistent = (all_zero == v.predicted_invisible);
  return v;
}

}  // namespace momrec
