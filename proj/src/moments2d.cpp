#include "momrec/moments2d.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace momrec {

namespace {

constexpr int kOrderingSamples = 33;

std::string at_x(double x) { return " at x = " + std::to_string(x); }

}  // namespace

void validate_domain(const DomainSpec& g) {
  if (g.intervals.empty()) fail(ErrorCode::InvalidDomain, "domain has no intervals");
  for (std::size_t j = 0; j < g.intervals.size(); ++j) {
    const auto& iv = g.intervals[j];
    if (!(iv.x_min < iv.x_max)) fail(ErrorCode::InvalidDomain, "interval " + std::to_string(j) + " is empty");
    if (j > 0 && g.intervals[j - 1].x_max != iv.x_min)
      fail(ErrorCode::InvalidDomain, "intervals " + std::to_string(j - 1) + " and " + std::to_string(j) +
                                         " do not share an endpoint");
    if (iv.strips.empty()) fail(ErrorCode::InvalidDomain, "interval " + std::to_string(j) + " has no strips");
    const double mid = 0.5 * (iv.x_min + iv.x_max), half = 0.5 * (iv.x_max - iv.x_min);
    for (int k = 0; k < kOrderingSamples; ++k) {
      const double x = mid + half * std::cos((2 * k + 1) * std::numbers::pi / (2 * kOrderingSamples));
      for (std::size_t l = 0; l < iv.strips.size(); ++l) {
        const double lo = iv.strips[l].lower(x), hi = iv.strips[l].upper(x);
        if (!(lo < hi)) fail(ErrorCode::InvalidDomain, "strip " + std::to_string(l) + " is not lower < upper" + at_x(x));
        if (l + 1 < iv.strips.size() && !(hi < iv.strips[l + 1].lower(x)))
          fail(ErrorCode::InvalidDomain, "strips " + std::to_string(l) + " and " + std::to_string(l + 1) +
                                             " overlap" + at_x(x));
      }
    }
  }
}

double EllipticMoments::M(int alpha, int two_beta) const {
  const double raw = [&] {
    switch (two_beta) {
      case 0:
        switch (alpha) {
          case 0: return m00;
          case 1: return m10;
          case 2: return m20;
          case 3: return m30;
          case 4: return m40;
        }
        break;
      case 2:
        if (alpha == 0) return m02;
        if (alpha == 1) return m12;
        break;
    }
    fail(ErrorCode::MissingMoment, "M_{" + std::to_string(alpha) + "," + std::to_string(two_beta) + "} not stored");
  }();
  return 0.5 * (two_beta + 1) * raw;
}

void EllipticMoments::validate() const {
  for (double v : {m00, m10, m20, m30, m40, m02, m12})
    if (!std::isfinite(v)) fail(ErrorCode::InvalidMoments, "moments must be finite");
  if (!(m00 > 0)) fail(ErrorCode::InvalidMoments, "m00 must be positive");
}

OvalRoots oval_roots(double a, double b, double c, double d) {
  if (a == 0.0) fail(ErrorCode::NotElliptic, "a cubic is required (a = 0)");
  const Polynomial f{d, c, b, a};
  const double bound = 1 + std::max({std::abs(b / a), std::abs(c / a), std::abs(d / a)});
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  auto r = real_roots_in(f, RealInterval(-bound, bound), 1e-12 * bound);
  if (r.size() != 3) fail(ErrorCode::NotElliptic, "f needs three distinct real roots, found " + std::to_string(r.size()));
  // exactly one of the two bounded gaps carries f > 0
  const bool left = f(0.5 * (r[0] + r[1])) > 0, right = f(0.5 * (r[1] + r[2])) > 0;
  if (left == right) fail(ErrorCode::NotElliptic, "no unique bounded oval");
  OvalRoots o = left ? OvalRoots{r[0], r[1], r[2]} : OvalRoots{r[1], r[2], r[0]};
  if (std::abs(f(o.x1)) > 1e-9 * scale * (1 + std::pow(bound, 3)) ||
      std::abs(f(o.x2)) > 1e-9 * scale * (1 + std::pow(bound, 3)))
    fail(ErrorCode::NotElliptic, "root refinement failed");
  return o;
}

double elliptic_moment(double a, double b, double c, double d, int alpha, int beta, double quad_tol) {
  if (alpha < 0 || beta < 0) fail(ErrorCode::InvalidInput, "moment indices must be nonnegative");
  if (!(quad_tol > 0)) fail(ErrorCode::InvalidInput, "quad_tol must be positive");
  const auto o = oval_roots(a, b, c, d);
  const double w = o.x2 - o.x1;
  // f = (x - x1)(x2 - x) g with g = -a (x - x3) > 0 on the oval; the substitution
  // x = x1 + w sin^2 t turns sqrt((x - x1)(x2 - x)) into w sin t cos t.
  auto integrand = [&](double t) {
    const double s = std::sin(t), co = std::cos(t);
    const double x = o.x1 + w * s * s;
    const double g = -a * (x - o.x3);
    const double root = w * s * co * std::sqrt(std::max(g, 0.0));
    return std::pow(x, alpha) * std::pow(root, 2 * beta + 1) * 2 * w * s * co;
  };
  double err = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numbers::pi / 2, 15, std::max(quad_tol * 1e-3, 1e-15), &err);
  if (!std::isfinite(v) || err > quad_tol * std::max(1.0, std::abs(v)))
    fail(ErrorCode::QuadratureFailure, "error estimate " + std::to_string(err) + " above quad_tol");
  return 2.0 / (2 * beta + 1) * v;
}

EllipticMoments elliptic_moments(double a, double b, double c, double d, double quad_tol) {
  EllipticMoments e;
  e.m00 = elliptic_moment(a, b, c, d, 0, 0, quad_tol);
  e.m10 = elliptic_moment(a, b, c, d, 1, 0, quad_tol);
  e.m20 = elliptic_moment(a, b, c, d, 2, 0, quad_tol);
  e.m30 = elliptic_moment(a, b, c, d, 3, 0, quad_tol);
  e.m40 = elliptic_moment(a, b, c, d, 4, 0, quad_tol);
  e.m02 = elliptic_moment(a, b, c, d, 0, 1, quad_tol);
  e.m12 = elliptic_moment(a, b, c, d, 1, 1, quad_tol);
  return e;
}

Relation43Report check_relation_43(const EllipticMoments& e, const MValueMap& extended,
                                   const std::array<double, 4>& coeffs, double tol,
                                   const std::vector<std::pair<int, int>>& pairs) {
  MValueMap mv = extended;
  for (int alpha = 0; alpha <= 4; ++alpha) mv.emplace(std::make_pair(alpha, 0), e.M(alpha, 0));
  mv.emplace(std::make_pair(0, 2), e.M(0, 2));
  mv.emplace(std::make_pair(1, 2), e.M(1, 2));

  auto lookup = [&](int alpha, int two_beta) -> const double* {
    auto it = mv.find({alpha, two_beta});
    return it == mv.end() ? nullptr : &it->second;
  };
  auto residual = [&](int alpha, int beta, Relation43Residual& out) {
    const int tb = 2 * beta;
    const double* lhs = lookup(alpha, tb + 2);
    const double* m3 = lookup(alpha + 3, tb);
    const double* m2 = lookup(alpha + 2, tb);
    const double* m1 = lookup(alpha + 1, tb);
    const double* m0 = lookup(alpha, tb);
    if (!lhs || !m3 || !m2 || !m1 || !m0) return false;
    const double rhs = coeffs[0] * *m3 + coeffs[1] * *m2 + coeffs[2] * *m1 + coeffs[3] * *m0;
    out = {alpha, beta, std::abs(*lhs - rhs)};
    return true;
  };

  Relation43Report rep;
  if (!pairs.empty()) {
    for (const auto& [alpha, beta] : pairs) {
      Relation43Residual r;
      if (!residual(alpha, beta, r))
        fail(ErrorCode::MissingMoment, "relation at (" + std::to_string(alpha) + "," + std::to_string(beta) +
                                           ") needs moments that are not supplied");
      rep.residuals.push_back(r);
    }
  } else {
    for (const auto& [key, value] : mv) {
      (void)value;
      if (key.second % 2 != 0 || key.second < 2) continue;
      Relation43Residual r;
      if (residual(key.first, key.second / 2 - 1, r)) rep.residuals.push_back(r);
    }
  }
  for (const auto& r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r.residual);
  rep.passed = !rep.residuals.empty() && rep.max_residual <= tol;
  return rep;
}

}  // namespace momrec
