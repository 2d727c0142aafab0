#include "momrec/recon2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "linalg.hpp"
#include "momrec/prony.hpp"

namespace momrec {

std::size_t Recon2DConfig::betas() const {
  const std::size_t base = kappa == 0 ? 0 : 2 * (kappa - 1);
  return std::max(base, beta_max.value_or(base));
}

std::size_t required_alpha_max(const Recon2DConfig& cfg) {
  std::size_t need = 0;
  for (std::size_t beta = 0; beta <= cfg.betas(); ++beta)
    need = std::max(need, required_moments(cfg.kappa, (beta + 1) * cfg.degree));
  return need - 1;
}

namespace {

using detail::ix;
using detail::Matrix;
using detail::Vector;

[[noreturn]] void rethrow_tagged(const Error& e, const std::string& where) {
  fail(e.code(), where + ": " + e.detail());
}

// Least-squares polynomial of the given degree through (x_k, y_k), fitted in
// the variable t = (x - mid) / half and expanded back to powers of x.
template <class T>
BasicPolynomial<T> fit_branch(const std::vector<T>& xs, const std::vector<T>& ys, std::size_t degree, const T& mid,
                              const T& half) {
  Matrix<T> a(ix(xs.size()), ix(degree + 1));
  Vector<T> b(ix(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const T t = (xs[k] - mid) / half;
    T p(1);
    for (std::size_t i = 0; i <= degree; ++i, p *= t) a(ix(k), ix(i)) = p;
    b(ix(k)) = ys[k];
  }
  const Vector<T> c = detail::solve_ls<T>(a, b);
  std::vector<T> ct(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) ct[i] = c(ix(i));
  const BasicPolynomial<T> shift{T(-mid / half), T(T(1) / half)};
  return compose(BasicPolynomial<T>(ct), shift);
}

template <class T>
T max_abs_table(const BasicMomentTable2D<T>& m) {
  T s(0);
  for (const auto& row : m.values)
    for (const auto& v : row) s = std::max(s, abs_value(v));
  return s;
}

}  // namespace

template <class T>
T forward_residual(const BasicDomainSpec<T>& g, const BasicMomentTable2D<T>& m) {
  if (m.values.empty()) return T(0);
  const auto f = moments2d(g, m.alpha_max, m.beta_max);
  T worst(0);
  for (std::size_t beta = 0; beta < m.values.size(); ++beta)
    for (std::size_t alpha = 0; alpha < m.values[beta].size(); ++alpha)
      worst = std::max(worst, abs_value(T(f.values[beta][alpha] - m.values[beta][alpha])));
  return worst;
}

template <class T>
BasicDomainSpec<T> reconstruct2d(const BasicMomentTable2D<T>& m, const Recon2DConfig& cfg) {
  m.validate();
  if (cfg.kappa == 0) fail(ErrorCode::InvalidInput, "kappa must be positive");
  if (!(cfg.tol > 0)) fail(ErrorCode::InvalidInput, "tol must be positive");
  if (cfg.samples() < cfg.degree + 1) fail(ErrorCode::InvalidInput, "samples_per_interval must be >= degree + 1");
  const std::size_t B = cfg.betas();
  if (m.beta_max < B)
    fail(ErrorCode::InsufficientMoments, "beta_max " + std::to_string(m.beta_max) + " below the required " +
                                             std::to_string(B));
  if (!cfg.search_degree && m.alpha_max < required_alpha_max(cfg))
    fail(ErrorCode::InsufficientMoments, "alpha_max " + std::to_string(m.alpha_max) + " below the required " +
                                             std::to_string(required_alpha_max(cfg)));

  // Step 1: every Psi_beta as a piecewise polynomial.
  std::vector<BasicPiecewisePolynomial<T>> psis;
  for (std::size_t beta = 0; beta <= B; ++beta) {
    Recon1DConfig c1;
    c1.max_jumps = cfg.kappa;
    c1.max_degree = (beta + 1) * cfg.degree;
    c1.tol = cfg.tol;
    c1.rank_tol = cfg.rank_tol;
    c1.search_degree = cfg.search_degree;
    try {
      psis.push_back(reconstruct1d(psi_moments(m, beta), c1));
    } catch (const Error& e) {
      rethrow_tagged(e, "Psi_" + std::to_string(beta));
    }
  }

  // Step 2: consensus breakpoints. A breakpoint may cancel in some Psi_beta
  // (both boundaries kinking alike), so the sets are merged, not intersected.
  std::vector<T> all;
  for (const auto& p : psis) all.insert(all.end(), p.breakpoints.begin(), p.breakpoints.end());
  std::sort(all.begin(), all.end());
  const T width = all.back() - all.front();
  const auto breaks = merge_close(all, T(T(1e-6) * width));
  if (breaks.size() < 2) fail(ErrorCode::BreakpointRecoveryFailed, "no support interval recovered");

  // Step 3-4: pointwise signed Prony and branch fits per interval.
  PronyOptions popt;
  popt.tol = cfg.tol;
  popt.rank_tol = cfg.rank_tol;
  const std::size_t S = cfg.samples();
  BasicDomainSpec<T> out;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const T lo = breaks[j], hi = breaks[j + 1];
    const T mid = (lo + hi) / T(2), half = (hi - lo) / T(2);
    const std::string where = "interval " + std::to_string(j);
    auto sums_at = [&](const T& x) {
      std::vector<T> p;
      for (std::size_t beta = 0; beta <= B; ++beta) p.push_back(T(static_cast<long>(beta + 1)) * psis[beta](x));
      return p;
    };

    std::vector<T> h{T(0)};
    for (const auto& v : sums_at(mid)) h.push_back(v);
    const std::size_t cols = std::min<std::size_t>(cfg.kappa + 1, (h.size() + 1) / 2);
    std::size_t rank = 0;
    try {
      rank = hankel_rank(h, cols, popt).rank;
    } catch (const Error& e) {
      rethrow_tagged(e, where + " strip count");
    }
    if (rank == 0) continue;  // gap between components
    if (rank % 2 != 0)
      fail(ErrorCode::AmplitudeNotUnit, where + ": odd Hankel rank " + std::to_string(rank) + " at the midpoint");
    const std::size_t s = rank / 2;

    std::vector<T> xs;
    std::vector<std::vector<T>> branch(2 * s);
    for (std::size_t k = 0; k < S; ++k) {
      const double theta = (2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(S));
      const T x = mid + half * T(std::cos(theta));
      std::vector<T> ys;
      try {
        ys = solve_signed(sums_at(x), s, popt);
      } catch (const Error& e) {
        rethrow_tagged(e, where + ", x = " + std::to_string(static_cast<double>(x)));
      }
      xs.push_back(x);
      for (std::size_t b = 0; b < 2 * s; ++b) branch[b].push_back(ys[b]);
    }

    BasicDomainInterval<T> iv;
    iv.x_min = lo;
    iv.x_max = hi;
    std::vector<BasicPolynomial<T>> fits;
    T yscale(1);
    for (const auto& br : branch)
      for (const auto& y : br) yscale = std::max(yscale, abs_value(y));
    for (std::size_t b = 0; b < 2 * s; ++b) {
      auto p = fit_branch(xs, branch[b], cfg.degree, mid, half);
      T dev(0);
      for (std::size_t k = 0; k < xs.size(); ++k) dev = std::max(dev, abs_value(T(p(xs[k]) - branch[b][k])));
      if (dev > T(cfg.tol) * yscale * T(1000))
        fail(ErrorCode::BranchCrossing, where + ": branch " + std::to_string(b) + " is not a degree-" +
                                            std::to_string(cfg.degree) + " polynomial (deviation " +
                                            std::to_string(static_cast<double>(dev)) + ")");
      fits.push_back(p.chopped(T(T(cfg.tol) * T(1e-3) * std::max(T(1), p.max_abs_coeff()))));
    }
    for (std::size_t k = 0; k < xs.size(); ++k)
      for (std::size_t b = 1; b < fits.size(); ++b)
        if (!(fits[b - 1](xs[k]) < fits[b](xs[k])))
          fail(ErrorCode::BranchCrossing, where + ": fitted branches " + std::to_string(b - 1) + " and " +
                                              std::to_string(b) + " cross");
    for (std::size_t l = 0; l < s; ++l) iv.strips.push_back({fits[2 * l], fits[2 * l + 1]});
    out.intervals.push_back(std::move(iv));
  }
  if (out.intervals.empty()) fail(ErrorCode::BreakpointRecoveryFailed, "no interval carries strips");
  for (std::size_t j = 1; j < out.intervals.size(); ++j)
    if (out.intervals[j - 1].x_max != out.intervals[j].x_min)
      fail(ErrorCode::BreakpointRecoveryFailed, "recovered domain has a vertical gap, which is not representable");

  const T resid = forward_residual(out, m);
  if (resid > T(cfg.tol) * max_abs_table(m))
    fail(ErrorCode::ResidualTooLarge, "forward residual " + std::to_string(static_cast<double>(resid)) +
                                          " exceeds tol * max|m|");
  return out;
}

template <class T>
std::vector<BasicTriangle<T>> reconstruct_triangle(const BasicTriangleMoments<T>& m, Orientation orientation,
                                                   double tol) {
  if (!(m.m00 > T(0))) fail(ErrorCode::InvalidMoments, "m00 must be positive");
  // h'' is three point masses at the vertex abscissae; its moments are
  // alpha (alpha - 1) m_{alpha-2}.
  BasicPronyProblem<T> p;
  p.power_data = {T(0), T(0), T(2) * m.m00, T(6) * m.m10, T(12) * m.m20, T(20) * m.m30};
  p.max_nodes = 3;
  PronyOptions opt;
  opt.tol = tol;
  const auto sol = solve_classical(p, opt);
  if (sol.nodes.size() != 3)
    fail(ErrorCode::BreakpointRecoveryFailed, "expected three vertex abscissae, found " + std::to_string(sol.nodes.size()));
  const T xa = sol.nodes[0], xb = sol.nodes[1], xc = sol.nodes[2];
  const T H = sol.amplitudes[0][0] * (xb - xa);
  if (!(H > T(0))) fail(ErrorCode::BreakpointRecoveryFailed, "nonpositive chord height");

  // h as a piecewise polynomial, and the weights of L(x) = ya * wa(x) + yc * wc(x).
  const T span = xc - xa;
  const BasicPolynomial<T> wa{T(xc / span), T(T(-1) / span)}, wc{T(-xa / span), T(T(1) / span)};
  const BasicPolynomial<T> rise{T(-H * xa / (xb - xa)), T(H / (xb - xa))};
  const BasicPolynomial<T> fall{T(H * xc / (xc - xb)), T(-H / (xc - xb))};
  auto integral = [&](const BasicPolynomial<T>& f) {
    return integrate(BasicPolynomial<T>(rise * f), xa, xb) + integrate(BasicPolynomial<T>(fall * f), xb, xc);
  };
  const BasicPolynomial<T> one{T(1)}, x{T(0), T(1)};
  // Psi_1 = h (L + s h / 2)
  const T a11 = integral(wa), a12 = integral(wc), a21 = integral(x * wa), a22 = integral(x * wc);
  auto h_sq = [&](const BasicPolynomial<T>& f) {
    return integrate(BasicPolynomial<T>(rise * rise * f), xa, xb) + integrate(BasicPolynomial<T>(fall * fall * f), xb, xc);
  };
  const T q0 = h_sq(one) / T(2), q1 = h_sq(x) / T(2);
  const T det = a11 * a22 - a12 * a21;
  if (abs_value(det) == T(0)) fail(ErrorCode::SingularSystem, "triangle system is singular");

  std::vector<BasicTriangle<T>> out;
  for (int s : {1, -1}) {
    const T r0 = m.m01 - T(s) * q0, r1 = m.m11 - T(s) * q1;
    const T ya = (r0 * a22 - a12 * r1) / det;
    const T yc = (a11 * r1 - a21 * r0) / det;
    const T yb = ya * wa(xb) + yc * wc(xb) + T(s) * H;
    out.push_back({{xa, ya}, {xb, yb}, {xc, yc}});
  }
  if (orientation == Orientation::MiddleBelow) std::swap(out[0], out[1]);
  return out;
}

std::string render_svg(const DomainSpec& recon, const DomainSpec* truth) {
  constexpr int kSize = 512, kMargin = 40, kSegments = 64;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto extend = [&](const DomainSpec& g) {
    for (const auto& iv : g.intervals) {
      x0 = std::min(x0, iv.x_min);
      x1 = std::max(x1, iv.x_max);
      for (const auto& s : iv.strips)
        for (int k = 0; k <= kSegments; ++k) {
          const double x = iv.x_min + (iv.x_max - iv.x_min) * k / kSegments;
          y0 = std::min({y0, s.lower(x), s.upper(x)});
          y1 = std::max({y1, s.lower(x), s.upper(x)});
        }
    }
  };
  extend(recon);
  if (truth) extend(*truth);
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  const double span = std::max(x1 - x0, y1 - y0), inner = kSize - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - x0) / span * inner; };
  auto py = [&](double y) { return kSize - kMargin - (y - y0) / span * inner; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double ax = kSize - kMargin;
  os << "<line x1=\"" << kMargin << "\" y1=\"" << ax << "\" x2=\"" << ax << "\" y2=\"" << ax
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << ax
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + span * t / 4, yv = y0 + span * t / 4;
    os << "<text x=\"" << px(xv) << "\" y=\"" << ax + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << xv
       << "</text>\n";
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << yv
       << "</text>\n";
  }
  os << "<text x=\"" << ax << "\" y=\"" << ax - 6 << "\" font-size=\"12\">x</text>\n";
  os << "<text x=\"" << kMargin + 6 << "\" y=\"" << kMargin << "\" font-size=\"12\">y</text>\n";
  auto draw = [&](const DomainSpec& g, const char* style) {
    for (const auto& iv : g.intervals)
      for (const auto& s : iv.strips) {
        os << "<polyline " << style << " points=\"";
        for (int k = 0; k <= kSegments; ++k) {
          const double x = iv.x_min + (iv.x_max - iv.x_min) * k / kSegments;
          os << px(x) << ',' << py(s.lower(x)) << ' ';
        }
        for (int k = kSegments; k >= 0; --k) {
          const double x = iv.x_min + (iv.x_max - iv.x_min) * k / kSegments;
          os << px(x) << ',' << py(s.upper(x)) << ' ';
        }
        os << px(iv.x_min) << ',' << py(s.lower(iv.x_min)) << "\"/>\n";
      }
  };
  if (truth) draw(*truth, "fill=\"none\" stroke=\"#888888\" stroke-width=\"3\"");
  draw(recon, "fill=\"#3366cc\" fill-opacity=\"0.25\" stroke=\"#3366cc\" stroke-width=\"1.5\"");
  os << "</svg>\n";
  return os.str();
}

template double forward_residual(const DomainSpec&, const MomentTable2D&);
template Real forward_residual(const BasicDomainSpec<Real>&, const BasicMomentTable2D<Real>&);
template Rational forward_residual(const BasicDomainSpec<Rational>&, const BasicMomentTable2D<Rational>&);
template DomainSpec reconstruct2d(const MomentTable2D&, const Recon2DConfig&);
template BasicDomainSpec<Real> reconstruct2d(const BasicMomentTable2D<Real>&, const Recon2DConfig&);
template std::vector<BasicTriangle<double>> reconstruct_triangle(const BasicTriangleMoments<double>&, Orientation,
                                                                 double);
template std::vector<BasicTriangle<Real>> reconstruct_triangle(const BasicTriangleMoments<Real>&, Orientation, double);

}  // namespace momrec
