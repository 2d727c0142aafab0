#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "momrec/elliptic.hpp"
#include "momrec/invisible.hpp"
#include "momrec/prony.hpp"
#include "momrec/recon1d.hpp"
#include "momrec/recon2d.hpp"

using namespace momrec;
using RP = RationalPolynomial;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& run) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome crit1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coef(-1, 1), where(0, 2);
  std::uniform_int_distribution<int> small(0, 3);
  double worst_b = 0, worst_c = 0;
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const int K = small(rng), N = small(rng);
    std::vector<double> br;
    while (static_cast<int>(br.size()) < K + 2) {
      const double c = where(rng);
      if (std::all_of(br.begin(), br.end(), [&](double v) { return std::abs(v - c) >= 0.2; })) br.push_back(c);
    }
    std::sort(br.begin(), br.end());
    BasicPiecewisePolynomial<Rational> g;
    for (double b : br) g.breakpoints.push_back(Rational(b));
    for (int n = 0; n <= K; ++n) {
      std::vector<Rational> c;
      for (int i = 0; i <= N; ++i) c.push_back(Rational(coef(rng)));
      g.pieces.emplace_back(c);
    }
    Recon1DConfig cfg;
    cfg.max_jumps = K;
    cfg.max_degree = N;
    const auto m = moments_pp(g, required_moments(K, N));
    try {
      const auto r = reconstruct1d(m.cast<Real>(), cfg).cast<double>();
      if (r.breakpoints.size() != br.size()) {
        ++bad;
        continue;
      }
      for (std::size_t i = 0; i < br.size(); ++i) worst_b = std::max(worst_b, std::abs(r.breakpoints[i] - br[i]));
      for (int n = 0; n <= K; ++n)
        for (int i = 0; i <= N; ++i)
          worst_c = std::max(worst_c, std::abs(r.pieces[n][i] - to_double(g.pieces[n][i])));
    } catch (const Error&) {
      ++bad;
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && worst_b <= 1e-8 && worst_c <= 1e-6 && s < 10,
          fmt("failures %.0f/100, breakpoint error %.3g (<= 1e-8)", bad, worst_b) +
              fmt(", coefficient error %.3g (<= 1e-6), runtime %.2fs (< 10s)", worst_c, s)};
}

Outcome crit2() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> node(-1, 1), amp(0.1, 2);
  std::uniform_int_distribution<int> count(1, 4);
  constexpr std::size_t kMax = 4;
  double worst = 0;
  int rank_ok = 0, solved = 0;
  for (int draw = 0; draw < 200; ++draw) {
    const int r = count(rng);
    std::vector<double> x;
    while (static_cast<int>(x.size()) < r) {
      const double c = node(rng);
      if (std::all_of(x.begin(), x.end(), [&](double v) { return std::abs(v - c) >= 0.1; })) x.push_back(c);
    }
    std::sort(x.begin(), x.end());
    std::vector<double> a(r);
    for (auto& v : a) v = amp(rng);
    // forward substitution; enough data for the largest admissible node count
    std::vector<double> m(2 * kMax + 2, 0.0);
    for (std::size_t n = 0; n < m.size(); ++n)
      for (int j = 0; j < r; ++j) m[n] += a[j] * std::pow(x[j], static_cast<double>(n));
    PronyOptions opt;
    if (hankel_rank(m, kMax + 1, opt).rank == static_cast<std::size_t>(r)) ++rank_ok;
    try {
      const auto s = solve_classical(PronyProblem{m, kMax, 0}, opt);
      if (s.nodes.size() != x.size()) continue;
      ++solved;
      for (int j = 0; j < r; ++j)
        worst = std::max({worst, std::abs(s.nodes[j] - x[j]), std::abs(s.amplitudes[j][0] - a[j])});
    } catch (const Error&) {
    }
  }
  return {rank_ok == 200 && solved == 200 && worst <= 1e-8,
          fmt("rank correct %.0f/200, solved %.0f/200, node/amplitude error %.3g (<= 1e-8)", rank_ok, solved, worst)};
}

double sup_error(const Polynomial& p, const Polynomial& q, double lo, double hi) {
  double e = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = lo + (hi - lo) * i / 1000.0;
    e = std::max(e, std::abs(p(x) - q(x)));
  }
  return e;
}

Outcome crit3() {
  auto single = [](Rational a, Rational b, std::vector<BasicStrip<Rational>> strips) {
    BasicDomainSpec<Rational> g;
    g.intervals.push_back({a, b, std::move(strips)});
    return g;
  };
  struct Case {
    const char* name;
    BasicDomainSpec<Rational> g;
    std::size_t kappa, degree;
  };
  BasicDomainSpec<Rational> tri;
  tri.intervals.push_back({0, 1, {{RP{0}, RP{0, 1}}}});
  tri.intervals.push_back({1, 2, {{RP{0}, RP{2, -1}}}});
  std::vector<Case> cases{
      {"square", single(0, 1, {{RP{0}, RP{1}}}), 2, 0},
      {"parabola", single(-1, 1, {{RP{0}, RP{1, 0, -1}}}), 2, 2},
      {"triangle", tri, 3, 1},
      {"two-strip", single(Rational(-1, 2), Rational(1, 2), {{RP{0}, RP{1}}, {RP{2, 0, 1}, RP{3, 0, 1}}}), 4, 2},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    Recon2DConfig cfg;
    cfg.kappa = c.kappa;
    cfg.degree = c.degree;
    const auto m = moments2d(c.g, required_alpha_max(cfg), cfg.betas()).cast<Real>();
    double sup = 0, resid = 0;
    bool shape = false;
    try {
      const auto rec = reconstruct2d(m, cfg);
      resid = static_cast<double>(forward_residual(rec, m));
      const auto got = rec.cast<double>();
      const auto want = c.g.cast<double>();
      shape = got.intervals.size() == want.intervals.size();
      for (std::size_t j = 0; shape && j < want.intervals.size(); ++j) {
        const auto& gi = got.intervals[j];
        const auto& wi = want.intervals[j];
        shape = gi.strips.size() == wi.strips.size();
        sup = std::max({sup, std::abs(gi.x_min - wi.x_min), std::abs(gi.x_max - wi.x_max)});
        for (std::size_t l = 0; shape && l < wi.strips.size(); ++l)
          sup = std::max({sup, sup_error(gi.strips[l].lower, wi.strips[l].lower, wi.x_min, wi.x_max),
                          sup_error(gi.strips[l].upper, wi.strips[l].upper, wi.x_min, wi.x_max)});
      }
    } catch (const Error& e) {
      detail += std::string(c.name) + " error " + std::string(e.name()) + ": " + e.what() + "; ";
      ok = false;
      continue;
    }
    ok = ok && shape && sup <= 1e-6 && resid <= 1e-8;
    detail += std::string(c.name) + (shape ? "" : " wrong shape") + fmt(" sup %.2g resid %.2g; ", sup, resid);
  }
  detail += "tolerances 1e-6 and 1e-8";
  return {ok, detail};
}

Outcome crit4() {
  using V = std::array<double, 2>;
  struct Tri {
    V a, b, c;  // sorted by x
  };
  const std::vector<Tri> tris{{{0, 0}, {1, 1}, {2, 0}},
                              {{-1, 0.5}, {0.25, -1}, {3, 2}},
                              {{0, 0}, {0.5, 2}, {1, 0.25}},
                              {{-2, -1}, {-0.5, 1.5}, {1.5, -0.75}}};
  double worst = 0;
  bool ok = true;
  for (const auto& t : tris) {
    // piecewise-linear description of the triangle between its edges
    auto line = [](V p, V q) {
      const Rational s = (Rational(q[1]) - Rational(p[1])) / (Rational(q[0]) - Rational(p[0]));
      return RP{Rational(p[1]) - s * Rational(p[0]), s};
    };
    const auto ac = line(t.a, t.c), ab = line(t.a, t.b), bc = line(t.b, t.c);
    const bool above = t.b[1] > eval(ac.cast<double>(), t.b[0]);
    BasicDomainSpec<Rational> g;
    g.intervals.push_back({Rational(t.a[0]), Rational(t.b[0]), {above ? BasicStrip<Rational>{ac, ab} : BasicStrip<Rational>{ab, ac}}});
    g.intervals.push_back({Rational(t.b[0]), Rational(t.c[0]), {above ? BasicStrip<Rational>{ac, bc} : BasicStrip<Rational>{bc, ac}}});
    const auto m = moments2d(g, 3, 1).cast<Real>();
    const BasicTriangleMoments<Real> six{m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(3, 0), m.at(0, 1), m.at(1, 1)};
    const auto cand = reconstruct_triangle(six, above ? Orientation::MiddleAbove : Orientation::MiddleBelow);
    if (cand.empty()) {
      ok = false;
      continue;
    }
    const std::array<V, 3> want{t.a, t.b, t.c};
    const std::array<std::array<Real, 2>, 3> got{cand[0].a, cand[0].b, cand[0].c};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(static_cast<double>(got[i][k]) - want[i][k]));
  }
  return {ok && worst <= 1e-8,
          fmt("%.0f triangles from m00 m10 m20 m30 m01 m11, vertex error %.3g (<= 1e-8)", tris.size(), worst)};
}

Outcome crit5() {
  const std::vector<std::array<double, 4>> sets{
      {-1, 0, 1, 0}, {-2, 0, 2, 0}, {0.5, -1, -0.5, 1}, {1, -4, 3, 0}, {-0.5, 0.25, 2, -1}};
  double worst_rel = 0, worst_43 = 0, min_det = INFINITY;
  for (const auto& s : sets) {
    const auto [a, b, c, d] = s;
    const auto e = elliptic_moments(a, b, c, d, 1e-12);
    const auto fit = reconstruct_elliptic_fit(e, 1e-10);
    min_det = std::min(min_det, fit.determinant);
    const std::array<double, 4> got{fit.curve.a, fit.curve.b, fit.curve.c, fit.curve.d};
    double scale = 0, err = 0;
    for (int i = 0; i < 4; ++i) {
      scale = std::max(scale, std::abs(s[i]));
      err = std::max(err, std::abs(got[i] - s[i]));
    }
    worst_rel = std::max(worst_rel, err / scale);
    // relation between the even rows, checked with the recovered curve
    MValueMap ext;
    for (int alpha = 0; alpha <= 5; ++alpha)
      for (int beta = 0; beta <= 2; ++beta)
        ext[{alpha, 2 * beta}] = (2 * beta + 1) / 2.0 * elliptic_moment(a, b, c, d, alpha, beta, 1e-12);
    const auto rep = check_relation_43(e, ext, got, 1e-9);
    worst_43 = std::max(worst_43, rep.max_residual);
  }
  return {worst_rel <= 1e-6 && min_det > 0 && worst_43 <= 1e-9,
          fmt("5 curves, relative coefficient error %.3g (<= 1e-6), min determinant %.3g (> 0), ", worst_rel,
              min_det) +
              fmt("relation residual %.3g (<= 1e-9)", worst_43)};
}

Outcome crit6() {
  bool exact_zero = true;
  double float_worst = 0, rel_worst = 0, float_rel_worst = 0;
  Rational fact(1);  // n!
  for (std::size_t n = 0; n <= 10; ++n) {
    if (n) fact *= Rational(static_cast<long>(n));
    Rational denom(1);  // (2n+1)!
    for (long k = 2; k <= static_cast<long>(2 * n + 1); ++k) denom *= Rational(k);
    Rational two(1);
    for (std::size_t k = 0; k <= n; ++k) two *= 2;
    const Rational oracle = two * fact * fact / denom;

    const auto ex = legendre_moments<Rational>(n, n + 1);
    const auto fl = legendre_moments<double>(n, n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      exact_zero = exact_zero && ex[j] == 0;
      float_worst = std::max(float_worst, std::abs(fl[j]));
    }
    rel_worst = std::max(rel_worst, to_double(abs_value(Rational(ex[n] - oracle)) / oracle));
    float_rel_worst = std::max(float_rel_worst, std::abs(fl[n] - to_double(oracle)) / to_double(oracle));
  }
  return {exact_zero && float_worst <= 1e-14 && rel_worst <= 1e-12 && float_rel_worst <= 1e-12,
          std::string("n <= 10, exact zeros ") + (exact_zero ? "yes" : "no") +
              fmt(", float max |m_j| %.3g (<= 1e-14), m_n relative error exact %.3g float %.3g (<= 1e-12)", float_worst,
                  rel_worst, float_rel_worst)};
}

Outcome crit7() {
  long total = 0, disagree = 0;
  for (int dim : {1, 2}) {
    std::vector<std::vector<int>> pts;
    if (dim == 1)
      for (int a = -2; a <= 2; ++a) pts.push_back({a});
    else
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) pts.push_back({a, b});
    long combos = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) combos *= 3;
    // each point absent, +1 or -1
    for (long code = 1; code < combos; ++code) {
      LaurentPolynomial f(static_cast<std::size_t>(dim));
      long c = code;
      for (const auto& p : pts) {
        const int t = static_cast<int>(c % 3);
        c /= 3;
        if (t) f.add(p, t == 1 ? 1.0 : -1.0);
      }
      const auto v = laurent_invisibility(f, 8);
      bool vanish = true;
      for (double ct : v.constant_terms) vanish = vanish && ct == 0;
      ++total;
      if (vanish != v.predicted_invisible) ++disagree;
    }
  }
  return {disagree == 0, fmt("%.0f supports, k <= 8, disagreements %.0f", total, disagree)};
}

// int int x^p y^q over [-1,1]^2
double box_moment(int p, int q) {
  auto one = [](int k) { return k % 2 ? 0.0 : 2.0 / (k + 1); };
  return one(p) * one(q);
}

Outcome crit8() {
  // wave: random f made invisible by removing its marginals, plus fixed examples
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(-1, 1);
  std::vector<BivariatePolynomial> fs{BivariatePolynomial{{{0, 0}, {0, 1}}},
                                      BivariatePolynomial{{{1.0 / 9, 0, -1.0 / 3}, {0}, {-1.0 / 3, 0, 1}}},
                                      BivariatePolynomial{}};
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<double>> g(4, std::vector<double>(4));
    for (auto& r : g)
      for (auto& v : r) v = coef(rng);
    auto f = g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        f[i][0] -= g[i][j] * box_moment(0, j) / 4;  // F(x)/2
        f[0][j] -= g[i][j] * box_moment(i, 0) / 4;  // H(y)/2
        f[0][0] += g[i][j] * box_moment(i, j) / 4;
      }
    fs.push_back({f});
  }
  int positives = 0;
  double wave_worst = 0;
  for (const auto& f : fs) {
    if (!wave_invisibility(f, {}, 1e-12).invisible) continue;
    ++positives;
    for (int k = 0; k <= 6; ++k)
      for (int l = 0; l <= 6; ++l) {
        double s = 0;
        for (std::size_t i = 0; i < f.coeffs.size(); ++i)
          for (std::size_t j = 0; j < f.coeffs[i].size(); ++j)
            s += f.coeffs[i][j] * (box_moment(static_cast<int>(i) + k, static_cast<int>(j)) +
                                   box_moment(static_cast<int>(i), static_cast<int>(j) + l));
        wave_worst = std::max(wave_worst, std::abs(s));
      }
  }

  struct Mcc {
    BivariatePolynomial P;
    int axis;
    Polynomial Q;
  };
  const BivariatePolynomial disk{{{0, 0, 1}, {0}, {1}}};
  const BivariatePolynomial quartic{{{0, 0, 0, 0, 1}, {0}, {0}, {0}, {1}}};
  const BivariatePolynomial ellipse{{{0, 0, 2}, {0}, {1}}};
  const BivariatePolynomial mixed{{{0, 0, 0, 0, 1}, {0}, {0, 0, 1}, {0}, {1}}};
  std::vector<Mcc> mcc{{disk, 1, Polynomial{0, 0, 0, 1}}, {disk, 2, Polynomial{1}}, {quartic, 1, Polynomial{0, 0, 1}}};
  for (const auto& P : {ellipse, mixed})
    for (int axis : {1, 2})
      for (unsigned deg : {0u, 1u, 3u}) mcc.push_back({P, axis, Polynomial::monomial(deg)});
  double mcc_worst = 0;
  for (const auto& c : mcc) mcc_worst = std::max(mcc_worst, verify_mcc_example(c.P, c.axis, c.Q, 1e-6, 256).residual);

  struct Cc {
    Polynomial P, q, W;
    RealInterval iv;
  };
  const Polynomial x2{0, 0, 1}, w3{0, -1, 0, 1}, cheb{-1, 0, 2};
  std::vector<Cc> ccs{{x2, Polynomial{0, 1}, x2, {-1, 1}},
                      {x2, Polynomial{1}, x2, {-1, 1}},
                      {w3 * w3 + w3, derivative(w3) * w3, w3, {-1, 1}},
                      {cheb * cheb, derivative(cheb) * cheb * cheb, cheb, {-1, 1}},
                      {w3, derivative(w3 * w3 * w3), w3, {-1, 1}},
                      {Polynomial{0, 1}, Polynomial{1}, Polynomial{0, 1}, {0, 1}}};
  int cc_pos = 0;
  double cc_worst = 0;
  for (const auto& c : ccs) {
    const auto v = verify_cc(c.P, c.q, c.W, c.iv, 1e-12);
    if (!v.holds) continue;
    ++cc_pos;
    for (double m : power_moment_scan(c.P, c.q, c.iv, 20)) cc_worst = std::max(cc_worst, std::abs(m));
  }
  return {positives >= 50 && wave_worst <= 1e-12 && mcc_worst <= 1e-6 && cc_pos >= 4 && cc_worst <= 1e-12,
          fmt("wave positives %.0f, mixed moments %.3g (<= 1e-12); ", positives, wave_worst) +
              fmt("mcc %.0f cases at 256^2, residual %.3g (<= 1e-6); ", mcc.size(), mcc_worst) +
              fmt("cc positives %.0f, |m_k| k <= 20 %.3g (<= 1e-12)", cc_pos, cc_worst)};
}

}  // namespace

int main() {
  report(1, "1D round trip", crit1);
  report(2, "Prony oracle equivalence", crit2);
  report(3, "2D round trip", crit3);
  report(4, "triangle from six moments", crit4);
  report(5, "elliptic from seven moments", crit5);
  report(6, "Legendre obstruction", crit6);
  report(7, "Laurent criterion", crit7);
  report(8, "invisibility residuals", crit8);
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
