#include "doctest.h"
#include "momrec/recon2d.hpp"

using namespace momrec;
using RP = RationalPolynomial;

namespace {

BasicDomainSpec<Rational> single(Rational a, Rational b, RP lo, RP hi) {
  BasicDomainSpec<Rational> g;
  g.intervals.push_back({a, b, {{lo, hi}}});
  return g;
}

BasicDomainSpec<Rational> triangle() {
  BasicDomainSpec<Rational> g;
  g.intervals.push_back({0, 1, {{RP{0}, RP{0, 1}}}});
  g.intervals.push_back({1, 2, {{RP{0}, RP{2, -1}}}});
  return g;
}

double sup_error(const Polynomial& p, const Polynomial& q, double lo, double hi) {
  double e = 0;
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * i / 200.0;
    e = std::max(e, std::abs(p(x) - q(x)));
  }
  return e;
}

void check_same(const DomainSpec& got, const DomainSpec& want, double tol) {
  REQUIRE(got.intervals.size() == want.intervals.size());
  for (std::size_t j = 0; j < got.intervals.size(); ++j) {
    const auto& g = got.intervals[j];
    const auto& w = want.intervals[j];
    CHECK(std::abs(g.x_min - w.x_min) <= tol);
    CHECK(std::abs(g.x_max - w.x_max) <= tol);
    REQUIRE(g.strips.size() == w.strips.size());
    for (std::size_t l = 0; l < g.strips.size(); ++l) {
      CHECK(sup_error(g.strips[l].lower, w.strips[l].lower, w.x_min, w.x_max) <= tol);
      CHECK(sup_error(g.strips[l].upper, w.strips[l].upper, w.x_min, w.x_max) <= tol);
    }
  }
}

void round_trip(const BasicDomainSpec<Rational>& truth, std::size_t kappa, std::size_t degree) {
  Recon2DConfig cfg;
  cfg.kappa = kappa;
  cfg.degree = degree;
  auto m = moments2d(truth, required_alpha_max(cfg), cfg.betas()).cast<Real>();
  auto rec = reconstruct2d(m, cfg);
  check_same(rec.cast<double>(), truth.cast<double>(), 1e-6);
  CHECK(forward_residual(rec, m) <= Real(1e-8));
}

}  // namespace

TEST_CASE("square") {
  round_trip(single(0, 1, RP{0}, RP{1}), 2, 0);
  // double data, short table, degree search
  Recon2DConfig cfg;
  cfg.kappa = 2;
  cfg.degree = 2;
  auto m = moments2d(single(0, 1, RP{0}, RP{1}), 6, 2).cast<double>();
  auto rec = reconstruct2d(m, cfg);
  check_same(rec, single(0, 1, RP{0}, RP{1}).cast<double>(), 1e-6);
}

TEST_CASE("parabola strip") { round_trip(single(-1, 1, RP{0}, RP{1, 0, -1}), 2, 2); }

TEST_CASE("triangle") { round_trip(triangle(), 3, 1); }

TEST_CASE("too few betas") {
  Recon2DConfig cfg;
  cfg.kappa = 2;
  cfg.degree = 0;
  auto m = moments2d(single(0, 1, RP{0}, RP{1}), 20, 1).cast<double>();
  CHECK_THROWS_AS(reconstruct2d(m, cfg), Error);
}

TEST_CASE("forward residual") {
  auto g = single(-1, 1, RP{0}, RP{1, 0, -1});
  auto m = moments2d(g, 4, 2);
  CHECK(forward_residual(g, m) == 0);
  auto shifted = single(-1, 1, RP{Rational(1, 10)}, RP{Rational(11, 10), 0, -1});
  CHECK(forward_residual(shifted, m) > Rational(1, 1000));
  BasicMomentTable2D<Rational> empty;
  CHECK(forward_residual(g, empty) == 0);
}

TEST_CASE("triangle from six moments") {
  auto m = moments2d(triangle(), 3, 1).cast<double>();
  BasicTriangleMoments<double> t{m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(3, 0), m.at(0, 1), m.at(1, 1)};
  auto c = reconstruct_triangle(t, Orientation::MiddleAbove);
  REQUIRE(c.size() == 2);
  const std::array<std::array<double, 2>, 3> want{{{0, 0}, {1, 1}, {2, 0}}};
  const std::array<std::array<double, 2>, 3> mirror{{{0, 2.0 / 3}, {1, -1.0 / 3}, {2, 2.0 / 3}}};
  auto near = [](const BasicTriangle<double>& tr, const std::array<std::array<double, 2>, 3>& v) {
    const std::array<std::array<double, 2>, 3> got{tr.a, tr.b, tr.c};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 2; ++k)
        if (std::abs(got[i][k] - v[i][k]) > 1e-8) return false;
    return true;
  };
  CHECK(near(c[0], want));
  CHECK(near(c[1], mirror));
  auto flipped = reconstruct_triangle(t, Orientation::MiddleBelow);
  CHECK(near(flipped[0], mirror));
}

TEST_CASE("svg") {
  auto g = single(-1, 1, RP{0}, RP{1, 0, -1}).cast<double>();
  auto svg = render_svg(g, &g);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("width=\"512\"") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}
