#include <chrono>
#include <random>

#include "doctest.h"
#include "momrec/recon1d.hpp"

using namespace momrec;

namespace {

BasicPiecewisePolynomial<Rational> pp(std::vector<Rational> br, std::vector<RationalPolynomial> pieces) {
  return {std::move(br), std::move(pieces)};
}

void check_close(const PiecewisePolynomial& got, const BasicPiecewisePolynomial<Rational>& want, double btol,
                 double ctol) {
  REQUIRE(got.breakpoints.size() == want.breakpoints.size());
  for (std::size_t i = 0; i < got.breakpoints.size(); ++i)
    CHECK(std::abs(got.breakpoints[i] - static_cast<double>(want.breakpoints[i])) <= btol);
  for (std::size_t n = 0; n < got.pieces.size(); ++n)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(got.pieces[n][i] - static_cast<double>(want.pieces[n][i])) <= ctol);
}

}  // namespace

TEST_CASE("mu") {
  CHECK(mu(1, 2) == 6);
  CHECK(mu(0, 3) == 4);
  CHECK(mu(2, 1) == 6);
}

TEST_CASE("required_moments") {
  CHECK(required_moments(1, 2) == 21);
  CHECK(required_moments(0, 0) == 5);
  for (std::size_t k = 0; k <= 5; ++k)
    for (std::size_t n = 0; n <= 5; ++n) {
      CHECK(required_moments(k, n) >= mu(k, n));
      if (k < 5) CHECK(required_moments(k + 1, n) > required_moments(k, n));
      if (n < 5) CHECK(required_moments(k, n + 1) > required_moments(k, n));
    }
}

TEST_CASE("reconstruct1d examples") {
  Recon1DConfig cfg;
  auto box = pp({0, 1}, {RationalPolynomial{1}});
  cfg.max_jumps = 0;
  cfg.max_degree = 0;
  check_close(reconstruct1d(moments_pp(box, required_moments(0, 0)).cast<double>(), cfg), box, 1e-9, 1e-9);

  auto step = pp({0, 1, 2}, {RationalPolynomial{1}, RationalPolynomial{-1}});
  cfg.max_jumps = 1;
  check_close(reconstruct1d(moments_pp(step, required_moments(1, 0)).cast<double>(), cfg), step, 1e-8, 1e-8);

  auto hat = pp({0, 1, 2}, {RationalPolynomial{0, 1}, RationalPolynomial{2, -1}});
  cfg.max_degree = 1;
  auto m = moments_pp(hat, required_moments(1, 1));
  check_close(reconstruct1d(m.cast<double>(), cfg), hat, 1e-6, 1e-5);
  auto exact = reconstruct1d(m.cast<Real>(), cfg).cast<double>();
  check_close(exact, hat, 1e-12, 1e-12);
}

TEST_CASE("reconstruct1d rejects short tables") {
  Recon1DConfig cfg;
  cfg.max_jumps = 1;
  cfg.max_degree = 1;
  MomentTable1D m{std::vector<double>(5, 1.0)};
  CHECK_THROWS_AS(reconstruct1d(m, cfg), Error);
}

TEST_CASE("support hint mismatch") {
  auto box = pp({0, 1}, {RationalPolynomial{1}});
  Recon1DConfig cfg;
  cfg.support_hint = RealInterval(0, 2);
  try {
    reconstruct1d(moments_pp(box, 5).cast<double>(), cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BreakpointRecoveryFailed);
  }
}

TEST_CASE("wrong degree hypothesis is caught") {
  // a quadratic piece read with N = 0
  auto g = pp({0, 1}, {RationalPolynomial{0, 0, 1}});
  Recon1DConfig cfg;
  cfg.max_jumps = 1;
  CHECK_THROWS_AS(reconstruct1d(moments_pp(g, 20).cast<Real>(), cfg), Error);
}

TEST_CASE("degree search") {
  auto hat = pp({0, 1, 2}, {RationalPolynomial{0, 1}, RationalPolynomial{2, -1}});
  Recon1DConfig cfg;
  cfg.max_jumps = 1;
  cfg.max_degree = 4;
  cfg.search_degree = true;
  auto m = moments_pp(hat, 12).cast<Real>();
  auto g = reconstruct1d(m, cfg).cast<double>();
  check_close(g, hat, 1e-12, 1e-12);
  CHECK(g.max_degree() == 1);
}

TEST_CASE("overbudget tables agree") {
  auto hat = pp({0, Rational(1, 2), 2}, {RationalPolynomial{1, 1}, RationalPolynomial{0, 0, 1}});
  Recon1DConfig cfg;
  cfg.max_jumps = 1;
  cfg.max_degree = 2;
  const std::size_t n = required_moments(1, 2);
  auto a = reconstruct1d(moments_pp(hat, n).cast<Real>(), cfg).cast<double>();
  auto b = reconstruct1d(moments_pp(hat, n + 6).cast<Real>(), cfg).cast<double>();
  REQUIRE(a.breakpoints.size() == b.breakpoints.size());
  for (std::size_t i = 0; i < a.breakpoints.size(); ++i) CHECK(std::abs(a.breakpoints[i] - b.breakpoints[i]) <= 1e-9);
  for (std::size_t p = 0; p < a.pieces.size(); ++p)
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.pieces[p][i] - b.pieces[p][i]) <= 1e-9);
}
