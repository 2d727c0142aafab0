#include <random>

#include "doctest.h"
#include "momrec/moments1d.hpp"
#include "momrec/polycore.hpp"

using namespace momrec;

TEST_CASE("eval") {
  CHECK(eval(Polynomial{0, 0, 1}, 3.0) == 9.0);
  CHECK(eval(Polynomial{}, 7.0) == 0.0);
  CHECK(eval(Polynomial{1, -1, 2}, 2.0) == 7.0);
  CHECK(eval(RationalPolynomial{Rational(1, 3), 1}, Rational(2, 3)) == Rational(1));
}

TEST_CASE("zero polynomial has no degree") {
  CHECK_FALSE(Polynomial{}.degree().has_value());
  CHECK_FALSE(Polynomial{0, 0}.degree().has_value());
  CHECK(Polynomial{1, 0, 3, 0}.degree() == 2u);
}

TEST_CASE("real_roots_in") {
  auto r = real_roots_in(Polynomial{-1, 0, 1}, RealInterval(-2, 2), 1e-12);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(real_roots_in(Polynomial{1, 0, 1}, RealInterval(-2, 2), 1e-12).empty());

  r = real_roots_in(Polynomial{0, -1, 0, 1}, RealInterval(0.5, 2), 1e-12);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(real_roots_in(Polynomial{}, RealInterval(0, 1), 1e-12), Error);
}

TEST_CASE("double root collapses") {
  // (x-1)^2 (x+2)
  auto p = Polynomial{1, -2, 1} * Polynomial{2, 1};
  auto r = real_roots_in(p, RealInterval(-3, 3), 1e-6);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-2.0));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("antiderivative") {
  CHECK(antiderivative(Polynomial{1}) == Polynomial{0, 1});
  CHECK(antiderivative(Polynomial{0, 2}) == Polynomial{0, 0, 1});
  CHECK(antiderivative(Polynomial{1, 1}) == Polynomial{0, 1, 0.5});
}

TEST_CASE("power") {
  CHECK(power(Polynomial{0, 1}, 3) == Polynomial{0, 0, 0, 1});
  CHECK(power(Polynomial{3, -1, 2}, 0) == Polynomial{1});
  CHECK(power(Polynomial{1, 1}, 2) == Polynomial{1, 2, 1});
}

TEST_CASE("divmod and compose") {
  RationalPolynomial w{0, 0, 1};
  auto p = compose(RationalPolynomial{1, 2, 3}, w);
  CHECK(p == RationalPolynomial{1, 0, 2, 0, 3});
  auto [q, r] = divmod(p, w);
  CHECK(r == RationalPolynomial{1});
  CHECK(q == RationalPolynomial{2, 0, 3});
}

TEST_CASE("product evaluates to product of values") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(7), b(7);
    for (auto& c : a) c = u(rng);
    for (auto& c : b) c = u(rng);
    Polynomial p(a), q(b);
    const double x = 2 * u(rng);
    const double lhs = eval(p * q, x), rhs = eval(p, x) * eval(q, x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("derivative undoes antiderivative exactly") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(-50, 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c(6);
    for (auto& v : c) v = Rational(u(rng), 1 + std::abs(u(rng)));
    RationalPolynomial p(c);
    CHECK(derivative(antiderivative(p)) == p);
  }
}

TEST_CASE("root residual bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c(6);
    for (auto& v : c) v = u(rng);
    Polynomial p(c);
    const double tol = 1e-9;
    for (double r : real_roots_in(p, RealInterval(-5, 5), tol))
      CHECK(std::abs(eval(p, r)) <= tol * (1 + p.max_abs_coeff()));
  }
}

TEST_CASE("moments_pp") {
  RationalPolynomial one{1};
  BasicPiecewisePolynomial<Rational> g{{0, 1}, {one}};
  auto m = moments_pp(g, 5);
  for (int a = 0; a < 5; ++a) CHECK(m[a] == Rational(1, a + 1));

  BasicPiecewisePolynomial<Rational> gx{{0, 1}, {RationalPolynomial{0, 1}}};
  m = moments_pp(gx, 4);
  for (int a = 0; a < 4; ++a) CHECK(m[a] == Rational(1, a + 2));

  BasicPiecewisePolynomial<Rational> step{{0, 1, 2}, {one, -one}};
  m = moments_pp(step, 3);
  CHECK(m[0] == 0);
  CHECK(m[1] == -1);
}

TEST_CASE("derivative_moments") {
  RationalPolynomial one{1};
  BasicPiecewisePolynomial<Rational> step{{0, 1, 2}, {one, -one}};
  auto d = derivative_moments(moments_pp(step, 6), 1);
  CHECK(d[0] == 0);
  CHECK(d[1] == 0);
  CHECK(d[2] == 2);
  // g' = delta(x) - 2 delta(x-1) + delta(x-2)
  Rational pow2(1);
  for (std::size_t a = 0; a < d.size(); ++a, pow2 *= 2)
    CHECK(d[a] == (a == 0 ? Rational(0) : Rational(pow2 - 2)));
  CHECK_THROWS_AS(derivative_moments(BasicMomentTable1D<Rational>{}, 1), Error);
}
