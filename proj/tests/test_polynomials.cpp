#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "factornorm/errors.hpp"
#include "factornorm/polynomials.hpp"

using namespace factornorm;

namespace {

MonicPolynomial poly(std::vector<Complex> roots) { return MonicPolynomial(std::move(roots)); }

}  // namespace

TEST_SUITE("polynomials") {

TEST_CASE("evaluate") {
  CHECK(evaluate(poly({{0, 0}}), {2, 0}) == Complex(2, 0));
  CHECK(evaluate(MonicPolynomial(), {5, 0}) == Complex(1, 0));
  CHECK(evaluate(poly({{1, 0}, {-1, 0}}), {2, 0}) == Complex(3, 0));
}

TEST_CASE("log_abs_evaluate") {
  CHECK(log_abs_evaluate(poly({{0, 0}}), {std::numbers::e, 0}) == doctest::Approx(1.0));
  CHECK(log_abs_evaluate(poly({{0, 0}, {0, 0}}), {1, 0}) == 0.0);
  const double at_root = log_abs_evaluate(poly({{3, 0}}), {3, 0});
  CHECK(std::isinf(at_root));
  CHECK(at_root < 0.0);
}

TEST_CASE("sup norm examples") {
  CHECK(sup_norm(poly({{0, 0}}), CompactSet::disk(2.0), 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sup_norm(monic_chebyshev(4, 2.0), CompactSet::segment(2.0), 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sup_norm(poly({{1, 0}, {-1, 0}}), CompactSet::segment(1.0), 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sup norm agrees with a dense scan") {
  // z^2 - z + 0.3 on [-1, 1]: dense scan of 10^6 points as the reference.
  const MonicPolynomial p({{0.5, std::sqrt(0.05)}, {0.5, -std::sqrt(0.05)}});
  double scan = 0.0;
  for (int k = 0; k <= 1000000; ++k) {
    const double x = -1.0 + 2e-6 * k;
    scan = std::max(scan, std::abs(evaluate(p, {x, 0})));
  }
  CHECK(sup_norm(p, CompactSet::segment(1.0), 1e-12) == doctest::Approx(scan).epsilon(1e-10));
}

TEST_CASE("monic chebyshev roots") {
  auto near = [](const MonicPolynomial& p, std::vector<double> expected) {
    REQUIRE(p.degree() == expected.size());
    for (double x : expected) {
      bool found = false;
      for (const auto& r : p.roots()) found = found || std::abs(r - Complex(x, 0)) < 1e-14;
      CHECK(found);
    }
  };
  near(monic_chebyshev(1, 1.0), {0.0});
  near(monic_chebyshev(2, 1.0), {std::sqrt(0.5), -std::sqrt(0.5)});
  near(monic_chebyshev(3, 2.0), {std::sqrt(3.0), 0.0, -std::sqrt(3.0)});
  CHECK_THROWS_AS(monic_chebyshev(0, 1.0), InvalidArgument);
}

TEST_CASE("factor by predicate") {
  const MonicPolynomial p({{0.5, 0}, {2, 0}});
  const auto q = factor_by_predicate(p, [](Complex z) { return std::abs(z) >= 1.0; });
  REQUIRE(q.degree() == 1);
  CHECK(q.roots()[0] == Complex(2, 0));

  const MonicPolynomial cubic({{1, 0}, {2, 0}, {3, 0}});
  CHECK(factor_by_predicate(cubic, [](Complex) { return true; }).degree() == 3);
  CHECK(factor_by_predicate(cubic, [](Complex) { return false; }).degree() == 0);
}

TEST_CASE("root files and polynomial descriptors") {
  std::istringstream in("# roots\n1 0\n\n-1 0.5\n");
  const auto p = read_roots(in);
  REQUIRE(p.degree() == 2);
  CHECK(p.roots()[1] == Complex(-1, 0.5));

  std::istringstream bad("1 x\n");
  CHECK_THROWS_AS(read_roots(bad), InvalidArgument);

  CHECK(parse_polynomial_spec("chebyshev:n=5", 2.0).degree() == 5);
  const auto from_file = parse_polynomial_spec(std::string("@") + FACTORNORM_TEST_DATA + "/cubic_roots.txt", 1.0);
  CHECK(from_file.degree() == 3);
  CHECK_THROWS_AS(parse_polynomial_spec("legendre:n=3", 1.0), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial_spec("chebyshev:n=0", 1.0), InvalidArgument);
}

}  // TEST_SUITE
