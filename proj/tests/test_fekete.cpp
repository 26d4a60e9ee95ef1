#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "factornorm/constant.hpp"
#include "factornorm/errors.hpp"
#include "factornorm/fekete.hpp"
#include "oracles.hpp"

using namespace factornorm;

namespace {

std::vector<double> sorted_real_parts(const FeketeEnsemble& e) {
  std::vector<double> x;
  for (const auto& z : e.points) x.push_back(z.real());
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

TEST_SUITE("fekete") {

TEST_CASE("disk ensembles are roots of unity") {
  const auto four = fekete_disk(1.0, 4);
  REQUIRE(four.degree() == 4);
  CHECK(four.exact);
  for (const auto& z : four.points) CHECK(std::abs(std::pow(z, 4) - 1.0) < 1e-14);

  const auto pair = fekete_disk(2.0, 2);
  CHECK(std::abs(pair.points[0] + pair.points[1]) < 1e-15);
  CHECK(std::abs(pair.points[0] - pair.points[1]) == doctest::Approx(4.0));

  for (std::size_t n = 2; n <= 12; ++n) {
    const auto e = fekete_disk(1.0, n);
    CHECK(log_energy(e.points) == doctest::Approx(0.5 * n * std::log(double(n))).epsilon(1e-12));
  }
}

TEST_CASE("segment ensembles") {
  auto expect = [](const FeketeEnsemble& e, std::vector<double> want) {
    const auto x = sorted_real_parts(e);
    REQUIRE(x.size() == want.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - want[i]) < 1e-14);
  };
  expect(fekete_segment(1.0, 2), {-1.0, 1.0});
  expect(fekete_segment(1.0, 3), {-1.0, 0.0, 1.0});
  expect(fekete_segment(2.0, 3), {-2.0, 0.0, 2.0});
}

TEST_CASE("segment ensembles match brute-force maximization") {
  for (std::size_t n = 3; n <= 8; ++n) {
    CAPTURE(n);
    const auto brute = oracle::fekete_interval_bruteforce(n);
    const auto x = sorted_real_parts(fekete_segment(1.0, n));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - brute[i]) < 1e-6);
    CHECK(log_energy(fekete_segment(1.0, n).points) >= oracle::pair_log_energy(brute) - 1e-12);
  }
}

TEST_CASE("newton and energy maximization agree on the interior nodes") {
  for (std::size_t n : {4, 9, 20, 33}) {
    const auto a = detail::lobatto_interior_newton(n);
    const auto b = detail::lobatto_by_energy_maximization(n);
    REQUIRE(a.size() + 2 == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i + 1]) < 1e-10);
  }
}

TEST_CASE("leja points") {
  const auto seg = leja_points(CompactSet::segment(1.0), 2, 20);
  CHECK(sorted_real_parts(seg) == std::vector<double>{-1.0, 1.0});

  // Greedy from a diameter pair: the third point sits at distance sqrt 2
  // from both, the best reachable given the first two choices.
  const auto disk = leja_points(CompactSet::disk(1.0), 3, 400);
  REQUIRE(disk.degree() == 3);
  CHECK(std::abs(disk.points[0] - disk.points[1]) == doctest::Approx(2.0));
  CHECK(std::abs(disk.points[2] - disk.points[0]) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(disk.points[2] - disk.points[1]) == doctest::Approx(std::sqrt(2.0)));
  CHECK(log_energy(disk.points) <= log_energy(fekete_disk(1.0, 3).points));

  const auto uni = leja_points(CompactSet::segment_union({{-1, -0.5}, {0.5, 1}}), 2, 40);
  CHECK(sorted_real_parts(uni) == std::vector<double>{-1.0, 1.0});

  CHECK_THROWS_AS(leja_points(CompactSet::segment(1.0), 4, 39), InvalidArgument);
}

TEST_CASE("fekete polynomials") {
  const auto p = fekete_polynomial(fekete_disk(1.0, 4));
  CHECK(std::abs(evaluate(p, {0, 0})) == doctest::Approx(1.0));
  CHECK(std::abs(evaluate(p, {2, 0}) - Complex(15, 0)) < 1e-13);
  const auto q = fekete_polynomial(fekete_segment(1.0, 3));
  for (double x : {-0.7, 0.2, 1.5}) CHECK(std::abs(evaluate(q, {x, 0}) - Complex(x * x * x - x, 0)) < 1e-14);
}

TEST_CASE("capacity via norm") {
  CHECK(capacity_via_norm(fekete_disk(1.0, 64), 1e-12) == doctest::Approx(std::pow(2.0, 1.0 / 64)).epsilon(1e-12));
  CHECK(capacity_via_norm(fekete_disk(3.0, 16), 1e-12) ==
        doctest::Approx(3.0 * std::pow(2.0, 1.0 / 16)).epsilon(1e-12));
  CHECK(std::abs(capacity_via_norm(fekete_segment(2.0, 128), 1e-10) - 1.0) < 0.03);
}

TEST_CASE("sharpness experiment") {
  const std::vector<std::size_t> degrees{32, 64, 128, 256};
  const double c = constant_segment(2.0, 1e-12).value;
  const auto rows = sharpness_experiment(CompactSet::segment(2.0), {2, 0}, degrees, 1e-10);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].degree == degrees[i]);
    CHECK(rows[i].ratio <= c + 1e-9);
    if (i > 0) CHECK(rows[i].ratio >= rows[i - 1].ratio - 1e-3);
  }
  CHECK(rows.back().ratio > 0.9 * c);

  // Small disk: every root is within distance 0.8 of u, so q is empty.
  const auto small = sharpness_experiment(CompactSet::disk(0.4), {0.4, 0}, degrees, 1e-10);
  for (const auto& row : small) {
    CHECK(row.factor_degree == 0);
    CHECK(row.ratio <= 2.5 + 1e-9);
  }
  CHECK(std::abs(small.back().ratio - 2.5) < 0.01);

  const std::vector<std::size_t> unsorted{64, 32};
  CHECK_THROWS_AS(sharpness_experiment(CompactSet::segment(2.0), {2, 0}, unsorted, 1e-10), InvalidArgument);
}

TEST_CASE("experiment csv") {
  const std::vector<std::size_t> degrees{8};
  const auto rows = sharpness_experiment(CompactSet::segment(2.0), {2, 0}, degrees, 1e-10);
  std::ostringstream out;
  write_experiment_csv(out, CompactSet::segment(2.0), {2, 0}, 1.9, rows);
  const auto text = out.str();
  CHECK(text.rfind("# set=segment:a=2 u=(2,0) C_E=1.9\nn,ratio,norm_p,norm_q\n8,", 0) == 0);
}

}  // TEST_SUITE
