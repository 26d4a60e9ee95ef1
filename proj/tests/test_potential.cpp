#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "factornorm/errors.hpp"
#include "factornorm/fekete.hpp"
#include "factornorm/potential.hpp"
#include "oracles.hpp"

using namespace factornorm;

TEST_SUITE("potential") {

TEST_CASE("disk measure") {
  const auto m = equilibrium_disk(1.0, 4);
  REQUIRE(m.size() == 4);
  for (Complex z : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}) {
    bool found = false;
    for (const auto& n : m.nodes()) found = found || std::abs(n - z) < 1e-15;
    CHECK(found);
  }
  for (double w : m.weights()) CHECK(w == 0.25);
  CHECK(m.capacity() == 1.0);
  CHECK(m.source() == MeasureSource::ClosedFormDisk);
  CHECK(equilibrium_disk(2.0, 8).capacity() == 2.0);
  CHECK(equilibrium_disk(0.5, 16).capacity() == 0.5);
}

TEST_CASE("segment measure") {
  CHECK(equilibrium_segment(2.0, 64).capacity() == 1.0);
  const auto pair = equilibrium_segment(1.0, 2);
  REQUIRE(pair.size() == 2);
  CHECK(std::abs(std::abs(pair.nodes()[0].real()) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(pair.nodes()[0] + pair.nodes()[1]) < 1e-15);
  CHECK(pair.weights()[0] == 0.5);

  // Second moment of the arcsine law on [-1, 1] is 1/2.
  const auto m = equilibrium_segment(1.0, 64);
  double moment = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) moment += m.weights()[i] * std::norm(m.nodes()[i]);
  CHECK(moment == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("invalid measures are rejected") {
  CHECK_THROWS_AS(equilibrium_disk(0.0, 16), InvalidArgument);
  CHECK_THROWS_AS(equilibrium_segment(1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(EquilibriumMeasure({{0, 0}}, {0.5}, 1.0, MeasureSource::FeketeApprox), InvalidArgument);
  CHECK_THROWS_AS(EquilibriumMeasure({{0, 0}}, {1.0}, 0.0, MeasureSource::FeketeApprox), InvalidArgument);
}

TEST_CASE("pair-product estimates") {
  CHECK(transfinite_diameter_estimate(std::vector<Complex>{{-1, 0}, {1, 0}}) == doctest::Approx(2.0));
  const auto roots = fekete_disk(1.0, 32).points;
  CHECK(transfinite_diameter_estimate(roots) ==
        doctest::Approx(std::pow(32.0, 1.0 / 31.0)).epsilon(1e-12));
  const auto from_fekete = equilibrium_from_fekete(fekete_segment(2.0, 64));
  CHECK(std::abs(from_fekete.capacity() - 1.0) < 0.1);
  CHECK(from_fekete.source() == MeasureSource::FeketeApprox);
}

TEST_CASE("log potential") {
  const auto disk = equilibrium_disk(1.0, 1024);
  CHECK(std::abs(log_potential(disk, {0, 0}).value) < 1e-14);
  CHECK(log_potential(disk, {2, 0}).value == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  const auto seg = equilibrium_segment(2.0, 1024);
  CHECK(std::abs(log_potential(seg, {2, 0}).value) < 1e-12);
  for (Complex z : {Complex(3, 0), Complex(0, 1), Complex(-1.5, 0.25), Complex(0.7, 0)}) {
    CAPTURE(z);
    CHECK(log_potential(seg, z).value == doctest::Approx(oracle::arcsine_potential(2.0, z)).epsilon(1e-12));
  }
}

TEST_CASE("green function") {
  const auto disk = equilibrium_disk(1.0, 1024);
  CHECK(green_function(disk, {std::numbers::e, 0}).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(green_function(equilibrium_disk(2.0, 1024), {2, 0}).value < 1e-12);
  const auto seg = equilibrium_segment(2.0, 1024);
  for (double x : {-2.0, -1.3, 0.0, 0.4, 2.0}) CHECK(green_function(seg, {x, 0}).value < 1e-12);
}

TEST_CASE("truncated integrals split the whole integral") {
  const auto seg = equilibrium_segment(3.0, 1024);
  for (Complex u : {Complex(3, 0), Complex(-1, 0), Complex(0.5, 0.5), Complex(4, 0)}) {
    const double whole = integrate_log_distance(seg, u, Region::Whole).value;
    const double in = integrate_log_distance(seg, u, Region::Inside).value;
    const double out = integrate_log_distance(seg, u, Region::Outside).value;
    CHECK(in + out == doctest::Approx(whole).epsilon(1e-12));
  }
}

TEST_CASE("node sums flag the singular floor") {
  const std::vector<Complex> nodes{{0, 0}, {1, 0}};
  const std::vector<double> weights{0.5, 0.5};
  const auto r = discrete_log_integral(nodes, weights, {0, 0}, Region::Whole);
  CHECK(r.floored);
  CHECK(r.value == doctest::Approx(0.5 * std::log(1e-14)));
}

TEST_CASE("measure csv round trip") {
  const auto m = equilibrium_segment(2.0, 16);
  std::ostringstream out;
  write_measure_csv(out, m);
  CHECK(out.str().rfind("# capacity=1 source=ClosedFormSegment\nre,im,weight\n", 0) == 0);
  std::istringstream in(out.str());
  const auto back = read_measure_csv(in);
  CHECK(back.size() == 16);
  CHECK(back.capacity() == 1.0);
  CHECK(back.source() == MeasureSource::ClosedFormSegment);
  for (std::size_t i = 0; i < 16; ++i) CHECK(back.nodes()[i] == m.nodes()[i]);

  std::istringstream bad("re,im,weight\n1,0,1\n");
  CHECK_THROWS_AS(read_measure_csv(bad), InvalidArgument);
}

}  // TEST_SUITE
