#include <doctest.h>

#include <cmath>
#include <random>

#include "factornorm/errors.hpp"
#include "factornorm/sets.hpp"

using namespace factornorm;

namespace {

bool contains_point(const std::vector<Complex>& points, Complex z, double tol = 1e-12) {
  for (const auto& p : points) {
    if (std::abs(p - z) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("sets") {

TEST_CASE("diameter of simple sets") {
  CHECK(diameter(CompactSet::disk(1.0)) == doctest::Approx(2.0));
  CHECK(diameter(CompactSet::segment(2.0)) == doctest::Approx(4.0));
  const auto cloud = CompactSet::boundary_cloud({{0, 0}, {1, 0}, {0, 1}}, true, false);
  CHECK(diameter(cloud) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(diameter(CompactSet::segment_union({{-2, -1}, {1, 3}})) == doctest::Approx(5.0));
}

TEST_CASE("scale") {
  const auto d = scale(CompactSet::disk(1.0), 2.0);
  REQUIRE(d.as<Disk>() != nullptr);
  CHECK(d.as<Disk>()->radius == 2.0);

  const auto s = scale(CompactSet::segment(1.0), 0.5);
  REQUIRE(s.as<Segment>() != nullptr);
  CHECK(s.as<Segment>()->half_length == 0.5);

  const auto c = scale(CompactSet::boundary_cloud({{1, 0}, {-1, 0}, {0, 0.5}}, false, false), 3.0);
  const auto& pts = c.as<BoundaryCloud>()->points;
  CHECK(std::abs(pts[0] - Complex(3, 0)) < 1e-15);
  CHECK(std::abs(pts[1] - Complex(-3, 0)) < 1e-15);

  CHECK_THROWS_AS(scale(CompactSet::disk(1.0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(scale(CompactSet::disk(1.0), -1.0), InvalidArgument);
}

TEST_CASE("boundary candidates") {
  const auto disk = boundary_candidates(CompactSet::disk(1.0), 4);
  REQUIRE(disk.size() == 4);
  for (Complex z : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}) {
    CHECK(contains_point(disk, z));
  }

  const auto seg2 = boundary_candidates(CompactSet::segment(1.0), 2);
  REQUIRE(seg2.size() == 2);
  CHECK(contains_point(seg2, {-1, 0}));
  CHECK(contains_point(seg2, {1, 0}));

  const auto seg3 = boundary_candidates(CompactSet::segment(2.0), 3);
  REQUIRE(seg3.size() == 3);
  for (Complex z : {Complex(-2, 0), Complex(0, 0), Complex(2, 0)}) CHECK(contains_point(seg3, z));

  const auto uni = boundary_candidates(CompactSet::segment_union({{-2, -1}, {1, 2}}), 10);
  for (Complex z : {Complex(-2, 0), Complex(-1, 0), Complex(1, 0), Complex(2, 0)}) {
    CHECK(contains_point(uni, z));
  }
}

TEST_CASE("segment candidates always contain both endpoints") {
  for (std::size_t count = 2; count <= 40; ++count) {
    for (double a : {0.1, 1.0, 7.5}) {
      const auto pts = boundary_candidates(CompactSet::segment(a), count);
      CHECK(pts.size() == count);
      CHECK(contains_point(pts, {-a, 0}, 1e-14 * a));
      CHECK(contains_point(pts, {a, 0}, 1e-14 * a));
    }
  }
}

TEST_CASE("degenerate geometry is rejected") {
  CHECK_THROWS_AS(CompactSet::disk(0.0), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::disk(-1.0), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment(0.0), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment(-2.0), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment(NAN), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment_union({{0, 2}, {1, 3}}), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment_union({{0, 1}, {1, 3}}), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::segment_union({{2, 1}}), InvalidArgument);
  CHECK_THROWS_AS(CompactSet::boundary_cloud({{0, 0}, {1, 0}}, true, false), InvalidArgument);
}

TEST_CASE("descriptor parsing") {
  const auto d = parse_set_descriptor("disk:r=1.5");
  REQUIRE(d.kind() == SetKind::Disk);
  CHECK(d.as<Disk>()->radius == 1.5);
  CHECK(d.regular());

  const auto dc = parse_set_descriptor("disk:r=1;c=2,-1");
  CHECK(dc.as<Disk>()->center == Complex(2, -1));

  const auto s = parse_set_descriptor("segment:a=2");
  CHECK(s.as<Segment>()->half_length == 2.0);

  const auto u = parse_set_descriptor("union:[-2,-1];[1,2]");
  REQUIRE(u.kind() == SetKind::SegmentUnion);
  CHECK(u.as<SegmentUnion>()->intervals.size() == 2);

  const auto c = parse_set_descriptor(std::string("cloud:@") + FACTORNORM_TEST_DATA + "/triangle.txt");
  REQUIRE(c.kind() == SetKind::BoundaryCloud);
  CHECK(c.as<BoundaryCloud>()->points.size() == 3);
  CHECK_FALSE(c.regular());

  for (const char* bad : {"", "disk", "disk:r=", "disk:r=abc", "disk:r=-1", "segment:a=0",
                          "ellipse:a=1", "union:[1,0]", "union:[0,2];[1,3]", "cloud:@/nonexistent"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_set_descriptor(bad), InvalidArgument);
  }
}

TEST_CASE("describe round-trips simple descriptors") {
  for (const char* text : {"disk:r=1", "segment:a=2"}) {
    CHECK(describe(parse_set_descriptor(text)) == text);
  }
}

TEST_CASE("distance to set") {
  CHECK(distance_to_set(CompactSet::disk(1.0), {3, 0}) == doctest::Approx(2.0));
  CHECK(distance_to_set(CompactSet::disk(1.0), {0.2, 0}) == 0.0);
  CHECK(distance_to_set(CompactSet::segment(1.0), {0, 2}) == doctest::Approx(2.0));
  CHECK(distance_to_set(CompactSet::segment(1.0), {3, 0}) == doctest::Approx(2.0));
}

TEST_CASE("boundary points lie on the set") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const CompactSet sets[] = {CompactSet::disk(2.0, {1, 1}), CompactSet::segment(3.0),
                             CompactSet::segment_union({{-3, -1}, {0.5, 2}})};
  for (const auto& set : sets) {
    const auto pieces = set.boundary();
    for (std::size_t piece = 0; piece < pieces.size(); ++piece) {
      for (int k = 0; k < 50; ++k) {
        const Complex z = set.point({piece, unif(rng)});
        CHECK(distance_to_set(set, z) <= 1e-12);
      }
    }
  }
}

}  // TEST_SUITE
