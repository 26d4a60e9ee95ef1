#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace factornorm {

using Complex = std::complex<double>;

enum class SetKind { Disk, Segment, SegmentUnion, BoundaryCloud };

struct Interval {
  double lower;
  double upper;
};

struct Disk {
  Complex center;
  double radius;
};

/// The segment [-a, a] on the real axis.
struct Segment {
  double half_length;
};

/// Disjoint real intervals, stored in increasing order.
struct SegmentUnion {
  std::vector<Interval> intervals;
};

/// Samples of a boundary curve, joined as a polyline (closed when `closed`).
struct BoundaryCloud {
  std::vector<Complex> points;
  bool closed;
};

/// One smooth piece of the boundary, addressed by a local parameter s in [0, 1].
///
/// Circles run counter-clockwise from angle 0 and are periodic in s. Chords
/// run from `from` to `to`; with cosine spacing the point at s is
/// mid - half * cos(pi s), which clusters parameter values at the ends the
/// same way Chebyshev nodes do.
struct BoundaryPiece {
  enum class Shape { Circle, Chord };

  Shape shape = Shape::Chord;
  Complex center{};
  double radius = 0.0;
  Complex from{};
  Complex to{};
  bool cosine_spacing = false;

  Complex point(double s) const;
  double length() const;
  bool periodic() const { return shape == Shape::Circle; }
};

struct BoundaryParam {
  std::size_t piece = 0;
  double s = 0.0;
};

/// A compact planar set E. Immutable once constructed; every factory
/// validates its geometry and throws InvalidArgument on degenerate input.
class CompactSet {
 public:
  using Geometry = std::variant<Disk, Segment, SegmentUnion, BoundaryCloud>;

  static CompactSet disk(double radius, Complex center = {});
  static CompactSet segment(double half_length);
  static CompactSet segment_union(std::vector<Interval> intervals);
  /// `regular` is the caller's assertion; no algorithmic test exists.
  static CompactSet boundary_cloud(std::vector<Complex> points, bool closed,
                                   bool regular);

  SetKind kind() const;
  bool regular() const { return regular_; }
  const Geometry& geometry() const { return geometry_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&geometry_);
  }

  std::vector<BoundaryPiece> boundary() const;
  Complex point(BoundaryParam param) const;

 private:
  CompactSet(Geometry geometry, bool regular)
      : geometry_(std::move(geometry)), regular_(regular) {}

  Geometry geometry_;
  bool regular_;
};

/// max |z - w| over z, w in E.
double diameter(const CompactSet& set);

/// Dilation about the origin by alpha > 0.
CompactSet scale(const CompactSet& set, double alpha);

/// Parameters of `count` points on the boundary, in increasing (piece, s)
/// order. Disks: equal angles from 0. Segments: both endpoints plus
/// count - 2 Chebyshev interior points. Unions: the same per interval, with
/// the budget split by length. Clouds: the cloud points themselves.
std::vector<BoundaryParam> candidate_params(const CompactSet& set,
                                            std::size_t count);

std::vector<Complex> boundary_candidates(const CompactSet& set,
                                         std::size_t count);

/// Euclidean distance from z to E (to the polyline for clouds; the
/// enclosed region is not known, so this is a distance to the boundary).
double distance_to_set(const CompactSet& set, Complex z);

/// Parses `disk:r=<float>`, `segment:a=<float>`, `union:[l1,u1];[l2,u2]`
/// and `cloud:@<path>[;closed=<bool>][;regular=<bool>]`.
CompactSet parse_set_descriptor(std::string_view text);

/// Reads cloud points, one `x y` pair per line. Blank lines and lines
/// starting with '#' are skipped.
std::vector<Complex> read_point_file(const std::string& path);

/// Inverse of parse_set_descriptor for Disk, Segment and SegmentUnion;
/// clouds are summarised as `cloud:<n>pts`.
std::string describe(const CompactSet& set);

std::string_view to_string(SetKind kind);

}  // namespace factornorm
