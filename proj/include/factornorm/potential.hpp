#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "factornorm/fekete.hpp"
#include "factornorm/sets.hpp"

namespace factornorm {

enum class MeasureSource { ClosedFormDisk, ClosedFormSegment, FeketeApprox };

std::string_view to_string(MeasureSource source);

/// Discretized equilibrium measure mu_E: nodes on E with positive weights of
/// unit total mass, and the capacity cap(E).
///
/// Closed-form measures also remember their geometry, so integrals against
/// them can be taken in the angle variable, where the density is constant:
/// d theta / (2 pi) on a circle, d theta / pi for t = a cos(theta) on
/// [-a, a]. FeketeApprox measures are purely discrete.
class EquilibriumMeasure {
 public:
  EquilibriumMeasure(std::vector<Complex> nodes, std::vector<double> weights,
                     double capacity, MeasureSource source);

  std::span<const Complex> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double capacity() const { return capacity_; }
  MeasureSource source() const { return source_; }
  std::size_t size() const { return nodes_.size(); }

  /// Disk measures: circle center and radius. Segment measures: half-length
  /// in `radius`, center 0.
  Complex center() const { return center_; }
  double radius() const { return radius_; }

 private:
  friend EquilibriumMeasure equilibrium_disk(double, std::size_t, Complex);
  friend EquilibriumMeasure equilibrium_segment(double, std::size_t);

  std::vector<Complex> nodes_;
  std::vector<double> weights_;
  double capacity_;
  MeasureSource source_;
  Complex center_{};
  double radius_ = 0.0;
};

/// Trapezoidal rule on |z - c| = r: equally spaced nodes, weights 1/N, cap r.
EquilibriumMeasure equilibrium_disk(double r, std::size_t node_count,
                                    Complex center = {});

/// Gauss-Chebyshev: nodes a cos((2j-1) pi / (2N)), weights 1/N, cap a/2.
EquilibriumMeasure equilibrium_segment(double a, std::size_t node_count);

/// Counting measure on the ensemble (weights 1/n), capacity from the pair
/// product. Requires n >= 16.
EquilibriumMeasure equilibrium_from_fekete(const FeketeEnsemble& ensemble);

/// Closed forms for disks and segments; Leja points otherwise.
EquilibriumMeasure equilibrium_measure(const CompactSet& set, std::size_t node_count);

/// (prod_{j<k} |a_j - a_k|)^{2/(n(n-1))}, computed from the log energy.
/// Throws on coincident points.
double transfinite_diameter_estimate(std::span<const Complex> points);

/// Integration region relative to the unit circle about u.
enum class Region {
  Whole,    // all of E
  Outside,  // |z - u| >= 1
  Inside,   // |z - u| <= 1
};

struct LogIntegral {
  double value = 0.0;
  bool floored = false;  // some node sat within 1e-14 of u
};

/// Integral of log|z - u| d mu_E(z) over `region`.
///
/// Closed-form measures: composite Gauss-Legendre in the angle variable,
/// split at the cut points |z - u| = 1 and at the point of E nearest u,
/// graded geometrically toward that point. `resolution` (default: the
/// measure's node count) sets the panel budget as resolution / 16 panels per
/// full period. Discrete measures: the weighted node sum, see
/// discrete_log_integral.
LogIntegral integrate_log_distance(const EquilibriumMeasure& measure, Complex u,
                                   Region region, std::size_t resolution = 0);

/// sum_j w_j log|u - node_j| over nodes in `region`; a term with
/// |u - node_j| < 1e-14 uses log(1e-14) and sets `floored`.
LogIntegral discrete_log_integral(std::span<const Complex> nodes,
                                  std::span<const double> weights, Complex u,
                                  Region region);

/// Logarithmic potential integral of log|u - t| d mu_E(t).
LogIntegral log_potential(const EquilibriumMeasure& measure, Complex u);

struct GreenValue {
  double value = 0.0;  // >= 0
  double clamp = 0.0;  // magnitude removed by clamping a negative value
};

/// g(z, infinity) = log(1/cap) + log potential, clamped at 0 from below.
GreenValue green_function(const EquilibriumMeasure& measure, Complex z);

/// `# capacity=<float> source=<tag>`, a `re,im,weight` header, then rows.
void write_measure_csv(std::ostream& out, const EquilibriumMeasure& measure);

/// Reads the CSV written above. Only the discrete data survives: the result
/// is tagged with the recorded source, but integrals use node sums.
EquilibriumMeasure read_measure_csv(std::istream& in);

}  // namespace factornorm
