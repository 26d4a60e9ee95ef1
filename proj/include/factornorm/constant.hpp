#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "factornorm/potential.hpp"
#include "factornorm/sets.hpp"

namespace factornorm {

enum class ConstantMethod { DiskClosedForm, SegmentClosedForm, DiamShortcut, GeneralQuadrature };

std::string_view to_string(ConstantMethod method);

/// The best constant C_E in ||q||_E <= C_E^n ||p||_E, with a boundary point
/// u* attaining the maximum over the boundary.
struct FactorConstantResult {
  double value = 1.0;
  Complex maximizer{};
  ConstantMethod method = ConstantMethod::GeneralQuadrature;
  double error_estimate = 0.0;
};

/// {value, maximizer: [re, im], method, error_estimate}
nlohmann::json to_json(const FactorConstantResult& result);

/// Closed form for a disk of radius r: 1/r for r <= 1/2, otherwise
/// (1/r) exp((1/pi) int_0^{pi - 2 asin(1/(2r))} log(2r cos(x/2)) dx), by
/// adaptive Simpson. The maximizer reported is the point r (any boundary
/// point attains it).
FactorConstantResult constant_disk(double r, double tol);

/// Closed form for [-a, a]: 2/a for a <= 1/2, otherwise
/// (2/a) exp((1/pi) int_0^{acos((1-a)/a)} log(a cos(theta) + a) d theta),
/// by Gauss-Legendre with panel doubling. Maximizer: the endpoint a.
FactorConstantResult constant_segment(double a, double tol);

struct GeneralConstantReport {
  FactorConstantResult result;
  double outer_form = 0.0;   // value from the truncated integral over |z - u| >= 1
  std::optional<double> inner_form;  // regular sets: value from |z - u| <= 1
  double form_gap = 0.0;     // |outer_form - inner_form|, 0 when irregular
  double richardson_increment = 0.0;  // change when halving the resolution
  bool floored = false;      // a node-sum term hit the singular floor
};

/// Maximizes the truncated log integral over `candidates` boundary points,
/// refines the best local maxima by golden section in the boundary
/// parameter (disks, segments, unions), and returns
/// exp(max) / cap. Ties within 1e-12 go to the smallest boundary parameter.
GeneralConstantReport constant_general_report(const CompactSet& set,
                                              const EquilibriumMeasure& measure,
                                              std::size_t candidates, double tol);

FactorConstantResult constant_general(const CompactSet& set,
                                      const EquilibriumMeasure& measure,
                                      std::size_t candidates, double tol);

/// 1 / cap when diam(E) <= 1, nothing otherwise.
std::optional<FactorConstantResult> constant_diam_shortcut(const CompactSet& set,
                                                           const EquilibriumMeasure& measure);

/// f(u) = integral of log|t - u| d mu(t) over [-a, a] minus (u - 1, u + 1).
double segment_objective(double a, double u);

struct DerivativeValue {
  double value = 0.0;
  bool one_sided = false;  // u sits on a band boundary |u| = |a - 1|
};

/// f'(u) on (-a, a) for a > 1/2: closed form on (1 - a, a - 1), quadrature
/// of the one-sided integrals elsewhere.
DerivativeValue segment_objective_derivative(double a, double u);

/// a^{m-n} 2^{n-1} prod_{k=1}^m (1 + cos((2k-1) pi / (2n))), in log domain.
double borwein_bound(int n, int m, double a);

/// (2^{K-1} prod_{k=1}^{K} (1 + cos((2k-1) pi / (2n))))^{1/n}, K = floor(2n/3).
double borwein_limit(int n);

}  // namespace factornorm
