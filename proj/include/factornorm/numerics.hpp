#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace factornorm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on P_n; cached per order.
const GaussRule& gauss_legendre(std::size_t order);

using RealFunction = std::function<double(double)>;

/// Integral of f over [lo, hi] with `panels` equal Gauss-Legendre panels.
double gauss_composite(const RealFunction& f, double lo, double hi,
                       std::size_t panels, std::size_t order = 16);

/// Composite Gauss-Legendre where the panels shrink geometrically toward the
/// flagged endpoints (ratio 0.15 down to ~1e-18 of the interval). Converges
/// exponentially for integrands with integrable log singularities at those
/// endpoints.
double gauss_graded(const RealFunction& f, double lo, double hi,
                    std::size_t panels, bool singular_lo, bool singular_hi,
                    std::size_t order = 16);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson with Richardson correction; absolute tolerance `tol`.
/// Throws NumericalError when the recursion depth cap is hit before the
/// local error test passes.
QuadratureResult adaptive_simpson(const RealFunction& f, double lo, double hi,
                                  double tol, int max_depth = 50);

/// Composite Gauss-Legendre with panel doubling until two successive
/// estimates differ by less than `tol`. error_estimate is the last increment.
QuadratureResult gauss_richardson(const RealFunction& f, double lo, double hi,
                                  double tol, std::size_t max_doublings = 20);

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  double lo = 0.0;   // final bracket
  double hi = 0.0;
  double spread = 0.0;  // fx minus the smaller bracket-end value
  std::size_t iterations = 0;
};

/// Golden-section search for a maximum of f on [lo, hi]. The bracket ends
/// are evaluated too, so a maximum sitting at an end is returned exactly.
/// Stops when the bracket is narrower than `x_tol` or the value spread over
/// the bracket falls below `f_tol`.
GoldenResult golden_section_maximize(const RealFunction& f, double lo,
                                     double hi, double x_tol, double f_tol,
                                     std::size_t max_iterations = 200);

}  // namespace factornorm
