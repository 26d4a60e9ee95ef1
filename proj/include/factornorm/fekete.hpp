#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "factornorm/polynomials.hpp"
#include "factornorm/sets.hpp"

namespace factornorm {

/// n points of E (Fekete points or a greedy stand-in) and their log energy
/// sum_{j<k} log|a_j - a_k|. The normalized counting measure puts mass 1/n
/// on each point.
struct FeketeEnsemble {
  std::vector<Complex> points;
  CompactSet set;
  double energy = 0.0;
  bool exact = false;  // points come from a classical closed form

  std::size_t degree() const { return points.size(); }
};

double log_energy(std::span<const Complex> points);

/// Equally spaced points center + r e^{2 pi i k / n}.
FeketeEnsemble fekete_disk(double r, std::size_t n, Complex center = {});

/// a times {-1, 1, zeros of P'_{n-1}} (Gauss-Lobatto-Legendre), sorted.
/// Newton iteration from Chebyshev-Lobatto guesses; on non-convergence falls
/// back to direct energy maximization.
FeketeEnsemble fekete_segment(double a, std::size_t n);

/// Greedy Leja selection from `candidate_count` boundary samples. Starts at a
/// point attaining the candidate diameter; ties go to the lowest index.
FeketeEnsemble leja_points(const CompactSet& set, std::size_t n,
                           std::size_t candidate_count);

/// Closed forms for disks and segments, Leja points (20n candidates) otherwise.
FeketeEnsemble fekete_points(const CompactSet& set, std::size_t n);

MonicPolynomial fekete_polynomial(const FeketeEnsemble& ensemble);

/// ||p_n||_E^{1/n}.
double capacity_via_norm(const FeketeEnsemble& ensemble, double tol);

struct SharpnessRow {
  std::size_t degree = 0;
  std::size_t factor_degree = 0;
  double ratio = 0.0;       // (||q_n|| / ||p_n||)^{1/n}
  double log_norm_p = 0.0;
  double log_norm_q = 0.0;
};

/// For each n: Fekete polynomial p_n, factor q_n keeping roots with
/// |a - u| >= 1, and the ratio of their norms. The empty factor is legal
/// (norm 1).
std::vector<SharpnessRow> sharpness_experiment(const CompactSet& set, Complex u,
                                               std::span<const std::size_t> degrees,
                                               double tol);

/// `# set=... u=... C_E=...`, then `n,ratio,norm_p,norm_q` with log norms.
void write_experiment_csv(std::ostream& out, const CompactSet& set, Complex u,
                          double constant, std::span<const SharpnessRow> rows);

namespace detail {

/// Interior Gauss-Lobatto points on [-1, 1] by Newton on P'_{n-1}; returns
/// an empty vector when Newton fails to converge to n - 2 distinct roots.
std::vector<double> lobatto_interior_newton(std::size_t n);

/// Maximizes the log energy of n points on [-1, 1] with the ends pinned at
/// +-1, by damped Newton on the interior stationarity equations.
std::vector<double> lobatto_by_energy_maximization(std::size_t n);

}  // namespace detail

}  // namespace factornorm
