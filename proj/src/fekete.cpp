#include "factornorm/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "factornorm/errors.hpp"

namespace factornorm {

namespace {

constexpr double kPi = std::numbers::pi;

struct LegendreValues {
  double p;    // P_m(x)
  double dp;   // P'_m(x)
  double d2p;  // P''_m(x)
};

LegendreValues legendre(std::size_t m, double x) {
  double p_prev = 1.0;
  double p = x;
  for (std::size_t k = 2; k <= m; ++k) {
    const double dk = static_cast<double>(k);
    const double next = ((2.0 * dk - 1.0) * x * p - (dk - 1.0) * p_prev) / dk;
    p_prev = p;
    p = next;
  }
  const double dm = static_cast<double>(m);
  const double one_minus_x2 = 1.0 - x * x;
  const double dp = dm * (p_prev - x * p) / one_minus_x2;
  const double d2p = (2.0 * x * dp - dm * (dm + 1.0) * p) / one_minus_x2;
  return {p, dp, d2p};
}

// Dense Cholesky solve of A x = b for symmetric positive definite A (row-major).
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
    b[i] = v / a[i * n + i];
  }
  return true;
}

double real_energy(std::span<const double> x) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) e += std::log(std::abs(x[i] - x[j]));
  }
  return e;
}

FeketeEnsemble make_ensemble(std::vector<Complex> points, CompactSet set, bool exact) {
  FeketeEnsemble e{std::move(points), std::move(set), 0.0, exact};
  e.energy = log_energy(e.points);
  return e;
}

}  // namespace

double log_energy(std::span<const Complex> points) {
  double e = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      e += std::log(std::abs(points[i] - points[j]));
    }
  }
  return e;
}

FeketeEnsemble fekete_disk(double r, std::size_t n, Complex center) {
  if (n < 2) throw InvalidArgument(fmt::format("Fekete degree must be >= 2, got {}", n));
  auto set = CompactSet::disk(r, center);
  std::vector<Complex> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    points.push_back(center +
                     std::polar(r, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return make_ensemble(std::move(points), std::move(set), true);
}

namespace detail {

std::vector<double> lobatto_interior_newton(std::size_t n) {
  const std::size_t m = n - 1;
  std::vector<double> roots;
  if (n <= 2) return roots;
  roots.reserve(n - 2);
  for (std::size_t k = m - 1; k >= 1; --k) {
    // Chebyshev-Lobatto guess, ascending order.
    double x = std::cos(kPi * static_cast<double>(k) / static_cast<double>(m));
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      const auto v = legendre(m, x);
      const double step = v.dp / v.d2p;
      x -= step;
      if (!(std::abs(x) < 1.0)) break;
      if (std::abs(step) <= 4e-16) {
        converged = true;
        break;
      }
    }
    if (!converged) return {};
    roots.push_back(x);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (!(roots[i] > roots[i - 1] + 1e-13)) return {};
  }
  return roots;
}

std::vector<double> lobatto_by_energy_maximization(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = -std::cos(kPi * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  x.front() = -1.0;
  x.back() = 1.0;
  if (n <= 2) return x;
  const std::size_t free = n - 2;
  double energy = real_energy(x);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> grad(free, 0.0);
    std::vector<double> neg_hess(free * free, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double diag = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double inv = 1.0 / (x[i] - x[j]);
        grad[i - 1] += inv;
        diag += inv * inv;
        if (j >= 1 && j + 1 < n) neg_hess[(i - 1) * free + (j - 1)] = -inv * inv;
      }
      neg_hess[(i - 1) * free + (i - 1)] = diag;
    }
    double gnorm = 0.0;
    for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
    if (gnorm < 1e-13) break;
    // Newton direction solves (-H) d = g.
    std::vector<double> step = grad;
    if (!cholesky_solve(neg_hess, step, free)) {
      throw NumericalError("energy Hessian lost definiteness");
    }
    double t = 1.0;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      std::vector<double> trial = x;
      for (std::size_t i = 0; i < free; ++i) trial[i + 1] += t * step[i];
      const bool ordered = std::is_sorted(trial.begin(), trial.end(),
                                          [](double p, double q) { return p <= q; }) &&
                           std::adjacent_find(trial.begin(), trial.end()) == trial.end();
      if (ordered) {
        const double e = real_energy(trial);
        if (e >= energy - 1e-14 * std::abs(energy)) {
          x = std::move(trial);
          energy = e;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  return x;
}

}  // namespace detail

FeketeEnsemble fekete_segment(double a, std::size_t n) {
  if (n < 2) throw InvalidArgument(fmt::format("Fekete degree must be >= 2, got {}", n));
  auto set = CompactSet::segment(a);
  std::vector<double> unit;
  auto interior = detail::lobatto_interior_newton(n);
  if (interior.size() == n - 2) {
    unit.reserve(n);
    unit.push_back(-1.0);
    unit.insert(unit.end(), interior.begin(), interior.end());
    unit.push_back(1.0);
  } else {
    unit = detail::lobatto_by_energy_maximization(n);
  }
  std::vector<Complex> points;
  points.reserve(n);
  for (double x : unit) points.emplace_back(a * x, 0.0);
  return make_ensemble(std::move(points), std::move(set), true);
}

FeketeEnsemble leja_points(const CompactSet& set, std::size_t n,
                           std::size_t candidate_count) {
  if (n < 2) throw InvalidArgument(fmt::format("Leja degree must be >= 2, got {}", n));
  if (candidate_count < 10 * n) {
    throw InvalidArgument(fmt::format(
        "Leja selection needs at least 10n = {} candidates, got {}", 10 * n, candidate_count));
  }

  // Candidate grid on the boundary: equal angles on circles, cosine spacing
  // on segments, linear along cloud edges.
  const auto pieces = set.boundary();
  double total = 0.0;
  for (const auto& p : pieces) total += p.length();
  std::vector<Complex> candidates;
  candidates.reserve(candidate_count + 2 * pieces.size());
  for (const auto& piece : pieces) {
    const auto m = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(static_cast<double>(candidate_count) *
                                              piece.length() / total)));
    if (piece.periodic()) {
      for (std::size_t j = 0; j < m; ++j) {
        candidates.push_back(piece.point(static_cast<double>(j) / static_cast<double>(m)));
      }
    } else {
      // Shared polyline vertices would duplicate; skip a start that equals
      // the previous candidate.
      for (std::size_t j = 0; j <= m; ++j) {
        const Complex z = piece.point(static_cast<double>(j) / static_cast<double>(m));
        if (!candidates.empty() && candidates.back() == z) continue;
        candidates.push_back(z);
      }
    }
  }
  if (candidates.size() < n) {
    throw InvalidArgument("fewer distinct Leja candidates than requested points");
  }

  // Disks, segments and unions attain their diameter at candidate 0 (the
  // antipode or far end is also a candidate). Clouds attain it at a vertex.
  std::size_t start = 0;
  if (const auto* c = set.as<BoundaryCloud>()) {
    double best = -1.0;
    Complex far{};
    for (std::size_t i = 0; i < c->points.size(); ++i) {
      for (std::size_t j = i + 1; j < c->points.size(); ++j) {
        const double d = std::abs(c->points[i] - c->points[j]);
        if (d > best) {
          best = d;
          far = c->points[i];
        }
      }
    }
    start = static_cast<std::size_t>(
        std::find(candidates.begin(), candidates.end(), far) - candidates.begin());
  }

  std::vector<double> score(candidates.size(), 0.0);
  std::vector<Complex> chosen;
  chosen.reserve(n);
  std::size_t next = start;
  for (std::size_t step = 0; step < n; ++step) {
    const Complex z = candidates[next];
    chosen.push_back(z);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double d = std::abs(candidates[i] - z);
      score[i] = d == 0.0 ? -std::numeric_limits<double>::infinity()
                          : score[i] + std::log(d);
    }
    if (step + 1 == n) break;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (score[i] > best) {
        best = score[i];
        next = i;
      }
    }
    if (!std::isfinite(best)) throw NumericalError("Leja selection ran out of candidates");
  }
  return make_ensemble(std::move(chosen), set, false);
}

FeketeEnsemble fekete_points(const CompactSet& set, std::size_t n) {
  if (const auto* d = set.as<Disk>()) return fekete_disk(d->radius, n, d->center);
  if (const auto* s = set.as<Segment>()) return fekete_segment(s->half_length, n);
  return leja_points(set, n, 20 * n);
}

MonicPolynomial fekete_polynomial(const FeketeEnsemble& ensemble) {
  return MonicPolynomial(ensemble.points);
}

double capacity_via_norm(const FeketeEnsemble& ensemble, double tol) {
  const auto p = fekete_polynomial(ensemble);
  const auto norm = sup_norm_estimate(p, ensemble.set, tol);
  return std::exp(norm.log_value / static_cast<double>(ensemble.degree()));
}

std::vector<SharpnessRow> sharpness_experiment(const CompactSet& set, Complex u,
                                               std::span<const std::size_t> degrees,
                                               double tol) {
  if (degrees.empty()) throw InvalidArgument("sharpness experiment needs at least one degree");
  if (!std::is_sorted(degrees.begin(), degrees.end())) {
    throw InvalidArgument("sharpness degrees must be ascending");
  }
  std::vector<SharpnessRow> rows;
  rows.reserve(degrees.size());
  for (const std::size_t n : degrees) {
    const auto ensemble = fekete_points(set, n);
    const auto p = fekete_polynomial(ensemble);
    const auto q = factor_by_predicate(p, [u](Complex a) { return std::abs(a - u) >= 1.0; });
    SharpnessRow row;
    row.degree = n;
    row.factor_degree = q.degree();
    row.log_norm_p = sup_norm_estimate(p, set, tol).log_value;
    row.log_norm_q = q.degree() == 0 ? 0.0 : sup_norm_estimate(q, set, tol).log_value;
    row.ratio = std::exp((row.log_norm_q - row.log_norm_p) / static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const CompactSet& set, Complex u,
                          double constant, std::span<const SharpnessRow> rows) {
  out << fmt::format("# set={} u=({},{}) C_E={}\n", describe(set), u.real(), u.imag(),
                     constant);
  out << "n,ratio,norm_p,norm_q\n";
  for (const auto& row : rows) {
    out << fmt::format("{},{},{},{}\n", row.degree, row.ratio, row.log_norm_p,
                       row.log_norm_q);
  }
}

}  // namespace factornorm
