#include "factornorm/constant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "factornorm/errors.hpp"
#include "factornorm/numerics.hpp"

namespace factornorm {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrands must vanish at the upper limit: the truncation circle passes
// through the point where the log argument equals 1.
void check_endpoint_zero(double value, std::string_view what) {
  if (std::abs(value) > 1e-9) {
    throw NumericalError(fmt::format("{} integrand is {} at its upper limit, expected 0", what, value));
  }
}

struct Candidate {
  BoundaryParam param;
  double value;
};

bool param_less(const BoundaryParam& x, const BoundaryParam& y) {
  return x.piece != y.piece ? x.piece < y.piece : x.s < y.s;
}

}  // namespace

std::string_view to_string(ConstantMethod method) {
  switch (method) {
    case ConstantMethod::DiskClosedForm: return "DiskClosedForm";
    case ConstantMethod::SegmentClosedForm: return "SegmentClosedForm";
    case ConstantMethod::DiamShortcut: return "DiamShortcut";
    case ConstantMethod::GeneralQuadrature: return "GeneralQuadrature";
  }
  return "unknown";
}

nlohmann::json to_json(const FactorConstantResult& result) {
  return {
      {"value", result.value},
      {"maximizer", {result.maximizer.real(), result.maximizer.imag()}},
      {"method", std::string(to_string(result.method))},
      {"error_estimate", result.error_estimate},
  };
}

FactorConstantResult constant_disk(double r, double tol) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument(fmt::format("disk radius must be positive, got {}", r));
  }
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  FactorConstantResult out;
  out.method = ConstantMethod::DiskClosedForm;
  out.maximizer = {r, 0.0};
  if (r <= 0.5) {
    out.value = 1.0 / r;
    return out;
  }
  const double upper = kPi - 2.0 * std::asin(1.0 / (2.0 * r));
  auto integrand = [r](double x) { return std::log(2.0 * r * std::cos(0.5 * x)); };
  check_endpoint_zero(integrand(upper), "disk");
  const auto q = adaptive_simpson(integrand, 0.0, upper, 0.1 * kPi * tol);
  out.value = std::exp(q.value / kPi) / r;
  out.error_estimate = out.value * q.error_estimate / kPi;
  return out;
}

FactorConstantResult constant_segment(double a, double tol) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument(fmt::format("segment half-length must be positive, got {}", a));
  }
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  FactorConstantResult out;
  out.method = ConstantMethod::SegmentClosedForm;
  out.maximizer = {a, 0.0};
  if (a <= 0.5) {
    out.value = 2.0 / a;
    return out;
  }
  // t = a cos(theta) turns log(t + a) / (pi sqrt(a^2 - t^2)) dt into
  // log(a (1 + cos theta)) d theta / pi = (log(2a) + 2 log cos(theta/2)) / pi.
  const double upper = std::acos((1.0 - a) / a);
  const double log_2a = std::log(2.0 * a);
  auto integrand = [log_2a](double theta) {
    return log_2a + 2.0 * std::log(std::cos(0.5 * theta));
  };
  check_endpoint_zero(integrand(upper), "segment");
  const auto q = gauss_richardson(integrand, 0.0, upper, 0.1 * kPi * tol);
  out.value = 2.0 / a * std::exp(q.value / kPi);
  out.error_estimate = out.value * q.error_estimate / kPi;
  return out;
}

GeneralConstantReport constant_general_report(const CompactSet& set,
                                              const EquilibriumMeasure& measure,
                                              std::size_t candidates, double tol) {
  if (candidates < 16) {
    throw InvalidArgument(fmt::format("need at least 16 boundary candidates, got {}", candidates));
  }
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  const auto params = candidate_params(set, candidates);
  const auto pieces = set.boundary();
  auto at = [&](BoundaryParam p) { return pieces[p.piece].point(p.s); };

  bool floored = false;
  auto objective = [&](BoundaryParam p) {
    const auto v = integrate_log_distance(measure, at(p), Region::Outside);
    floored = floored || v.floored;
    return v.value;
  };

  std::vector<Candidate> pool;
  pool.reserve(params.size() + 8);
  for (const auto& p : params) pool.push_back({p, objective(p)});

  // Golden-section refinement of the strongest local maxima. Clouds keep
  // their sample points: between samples the boundary is not known.
  if (set.kind() != SetKind::BoundaryCloud) {
    std::vector<std::size_t> local_maxima;
    for (std::size_t i = 0; i < params.size(); ++i) {
      const bool periodic = pieces[params[i].piece].periodic();
      auto neighbour = [&](std::size_t j) -> const Candidate* {
        return params[j].piece == params[i].piece ? &pool[j] : nullptr;
      };
      const Candidate* left = i > 0 ? neighbour(i - 1) : nullptr;
      const Candidate* right = i + 1 < params.size() ? neighbour(i + 1) : nullptr;
      if (periodic) {
        left = &pool[i > 0 ? i - 1 : params.size() - 1];
        right = &pool[i + 1 < params.size() ? i + 1 : 0];
      }
      if ((!left || pool[i].value >= left->value) && (!right || pool[i].value >= right->value)) {
        local_maxima.push_back(i);
      }
    }
    std::stable_sort(local_maxima.begin(), local_maxima.end(),
                     [&](std::size_t x, std::size_t y) { return pool[x].value > pool[y].value; });
    if (local_maxima.size() > 4) local_maxima.resize(4);

    for (const std::size_t i : local_maxima) {
      const auto piece = params[i].piece;
      const bool periodic = pieces[piece].periodic();
      double lo = 0.0;
      double hi = 1.0;
      if (periodic) {
        const double h = 1.0 / static_cast<double>(params.size());
        lo = params[i].s - h;
        hi = params[i].s + h;
      } else {
        if (i > 0 && params[i - 1].piece == piece) lo = params[i - 1].s;
        if (i + 1 < params.size() && params[i + 1].piece == piece) hi = params[i + 1].s;
      }
      auto along = [&](double s) {
        if (periodic) s -= std::floor(s);
        return objective({piece, s});
      };
      const auto g = golden_section_maximize(along, lo, hi, 1e-12, 1e-3 * tol);
      double s = g.x;
      if (periodic) s -= std::floor(s);
      pool.push_back({{piece, s}, g.fx});
    }
  }

  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& c : pool) best_value = std::max(best_value, c.value);
  const double tie = 1e-12 * (1.0 + std::abs(best_value));
  const Candidate* best = nullptr;
  for (const auto& c : pool) {
    if (c.value >= best_value - tie && (!best || param_less(c.param, best->param))) best = &c;
  }

  GeneralConstantReport report;
  const Complex u = at(best->param);
  const double cap = measure.capacity();
  report.outer_form = std::exp(best->value) / cap;

  const bool parametric = measure.radius() > 0.0 &&
                          measure.source() != MeasureSource::FeketeApprox;
  if (parametric) {
    const auto coarse = integrate_log_distance(measure, u, Region::Outside,
                                               std::max<std::size_t>(32, measure.size() / 2));
    report.richardson_increment = std::abs(report.outer_form - std::exp(coarse.value) / cap);
  }
  if (set.regular()) {
    const auto inner = integrate_log_distance(measure, u, Region::Inside);
    floored = floored || inner.floored;
    report.inner_form = std::exp(-inner.value);
    report.form_gap = std::abs(report.outer_form - *report.inner_form);
  }
  report.floored = floored;
  report.result.value = report.outer_form;
  report.result.maximizer = u;
  report.result.method = ConstantMethod::GeneralQuadrature;
  report.result.error_estimate = report.form_gap + report.richardson_increment;
  return report;
}

FactorConstantResult constant_general(const CompactSet& set,
                                      const EquilibriumMeasure& measure,
                                      std::size_t candidates, double tol) {
  return constant_general_report(set, measure, candidates, tol).result;
}

std::optional<FactorConstantResult> constant_diam_shortcut(const CompactSet& set,
                                                           const EquilibriumMeasure& measure) {
  if (diameter(set) > 1.0) return std::nullopt;
  FactorConstantResult out;
  out.value = 1.0 / measure.capacity();
  out.maximizer = set.boundary().front().point(0.0);
  out.method = ConstantMethod::DiamShortcut;
  return out;
}

double segment_objective(double a, double u) {
  const auto measure = equilibrium_segment(a, 1024);
  return integrate_log_distance(measure, {u, 0.0}, Region::Outside).value;
}

DerivativeValue segment_objective_derivative(double a, double u) {
  if (!(a > 0.5)) {
    throw InvalidArgument(fmt::format("segment objective derivative needs a > 1/2, got {}", a));
  }
  if (!(std::abs(u) < a)) {
    throw InvalidArgument(fmt::format("u = {} must lie strictly inside (-{}, {})", u, a, a));
  }
  DerivativeValue out;
  const double band = std::abs(a - 1.0);
  out.one_sided = std::abs(std::abs(u) - band) <= 1e-14 * a;

  if (a > 1.0 && std::abs(u) < a - 1.0 && !out.one_sided) {
    const double root_u = std::sqrt(a * a - u * u);
    const double base = a * a - u * u;
    const double num = base + u + std::sqrt(a * a - (u - 1.0) * (u - 1.0)) * root_u;
    const double den = base - u + std::sqrt(a * a - (u + 1.0) * (u + 1.0)) * root_u;
    out.value = std::log(num / den) / (kPi * root_u);
    return out;
  }

  // t = a cos(theta): dt / sqrt(a^2 - t^2) = -d theta, and |u - t| >= 1 on
  // both pieces, so the integrands are smooth.
  auto integrand = [a, u](double theta) { return 1.0 / (u - a * std::cos(theta)); };
  double sum = 0.0;
  if (u + 1.0 < a) {
    const double upper = std::acos((u + 1.0) / a);
    sum += gauss_richardson(integrand, 0.0, upper, 1e-14).value;
  }
  if (u - 1.0 > -a) {
    const double lower = std::acos((u - 1.0) / a);
    sum += gauss_richardson(integrand, lower, kPi, 1e-14).value;
  }
  out.value = sum / kPi;
  return out;
}

double borwein_bound(int n, int m, double a) {
  if (n < 1 || m < 1 || m > n) {
    throw InvalidArgument(fmt::format("need 1 <= m <= n, got n = {}, m = {}", n, m));
  }
  if (!(a > 0.0)) throw InvalidArgument(fmt::format("half-length must be positive, got {}", a));
  // 1 + cos x = 2 cos^2(x/2) keeps the factors near k = n accurate.
  double log_bound = (m - n) * std::log(a) + (n - 1) * std::log(2.0);
  for (int k = 1; k <= m; ++k) {
    const double x = (2.0 * k - 1.0) * kPi / (2.0 * n);
    log_bound += std::log(2.0) + 2.0 * std::log(std::cos(0.5 * x));
  }
  return std::exp(log_bound);
}

double borwein_limit(int n) {
  if (n < 3) throw InvalidArgument(fmt::format("Borwein limit needs n >= 3, got {}", n));
  const int terms = (2 * n) / 3;
  double log_value = (terms - 1) * std::log(2.0);
  for (int k = 1; k <= terms; ++k) {
    const double x = (2.0 * k - 1.0) * kPi / (2.0 * n);
    log_value += std::log(2.0) + 2.0 * std::log(std::cos(0.5 * x));
  }
  return std::exp(log_value / n);
}

}  // namespace factornorm
