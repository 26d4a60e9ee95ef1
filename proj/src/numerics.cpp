#include "factornorm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include <fmt/format.h>

#include "factornorm/errors.hpp"

namespace factornorm {

namespace {

GaussRule compute_gauss_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      // P_n(z) and P_{n-1}(z) by the three-term recurrence.
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      dp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double gauss_panel(const RealFunction& f, double lo, double hi,
                   const GaussRule& rule) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

// Panels from `end` toward the interior, shrinking by `ratio` per level,
// covering [end, end + sign*width].
double graded_toward(const RealFunction& f, double end, double width,
                     bool forward, const GaussRule& rule) {
  constexpr double kRatio = 0.15;
  constexpr int kLevels = 22;  // 0.15^22 ~ 7e-19
  // Below this width the outermost Gauss nodes would round onto `end`.
  const double resolvable = 256.0 * std::numeric_limits<double>::epsilon() * std::abs(end);
  double sum = 0.0;
  double outer = width;
  for (int level = 0; level < kLevels && outer * kRatio > resolvable; ++level) {
    const double inner = outer * kRatio;
    sum += forward ? gauss_panel(f, end + inner, end + outer, rule)
                   : gauss_panel(f, end - outer, end - inner, rule);
    outer = inner;
  }
  // The remaining sliver contributes O(w log w); a midpoint sample is enough.
  const double mid = forward ? end + 0.5 * outer : end - 0.5 * outer;
  if (mid != end) sum += outer * f(mid);
  return sum;
}

struct SimpsonState {
  const RealFunction& f;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool depth_exhausted = false;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa,
                       double fm, double fb, double whole, double tol,
                       int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  st.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    st.depth_exhausted = true;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t order) {
  if (order == 0) throw InvalidArgument("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, compute_gauss_legendre(order)).first;
  }
  return it->second;
}

double gauss_composite(const RealFunction& f, double lo, double hi,
                       std::size_t panels, std::size_t order) {
  if (hi == lo) return 0.0;
  panels = std::max<std::size_t>(panels, 1);
  const auto& rule = gauss_legendre(order);
  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + h;
    sum += gauss_panel(f, a, b, rule);
  }
  return sum;
}

double gauss_graded(const RealFunction& f, double lo, double hi,
                    std::size_t panels, bool singular_lo, bool singular_hi,
                    std::size_t order) {
  if (hi <= lo) return 0.0;
  panels = std::max<std::size_t>(panels, 2);
  const auto& rule = gauss_legendre(order);
  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = 0.0;
  std::size_t first = 0;
  std::size_t last = panels;
  if (singular_lo) {
    sum += graded_toward(f, lo, h, true, rule);
    first = 1;
  }
  if (singular_hi) {
    sum += graded_toward(f, hi, h, false, rule);
    last = panels - 1;
  }
  for (std::size_t p = first; p < last; ++p) {
    const double a = lo + h * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + h;
    sum += gauss_panel(f, a, b, rule);
  }
  return sum;
}

QuadratureResult adaptive_simpson(const RealFunction& f, double lo, double hi,
                                  double tol, int max_depth) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  QuadratureResult result;
  if (hi == lo) return result;
  SimpsonState st{f};
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  st.evaluations = 3;
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  result.value = simpson_recurse(st, lo, hi, fa, fm, fb, whole, tol, max_depth);
  result.error_estimate = st.error;
  result.evaluations = st.evaluations;
  if (!std::isfinite(result.value) || !std::isfinite(st.error)) {
    throw NumericalError(fmt::format("adaptive Simpson on [{}, {}] produced a non-finite value", lo, hi));
  }
  if (st.depth_exhausted && st.error > tol) {
    throw NumericalError(fmt::format(
        "adaptive Simpson on [{}, {}] hit depth {} with error {} > {}", lo, hi,
        max_depth, st.error, tol));
  }
  return result;
}

QuadratureResult gauss_richardson(const RealFunction& f, double lo, double hi,
                                  double tol, std::size_t max_doublings) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  constexpr std::size_t kOrder = 16;
  QuadratureResult result;
  std::size_t panels = 1;
  double previous = gauss_composite(f, lo, hi, panels, kOrder);
  result.evaluations = kOrder;
  for (std::size_t k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const double current = gauss_composite(f, lo, hi, panels, kOrder);
    result.evaluations += panels * kOrder;
    result.value = current;
    result.error_estimate = std::abs(current - previous);
    if (result.error_estimate < tol) return result;
    previous = current;
  }
  throw NumericalError(fmt::format(
      "Gauss-Legendre doubling on [{}, {}] did not reach {} (last increment {})",
      lo, hi, tol, result.error_estimate));
}

GoldenResult golden_section_maximize(const RealFunction& f, double lo,
                                     double hi, double x_tol, double f_tol,
                                     std::size_t max_iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  GoldenResult r;
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    const double inner = std::max(f1, f2);
    const double spread = inner - std::min(fa, fb);
    if (b - a <= x_tol || (std::isfinite(spread) && spread <= f_tol)) break;
    if (f1 >= f2) {
      b = x2;
      fb = f2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      fa = f1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  // Prefer the smaller abscissa on ties so results are deterministic.
  const std::pair<double, double> probes[] = {{a, fa}, {x1, f1}, {x2, f2}, {b, fb}};
  r.x = a;
  r.fx = fa;
  for (const auto& [x, fx] : probes) {
    if (fx > r.fx) {
      r.x = x;
      r.fx = fx;
    }
  }
  r.lo = a;
  r.hi = b;
  r.spread = r.fx - std::min(fa, fb);
  r.iterations = it;
  return r;
}

}  // namespace factornorm
