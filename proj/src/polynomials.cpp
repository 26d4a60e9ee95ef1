#include "factornorm/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "factornorm/errors.hpp"
#include "factornorm/numerics.hpp"

namespace factornorm {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

struct Sample {
  double s;
  double log_abs;
};

}  // namespace

Complex evaluate(const MonicPolynomial& p, Complex z) {
  Complex value{1.0, 0.0};
  for (const Complex& root : p.roots()) value *= z - root;
  return value;
}

double log_abs_evaluate(const MonicPolynomial& p, Complex z) {
  double sum = 0.0;
  for (const Complex& root : p.roots()) {
    const double d = std::abs(z - root);
    if (d == 0.0) return kMinusInf;
    sum += std::log(d);
  }
  return sum;
}

double NormEstimate::value() const { return std::exp(log_value); }

NormEstimate sup_norm_estimate(const MonicPolynomial& p, const CompactSet& set,
                               double tol) {
  if (!(tol > 0.0)) {
    throw InvalidArgument(fmt::format("sup_norm tolerance must be positive, got {}", tol));
  }
  NormEstimate best;
  best.log_value = kMinusInf;
  const auto pieces = set.boundary();
  if (p.degree() == 0) {
    best.log_value = 0.0;
    best.argmax = pieces.front().point(0.0);
    return best;
  }

  const std::size_t budget = std::max<std::size_t>(64, 8 * p.degree());
  double total_length = 0.0;
  for (const auto& piece : pieces) total_length += piece.length();
  const std::size_t min_per_piece = pieces.size() == 1 ? budget : 8;

  // Roundoff in a sum of deg p logarithms; brackets cannot resolve below it.
  const double noise_floor =
      64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(p.degree());

  for (const auto& piece : pieces) {
    const auto count = std::max(
        min_per_piece,
        static_cast<std::size_t>(std::ceil(static_cast<double>(budget) *
                                           piece.length() / total_length)));
    const bool periodic = piece.periodic();
    const std::size_t n_samples = periodic ? count : count + 1;
    std::vector<Sample> samples(n_samples);
    double sample_max = kMinusInf;
    for (std::size_t j = 0; j < n_samples; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(count);
      samples[j] = {s, log_abs_evaluate(p, piece.point(s))};
      sample_max = std::max(sample_max, samples[j].log_abs);
    }

    auto objective = [&](double s) {
      return log_abs_evaluate(p, piece.point(periodic ? s - std::floor(s) : s));
    };
    const double h = 1.0 / static_cast<double>(count);

    for (std::size_t j = 0; j < n_samples; ++j) {
      const double here = samples[j].log_abs;
      if (here < sample_max - 1.0) continue;
      double lo = samples[j].s - h;
      double hi = samples[j].s + h;
      double left = kMinusInf;
      double right = kMinusInf;
      if (j > 0) {
        left = samples[j - 1].log_abs;
      } else if (periodic) {
        left = samples.back().log_abs;
      } else {
        lo = 0.0;
      }
      if (j + 1 < n_samples) {
        right = samples[j + 1].log_abs;
      } else if (periodic) {
        right = samples.front().log_abs;
      } else {
        hi = 1.0;
      }
      if (here < left || here < right) continue;

      const auto g = golden_section_maximize(objective, lo, hi, 1e-15,
                                             0.25 * tol, 300);
      const double bracket_error = g.spread;
      if (bracket_error > tol && bracket_error > noise_floor * (1.0 + std::abs(g.fx))) {
        throw NumericalError(fmt::format(
            "sup_norm refinement stalled: bracket spread {} exceeds tolerance {}",
            bracket_error, tol));
      }
      if (g.fx > best.log_value) {
        best.log_value = g.fx;
        best.argmax = piece.point(periodic ? g.x - std::floor(g.x) : g.x);
      }
      best.relative_error = std::max(best.relative_error, bracket_error);
    }
  }
  if (!std::isfinite(best.log_value)) {
    throw NumericalError("sup_norm found no finite sample; polynomial vanishes on the scan grid");
  }
  return best;
}

double sup_norm(const MonicPolynomial& p, const CompactSet& set, double tol) {
  return sup_norm_estimate(p, set, tol).value();
}

MonicPolynomial monic_chebyshev(int n, double a) {
  if (n < 1) throw InvalidArgument(fmt::format("Chebyshev degree must be >= 1, got {}", n));
  if (!(a > 0.0)) throw InvalidArgument(fmt::format("half-length must be positive, got {}", a));
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    roots.emplace_back(a * std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n)), 0.0);
  }
  return MonicPolynomial(std::move(roots));
}

MonicPolynomial read_roots(std::istream& in) {
  std::vector<Complex> roots;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra) || !std::isfinite(re) ||
        !std::isfinite(im)) {
      throw InvalidArgument(fmt::format("root list line {}: expected 're im'", line_no));
    }
    roots.emplace_back(re, im);
  }
  return MonicPolynomial(std::move(roots));
}

MonicPolynomial parse_polynomial_spec(std::string_view text, double a) {
  if (text.starts_with("@")) {
    const std::string path(text.substr(1));
    std::ifstream in(path);
    if (!in) throw InvalidArgument(fmt::format("cannot open root file '{}'", path));
    return read_roots(in);
  }
  constexpr std::string_view kPrefix = "chebyshev:n=";
  if (text.starts_with(kPrefix)) {
    const std::string digits(text.substr(kPrefix.size()));
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size()) {
      throw InvalidArgument(fmt::format("cannot parse degree from '{}'", text));
    }
    return monic_chebyshev(n, a);
  }
  throw InvalidArgument(
      fmt::format("polynomial must be '@<file>' or 'chebyshev:n=<int>', got '{}'", text));
}

}  // namespace factornorm
