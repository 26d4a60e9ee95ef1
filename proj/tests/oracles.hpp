#pragma once

// Reference values and independent numerical routines used to check the
// library. Everything here avoids the library's own quadrature code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

namespace oracle {

constexpr double kPi = std::numbers::pi;

// 30-digit mpmath evaluations, rounded to double.
constexpr double kBeta = 1.38135644451849779;
constexpr double kDisk08 = 1.50324371605605;
constexpr double kDisk2 = 1.17317898596263;
constexpr double kDisk4 = 1.08290456436120;
constexpr double kDisk1024 = 1.00031089782106;
constexpr double kSegment08 = 2.85725077814738;
constexpr double kSegment1 = 2.53373727948584;
constexpr double kSegment2 = 1.90814562681279;
constexpr double kSegment3 = 1.69019557533888;
constexpr double kSegment4 = 1.57364686694306;
constexpr double kSegment1024 = 1.02853519389460;

inline double tanh_sinh(auto f, double lo, double hi) {
  static boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, lo, hi, 1e-14);
}

/// exp((1/pi) int_0^{2 pi / 3} log(2 cos(t/2)) dt)
inline double beta() {
  const double v = tanh_sinh([](double t) { return std::log(2.0 * std::cos(0.5 * t)); }, 0.0,
                             2.0 * kPi / 3.0);
  return std::exp(v / kPi);
}

/// Disk constant from the inner truncated integral at u = r:
/// exp(-(1/pi) int_0^{2 asin(1/2r)} log(2 r sin(d/2)) dd), singular at 0.
inline double disk_constant(double r) {
  if (r <= 0.5) return 1.0 / r;
  const double hi = 2.0 * std::asin(1.0 / (2.0 * r));
  const double v = tanh_sinh([r](double d) { return std::log(2.0 * r * std::sin(0.5 * d)); }, 0.0, hi);
  return std::exp(-v / kPi);
}

/// Segment constant in the original t variable with the arcsine weight,
/// (2/a) exp(int_{1-a}^{a} log(t + a) / (pi sqrt(a^2 - t^2)) dt).
inline double segment_constant(double a) {
  if (a <= 0.5) return 2.0 / a;
  auto f = [a](double t, double tc) {
    // tc > 0 is the distance to the upper end a, which keeps a - t exact.
    const double gap = tc > 0.0 ? tc : a - t;
    return std::log(t + a) / (kPi * std::sqrt(gap * (a + t)));
  };
  static boost::math::quadrature::tanh_sinh<double> integrator;
  const double v = integrator.integrate(f, 1.0 - a, a, 1e-14);
  return 2.0 / a * std::exp(v);
}

/// Log potential of the arcsine measure of [-a, a] at z:
/// log |z + sqrt(z^2 - a^2)| - log 2, on the branch with modulus >= a.
inline double arcsine_potential(double a, std::complex<double> z) {
  const auto s = std::sqrt(z * z - a * a);
  return std::log(std::max(std::abs(z + s), std::abs(z - s))) - std::log(2.0);
}

inline double pair_log_energy(const std::vector<double>& x) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) e += std::log(std::abs(x[i] - x[j]));
  }
  return e;
}

/// Fekete points of [-1, 1] by multistart coordinate ascent: each sweep
/// moves one point at a time to the Brent maximizer between its neighbours.
inline std::vector<double> fekete_interval_bruteforce(std::size_t n, unsigned seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> best;
  double best_energy = -INFINITY;
  for (int start = 0; start < 8; ++start) {
    std::vector<double> x(n);
    for (auto& v : x) v = unif(rng);
    std::sort(x.begin(), x.end());
    for (int sweep = 0; sweep < 400; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = i == 0 ? -1.0 : x[i - 1];
        const double hi = i + 1 == n ? 1.0 : x[i + 1];
        auto neg = [&](double t) {
          double e = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            if (j != i) e -= std::log(std::abs(t - x[j]) + 1e-300);
          }
          return e;
        };
        x[i] = boost::math::tools::brent_find_minima(neg, lo, hi, 50).first;
      }
    }
    const double e = pair_log_energy(x);
    if (e > best_energy) {
      best_energy = e;
      best = x;
    }
  }
  return best;
}

}  // namespace oracle
