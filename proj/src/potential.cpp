#include "factornorm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "factornorm/errors.hpp"
#include "factornorm/numerics.hpp"

namespace factornorm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeFloor = 1e-14;

bool in_region(double dist2, Region region) {
  switch (region) {
    case Region::Whole: return true;
    case Region::Outside: return dist2 >= 1.0;
    case Region::Inside: return dist2 <= 1.0;
  }
  return false;
}

std::size_t panels_for(double length, double period, std::size_t per_period) {
  return std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(static_cast<double>(per_period) * length / period)));
}

// Circle |z - c| = r against u. With w = u - c = rho e^{i phi} and
// delta = theta - phi, |z - u|^2 = (r - rho)^2 + 4 r rho sin^2(delta / 2),
// symmetric in delta -> 2 pi - delta, so integrate delta in [0, pi] with
// density 1/pi. The nearest point is delta = 0.
double disk_integral(double r, Complex w, Region region, std::size_t per_period) {
  const double rho = std::abs(w);
  if (rho == 0.0) {
    return in_region(r * r, region) ? std::log(r) : 0.0;
  }
  const double gap2 = (r - rho) * (r - rho);
  auto dist2 = [&](double delta) {
    const double s = std::sin(0.5 * delta);
    return gap2 + 4.0 * r * rho * s * s;
  };
  auto integrand = [&](double delta) { return 0.5 * std::log(dist2(delta)); };

  double lo = 0.0;
  double hi = kPi;
  if (region != Region::Whole) {
    const double s2 = (1.0 - gap2) / (4.0 * r * rho);
    double cut = 0.0;
    if (s2 <= 0.0) {
      cut = 0.0;  // everything at distance >= 1
    } else if (s2 >= 1.0) {
      cut = kPi;  // everything within distance 1
    } else {
      cut = 2.0 * std::asin(std::sqrt(s2));
    }
    if (region == Region::Outside) {
      lo = cut;
    } else {
      hi = cut;
    }
  }
  if (hi <= lo) return 0.0;
  const bool graded_lo = lo == 0.0;
  const auto panels = panels_for(hi - lo, 2.0 * kPi, per_period);
  return gauss_graded(integrand, lo, hi, panels, graded_lo, false) / kPi;
}

// Segment [-a, a] with t = a cos(theta), theta in [0, pi], density 1/pi.
double segment_integral(double a, Complex u, Region region, std::size_t per_period) {
  const double x = u.real();
  const double y = u.imag();
  const double c0 = std::clamp(x / a, -1.0, 1.0);
  const double s0 = std::sqrt(std::max(0.0, 1.0 - c0 * c0));
  const double theta0 = std::acos(c0);
  const double residual = a * c0 - x;  // nonzero when x is beyond an end
  // Offsets d = theta - theta0 keep the gap accurate near the nearest
  // point, including theta0 = pi where absolute abscissae run out of bits.
  auto real_gap = [&](double d) {
    const double half = 0.5 * d;
    return -2.0 * a * (s0 * std::cos(half) + c0 * std::sin(half)) * std::sin(half) + residual;
  };
  auto dist2 = [&](double d) {
    const double g = real_gap(d);
    return g * g + y * y;
  };

  std::vector<double> breaks{0.0, kPi};
  if (theta0 > 0.0 && theta0 < kPi) breaks.push_back(theta0);
  if (region != Region::Whole && y * y <= 1.0) {
    const double h = std::sqrt(1.0 - y * y);
    for (const double t : {x - h, x + h}) {
      if (t > -a && t < a) breaks.push_back(std::acos(t / a));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    if (!in_region(dist2(0.5 * (lo + hi) - theta0), region)) continue;
    const auto panels = panels_for(hi - lo, kPi, per_period);
    if (lo == theta0) {
      auto f = [&](double d) { return 0.5 * std::log(dist2(d)); };
      sum += gauss_graded(f, 0.0, hi - lo, panels, true, false);
    } else if (hi == theta0) {
      auto f = [&](double d) { return 0.5 * std::log(dist2(-d)); };
      sum += gauss_graded(f, 0.0, hi - lo, panels, true, false);
    } else {
      auto f = [&](double theta) { return 0.5 * std::log(dist2(theta - theta0)); };
      sum += gauss_graded(f, lo, hi, panels, false, false);
    }
  }
  return sum / kPi;
}

}  // namespace

std::string_view to_string(MeasureSource source) {
  switch (source) {
    case MeasureSource::ClosedFormDisk: return "ClosedFormDisk";
    case MeasureSource::ClosedFormSegment: return "ClosedFormSegment";
    case MeasureSource::FeketeApprox: return "FeketeApprox";
  }
  return "unknown";
}

EquilibriumMeasure::EquilibriumMeasure(std::vector<Complex> nodes,
                                       std::vector<double> weights,
                                       double capacity, MeasureSource source)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      capacity_(capacity),
      source_(source) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw InvalidArgument("measure needs matching, nonempty node and weight lists");
  }
  if (!(capacity_ > 0.0) || !std::isfinite(capacity_)) {
    throw InvalidArgument(fmt::format("capacity must be positive, got {}", capacity_));
  }
  double mass = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgument("measure weights must be positive");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-12) {
    throw InvalidArgument(fmt::format("measure mass must be 1, got {}", mass));
  }
}

EquilibriumMeasure equilibrium_disk(double r, std::size_t node_count, Complex center) {
  if (!(r > 0.0)) throw InvalidArgument(fmt::format("disk radius must be positive, got {}", r));
  if (node_count < 4) {
    throw InvalidArgument(fmt::format("disk measure needs at least 4 nodes, got {}", node_count));
  }
  std::vector<Complex> nodes;
  nodes.reserve(node_count);
  const double n = static_cast<double>(node_count);
  for (std::size_t j = 0; j < node_count; ++j) {
    nodes.push_back(center + std::polar(r, 2.0 * kPi * static_cast<double>(j) / n));
  }
  EquilibriumMeasure m(std::move(nodes), std::vector<double>(node_count, 1.0 / n), r,
                       MeasureSource::ClosedFormDisk);
  m.center_ = center;
  m.radius_ = r;
  return m;
}

EquilibriumMeasure equilibrium_segment(double a, std::size_t node_count) {
  if (!(a > 0.0)) throw InvalidArgument(fmt::format("half-length must be positive, got {}", a));
  if (node_count < 2) {
    throw InvalidArgument(fmt::format("segment measure needs at least 2 nodes, got {}", node_count));
  }
  std::vector<Complex> nodes;
  nodes.reserve(node_count);
  const double n = static_cast<double>(node_count);
  for (std::size_t j = 1; j <= node_count; ++j) {
    nodes.emplace_back(a * std::cos((2.0 * static_cast<double>(j) - 1.0) * kPi / (2.0 * n)), 0.0);
  }
  EquilibriumMeasure m(std::move(nodes), std::vector<double>(node_count, 1.0 / n), 0.5 * a,
                       MeasureSource::ClosedFormSegment);
  m.radius_ = a;
  return m;
}

double transfinite_diameter_estimate(std::span<const Complex> points) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("transfinite diameter needs at least 2 points");
  const double energy = log_energy(points);
  if (!std::isfinite(energy)) {
    throw InvalidArgument("transfinite diameter undefined for coincident points");
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return std::exp(energy / pairs);
}

EquilibriumMeasure equilibrium_from_fekete(const FeketeEnsemble& ensemble) {
  const std::size_t n = ensemble.degree();
  if (n < 16) {
    throw InvalidArgument(fmt::format("Fekete measure needs degree >= 16, got {}", n));
  }
  const double cap = transfinite_diameter_estimate(ensemble.points);
  return EquilibriumMeasure(ensemble.points,
                            std::vector<double>(n, 1.0 / static_cast<double>(n)), cap,
                            MeasureSource::FeketeApprox);
}

EquilibriumMeasure equilibrium_measure(const CompactSet& set, std::size_t node_count) {
  if (const auto* d = set.as<Disk>()) return equilibrium_disk(d->radius, node_count, d->center);
  if (const auto* s = set.as<Segment>()) return equilibrium_segment(s->half_length, node_count);
  return equilibrium_from_fekete(leja_points(set, node_count, 20 * node_count));
}

LogIntegral discrete_log_integral(std::span<const Complex> nodes,
                                  std::span<const double> weights, Complex u,
                                  Region region) {
  LogIntegral out;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double d = std::abs(nodes[j] - u);
    if (!in_region(d * d, region)) continue;
    if (d < kNodeFloor) {
      out.floored = true;
      out.value += weights[j] * std::log(kNodeFloor);
    } else {
      out.value += weights[j] * std::log(d);
    }
  }
  return out;
}

LogIntegral integrate_log_distance(const EquilibriumMeasure& measure, Complex u,
                                   Region region, std::size_t resolution) {
  const bool parametric = measure.radius() > 0.0 &&
                          measure.source() != MeasureSource::FeketeApprox;
  if (!parametric) {
    return discrete_log_integral(measure.nodes(), measure.weights(), u, region);
  }
  if (resolution == 0) resolution = measure.size();
  const std::size_t per_period = std::max<std::size_t>(2, resolution / 16);
  LogIntegral out;
  if (measure.source() == MeasureSource::ClosedFormDisk) {
    out.value = disk_integral(measure.radius(), u - measure.center(), region, per_period);
  } else {
    out.value = segment_integral(measure.radius(), u, region, per_period);
  }
  return out;
}

LogIntegral log_potential(const EquilibriumMeasure& measure, Complex u) {
  return integrate_log_distance(measure, u, Region::Whole);
}

GreenValue green_function(const EquilibriumMeasure& measure, Complex z) {
  const double raw = -std::log(measure.capacity()) + log_potential(measure, z).value;
  if (raw < 0.0) return {0.0, -raw};
  return {raw, 0.0};
}

void write_measure_csv(std::ostream& out, const EquilibriumMeasure& measure) {
  out << fmt::format("# capacity={} source={}\n", measure.capacity(),
                     to_string(measure.source()));
  out << "re,im,weight\n";
  for (std::size_t j = 0; j < measure.size(); ++j) {
    out << fmt::format("{},{},{}\n", measure.nodes()[j].real(), measure.nodes()[j].imag(),
                       measure.weights()[j]);
  }
}

EquilibriumMeasure read_measure_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("# capacity=")) {
    throw InvalidArgument("measure CSV must start with '# capacity=<float> source=<tag>'");
  }
  std::istringstream head(line.substr(11));
  double capacity = 0.0;
  std::string source_field;
  if (!(head >> capacity >> source_field) || !source_field.starts_with("source=")) {
    throw InvalidArgument("malformed measure CSV header");
  }
  const auto tag = source_field.substr(7);
  MeasureSource source;
  if (tag == "ClosedFormDisk") {
    source = MeasureSource::ClosedFormDisk;
  } else if (tag == "ClosedFormSegment") {
    source = MeasureSource::ClosedFormSegment;
  } else if (tag == "FeketeApprox") {
    source = MeasureSource::FeketeApprox;
  } else {
    throw InvalidArgument(fmt::format("unknown measure source '{}'", tag));
  }
  std::vector<Complex> nodes;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    if (line.empty() || line == "re,im,weight" || line.starts_with("#")) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double re = 0.0;
    double im = 0.0;
    double w = 0.0;
    if (!(row >> re >> im >> w)) {
      throw InvalidArgument(fmt::format("malformed measure row '{}'", line));
    }
    nodes.emplace_back(re, im);
    weights.push_back(w);
  }
  return EquilibriumMeasure(std::move(nodes), std::move(weights), capacity, source);
}

}  // namespace factornorm
