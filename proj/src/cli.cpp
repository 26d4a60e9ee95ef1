#include "factornorm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "factornorm/errors.hpp"
#include "factornorm/fekete.hpp"
#include "factornorm/polynomials.hpp"
#include "factornorm/potential.hpp"

namespace factornorm::cli {

namespace {

using nlohmann::json;

constexpr double kAuditSlack = 1e-9;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

std::string resolve_format(const RunConfig& config, std::string_view fallback) {
  const std::string format = config.format.empty() ? std::string(fallback) : config.format;
  if (format != "csv" && format != "json") {
    throw InvalidArgument(fmt::format("--format must be csv or json, got '{}'", format));
  }
  return format;
}

void require_positive_tol(const RunConfig& config) {
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
    throw InvalidArgument(fmt::format("--tol must be positive, got {}", config.tol));
  }
}

std::vector<std::size_t> degrees_or(const RunConfig& config, std::vector<std::size_t> fallback) {
  auto degrees = config.degrees.empty() ? std::move(fallback) : config.degrees;
  for (std::size_t n : degrees) {
    if (n < 2) throw InvalidArgument(fmt::format("degrees must be >= 2, got {}", n));
  }
  if (!std::is_sorted(degrees.begin(), degrees.end())) {
    throw InvalidArgument("--degrees must be ascending");
  }
  return degrees;
}

// Uniform sample of E for trial roots: area for disks, length otherwise.
Complex sample_point(const CompactSet& set, SplitMix64& rng) {
  if (const auto* d = set.as<Disk>()) {
    while (true) {
      const double x = 2.0 * rng.uniform() - 1.0;
      const double y = 2.0 * rng.uniform() - 1.0;
      if (x * x + y * y <= 1.0) return d->center + d->radius * Complex{x, y};
    }
  }
  if (const auto* s = set.as<Segment>()) {
    return {s->half_length * (2.0 * rng.uniform() - 1.0), 0.0};
  }
  const auto pieces = set.boundary();
  double total = 0.0;
  for (const auto& p : pieces) total += p.length();
  double pick = rng.uniform() * total;
  for (const auto& p : pieces) {
    if (pick <= p.length()) return p.from + (pick / p.length()) * (p.to - p.from);
    pick -= p.length();
  }
  return pieces.back().to;
}

struct Range {
  double lo;
  double hi;
};

Range parse_range(const std::string& text) {
  auto sep = text.find(':');
  if (sep == std::string::npos) sep = text.find(',');
  if (sep == std::string::npos) {
    throw InvalidArgument(fmt::format("--range must be lo:hi, got '{}'", text));
  }
  Range r{};
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, sep);
    const std::string hi = text.substr(sep + 1);
    r.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    r.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::exception&) {
    throw InvalidArgument(fmt::format("--range must be lo:hi, got '{}'", text));
  }
  return r;
}

}  // namespace

FactorConstantResult compute_constant(const CompactSet& set, const RunConfig& config) {
  const auto& method = config.method;
  if (method != "auto" && method != "closed" && method != "general" && method != "diam") {
    throw InvalidArgument(fmt::format("unknown --method '{}'", method));
  }
  const bool has_closed_form = set.kind() == SetKind::Disk || set.kind() == SetKind::Segment;
  if (method == "closed" || (method == "auto" && has_closed_form)) {
    if (const auto* d = set.as<Disk>()) {
      auto r = constant_disk(d->radius, config.tol);
      r.maximizer += d->center;
      return r;
    }
    if (const auto* s = set.as<Segment>()) return constant_segment(s->half_length, config.tol);
    throw InvalidArgument(fmt::format("no closed form for {} sets", to_string(set.kind())));
  }
  const auto measure = equilibrium_measure(set, config.nodes);
  if (method == "diam" || method == "auto") {
    if (auto shortcut = constant_diam_shortcut(set, measure)) return *shortcut;
    if (method == "diam") {
      throw InvalidArgument(fmt::format("diameter {} > 1: shortcut not applicable", diameter(set)));
    }
  }
  return constant_general(set, measure, config.candidates, config.tol);
}

CommandOutput cmd_constant(const RunConfig& config) {
  require_positive_tol(config);
  const auto set = parse_set_descriptor(config.set.empty() ? "disk:r=1" : config.set);
  const auto format = resolve_format(config, "json");
  const auto result = compute_constant(set, config);
  CommandOutput out;
  if (format == "json") {
    out.text = to_json(result).dump(2) + "\n";
  } else {
    out.text = fmt::format("value,maximizer_re,maximizer_im,method,error_estimate\n{},{},{},{},{}\n",
                           result.value, result.maximizer.real(), result.maximizer.imag(),
                           to_string(result.method), result.error_estimate);
  }
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  require_positive_tol(config);
  const std::string kind_text = config.set.empty() ? "disk" : config.set;
  const std::string kind = kind_text.substr(0, kind_text.find(':'));
  if (kind != "disk" && kind != "segment") {
    throw InvalidArgument(fmt::format("sweep supports disk or segment, got '{}'", kind));
  }
  const auto range = parse_range(config.range);
  if (!(range.lo > 0.0) || !(range.hi >= range.lo)) {
    throw InvalidArgument(fmt::format("--range needs 0 < lo <= hi, got {}:{}", range.lo, range.hi));
  }
  if (!(config.step > 0.0)) {
    throw InvalidArgument(fmt::format("--step must be positive, got {}", config.step));
  }
  const double span = (range.hi - range.lo) / config.step;
  if (span > 1e6) throw InvalidArgument("sweep would exceed 10^6 rows");
  const auto format = resolve_format(config, "csv");

  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<std::pair<double, double>> rows;
  rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Snap to 12 significant digits so lo + k * step lands on decimal grid points.
    const double param = std::stod(fmt::format("{:.12g}", range.lo + static_cast<double>(k) * config.step));
    const auto r = kind == "disk" ? constant_disk(param, config.tol)
                                  : constant_segment(param, config.tol);
    rows.emplace_back(param, r.value);
  }

  CommandOutput out;
  if (format == "csv") {
    out.text = fmt::format("# set={}\nparam,value\n", kind);
    for (const auto& [p, v] : rows) out.text += fmt::format("{},{}\n", p, v);
  } else {
    json j = {{"set", kind}, {"rows", json::array()}};
    for (const auto& [p, v] : rows) j["rows"].push_back({{"param", p}, {"value", v}});
    out.text = j.dump(2) + "\n";
  }
  return out;
}

CommandOutput cmd_sharpness(const RunConfig& config) {
  require_positive_tol(config);
  const auto set = parse_set_descriptor(config.set.empty() ? "segment:a=2" : config.set);
  const auto degrees = degrees_or(config, {32, 64, 128, 256});
  const auto format = resolve_format(config, "csv");
  const auto constant = compute_constant(set, config);
  const auto rows = sharpness_experiment(set, constant.maximizer, degrees, config.tol);

  CommandOutput out;
  if (format == "csv") {
    std::ostringstream text;
    write_experiment_csv(text, set, constant.maximizer, constant.value, rows);
    out.text = text.str();
  } else {
    json j = {{"set", describe(set)},
              {"u", {constant.maximizer.real(), constant.maximizer.imag()}},
              {"C_E", constant.value},
              {"rows", json::array()}};
    for (const auto& r : rows) {
      j["rows"].push_back({{"n", r.degree},
                           {"ratio", r.ratio},
                           {"norm_p", r.log_norm_p},
                           {"norm_q", r.log_norm_q},
                           {"factor_degree", r.factor_degree}});
    }
    out.text = j.dump(2) + "\n";
  }
  return out;
}

CheckSummary run_inequality_trials(const RunConfig& config) {
  require_positive_tol(config);
  if (config.trials < 1) throw InvalidArgument("--trials must be at least 1");
  std::optional<CompactSet> fixed_set;
  if (!config.set.empty()) fixed_set = parse_set_descriptor(config.set);
  std::optional<MonicPolynomial> fixed_poly;
  if (!config.poly.empty()) {
    if (!fixed_set) throw InvalidArgument("--poly needs --set");
    double a = 1.0;
    if (const auto* s = fixed_set->as<Segment>()) a = s->half_length;
    if (const auto* d = fixed_set->as<Disk>()) a = d->radius;
    fixed_poly = parse_polynomial_spec(config.poly, a);
  }

  const double norm_tol = std::min(config.tol, 1e-10);
  std::optional<double> fixed_constant;
  if (fixed_set) fixed_constant = compute_constant(*fixed_set, config).value;

  CheckSummary summary;
  summary.trials = config.trials;
  summary.worst_log_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    SplitMix64 seeder(config.seed);
    for (std::size_t k = 0; k <= trial % 4; ++k) seeder.next();
    SplitMix64 rng(seeder.next() ^ (0xD1B54A32D192ED03ULL * (trial + 1)));

    std::optional<CompactSet> drawn;
    double constant = 0.0;
    if (fixed_set) {
      constant = *fixed_constant;
    } else {
      const bool disk = rng.coin();
      const double size = 0.3 + 3.7 * rng.uniform();
      drawn = disk ? CompactSet::disk(size) : CompactSet::segment(size);
      constant = disk ? constant_disk(size, 1e-12).value : constant_segment(size, 1e-12).value;
    }
    const CompactSet& set = fixed_set ? *fixed_set : *drawn;

    MonicPolynomial p;
    if (fixed_poly) {
      p = *fixed_poly;
    } else {
      const auto degree = 1 + static_cast<std::size_t>(12.0 * rng.uniform());
      std::vector<Complex> roots;
      for (std::size_t k = 0; k < degree; ++k) roots.push_back(sample_point(set, rng));
      p = MonicPolynomial(std::move(roots));
    }
    const auto q = factor_by_predicate(p, [&rng](Complex) { return rng.coin(); });

    const double log_p = sup_norm_estimate(p, set, norm_tol).log_value;
    const double log_q = q.degree() == 0 ? 0.0 : sup_norm_estimate(q, set, norm_tol).log_value;
    const double margin =
        log_q - static_cast<double>(p.degree()) * std::log(constant) - log_p;
    if (margin > std::log1p(kAuditSlack)) ++summary.violations;
    if (margin > summary.worst_log_margin) {
      summary.worst_log_margin = margin;
      summary.worst_trial = trial;
    }
  }
  return summary;
}

CommandOutput cmd_check(const RunConfig& config) {
  resolve_format(config, "json");
  const auto summary = run_inequality_trials(config);
  const json j = {{"trials", summary.trials},
                  {"violations", summary.violations},
                  {"passed", summary.trials - summary.violations},
                  {"worst_log_margin", summary.worst_log_margin},
                  {"worst_trial", summary.worst_trial},
                  {"seed", config.seed}};
  CommandOutput out;
  out.exit_code = summary.violations == 0 ? kSuccess : kViolation;
  out.text = j.dump(2) + "\n";
  return out;
}

CommandOutput cmd_capacity(const RunConfig& config) {
  require_positive_tol(config);
  const auto set = parse_set_descriptor(config.set.empty() ? "segment:a=2" : config.set);
  const auto degrees = degrees_or(config, {128});
  const auto format = resolve_format(config, "json");
  if (config.nodes < 16) throw InvalidArgument("--nodes must be at least 16");

  std::optional<double> closed_form;
  if (const auto* d = set.as<Disk>()) closed_form = d->radius;
  if (const auto* s = set.as<Segment>()) closed_form = 0.5 * s->half_length;
  const auto measure = equilibrium_measure(set, config.nodes);

  struct Estimate {
    std::size_t n;
    double pair_product;
    double via_norm;
  };
  std::vector<Estimate> estimates;
  for (std::size_t n : degrees) {
    const auto ensemble = fekete_points(set, n);
    estimates.push_back({n, transfinite_diameter_estimate(ensemble.points),
                         capacity_via_norm(ensemble, config.tol)});
  }

  CommandOutput out;
  if (format == "json") {
    json j = {{"set", describe(set)},
              {"capacity", closed_form ? json(*closed_form) : json(nullptr)},
              {"measure_capacity", measure.capacity()},
              {"measure_source", std::string(to_string(measure.source()))},
              {"estimates", json::array()}};
    for (const auto& e : estimates) {
      j["estimates"].push_back({{"n", e.n}, {"pair_product", e.pair_product}, {"via_norm", e.via_norm}});
    }
    out.text = j.dump(2) + "\n";
  } else {
    out.text = fmt::format("# set={} capacity={}\nn,pair_product,via_norm\n", describe(set),
                           closed_form ? *closed_form : measure.capacity());
    for (const auto& e : estimates) {
      out.text += fmt::format("{},{},{}\n", e.n, e.pair_product, e.via_norm);
    }
  }
  if (!config.measure_out.empty()) {
    std::ofstream file(config.measure_out);
    if (!file) throw InvalidArgument(fmt::format("cannot write '{}'", config.measure_out));
    write_measure_csv(file, measure);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Best constants for norms of monic polynomial factors on planar sets"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--set", config.set, "Set descriptor: disk:r=R, segment:a=A, union:[l,u];..., cloud:@FILE");
    sub->add_option("--tol", config.tol, "Numerical tolerance")->capture_default_str();
    sub->add_option("--out", config.out, "Write output to this file instead of stdout");
    sub->add_option("--format", config.format, "csv or json");
  };

  auto* constant = app.add_subcommand("constant", "Compute C_E for a set");
  add_common(constant);
  constant->add_option("--nodes", config.nodes, "Measure node count")->capture_default_str();
  constant->add_option("--candidates", config.candidates, "Boundary candidates")->capture_default_str();
  constant->add_option("--method", config.method, "auto, closed, general or diam")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Tabulate C_E over disk radii or segment half-lengths");
  add_common(sweep);
  sweep->add_option("--range", config.range, "lo:hi")->capture_default_str();
  sweep->add_option("--step", config.step, "Parameter step")->capture_default_str();

  auto* sharpness = app.add_subcommand("sharpness", "Fekete-polynomial sharpness experiment");
  add_common(sharpness);
  sharpness->add_option("--degrees", config.degrees, "Ascending degrees")->delimiter(',');
  sharpness->add_option("--nodes", config.nodes, "Measure node count")->capture_default_str();
  sharpness->add_option("--candidates", config.candidates, "Boundary candidates")->capture_default_str();

  auto* check = app.add_subcommand("check", "Randomized audit of the factor inequality");
  add_common(check);
  check->add_option("--trials", config.trials, "Number of trials")->capture_default_str();
  check->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  check->add_option("--poly", config.poly, "Fixed polynomial: @FILE or chebyshev:n=N");
  check->add_option("--nodes", config.nodes, "Measure node count")->capture_default_str();
  check->add_option("--candidates", config.candidates, "Boundary candidates")->capture_default_str();

  auto* capacity = app.add_subcommand("capacity", "Capacity estimates from Fekete ensembles");
  add_common(capacity);
  capacity->add_option("--nodes", config.nodes, "Measure node count")->capture_default_str();
  capacity->add_option("--degrees", config.degrees, "Ensemble degrees")->delimiter(',');
  capacity->add_option("--measure-out", config.measure_out, "Write the measure CSV here");

  std::vector<const char*> argv{"factornorm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  config.subcommand = chosen->get_name();
  CommandOutput result;
  try {
    if (config.subcommand == "constant") {
      result = cmd_constant(config);
    } else if (config.subcommand == "sweep") {
      result = cmd_sweep(config);
    } else if (config.subcommand == "sharpness") {
      result = cmd_sharpness(config);
    } else if (config.subcommand == "check") {
      result = cmd_check(config);
    } else {
      result = cmd_capacity(config);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }

  if (config.out.empty()) {
    out << result.text;
  } else {
    std::ofstream file(config.out);
    if (!file) {
      err << "error: cannot write '" << config.out << "'\n";
      return kUsage;
    }
    file << result.text;
  }
  return result.exit_code;
}

}  // namespace factornorm::cli
