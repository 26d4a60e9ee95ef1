#include "factornorm/sets.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "factornorm/errors.hpp"

namespace factornorm {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_double(std::string_view text, std::string_view what) {
  // from_chars for double is missing from older libstdc++; strtod is fine here.
  std::string buffer(text);
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  if (buffer.empty() || end != buffer.c_str() + buffer.size() ||
      !std::isfinite(value)) {
    throw InvalidArgument(fmt::format("cannot parse {} from '{}'", what, text));
  }
  return value;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidArgument(fmt::format("cannot parse boolean from '{}'", text));
}

// Chebyshev interior points for a chord with cosine spacing, as s values in
// increasing order: x_k = cos((2k-1)pi/(2m)) maps to s = 1 - (2k-1)/(2m).
void append_segment_params(std::vector<BoundaryParam>& out, std::size_t piece,
                           std::size_t count) {
  out.push_back({piece, 0.0});
  const std::size_t interior = count - 2;
  for (std::size_t j = 0; j < interior; ++j) {
    const std::size_t k = interior - j;
    out.push_back(
        {piece, 1.0 - static_cast<double>(2 * k - 1) / (2.0 * interior)});
  }
  out.push_back({piece, 1.0});
}

double distance_to_chord(Complex from, Complex to, Complex z) {
  const Complex d = to - from;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - from);
  const double t =
      std::clamp(((z - from) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (from + t * d));
}

}  // namespace

Complex BoundaryPiece::point(double s) const {
  if (shape == Shape::Circle) {
    return center + std::polar(radius, 2.0 * kPi * s);
  }
  if (cosine_spacing) {
    const Complex mid = 0.5 * (from + to);
    const Complex half = 0.5 * (to - from);
    if (s <= 0.0) return from;
    if (s >= 1.0) return to;
    return mid - half * std::cos(kPi * s);
  }
  return from + s * (to - from);
}

double BoundaryPiece::length() const {
  if (shape == Shape::Circle) return 2.0 * kPi * radius;
  return std::abs(to - from);
}

CompactSet CompactSet::disk(double radius, Complex center) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument(fmt::format("disk radius must be positive, got {}", radius));
  }
  return CompactSet(Disk{center, radius}, true);
}

CompactSet CompactSet::segment(double half_length) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw InvalidArgument(
        fmt::format("segment half-length must be positive, got {}", half_length));
  }
  return CompactSet(Segment{half_length}, true);
}

CompactSet CompactSet::segment_union(std::vector<Interval> intervals) {
  if (intervals.empty()) {
    throw InvalidArgument("segment union needs at least one interval");
  }
  for (const auto& iv : intervals) {
    if (!(iv.lower < iv.upper) || !std::isfinite(iv.lower) ||
        !std::isfinite(iv.upper)) {
      throw InvalidArgument(fmt::format(
          "interval [{}, {}] must have a nonempty interior", iv.lower, iv.upper));
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lower < y.lower; });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].lower <= intervals[i - 1].upper) {
      throw InvalidArgument(fmt::format("intervals [{}, {}] and [{}, {}] overlap",
                                        intervals[i - 1].lower, intervals[i - 1].upper,
                                        intervals[i].lower, intervals[i].upper));
    }
  }
  return CompactSet(SegmentUnion{std::move(intervals)}, true);
}

CompactSet CompactSet::boundary_cloud(std::vector<Complex> points, bool closed,
                                      bool regular) {
  for (const auto& z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("cloud points must be finite");
    }
  }
  // Fewer than three distinct points cannot stand in for a continuum.
  std::vector<Complex> distinct;
  for (const auto& z : points) {
    if (std::none_of(distinct.begin(), distinct.end(),
                     [&](Complex w) { return w == z; })) {
      distinct.push_back(z);
      if (distinct.size() >= 3) break;
    }
  }
  if (distinct.size() < 3) {
    throw InvalidArgument("boundary cloud needs at least 3 distinct points");
  }
  return CompactSet(BoundaryCloud{std::move(points), closed}, regular);
}

SetKind CompactSet::kind() const {
  return static_cast<SetKind>(geometry_.index());
}

std::vector<BoundaryPiece> CompactSet::boundary() const {
  std::vector<BoundaryPiece> pieces;
  if (const auto* d = as<Disk>()) {
    BoundaryPiece p;
    p.shape = BoundaryPiece::Shape::Circle;
    p.center = d->center;
    p.radius = d->radius;
    pieces.push_back(p);
  } else if (const auto* s = as<Segment>()) {
    pieces.push_back({.from = -s->half_length, .to = s->half_length,
                      .cosine_spacing = true});
  } else if (const auto* u = as<SegmentUnion>()) {
    for (const auto& iv : u->intervals) {
      pieces.push_back({.from = iv.lower, .to = iv.upper, .cosine_spacing = true});
    }
  } else if (const auto* c = as<BoundaryCloud>()) {
    const auto& pts = c->points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      pieces.push_back({.from = pts[i], .to = pts[i + 1]});
    }
    if (c->closed && pts.back() != pts.front()) {
      pieces.push_back({.from = pts.back(), .to = pts.front()});
    }
  }
  return pieces;
}

Complex CompactSet::point(BoundaryParam param) const {
  // Cheap paths avoid rebuilding the piece list in hot loops.
  if (const auto* d = as<Disk>()) {
    return d->center + std::polar(d->radius, 2.0 * kPi * param.s);
  }
  if (const auto* s = as<Segment>()) {
    if (param.s <= 0.0) return -s->half_length;
    if (param.s >= 1.0) return s->half_length;
    return -s->half_length * std::cos(kPi * param.s);
  }
  const auto pieces = boundary();
  if (param.piece >= pieces.size()) {
    throw InvalidArgument("boundary parameter out of range");
  }
  return pieces[param.piece].point(param.s);
}

double diameter(const CompactSet& set) {
  if (const auto* d = set.as<Disk>()) return 2.0 * d->radius;
  if (const auto* s = set.as<Segment>()) return 2.0 * s->half_length;
  if (const auto* u = set.as<SegmentUnion>()) {
    return u->intervals.back().upper - u->intervals.front().lower;
  }
  const auto& pts = set.as<BoundaryCloud>()->points;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, std::abs(pts[i] - pts[j]));
    }
  }
  return best;
}

CompactSet scale(const CompactSet& set, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument(fmt::format("dilation factor must be positive, got {}", alpha));
  }
  if (const auto* d = set.as<Disk>()) {
    return CompactSet::disk(alpha * d->radius, alpha * d->center);
  }
  if (const auto* s = set.as<Segment>()) {
    return CompactSet::segment(alpha * s->half_length);
  }
  if (const auto* u = set.as<SegmentUnion>()) {
    auto intervals = u->intervals;
    for (auto& iv : intervals) {
      iv.lower *= alpha;
      iv.upper *= alpha;
    }
    return CompactSet::segment_union(std::move(intervals));
  }
  const auto* c = set.as<BoundaryCloud>();
  auto pts = c->points;
  for (auto& z : pts) z *= alpha;
  return CompactSet::boundary_cloud(std::move(pts), c->closed, set.regular());
}

std::vector<BoundaryParam> candidate_params(const CompactSet& set,
                                            std::size_t count) {
  if (count < 2) {
    throw InvalidArgument(fmt::format("need at least 2 boundary candidates, got {}", count));
  }
  std::vector<BoundaryParam> params;
  if (set.as<Disk>()) {
    params.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      params.push_back({0, static_cast<double>(k) / static_cast<double>(count)});
    }
  } else if (set.as<Segment>()) {
    append_segment_params(params, 0, count);
  } else if (const auto* u = set.as<SegmentUnion>()) {
    double total = 0.0;
    for (const auto& iv : u->intervals) total += iv.upper - iv.lower;
    for (std::size_t i = 0; i < u->intervals.size(); ++i) {
      const double share = (u->intervals[i].upper - u->intervals[i].lower) / total;
      const auto n = std::max<std::size_t>(
          2, static_cast<std::size_t>(std::lround(share * static_cast<double>(count))));
      append_segment_params(params, i, n);
    }
  } else {
    const auto* c = set.as<BoundaryCloud>();
    const auto pieces = set.boundary();
    for (std::size_t i = 0; i < pieces.size(); ++i) params.push_back({i, 0.0});
    if (!c->closed || c->points.back() == c->points.front()) {
      params.push_back({pieces.size() - 1, 1.0});
    }
  }
  return params;
}

std::vector<Complex> boundary_candidates(const CompactSet& set,
                                         std::size_t count) {
  const auto params = candidate_params(set, count);
  std::vector<Complex> points;
  points.reserve(params.size());
  if (set.kind() == SetKind::Disk || set.kind() == SetKind::Segment) {
    for (const auto& p : params) points.push_back(set.point(p));
  } else {
    const auto pieces = set.boundary();
    for (const auto& p : params) points.push_back(pieces[p.piece].point(p.s));
  }
  return points;
}

double distance_to_set(const CompactSet& set, Complex z) {
  if (const auto* d = set.as<Disk>()) {
    return std::max(0.0, std::abs(z - d->center) - d->radius);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : set.boundary()) {
    best = std::min(best, distance_to_chord(piece.from, piece.to, z));
  }
  return best;
}

std::vector<Complex> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open point file '{}'", path));
  std::vector<Complex> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream fields{std::string(text)};
    double x = 0.0;
    double y = 0.0;
    std::string extra;
    if (!(fields >> x >> y) || (fields >> extra)) {
      throw InvalidArgument(
          fmt::format("{}:{}: expected two numbers 'x y'", path, line_no));
    }
    points.emplace_back(x, y);
  }
  return points;
}

CompactSet parse_set_descriptor(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument(fmt::format("set descriptor '{}' lacks a kind prefix", text));
  }
  const auto kind = text.substr(0, colon);
  const auto body = trim(text.substr(colon + 1));

  if (kind == "disk" || kind == "segment") {
    const char* key = kind == "disk" ? "r=" : "a=";
    const auto options = split(body, ';');
    if (!options.front().starts_with(key)) {
      throw InvalidArgument(fmt::format("expected '{}:{}<float>'", kind, key));
    }
    const double value = parse_double(options.front().substr(2), kind == "disk" ? "radius" : "half-length");
    if (kind == "segment") {
      if (options.size() != 1) throw InvalidArgument("segment takes only a=<float>");
      return CompactSet::segment(value);
    }
    Complex center{};
    for (std::size_t i = 1; i < options.size(); ++i) {
      if (!options[i].starts_with("c=")) {
        throw InvalidArgument(fmt::format("unknown disk option '{}'", options[i]));
      }
      const auto coords = split(options[i].substr(2), ',');
      if (coords.size() != 2) throw InvalidArgument("disk center must be c=<re>,<im>");
      center = {parse_double(coords[0], "center"), parse_double(coords[1], "center")};
    }
    return CompactSet::disk(value, center);
  }

  if (kind == "union") {
    std::vector<Interval> intervals;
    for (const auto part : split(body, ';')) {
      if (part.size() < 2 || part.front() != '[' || part.back() != ']') {
        throw InvalidArgument(fmt::format("interval '{}' must look like [l,u]", part));
      }
      const auto bounds = split(part.substr(1, part.size() - 2), ',');
      if (bounds.size() != 2) {
        throw InvalidArgument(fmt::format("interval '{}' must have two bounds", part));
      }
      intervals.push_back({parse_double(bounds[0], "interval bound"),
                           parse_double(bounds[1], "interval bound")});
    }
    return CompactSet::segment_union(std::move(intervals));
  }

  if (kind == "cloud") {
    const auto options = split(body, ';');
    if (!options.front().starts_with("@") || options.front().size() < 2) {
      throw InvalidArgument("expected 'cloud:@<path>'");
    }
    bool closed = true;
    bool regular = false;
    for (std::size_t i = 1; i < options.size(); ++i) {
      if (options[i].starts_with("closed=")) {
        closed = parse_bool(options[i].substr(7));
      } else if (options[i].starts_with("regular=")) {
        regular = parse_bool(options[i].substr(8));
      } else {
        throw InvalidArgument(fmt::format("unknown cloud option '{}'", options[i]));
      }
    }
    return CompactSet::boundary_cloud(
        read_point_file(std::string(options.front().substr(1))), closed, regular);
  }

  throw InvalidArgument(fmt::format("unknown set kind '{}'", kind));
}

std::string describe(const CompactSet& set) {
  if (const auto* d = set.as<Disk>()) {
    if (d->center == Complex{}) return fmt::format("disk:r={}", d->radius);
    return fmt::format("disk:r={};c={},{}", d->radius, d->center.real(),
                       d->center.imag());
  }
  if (const auto* s = set.as<Segment>()) {
    return fmt::format("segment:a={}", s->half_length);
  }
  if (const auto* u = set.as<SegmentUnion>()) {
    std::string out = "union:";
    for (std::size_t i = 0; i < u->intervals.size(); ++i) {
      if (i > 0) out += ';';
      out += fmt::format("[{},{}]", u->intervals[i].lower, u->intervals[i].upper);
    }
    return out;
  }
  return fmt::format("cloud:{}pts", set.as<BoundaryCloud>()->points.size());
}

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::Disk: return "disk";
    case SetKind::Segment: return "segment";
    case SetKind::SegmentUnion: return "union";
    case SetKind::BoundaryCloud: return "cloud";
  }
  return "unknown";
}

}  // namespace factornorm
