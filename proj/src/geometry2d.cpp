#include "nlcap/geometry2d.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlcap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

bool point_in_polygon(const Polygon& poly, Vec2 p) {
  // Even-odd rule.
  bool inside = false;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const bool crosses = (v[i].y > p.y) != (v[j].y > p.y);
    if (crosses) {
      const double t = (p.y - v[i].y) / (v[j].y - v[i].y);
      if (p.x < v[i].x + t * (v[j].x - v[i].x)) inside = !inside;
    }
  }
  return inside;
}

double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

// Merges a sorted list of possibly touching intervals in place.
template <class T>
void normalize_parts(std::vector<std::pair<T, T>>& parts) {
  std::sort(parts.begin(), parts.end());
  std::vector<std::pair<T, T>> out;
  for (auto& pr : parts) {
    if (!(pr.first < pr.second)) continue;
    if (!out.empty() && pr.first <= out.back().second) {
      out.back().second = std::max(out.back().second, pr.second);
    } else {
      out.push_back(pr);
    }
  }
  parts.swap(out);
}

template <class T>
std::vector<std::pair<T, T>> intersect_parts(const std::vector<std::pair<T, T>>& a,
                                             const std::vector<std::pair<T, T>>& b) {
  std::vector<std::pair<T, T>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const T lo = std::max(a[i].first, b[j].first);
    const T hi = std::min(a[i].second, b[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---- shape queries ---------------------------------------------------------

bool contains(const Shape& s, Vec2 p) {
  if (const Disk* d = std::get_if<Disk>(&s)) {
    return (p - d->center).norm() < d->radius;
  }
  return point_in_polygon(std::get<Polygon>(s), p);
}

bool contains(const Region& r, Vec2 p) {
  if (r.base && !contains(*r.base, p)) return false;
  for (const Shape& h : r.holes)
    if (contains(h, p)) return false;
  return true;
}

double area(const Shape& s) {
  if (const Disk* d = std::get_if<Disk>(&s)) return kPi * d->radius * d->radius;
  const auto& v = std::get<Polygon>(s).vertices;
  double twice = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    twice += v[j].x * v[i].y - v[i].x * v[j].y;
  return 0.5 * std::abs(twice);
}

Vec2 shape_center(const Shape& s) {
  if (const Disk* d = std::get_if<Disk>(&s)) return d->center;
  const auto& v = std::get<Polygon>(s).vertices;
  Vec2 c;
  for (const Vec2& p : v) c = c + p;
  return c * (1.0 / static_cast<double>(v.size()));
}

Disk bounding_disk(const Shape& s) {
  if (const Disk* d = std::get_if<Disk>(&s)) return *d;
  const Vec2 c = shape_center(s);
  double r = 0.0;
  for (const Vec2& p : std::get<Polygon>(s).vertices) r = std::max(r, (p - c).norm());
  return {c, r};
}

double max_distance(const Shape& s, Vec2 x) {
  if (const Disk* d = std::get_if<Disk>(&s)) return (x - d->center).norm() + d->radius;
  double r = 0.0;
  for (const Vec2& p : std::get<Polygon>(s).vertices) r = std::max(r, (p - x).norm());
  return r;
}

double distance_to_shape(const Shape& s, Vec2 x) {
  if (contains(s, x)) return 0.0;
  if (const Disk* d = std::get_if<Disk>(&s))
    return std::max(0.0, (x - d->center).norm() - d->radius);
  const auto& v = std::get<Polygon>(s).vertices;
  double best = kInf;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    best = std::min(best, dist_point_segment(x, v[j], v[i]));
  return best;
}

double distance_lower_bound(const Region& r, Vec2 x) {
  if (contains(r, x)) return 0.0;
  double d = 0.0;
  if (r.base && !contains(*r.base, x)) d = std::max(d, distance_to_shape(*r.base, x));
  for (const Shape& h : r.holes) {
    if (!contains(h, x)) continue;
    if (const Disk* hd = std::get_if<Disk>(&h)) {
      d = std::max(d, hd->radius - (x - hd->center).norm());
    } else {
      const auto& v = std::get<Polygon>(h).vertices;
      double best = kInf;
      for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        best = std::min(best, dist_point_segment(x, v[j], v[i]));
      d = std::max(d, best);
    }
  }
  return d;
}

double structure_radius(const Region& r, Vec2 x) {
  double m = 0.0;
  if (r.base) m = std::max(m, max_distance(*r.base, x));
  for (const Shape& h : r.holes) m = std::max(m, max_distance(h, x));
  return m;
}

// ---- JSON ------------------------------------------------------------------

Shape shape_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "disk") {
    const auto c = j.at("center");
    Disk d{{c.at(0).get<double>(), c.at(1).get<double>()}, j.at("radius").get<double>()};
    if (!(d.radius > 0.0)) throw std::invalid_argument("disk: radius must be positive");
    return d;
  }
  if (type == "polygon") {
    Polygon p;
    for (const auto& v : j.at("vertices"))
      p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    if (p.vertices.size() < 3)
      throw std::invalid_argument("polygon: need at least 3 vertices");
    return p;
  }
  throw std::invalid_argument("shape: unknown type '" + type + "'");
}

nlohmann::json shape_to_json(const Shape& s) {
  nlohmann::json j;
  if (const Disk* d = std::get_if<Disk>(&s)) {
    j["type"] = "disk";
    j["center"] = {d->center.x, d->center.y};
    j["radius"] = d->radius;
  } else {
    j["type"] = "polygon";
    auto& verts = j["vertices"] = nlohmann::json::array();
    for (const Vec2& v : std::get<Polygon>(s).vertices) verts.push_back({v.x, v.y});
  }
  return j;
}

// ---- interval sets ---------------------------------------------------------

IntervalSet IntervalSet::all() {
  IntervalSet s;
  s.parts_ = {{0.0, kInf}};
  return s;
}
IntervalSet IntervalSet::empty() { return IntervalSet{}; }
IntervalSet IntervalSet::of(double lo, double hi) {
  IntervalSet s;
  lo = std::max(lo, 0.0);
  if (lo < hi) s.parts_ = {{lo, hi}};
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  IntervalSet out;
  out.parts_ = intersect_parts(parts_, o.parts_);
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  IntervalSet out;
  out.parts_ = parts_;
  out.parts_.insert(out.parts_.end(), o.parts_.begin(), o.parts_.end());
  normalize_parts(out.parts_);
  return out;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet out;
  double cursor = 0.0;
  for (const auto& [lo, hi] : parts_) {
    if (cursor < lo) out.parts_.emplace_back(cursor, lo);
    cursor = std::max(cursor, hi);
  }
  if (cursor < kInf) out.parts_.emplace_back(cursor, kInf);
  return out;
}

IntervalSet ray_in_halfplane(Vec2 x, Vec2 d, Vec2 n, double c) {
  const double a = n.dot(d);
  const double b = n.dot(x) - c;  // inside means b + r a > 0
  if (a == 0.0) return b > 0.0 ? IntervalSet::all() : IntervalSet::empty();
  const double r0 = -b / a;
  if (a > 0.0) return IntervalSet::of(std::max(r0, 0.0), kInf);
  return r0 > 0.0 ? IntervalSet::of(0.0, r0) : IntervalSet::empty();
}

IntervalSet ray_in_disk(Vec2 x, Vec2 d, const Disk& disk) {
  const Vec2 w = x - disk.center;
  const double a = d.dot(d);
  const double b = 2.0 * w.dot(d);
  const double c = w.dot(w) - disk.radius * disk.radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) return IntervalSet::empty();
  const double sq = std::sqrt(disc);
  // Stable quadratic roots.
  const double q = -0.5 * (b + std::copysign(sq, b));
  double r1 = q / a;
  double r2 = c != 0.0 ? c / q : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  if (r2 <= 0.0) return IntervalSet::empty();
  return IntervalSet::of(std::max(r1, 0.0), r2);
}

IntervalSet ray_in_disk_through_origin_point(Vec2 x, Vec2 d, Vec2 center) {
  const double chord = -2.0 * (x - center).dot(d) / d.dot(d);
  return chord > 0.0 ? IntervalSet::of(0.0, chord) : IntervalSet::empty();
}

// ---- arc sets ---------------------------------------------------------------

ArcSet ArcSet::full() {
  ArcSet s;
  s.parts_ = {{0.0, kTwoPi}};
  return s;
}
ArcSet ArcSet::empty() { return ArcSet{}; }

ArcSet ArcSet::centered(double mid, double half_width) {
  if (half_width <= 0.0) return empty();
  if (half_width >= kPi) return full();
  ArcSet s;
  const double lo = wrap_angle(mid - half_width);
  const double hi = wrap_angle(mid + half_width);
  if (lo < hi) {
    s.parts_ = {{lo, hi}};
  } else {
    s.parts_ = {{0.0, hi}, {lo, kTwoPi}};
  }
  return s;
}

ArcSet ArcSet::intersect(const ArcSet& o) const {
  ArcSet out;
  out.parts_ = intersect_parts(parts_, o.parts_);
  return out;
}

ArcSet ArcSet::unite(const ArcSet& o) const {
  ArcSet out;
  out.parts_ = parts_;
  out.parts_.insert(out.parts_.end(), o.parts_.begin(), o.parts_.end());
  normalize_parts(out.parts_);
  return out;
}

ArcSet ArcSet::complement() const {
  ArcSet out;
  double cursor = 0.0;
  for (const auto& [lo, hi] : parts_) {
    if (cursor < lo) out.parts_.emplace_back(cursor, lo);
    cursor = std::max(cursor, hi);
  }
  if (cursor < kTwoPi) out.parts_.emplace_back(cursor, kTwoPi);
  return out;
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const auto& [lo, hi] : parts_) m += hi - lo;
  return m;
}

double arc_halfwidth_inside_disk(double dist, double r, double R) {
  if (dist <= 1e-300) return r < R ? kPi : 0.0;
  if (dist + r <= R) return kPi;
  if (dist >= r + R || r >= dist + R) return 0.0;
  // cos(g) = (dist^2 + r^2 - R^2) / (2 dist r); evaluate through the
  // cancellation-free products 1 -+ cos(g).
  const double u = (R - dist + r) * (R + dist - r) / (2.0 * dist * r);  // 1 - cos
  if (u <= 1.0) return 2.0 * std::asin(std::sqrt(0.5 * u));
  const double v = (dist + r - R) * (dist + r + R) / (2.0 * dist * r);  // 1 + cos
  return kPi - 2.0 * std::asin(std::sqrt(std::clamp(0.5 * v, 0.0, 1.0)));
}

ArcSet circle_arcs_in_halfplane(Vec2 x, double r, Vec2 n, double c) {
  const double nn = n.norm();
  const double q = (c - n.dot(x)) / (r * nn);
  if (q <= -1.0) return ArcSet::full();
  if (q >= 1.0) return ArcSet::empty();
  return ArcSet::centered(std::atan2(n.y, n.x), std::acos(q));
}

namespace {

ArcSet circle_arcs_inside_disk(Vec2 x, double r, const Disk& d) {
  const Vec2 w = d.center - x;
  const double dist = w.norm();
  const double hw = arc_halfwidth_inside_disk(dist, r, d.radius);
  if (hw >= kPi) return ArcSet::full();
  if (hw <= 0.0) return ArcSet::empty();
  return ArcSet::centered(std::atan2(w.y, w.x), hw);
}

ArcSet circle_arcs_inside_polygon(Vec2 x, double r, const Polygon& poly) {
  // Crossing angles of the circle with each edge, then midpoint tests.
  std::vector<double> cuts;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Vec2 a = v[j], b = v[i];
    const Vec2 ab = b - a;
    const double A = ab.dot(ab);
    if (A == 0.0) continue;
    const Vec2 ax = a - x;
    const double B = 2.0 * ax.dot(ab);
    const double C = ax.dot(ax) - r * r;
    const double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
      if (t < 0.0 || t > 1.0) continue;
      const Vec2 p = a + ab * t;
      cuts.push_back(wrap_angle(std::atan2(p.y - x.y, p.x - x.x)));
    }
  }
  if (cuts.empty()) {
    const bool in = point_in_polygon(poly, {x.x + r, x.y});
    return in ? ArcSet::full() : ArcSet::empty();
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(cuts.front() + kTwoPi);
  ArcSet out = ArcSet::empty();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(lo < hi)) continue;
    const double mid = 0.5 * (lo + hi);
    const Vec2 p{x.x + r * std::cos(mid), x.y + r * std::sin(mid)};
    if (point_in_polygon(poly, p))
      out = out.unite(ArcSet::centered(wrap_angle(mid), 0.5 * (hi - lo)));
  }
  return out;
}

}  // namespace

ArcSet circle_arcs_inside(const Shape& s, Vec2 x, double r) {
  if (const Disk* d = std::get_if<Disk>(&s)) return circle_arcs_inside_disk(x, r, *d);
  return circle_arcs_inside_polygon(x, r, std::get<Polygon>(s));
}

ArcSet circle_arcs_inside(const Region& reg, Vec2 x, double r) {
  ArcSet arcs = reg.base ? circle_arcs_inside(*reg.base, x, r) : ArcSet::full();
  for (const Shape& h : reg.holes) {
    if (arcs.parts().empty()) break;
    arcs = arcs.intersect(circle_arcs_inside(h, x, r).complement());
  }
  return arcs;
}

double angular_measure(const Region& reg, Vec2 x, double r) {
  return circle_arcs_inside(reg, x, r).measure();
}

}  // namespace nlcap
