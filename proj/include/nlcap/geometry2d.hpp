#pragma once

// Planar set primitives used by the 2D energy integrals: disks, simple
// polygons, regions with holes, and two exact queries that drive all
// quadratures here:
//   * the admissible r-intervals of a ray against a region, and
//   * the angular arcs of a circle |y - x| = r inside a region.

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace nlcap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {k * x, k * y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  /// Counterclockwise quarter turn.
  Vec2 rot90() const { return {-y, x}; }
};

struct Disk {
  Vec2 center;
  double radius = 1.0;
};

/// Simple polygon, counterclockwise vertex order.
struct Polygon {
  std::vector<Vec2> vertices;
};

using Shape = std::variant<Disk, Polygon>;

/// base minus holes; a missing base means the whole plane.
struct Region {
  std::optional<Shape> base;
  std::vector<Shape> holes;

  bool bounded() const { return base.has_value(); }
};

// ---- shape queries ---------------------------------------------------------

bool contains(const Shape& s, Vec2 p);
bool contains(const Region& r, Vec2 p);
double area(const Shape& s);
Vec2 shape_center(const Shape& s);
/// Smallest easily computed enclosing disk (exact for disks).
Disk bounding_disk(const Shape& s);
/// Largest |p - x| over the shape and smallest distance from x to the shape.
double max_distance(const Shape& s, Vec2 x);
double distance_to_shape(const Shape& s, Vec2 x);  // 0 inside

/// Lower bound for the distance from x to the region (0 if x inside).
double distance_lower_bound(const Region& r, Vec2 x);
/// Radius beyond which a circle around x no longer meets the region boundary.
double structure_radius(const Region& r, Vec2 x);

// ---- JSON ------------------------------------------------------------------
// {"type":"disk","center":[x,y],"radius":r}
// {"type":"polygon","vertices":[[x,y],...]}

Shape shape_from_json(const nlohmann::json& j);
nlohmann::json shape_to_json(const Shape& s);

// ---- interval sets on [0, inf) ---------------------------------------------

/// Sorted disjoint half-open intervals of ray parameters.
class IntervalSet {
 public:
  static IntervalSet all();
  static IntervalSet empty();
  static IntervalSet of(double lo, double hi);

  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet complement() const;  // within [0, inf)

  const std::vector<std::pair<double, double>>& parts() const { return parts_; }

 private:
  std::vector<std::pair<double, double>> parts_;
};

/// r-interval where x + r d lies in {y : n . y > c}; d need not be unit.
IntervalSet ray_in_halfplane(Vec2 x, Vec2 d, Vec2 n, double c);
/// r-interval where x + r d lies inside the disk.
IntervalSet ray_in_disk(Vec2 x, Vec2 d, const Disk& disk);
/// Same for a disk whose boundary passes through x: the interval is
/// (0, -2 (x - c).d / |d|^2) computed without the cancellation-prone
/// constant term of the quadratic.
IntervalSet ray_in_disk_through_origin_point(Vec2 x, Vec2 d, Vec2 center);

// ---- arc sets on [0, 2 pi) -------------------------------------------------

/// Sorted disjoint angular arcs; wrap-around arcs are split at 0.
class ArcSet {
 public:
  static ArcSet full();
  static ArcSet empty();
  /// Arc centered at `mid` with the given half-width (clamped to [0, pi]).
  static ArcSet centered(double mid, double half_width);

  ArcSet intersect(const ArcSet& o) const;
  ArcSet unite(const ArcSet& o) const;
  ArcSet complement() const;
  double measure() const;

  const std::vector<std::pair<double, double>>& parts() const { return parts_; }

 private:
  std::vector<std::pair<double, double>> parts_;
};

/// Arcs of the circle |y - x| = r inside the shape / region.
ArcSet circle_arcs_inside(const Shape& s, Vec2 x, double r);
ArcSet circle_arcs_inside(const Region& reg, Vec2 x, double r);
/// Arcs inside the half-plane {y : n . y > c}.
ArcSet circle_arcs_in_halfplane(Vec2 x, double r, Vec2 n, double c);

/// Angular measure of the circle |y - x| = r inside the region.
double angular_measure(const Region& reg, Vec2 x, double r);

/// Stable half-width of the arc of circle(x, r) inside a disk at center
/// distance dist with radius R.
double arc_halfwidth_inside_disk(double dist, double r, double R);

}  // namespace nlcap
