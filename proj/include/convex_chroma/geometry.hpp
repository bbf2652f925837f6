#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace convex_chroma {

// Absolute tolerance for every geometric predicate (closed-set convention:
// a signed margin >= -kTolerance counts as touching/contained).
inline constexpr double kTolerance = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// A point in R^n; dimension is carried by the size.
using Point = std::vector<double>;

enum class BodyKind { polygon2d, disk, box };

inline const char* to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::polygon2d: return "polygon2d";
    case BodyKind::disk: return "disk";
    case BodyKind::box: return "box";
  }
  return "?";
}

// The shape C. Polygons are strictly convex and counter-clockwise, the disk
// is the unit disk at the origin, and a box is axis-parallel with its
// reference point at the center.
class ConvexBody {
 public:
  static ConvexBody polygon(std::vector<Vec2> vertices) {
    validate_polygon(vertices);
    ConvexBody body(BodyKind::polygon2d);
    body.vertices_ = std::move(vertices);
    return body;
  }

  static ConvexBody disk() { return ConvexBody(BodyKind::disk); }

  static ConvexBody box(std::vector<double> sides) {
    if (sides.empty()) throw InputError("box needs at least one side length");
    for (double s : sides) {
      if (!(s > 0.0) || !std::isfinite(s)) throw InputError("box side lengths must be positive");
    }
    ConvexBody body(BodyKind::box);
    body.sides_ = std::move(sides);
    return body;
  }

  BodyKind kind() const { return kind_; }
  std::size_t dimension() const { return kind_ == BodyKind::box ? sides_.size() : 2; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<double>& sides() const { return sides_; }

  bool is_polygon() const { return kind_ == BodyKind::polygon2d; }
  bool is_disk() const { return kind_ == BodyKind::disk; }
  bool is_box() const { return kind_ == BodyKind::box; }

  friend bool operator==(const ConvexBody&, const ConvexBody&) = default;

 private:
  explicit ConvexBody(BodyKind kind) : kind_(kind) {}

  static void validate_polygon(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    if (n < 3) throw InputError("polygon needs at least 3 vertices");
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y)) {
        throw InputError("polygon vertex is not finite");
      }
      const Vec2 e1 = v[(i + 1) % n] - v[i];
      const Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
      const double l1 = norm(e1), l2 = norm(e2);
      if (l1 <= 0.0 || l2 <= 0.0) throw InputError("polygon has repeated vertices");
      if (cross(e1, e2) <= kTolerance * l1 * l2) {
        throw InputError("polygon vertices must be counter-clockwise and strictly convex");
      }
      turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    // A star-shaped vertex sequence winding twice also turns left everywhere.
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
      throw InputError("polygon vertex sequence winds more than once");
    }
  }

  BodyKind kind_;
  std::vector<Vec2> vertices_;
  std::vector<double> sides_;
};

// Homothet lambda*C + center.
struct Placement {
  Point center;
  double scale = 1.0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

inline void validate_placement(const ConvexBody& body, const Placement& p) {
  if (p.center.size() != body.dimension()) {
    throw InputError("placement dimension " + std::to_string(p.center.size()) +
                     " does not match body dimension " + std::to_string(body.dimension()));
  }
  if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw InputError("placement scale must be positive");
  for (double c : p.center) {
    if (!std::isfinite(c)) throw InputError("placement center is not finite");
  }
}

inline Vec2 as_vec2(const Point& p) { return {p.at(0), p.at(1)}; }

// ---------------------------------------------------------------------------
// Polygon helpers (vertex chains are convex and CCW)
// ---------------------------------------------------------------------------

inline double signed_area(std::span<const Vec2> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * twice;
}

inline Vec2 polygon_centroid(std::span<const Vec2> poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
    const double w = cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

// Outward unit normal and offset (n . x <= h inside) for edge i -> i+1.
struct HalfPlane {
  Vec2 normal;
  double offset;
};

inline std::vector<HalfPlane> half_planes(std::span<const Vec2> poly) {
  std::vector<HalfPlane> out;
  out.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 e = poly[(i + 1) % poly.size()] - poly[i];
    const double len = norm(e);
    const Vec2 n{e.y / len, -e.x / len};
    out.push_back({n, dot(n, poly[i])});
  }
  return out;
}

// Sutherland-Hodgman step against n . x <= h.
inline std::vector<Vec2> clip(const std::vector<Vec2>& poly, Vec2 n, double h) {
  std::vector<Vec2> out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
    const double dp = dot(n, p) - h, dq = dot(n, q) - h;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

// Intersection of half-planes inside a bounding square; empty when infeasible.
inline std::vector<Vec2> intersect_half_planes(std::span<const HalfPlane> planes, double extent) {
  std::vector<Vec2> region{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
  for (const HalfPlane& hp : planes) {
    region = clip(region, hp.normal, hp.offset);
    if (region.empty()) break;
  }
  return region;
}

inline Vec2 vertex_mean(std::span<const Vec2> pts) {
  Vec2 sum;
  for (Vec2 p : pts) sum = sum + p;
  return (1.0 / static_cast<double>(pts.size())) * sum;
}

// Signed distance from x to the boundary of a convex CCW polygon: positive
// inside (distance to the nearest edge line), negative outside (Euclidean
// distance to the polygon).
inline double signed_distance(std::span<const Vec2> poly, Vec2 x) {
  double inside = std::numeric_limits<double>::infinity();
  bool outside = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double len = norm(e);
    const double d = cross(e, x - a) / len;  // > 0 left of the edge
    if (d < 0.0) outside = true;
    inside = std::min(inside, d);
  }
  if (!outside) return inside;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double t = std::clamp(dot(x - a, e) / dot(e, e), 0.0, 1.0);
    best = std::min(best, norm(x - (a + t * e)));
  }
  return -best;
}

namespace detail {

// 0 for polar angles in [0, pi), 1 for [pi, 2 pi).
inline int half_of(Vec2 v) { return (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) ? 1 : 0; }

inline std::size_t lowest_vertex(std::span<const Vec2> p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].y < p[best].y || (p[i].y == p[best].y && p[i].x < p[best].x)) best = i;
  }
  return best;
}

inline std::vector<Vec2> edge_vectors(std::span<const Vec2> p) {
  std::vector<Vec2> edges;
  if (p.size() < 2) return edges;
  const std::size_t start = lowest_vertex(p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::size_t i = (start + k) % p.size();
    edges.push_back(p[(i + 1) % p.size()] - p[i]);
  }
  return edges;
}

inline bool parallel_same_direction(Vec2 a, Vec2 b) {
  return std::abs(cross(a, b)) <= kTolerance * norm(a) * norm(b) && dot(a, b) > 0.0;
}

// true when a's polar angle is strictly smaller than b's
inline bool angle_less(Vec2 a, Vec2 b) {
  const int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0.0;
}

}  // namespace detail

// Minkowski sum of two convex CCW vertex chains by merging edge vectors in
// polar order. Chains of one or two points (a point, a segment) are allowed.
// Collinear consecutive edges are fused.
inline std::vector<Vec2> minkowski_sum(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) throw InputError("minkowski_sum of an empty vertex chain");
  const Vec2 origin = a[detail::lowest_vertex(a)] + b[detail::lowest_vertex(b)];
  const std::vector<Vec2> ea = detail::edge_vectors(a);
  const std::vector<Vec2> eb = detail::edge_vectors(b);

  std::vector<Vec2> merged;
  merged.reserve(ea.size() + eb.size());
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size()) {
      merged.push_back(ea[i++]);
    } else if (i == ea.size()) {
      merged.push_back(eb[j++]);
    } else if (detail::parallel_same_direction(ea[i], eb[j])) {
      merged.push_back(ea[i++] + eb[j++]);
    } else if (detail::angle_less(ea[i], eb[j])) {
      merged.push_back(ea[i++]);
    } else {
      merged.push_back(eb[j++]);
    }
  }

  std::vector<Vec2> fused;
  for (Vec2 e : merged) {
    if (norm(e) == 0.0) continue;
    if (!fused.empty() && detail::parallel_same_direction(fused.back(), e)) {
      fused.back() = fused.back() + e;
    } else {
      fused.push_back(e);
    }
  }
  while (fused.size() > 1 && detail::parallel_same_direction(fused.back(), fused.front())) {
    fused.front() = fused.front() + fused.back();
    fused.pop_back();
  }

  std::vector<Vec2> out{origin};
  for (std::size_t k = 0; k + 1 < fused.size(); ++k) out.push_back(out.back() + fused[k]);
  return out;
}

inline std::vector<Vec2> transformed(std::span<const Vec2> poly, double scale, Vec2 shift) {
  std::vector<Vec2> out;
  out.reserve(poly.size());
  for (Vec2 v : poly) out.push_back(scale * v + shift);
  return out;
}

// 2D boxes viewed as rectangles around the origin.
inline std::vector<Vec2> box_vertices(const ConvexBody& box) {
  const double hx = box.sides().at(0) / 2.0, hy = box.sides().at(1) / 2.0;
  return {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
}

// ---------------------------------------------------------------------------
// Body operations
// ---------------------------------------------------------------------------

inline double area(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::polygon2d: return signed_area(body.vertices());
    case BodyKind::disk: return std::numbers::pi;
    case BodyKind::box: {
      double v = 1.0;
      for (double s : body.sides()) v *= s;
      return v;
    }
  }
  return 0.0;
}

inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  auto chain = [](const ConvexBody& c) {
    if (c.is_polygon()) return c.vertices();
    if (c.is_box() && c.dimension() == 2) return box_vertices(c);
    throw InputError("minkowski_sum supports planar polygons and rectangles only");
  };
  return ConvexBody::polygon(minkowski_sum(chain(a), chain(b)));
}

// -C. Rectangles, boxes and the disk are symmetric about their reference point.
inline ConvexBody reflect(const ConvexBody& body) {
  if (!body.is_polygon()) return body;
  return ConvexBody::polygon(transformed(body.vertices(), -1.0, {}));
}

// K = (C - C) / 2, the centrally symmetric body with the same translate
// intersection graph as C.
inline ConvexBody symmetrize(const ConvexBody& body) {
  if (!body.is_polygon()) return body;
  const std::vector<Vec2> reflected = transformed(body.vertices(), -1.0, {});
  return ConvexBody::polygon(transformed(minkowski_sum(body.vertices(), reflected), 0.5, {}));
}

// Support function h(d) = max over the body of d . x.
inline double support(const ConvexBody& body, Vec2 d) {
  switch (body.kind()) {
    case BodyKind::polygon2d: {
      double best = -std::numeric_limits<double>::infinity();
      for (Vec2 v : body.vertices()) best = std::max(best, dot(d, v));
      return best;
    }
    case BodyKind::disk: return norm(d);
    case BodyKind::box: return 0.5 * (body.sides().at(0) * std::abs(d.x) + body.sides().at(1) * std::abs(d.y));
  }
  return 0.0;
}

// Signed distance from `x` to the boundary of C itself (positive inside).
inline double unit_margin(const ConvexBody& body, std::span<const double> x) {
  switch (body.kind()) {
    case BodyKind::polygon2d: return signed_distance(body.vertices(), Vec2{x[0], x[1]});
    case BodyKind::disk: return 1.0 - std::hypot(x[0], x[1]);
    case BodyKind::box: {
      double inside = std::numeric_limits<double>::infinity();
      double outside_sq = 0.0;
      for (std::size_t i = 0; i < body.sides().size(); ++i) {
        const double slack = body.sides()[i] / 2.0 - std::abs(x[i]);
        inside = std::min(inside, slack);
        if (slack < 0.0) outside_sq += slack * slack;
      }
      return outside_sq > 0.0 ? -std::sqrt(outside_sq) : inside;
    }
  }
  return 0.0;
}

// Signed distance from `x` to the boundary of lambda*C + p (positive inside).
inline double containment_margin(const ConvexBody& body, const Placement& where, const Point& x) {
  if (x.size() != body.dimension()) throw InputError("point dimension does not match body");
  double local[8];
  std::vector<double> heap;
  double* buf = local;
  if (x.size() > 8) {
    heap.resize(x.size());
    buf = heap.data();
  }
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = (x[i] - where.center[i]) / where.scale;
  return where.scale * unit_margin(body, std::span<const double>(buf, x.size()));
}

inline bool contains(const ConvexBody& body, const Placement& where, const Point& x, double tol = kTolerance) {
  return containment_margin(body, where, x) >= -tol;
}

// Signed tangency margin of two homothets: the signed distance of
// p2 - p1 to the boundary of lambda1*C + lambda2*(-C). Positive means the
// bodies overlap, zero is tangency, negative is a gap.
inline double intersection_margin(const ConvexBody& body, const Placement& p1, const Placement& p2) {
  validate_placement(body, p1);
  validate_placement(body, p2);
  Point d(p1.center.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = p2.center[i] - p1.center[i];
  switch (body.kind()) {
    case BodyKind::polygon2d: {
      const auto& v = body.vertices();
      const std::vector<Vec2> region =
          minkowski_sum(transformed(v, p1.scale, {}), transformed(v, -p2.scale, {}));
      return signed_distance(region, as_vec2(d));
    }
    case BodyKind::disk:
      return p1.scale + p2.scale - std::hypot(d[0], d[1]);
    case BodyKind::box:
      return containment_margin(body, Placement{Point(d.size(), 0.0), p1.scale + p2.scale}, d);
  }
  return 0.0;
}

// Closed bodies: tangency counts as intersecting.
inline bool homothets_intersect(const ConvexBody& body, const Placement& p1, const Placement& p2) {
  return intersection_margin(body, p1, p2) >= -kTolerance;
}

struct AxisBox {
  Point lo;
  Point hi;

  double measure() const {
    double m = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) m *= hi[i] - lo[i];
    return m;
  }
};

inline AxisBox bounding_box(const ConvexBody& body, const Placement& where) {
  AxisBox b{where.center, where.center};
  if (body.is_polygon()) {
    const Vec2 c = as_vec2(where.center);
    b.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    b.hi = {-b.lo[0], -b.lo[1]};
    for (Vec2 v : body.vertices()) {
      const Vec2 p = where.scale * v + c;
      b.lo[0] = std::min(b.lo[0], p.x);
      b.lo[1] = std::min(b.lo[1], p.y);
      b.hi[0] = std::max(b.hi[0], p.x);
      b.hi[1] = std::max(b.hi[1], p.y);
    }
    return b;
  }
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    const double half = body.is_disk() ? where.scale : where.scale * body.sides()[i] / 2.0;
    b.lo[i] -= half;
    b.hi[i] += half;
  }
  return b;
}

// Reference centroid of the body at the identity placement.
inline Point body_centroid(const ConvexBody& body) {
  if (body.is_polygon()) {
    const Vec2 c = polygon_centroid(body.vertices());
    return {c.x, c.y};
  }
  return Point(body.dimension(), 0.0);
}

// Largest inscribed ball: radius and center.
struct InscribedBall {
  double radius;
  Point center;
};

inline InscribedBall inscribed_ball(const ConvexBody& body) {
  if (body.is_disk()) return {1.0, {0.0, 0.0}};
  if (body.is_box()) {
    return {*std::min_element(body.sides().begin(), body.sides().end()) / 2.0,
            Point(body.dimension(), 0.0)};
  }
  const std::vector<HalfPlane> planes = half_planes(body.vertices());
  const AxisBox bb = bounding_box(body, Placement{{0.0, 0.0}, 1.0});
  const double extent = 4.0 * std::max({std::abs(bb.lo[0]), std::abs(bb.lo[1]), std::abs(bb.hi[0]),
                                        std::abs(bb.hi[1])}) + 1.0;
  double lo = 0.0, hi = 0.5 * std::min(bb.hi[0] - bb.lo[0], bb.hi[1] - bb.lo[1]);
  std::vector<Vec2> best_region = body.vertices();
  std::vector<HalfPlane> shrunk = planes;
  for (int iter = 0; iter < 80 && hi - lo > 1e-13 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    for (std::size_t e = 0; e < planes.size(); ++e) shrunk[e].offset = planes[e].offset - mid;
    std::vector<Vec2> region = intersect_half_planes(shrunk, extent);
    if (region.empty()) {
      hi = mid;
    } else {
      lo = mid;
      best_region = std::move(region);
    }
  }
  const Vec2 c = vertex_mean(best_region);
  return {lo, {c.x, c.y}};
}

// ---------------------------------------------------------------------------
// Inscribed parallelogram with a measured containment ratio
// ---------------------------------------------------------------------------

// P = center + a*u + b*v for a, b in [-1/2, 1/2]. `ratio` is the smallest r
// such that C lies in r*P translated to `outer_center`.
struct ParallelogramFit {
  Vec2 center;
  Vec2 u;
  Vec2 v;
  double ratio = 0.0;
  Vec2 outer_center;

  std::vector<Vec2> vertices() const {
    return {center - 0.5 * u - 0.5 * v, center + 0.5 * u - 0.5 * v, center + 0.5 * u + 0.5 * v,
            center - 0.5 * u + 0.5 * v};
  }
};

namespace detail {

// Extent of the body along the linear functional x -> f . x.
inline std::pair<double, double> extent_along(const ConvexBody& body, Vec2 f) {
  return {-support(body, -f), support(body, f)};
}

struct DualFrame {
  Vec2 row_a;  // a-coordinate functional
  Vec2 row_b;
};

inline DualFrame dual_frame(Vec2 u, Vec2 v) {
  const double det = cross(u, v);
  if (std::abs(det) <= 1e-12 * norm(u) * norm(v) || det == 0.0) {
    throw ConstructionError("degenerate parallelogram: basis vectors are parallel");
  }
  return {{v.y / det, -v.x / det}, {-u.y / det, u.x / det}};
}

}  // namespace detail

inline double containment_ratio(const ConvexBody& body, const ParallelogramFit& fit) {
  if (body.dimension() != 2) throw InputError("containment_ratio is planar");
  const detail::DualFrame f = detail::dual_frame(fit.u, fit.v);
  const auto [a_lo, a_hi] = detail::extent_along(body, f.row_a);
  const auto [b_lo, b_hi] = detail::extent_along(body, f.row_b);
  return std::max(a_hi - a_lo, b_hi - b_lo);
}

namespace detail {

inline Vec2 outer_center_of(const ConvexBody& body, Vec2 u, Vec2 v) {
  const DualFrame f = dual_frame(u, v);
  const auto [a_lo, a_hi] = extent_along(body, f.row_a);
  const auto [b_lo, b_hi] = extent_along(body, f.row_b);
  return 0.5 * (a_lo + a_hi) * u + 0.5 * (b_lo + b_hi) * v;
}

struct DirectionFit {
  double ratio = std::numeric_limits<double>::infinity();
  ParallelogramFit fit;
};

// For fixed edge directions, the ratio-optimal P is the largest homothet of
// the circumscribed parallelogram P0 (same directions) that fits in C.
// Bisection on the homothety factor; feasibility is a half-plane
// intersection.
inline DirectionFit fit_directions(const ConvexBody& body, const std::vector<HalfPlane>& planes,
                                   double extent, double theta1, double theta2) {
  DirectionFit result;
  const Vec2 d1{std::cos(theta1), std::sin(theta1)};
  const Vec2 d2{std::cos(theta2), std::sin(theta2)};
  if (std::abs(cross(d1, d2)) < 1e-3) return result;
  const DualFrame f = dual_frame(d1, d2);
  const auto [a_lo, a_hi] = extent_along(body, f.row_a);
  const auto [b_lo, b_hi] = extent_along(body, f.row_b);
  const Vec2 u0 = (a_hi - a_lo) * d1;
  const Vec2 v0 = (b_hi - b_lo) * d2;

  std::vector<double> reach(planes.size());
  for (std::size_t e = 0; e < planes.size(); ++e) {
    reach[e] = 0.5 * (std::abs(dot(planes[e].normal, u0)) + std::abs(dot(planes[e].normal, v0)));
  }
  std::vector<HalfPlane> shifted = planes;
  auto region_at = [&](double s) {
    for (std::size_t e = 0; e < planes.size(); ++e) shifted[e].offset = planes[e].offset - s * reach[e];
    return intersect_half_planes(shifted, extent);
  };

  double lo = 0.0, hi = 1.0;
  std::vector<Vec2> region = body.vertices();
  for (int iter = 0; iter < 60 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    std::vector<Vec2> r = region_at(mid);
    if (r.empty()) {
      hi = mid;
    } else {
      lo = mid;
      region = std::move(r);
    }
  }
  if (lo <= 0.0) return result;
  result.fit.center = vertex_mean(region);
  result.fit.u = lo * u0;
  result.fit.v = lo * v0;
  result.fit.ratio = containment_ratio(body, result.fit);
  result.fit.outer_center = outer_center_of(body, result.fit.u, result.fit.v);
  result.ratio = result.fit.ratio;
  return result;
}

inline double edge_angle(Vec2 e) {
  double a = std::atan2(e.y, e.x);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

}  // namespace detail

// Guaranteed ratio for planar bodies (a parallelogram P in C with C inside
// a translate of 2P always exists).
inline constexpr double kPlanarFitRatio = 2.0;

inline ParallelogramFit inscribed_parallelogram(const ConvexBody& body) {
  if (body.dimension() != 2) throw InputError("inscribed_parallelogram is planar");
  if (body.is_box()) {
    ParallelogramFit fit{{0.0, 0.0}, {body.sides()[0], 0.0}, {0.0, body.sides()[1]}, 1.0, {0.0, 0.0}};
    fit.ratio = containment_ratio(body, fit);
    return fit;
  }
  if (body.is_disk()) {
    // The inscribed square with vertices (+-1, 0), (0, +-1).
    ParallelogramFit fit{{0.0, 0.0}, {1.0, 1.0}, {-1.0, 1.0}, 0.0, {0.0, 0.0}};
    fit.ratio = containment_ratio(body, fit);
    return fit;
  }

  const std::vector<HalfPlane> planes = half_planes(body.vertices());
  const AxisBox bb = bounding_box(body, Placement{{0.0, 0.0}, 1.0});
  const double extent =
      4.0 * std::max({std::abs(bb.lo[0]), std::abs(bb.lo[1]), std::abs(bb.hi[0]), std::abs(bb.hi[1])}) + 1.0;

  std::vector<double> edge_dirs;
  const auto& vs = body.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    edge_dirs.push_back(detail::edge_angle(vs[(i + 1) % vs.size()] - vs[i]));
  }
  constexpr int kSweep = 360;
  constexpr int kCoarse = 36;
  const double pi = std::numbers::pi;

  std::vector<std::pair<double, double>> candidates;
  for (std::size_t i = 0; i < edge_dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < edge_dirs.size(); ++j) candidates.emplace_back(edge_dirs[i], edge_dirs[j]);
  }
  for (int k = 0; k < kSweep; ++k) {
    const double theta = pi * k / kSweep;
    for (double e : edge_dirs) candidates.emplace_back(e, theta);
  }
  for (int a = 0; a < kCoarse; ++a) {
    for (int b = a + 1; b < kCoarse; ++b) candidates.emplace_back(pi * a / kCoarse, pi * b / kCoarse);
  }

  detail::DirectionFit best;
  std::pair<double, double> best_dirs{0.0, 0.0};
  for (const auto& [t1, t2] : candidates) {
    detail::DirectionFit f = detail::fit_directions(body, planes, extent, t1, t2);
    if (f.ratio < best.ratio - 1e-12) {
      best = f;
      best_dirs = {t1, t2};
    }
  }

  // Pattern search on the two directions around the best candidate.
  for (double step = pi / kSweep; step > 1e-9; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& [da, db] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
        const double t1 = best_dirs.first + da, t2 = best_dirs.second + db;
        detail::DirectionFit f = detail::fit_directions(body, planes, extent, t1, t2);
        if (f.ratio < best.ratio - 1e-12) {
          best = f;
          best_dirs = {t1, t2};
          improved = true;
        }
      }
    }
  }

  if (!(best.ratio <= kPlanarFitRatio + 1e-6)) {
    throw ConstructionError("inscribed parallelogram search reached ratio " + std::to_string(best.ratio) +
                            " above the planar guarantee 2");
  }
  for (Vec2 p : best.fit.vertices()) {
    if (signed_distance(body.vertices(), p) < -1e-9) {
      throw ConstructionError("inscribed parallelogram search produced a parallelogram outside the body");
    }
  }
  return best.fit;
}

}  // namespace convex_chroma
