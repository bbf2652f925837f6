#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "family.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace convex_chroma {

inline constexpr std::size_t kDefaultMemberCap = 100000;

// ---------------------------------------------------------------------------
// Grid family: translates of the body at (t_1/m, ..., t_n/m), 1 <= t_i <= m^2
// ---------------------------------------------------------------------------

inline Family grid_family(const ConvexBody& body, std::size_t m, std::size_t member_cap = kDefaultMemberCap) {
  if (m == 0) throw InputError("grid parameter m must be positive");
  const std::size_t n = body.dimension();
  const std::size_t per_axis = m * m;
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) {
    if (total > member_cap / per_axis) throw CapExceeded("grid family exceeds the member cap");
    total *= per_axis;
  }
  Family family{body, {}, {"grid", std::nullopt}};
  family.placements.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point center(n);
    std::size_t rest = flat;
    // Last axis varies fastest.
    for (std::size_t a = n; a-- > 0;) {
      center[a] = static_cast<double>(rest % per_axis + 1) / static_cast<double>(m);
      rest /= per_axis;
    }
    family.placements.push_back({std::move(center), 1.0});
  }
  return family;
}

// ---------------------------------------------------------------------------
// Pentagon families: five groups of k unit squares around a 5-cycle
// ---------------------------------------------------------------------------

struct PentagonSpec {
  std::size_t k = 1;
  double jitter = 1e-4;
  double radius = 0.8;
};

inline constexpr std::size_t kPentagonGroups = 5;

// Group of member i in a pentagon family (groups A..E are 0..4).
inline std::size_t pentagon_group(std::size_t member, std::size_t k) { return (member / k) % kPentagonGroups; }

inline std::vector<Placement> pentagon_pattern(const PentagonSpec& spec, Vec2 shift) {
  std::vector<Placement> out;
  out.reserve(kPentagonGroups * spec.k);
  for (std::size_t g = 0; g < kPentagonGroups; ++g) {
    const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi / 5.0 * static_cast<double>(g);
    const Vec2 base{spec.radius * std::cos(angle) + shift.x, spec.radius * std::sin(angle) + shift.y};
    for (std::size_t j = 0; j < spec.k; ++j) {
      const double d = spec.jitter * static_cast<double>(j);
      out.push_back({{base.x + d, base.y + d}, 1.0});
    }
  }
  return out;
}

// Throws unless adjacency is the blow-up of C5 by k-cliques, copy by copy.
inline void check_pentagon_adjacency(const Family& family, std::size_t k) {
  const Graph g = build_graph(family);
  const std::size_t block = kPentagonGroups * k;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      bool expected = false;
      if (i / block == j / block) {
        const std::size_t gi = pentagon_group(i, k), gj = pentagon_group(j, k);
        const std::size_t step = (gj + kPentagonGroups - gi) % kPentagonGroups;
        expected = step == 0 || step == 1 || step == kPentagonGroups - 1;
      }
      if (g.adjacent(i, j) != expected) throw ConstructionError("pentagon placement does not realize the blown-up 5-cycle");
    }
  }
}

inline Family pentagon_family(const PentagonSpec& spec) {
  if (spec.k == 0) throw InputError("pentagon parameter k must be positive");
  Family family{ConvexBody::box({1.0, 1.0}), pentagon_pattern(spec, {0.0, 0.0}), {"pentagon", std::nullopt}};
  check_pentagon_adjacency(family, spec.k);
  return family;
}

inline Family pentagon_family(std::size_t k) { return pentagon_family(PentagonSpec{k}); }

// k disjoint copies of the single 5-square pattern, 10 apart.
inline Family pentagon_disjoint_family(std::size_t k) {
  if (k == 0) throw InputError("pentagon parameter k must be positive");
  const PentagonSpec single{1};
  Family family{ConvexBody::box({1.0, 1.0}), {}, {"pentagon_disjoint", std::nullopt}};
  for (std::size_t copy = 0; copy < k; ++copy) {
    auto part = pentagon_pattern(single, {10.0 * static_cast<double>(copy), 0.0});
    family.placements.insert(family.placements.end(), part.begin(), part.end());
  }
  check_pentagon_adjacency(family, 1);
  return family;
}

// Coloring of pentagon_family(k) with ceil(5k/2) colors. Q1 = [0, k),
// Q2 = [k, 2k), Q3,1 = [2k, 2k + ceil(k/2)); each Qi splits into a first
// half of ceil(k/2) and a second half of floor(k/2).
inline std::vector<int> explicit_pentagon_coloring(std::size_t k) {
  if (k == 0) throw InputError("pentagon parameter k must be positive");
  const int kk = static_cast<int>(k);
  const int up = (kk + 1) / 2;
  auto range = [](int from, int to) {
    std::vector<int> r;
    for (int c = from; c < to; ++c) r.push_back(c);
    return r;
  };
  auto join = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::vector<int> q11 = range(0, up), q12 = range(up, kk);
  const std::vector<int> q21 = range(kk, kk + up), q22 = range(kk + up, 2 * kk);
  const std::vector<int> q31 = range(2 * kk, 2 * kk + up);

  std::vector<int> d = join(q11, q21);
  d.resize(k);
  const std::vector<std::vector<int>> palettes{join(q11, q12), join(q21, q22), join(q12, q31), d, join(q22, q31)};
  std::vector<int> colors;
  colors.reserve(kPentagonGroups * k);
  for (const auto& palette : palettes) colors.insert(colors.end(), palette.begin(), palette.end());
  return colors;
}

// ---------------------------------------------------------------------------
// Density of a family relative to a box
// ---------------------------------------------------------------------------

struct DensityReport {
  AxisBox domain;
  double rho = 0.0;
  std::vector<double> clipped;  // measure of each member inside the domain
};

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                               double fb, double whole, double eps, int depth) {
  const double m = (a + b) / 2.0, lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
  return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 50);
}

inline double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

inline double disk_box_area(Vec2 c, double r, const AxisBox& y) {
  const double a = std::max(c.x - r, y.lo[0]), b = std::min(c.x + r, y.hi[0]);
  if (!(b > a)) return 0.0;
  auto chord = [&](double x) {
    const double h = std::sqrt(std::max(0.0, r * r - (x - c.x) * (x - c.x)));
    return overlap(c.y - h, c.y + h, y.lo[1], y.hi[1]);
  };
  // Break where the chord ends cross the box's horizontal sides.
  std::vector<double> cuts{a, b, c.x};
  for (double edge : {y.lo[1], y.hi[1]}) {
    const double d = edge - c.y;
    if (std::abs(d) < r) {
      const double w = std::sqrt(r * r - d * d);
      cuts.push_back(c.x - w);
      cuts.push_back(c.x + w);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const double eps = 1e-12 * std::max(1.0, r * r);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], a), hi = std::min(cuts[i + 1], b);
    total += integrate(chord, lo, hi, eps);
  }
  return total;
}

}  // namespace detail

// Measure of (scale * body + center) inside the box y.
inline double clipped_measure(const ConvexBody& body, const Placement& where, const AxisBox& y) {
  const std::size_t n = body.dimension();
  if (y.lo.size() != n || y.hi.size() != n) throw InputError("domain dimension differs from the body");
  switch (body.kind()) {
    case BodyKind::box: {
      double v = 1.0;
      for (std::size_t a = 0; a < n; ++a) {
        const double half = where.scale * body.sides()[a] / 2.0;
        v *= detail::overlap(where.center[a] - half, where.center[a] + half, y.lo[a], y.hi[a]);
      }
      return v;
    }
    case BodyKind::polygon2d: {
      std::vector<Vec2> poly = transformed(body.vertices(), where.scale, as_vec2(where.center));
      poly = clip(poly, {1.0, 0.0}, y.hi[0]);
      poly = clip(poly, {-1.0, 0.0}, -y.lo[0]);
      poly = clip(poly, {0.0, 1.0}, y.hi[1]);
      poly = clip(poly, {0.0, -1.0}, -y.lo[1]);
      return poly.size() < 3 ? 0.0 : std::max(0.0, signed_area(poly));
    }
    case BodyKind::disk: return detail::disk_box_area(as_vec2(where.center), where.scale, y);
  }
  return 0.0;
}

inline DensityReport density(const Family& family, const AxisBox& y) {
  if (!(y.measure() > 0.0)) throw InputError("density domain has no volume");
  DensityReport report{y, 0.0, {}};
  double total = 0.0;
  for (const Placement& p : family.placements) {
    report.clipped.push_back(clipped_measure(family.body, p, y));
    total += report.clipped.back();
  }
  report.rho = total / y.measure();
  return report;
}

// ---------------------------------------------------------------------------
// Discrete volume-ratio bound for grid families
// ---------------------------------------------------------------------------

// theta >= |T| / |S| where S is a largest set of lattice points at Minkowski
// distance <= 2, which is a maximum clique of the grid family.
struct VolumeRatioReport {
  std::size_t points = 0;
  std::size_t clique = 0;
  double bound = 0.0;
  std::optional<std::size_t> theta;
  bool holds = true;
};

inline VolumeRatioReport volume_ratio_bounds(const Family& grid, const SolverCaps& caps = {}) {
  VolumeRatioReport report;
  report.points = grid.size();
  if (grid.size() == 0) return report;
  const Graph g = build_graph(grid);
  const CliqueResult omega = max_clique(g, caps);
  if (omega.capped) throw CapExceeded("grid family too large for an exact clique");
  report.clique = omega.size;
  report.bound = static_cast<double>(report.points) / static_cast<double>(report.clique);
  const ColoringResult theta = clique_cover_number(g, caps);
  if (!theta.capped) {
    report.theta = theta.size;
    report.holds = static_cast<double>(theta.size) >= report.bound - kTolerance;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Seeded random families
// ---------------------------------------------------------------------------

inline constexpr double kTangencyClearance = 0.05;
inline constexpr std::size_t kMaxResamples = 1000;

inline Family random_family(const ConvexBody& body, std::size_t count, const AxisBox& window,
                            std::pair<double, double> scale_range, std::uint64_t seed) {
  if (count == 0) throw InputError("random family needs at least one member");
  const std::size_t n = body.dimension();
  if (window.lo.size() != n || window.hi.size() != n) throw InputError("window dimension differs from the body");
  if (!(scale_range.first > 0.0) || scale_range.second < scale_range.first) throw InputError("invalid scale range");

  Rng rng(seed);
  Family family{body, {}, {"random", seed}};
  family.placements.reserve(count);
  while (family.placements.size() < count) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt <= kMaxResamples && !placed; ++attempt) {
      Placement p{Point(n), 1.0};
      for (std::size_t a = 0; a < n; ++a) p.center[a] = rng.uniform(window.lo[a], window.hi[a]);
      p.scale = scale_range.first == scale_range.second ? scale_range.first
                                                         : rng.uniform(scale_range.first, scale_range.second);
      placed = std::all_of(family.placements.begin(), family.placements.end(), [&](const Placement& q) {
        return std::abs(intersection_margin(body, q, p)) >= kTangencyClearance;
      });
      if (placed) family.placements.push_back(std::move(p));
    }
    if (!placed) throw ConstructionError("random family: rejection budget exhausted");
  }
  return family;
}

}  // namespace convex_chroma
