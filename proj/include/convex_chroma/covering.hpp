#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace convex_chroma {

inline constexpr std::size_t kDefaultCoverSamples = 100000;
inline constexpr std::size_t kBoundarySamples = 1000;

// target_scale * target as a set.
struct ScaledBody {
  ConvexBody body;
  double scale = 1.0;
};

// C - C for the supported bodies: the difference polygon, the radius-2 disk
// or the doubled box.
inline ScaledBody difference_body(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::polygon2d: return {minkowski_sum(body, reflect(body)), 1.0};
    case BodyKind::disk: return {body, 2.0};
    case BodyKind::box: return {body, 2.0};
  }
  return {body, 1.0};
}

struct CoverageReport {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  // Minimum over samples of the best containment margin among the
  // translates (negative means some sample sits outside every translate).
  double worst_margin = 0.0;

  bool ok() const { return samples > 0 && uncovered == 0; }
};

// Witness that target is covered by translates unit + v_i.
struct CoveringCertificate {
  ConvexBody target;
  double target_scale = 1.0;
  ConvexBody unit;
  std::vector<Point> translations;
  std::size_t kappa_ub = 0;
  CoverageReport verification;
};

// Deterministic sample of the target: Halton points inside it plus
// kBoundarySamples points on its boundary.
inline std::vector<Point> coverage_samples(const ScaledBody& target, std::size_t interior) {
  const ConvexBody& body = target.body;
  const std::size_t n = body.dimension();
  if (n > kHaltonBases.size()) throw InputError("sampling supports at most 8 dimensions");
  const Placement where{Point(n, 0.0), target.scale};
  const AxisBox bb = bounding_box(body, where);
  std::vector<Point> out;
  out.reserve(interior + kBoundarySamples);

  Point x(n);
  for (std::uint64_t index = 1; out.size() < interior; ++index) {
    for (std::size_t a = 0; a < n; ++a) x[a] = bb.lo[a] + (bb.hi[a] - bb.lo[a]) * halton(index, a);
    if (containment_margin(body, where, x) >= 0.0) out.push_back(x);
  }

  for (std::size_t k = 0; k < kBoundarySamples; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(kBoundarySamples);
    if (body.is_disk()) {
      const double angle = 2.0 * std::numbers::pi * t;
      out.push_back({target.scale * std::cos(angle), target.scale * std::sin(angle)});
    } else if (body.is_polygon()) {
      const auto& v = body.vertices();
      double perimeter = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) perimeter += norm(v[(i + 1) % v.size()] - v[i]);
      double walk = t * perimeter;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        const double len = norm(e);
        if (walk <= len || i + 1 == v.size()) {
          const Vec2 p = target.scale * (v[i] + (std::min(walk, len) / len) * e);
          out.push_back({p.x, p.y});
          break;
        }
        walk -= len;
      }
    } else {
      // Box: a Halton point pushed onto face k mod 2n.
      for (std::size_t a = 0; a < n; ++a) x[a] = bb.lo[a] + (bb.hi[a] - bb.lo[a]) * halton(k + 1, a);
      const std::size_t face = k % (2 * n);
      x[face / 2] = (face % 2 == 0) ? bb.lo[face / 2] : bb.hi[face / 2];
      out.push_back(x);
    }
  }
  return out;
}

namespace detail {

// Margin of x in unit + v.
inline double translate_margin(const ConvexBody& unit, const Point& v, const Point& x) {
  double local[kHaltonBases.size()];
  for (std::size_t a = 0; a < x.size(); ++a) local[a] = x[a] - v[a];
  return unit_margin(unit, std::span<const double>(local, x.size()));
}

inline double best_cover_margin(const ConvexBody& unit, const std::vector<Point>& translations, const Point& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& v : translations) best = std::max(best, translate_margin(unit, v, x));
  return best;
}

}  // namespace detail

inline CoverageReport verify_translates(const ScaledBody& target, const ConvexBody& unit,
                                        const std::vector<Point>& translations, std::size_t samples) {
  if (samples < 1000) throw InputError("certificate verification needs at least 1000 samples");
  CoverageReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const Point& x : coverage_samples(target, samples)) {
    const double m = detail::best_cover_margin(unit, translations, x);
    report.worst_margin = std::min(report.worst_margin, m);
    if (m < -kTolerance) ++report.uncovered;
    ++report.samples;
  }
  return report;
}

inline CoverageReport verify_certificate(const CoveringCertificate& cert, std::size_t samples = kDefaultCoverSamples) {
  return verify_translates({cert.target, cert.target_scale}, cert.unit, cert.translations, samples);
}

// Closed-form certificates for kappa(C - C, C): 2^n orthant translates for
// boxes and the hexagonal 7-disk configuration for the disk.
inline std::optional<CoveringCertificate> known_kappa(const ConvexBody& body,
                                                      std::size_t samples = kDefaultCoverSamples) {
  CoveringCertificate cert{body, 2.0, body, {}, 0, {}};
  if (body.is_box()) {
    const std::size_t n = body.dimension();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Point v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = ((mask >> a) & 1 ? 0.5 : -0.5) * body.sides()[a];
      cert.translations.push_back(v);
    }
  } else if (body.is_disk()) {
    cert.translations.push_back({0.0, 0.0});
    const double r = std::sqrt(3.0);
    for (int i = 0; i < 6; ++i) {
      const double angle = std::numbers::pi / 3.0 * i;
      cert.translations.push_back({r * std::cos(angle), r * std::sin(angle)});
    }
  } else {
    return std::nullopt;
  }
  cert.kappa_ub = cert.translations.size();
  cert.verification = verify_certificate(cert, samples);
  if (!cert.verification.ok()) throw ConstructionError("closed-form covering failed verification");
  return cert;
}

// Half the inradius of the unit body.
inline double default_lattice_step(const ConvexBody& unit) { return inscribed_ball(unit).radius / 2.0; }

// Greedy lattice covering: unit translates on a lattice of the given step
// over the target's bounding box, translates covering no sample dropped,
// then redundant translates pruned farthest-from-centroid first.
inline CoveringCertificate cover_by_translates(const ScaledBody& target, const ConvexBody& unit, double lattice_step,
                                               std::size_t samples = kDefaultCoverSamples) {
  const std::size_t n = target.body.dimension();
  if (unit.dimension() != n) throw InputError("target and unit dimensions differ");
  if (!(lattice_step > 0.0)) throw InputError("lattice step must be positive");

  const std::vector<Point> pts = coverage_samples(target, samples);
  const AxisBox tb = bounding_box(target.body, Placement{Point(n, 0.0), target.scale});
  const AxisBox ub = bounding_box(unit, Placement{Point(n, 0.0), 1.0});

  // Lattice coordinates per axis: tb.lo + step/2 + k*step within the range
  // where the translate can reach the target's box.
  std::vector<std::vector<double>> axis_values(n);
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) {
    const double anchor = tb.lo[a] + lattice_step / 2.0;
    const double from = tb.lo[a] - ub.hi[a], to = tb.hi[a] - ub.lo[a];
    const auto k0 = static_cast<long long>(std::floor((from - anchor) / lattice_step));
    const auto k1 = static_cast<long long>(std::ceil((to - anchor) / lattice_step));
    for (long long k = k0; k <= k1; ++k) axis_values[a].push_back(anchor + static_cast<double>(k) * lattice_step);
    total *= axis_values[a].size();
    if (total > 2'000'000) throw InputError("lattice too fine for the target");
  }

  std::vector<Point> lattice;
  std::vector<std::vector<std::uint32_t>> covers;
  std::vector<std::uint32_t> count(pts.size(), 0);
  Point v(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = 0; a < n; ++a) {
      v[a] = axis_values[a][rest % axis_values[a].size()];
      rest /= axis_values[a].size();
    }
    std::vector<std::uint32_t> mine;
    for (std::size_t s = 0; s < pts.size(); ++s) {
      if (detail::translate_margin(unit, v, pts[s]) >= -kTolerance) mine.push_back(static_cast<std::uint32_t>(s));
    }
    if (mine.empty()) continue;
    for (std::uint32_t s : mine) ++count[s];
    lattice.push_back(v);
    covers.push_back(std::move(mine));
  }
  for (std::uint32_t c : count) {
    if (c == 0) throw ConstructionError("lattice step too coarse: some target sample is uncovered");
  }

  const Point target_centroid = [&] {
    Point c = body_centroid(target.body);
    for (double& x : c) x *= target.scale;
    return c;
  }();
  const Point unit_centroid = body_centroid(unit);
  std::vector<double> dist(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    double sq = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double d = lattice[i][a] + unit_centroid[a] - target_centroid[a];
      sq += d * d;
    }
    dist[i] = std::sqrt(sq);
  }
  std::vector<std::size_t> order(lattice.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });

  std::vector<bool> keep(lattice.size(), true);
  for (std::size_t i : order) {
    const bool redundant =
        std::all_of(covers[i].begin(), covers[i].end(), [&](std::uint32_t s) { return count[s] >= 2; });
    if (!redundant) continue;
    keep[i] = false;
    for (std::uint32_t s : covers[i]) --count[s];
  }

  CoveringCertificate cert{target.body, target.scale, unit, {}, 0, {}};
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (keep[i]) cert.translations.push_back(lattice[i]);
  }
  cert.kappa_ub = cert.translations.size();
  cert.verification = verify_certificate(cert, samples);
  if (!cert.verification.ok()) throw ConstructionError("greedy lattice covering failed verification");
  return cert;
}

// Certificate for kappa(C - C, C): closed form when known, otherwise the
// greedy lattice covering at the default step.
inline CoveringCertificate difference_cover(const ConvexBody& body, std::size_t samples = kDefaultCoverSamples) {
  if (auto known = known_kappa(body, samples)) return *known;
  return cover_by_translates(difference_body(body), body, default_lattice_step(body), samples);
}

// Analytic reference ceiling for kappa(C - C, C) in dimension n,
// 3^(n+1) 2^n (n+1)^-1 theta, evaluated with the proxy theta = n + 1.
inline double covering_ceiling_proxy(std::size_t n) {
  return std::pow(3.0, static_cast<double>(n + 1)) * std::pow(2.0, static_cast<double>(n));
}

}  // namespace convex_chroma
