#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "covering.hpp"
#include "error.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "reports.hpp"

namespace convex_chroma {

// Members by scale ascending, ties by index.
inline std::vector<std::size_t> size_order(const Family& family) {
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return family.placements[a].scale < family.placements[b].scale;
  });
  return order;
}

inline void require_same_body(const Family& family, const CoveringCertificate& cert) {
  if (!(cert.unit == family.body)) throw InputError("certificate unit body differs from the family body");
}

// For every member, the number of neighbours that come later in the size
// order (equal or larger scale). The maximum is the degeneracy witness.
inline std::vector<std::size_t> later_neighbour_counts(const Graph& g, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> position(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  std::vector<std::size_t> counts(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const VertexSet& nb = g.neighbors(order[k]);
    for (std::size_t u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) {
      if (position[u] > k) ++counts[order[k]];
    }
  }
  return counts;
}

// First-fit coloring in decreasing size order, so each member sees at most
// kappa*(omega-1) already colored neighbours.
inline ColoringReport color_homothets(const Family& family, const CoveringCertificate& cert,
                                      const SolverCaps& caps = {}) {
  require_same_body(family, cert);
  ColoringReport report;
  report.method = "theorem2";
  report.bound_factor = cert.kappa_ub;
  if (family.size() == 0) return report;
  const Graph g = build_graph(family);
  const std::vector<std::size_t> order = size_order(family);

  report.colors.assign(family.size(), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<char> taken(family.size() + 1, 0);
    const VertexSet& nb = g.neighbors(*it);
    for (std::size_t u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) {
      if (report.colors[u] >= 0) taken[static_cast<std::size_t>(report.colors[u])] = 1;
    }
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    report.colors[*it] = c;
  }
  report.colors_used = count_classes(report.colors);
  if (!verify_coloring(g, report.colors)) throw InvariantViolation("first-fit produced an improper coloring");

  const std::vector<std::size_t> later = later_neighbour_counts(g, order);
  report.degeneracy = *std::max_element(later.begin(), later.end());
  const CliqueResult omega = max_clique(g, caps);
  report.omega_exact = !omega.capped;
  report.omega_used = omega.capped ? omega.witness.size() : omega.size;
  if (report.omega_exact) {
    report.bound_formula = "kappa * (omega - 1) + 1";
    report.bound_value = static_cast<double>(cert.kappa_ub) * static_cast<double>(report.omega_used - 1) + 1.0;
  } else {
    report.bound_formula = "degeneracy + 1";
    report.bound_value = static_cast<double>(report.degeneracy) + 1.0;
  }
  return report;
}

// Clique classes for a subfamily sharing its smallest member; classes that
// came from a candidate point carry it.
struct PiercingAssignment {
  std::vector<std::size_t> members;        // family indices, as given
  std::vector<int> class_of;               // per entry of `members`
  std::vector<std::optional<Point>> points;  // per class
  bool fallback_used = false;

  std::size_t class_count() const { return points.size(); }
  std::size_t points_used() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return p.has_value(); }));
  }
};

namespace detail {

// Candidate piercing points for homothets meeting C1 = l1*C + p1 with
// scale >= l1: the vertices of C1 for boxes, then p1 - l1 * v_i for the
// covering translations v_i of C - C by C.
inline std::vector<Point> piercing_candidates(const Family& family, std::size_t smallest,
                                              const CoveringCertificate& cert) {
  const Placement& c1 = family.placements[smallest];
  std::vector<Point> out;
  if (family.body.is_box()) {
    const std::size_t n = family.body.dimension();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Point p = c1.center;
      for (std::size_t a = 0; a < n; ++a) p[a] += ((mask >> a) & 1 ? 0.5 : -0.5) * c1.scale * family.body.sides()[a];
      out.push_back(std::move(p));
    }
  }
  for (const Point& v : cert.translations) {
    Point p = c1.center;
    for (std::size_t a = 0; a < p.size(); ++a) p[a] -= c1.scale * v[a];
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

inline PiercingAssignment pierce_intersecting_smallest(const Family& family, std::vector<std::size_t> subfamily,
                                                       const CoveringCertificate& cert, const Graph& g) {
  require_same_body(family, cert);
  if (subfamily.empty()) throw InputError("piercing an empty subfamily");
  std::size_t smallest = subfamily.front();
  for (std::size_t m : subfamily) {
    const double s = family.placements[m].scale, best = family.placements[smallest].scale;
    if (s < best || (s == best && m < smallest)) smallest = m;
  }
  for (std::size_t m : subfamily) {
    if (m != smallest && !g.adjacent(m, smallest)) throw InputError("subfamily member does not meet the smallest member");
  }

  PiercingAssignment out;
  out.members = subfamily;
  out.class_of.assign(subfamily.size(), -1);
  const std::vector<Point> candidates = detail::piercing_candidates(family, smallest, cert);
  std::vector<int> class_of_candidate(candidates.size(), -1);
  for (std::size_t e = 0; e < subfamily.size(); ++e) {
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!contains(family.body, family.placements[subfamily[e]], candidates[k])) continue;
      if (class_of_candidate[k] < 0) {
        class_of_candidate[k] = static_cast<int>(out.points.size());
        out.points.emplace_back(candidates[k]);
      }
      out.class_of[e] = class_of_candidate[k];
      break;
    }
  }

  // Fallback: greedy cliques over the members no candidate pierced, in size order.
  std::vector<std::size_t> leftover;
  for (std::size_t e = 0; e < subfamily.size(); ++e) {
    if (out.class_of[e] < 0) leftover.push_back(e);
  }
  if (!leftover.empty()) {
    out.fallback_used = true;
    std::stable_sort(leftover.begin(), leftover.end(), [&](std::size_t a, std::size_t b) {
      return family.placements[subfamily[a]].scale < family.placements[subfamily[b]].scale;
    });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t e : leftover) {
      bool placed = false;
      for (auto& grp : groups) {
        const bool fits = std::all_of(grp.begin(), grp.end(), [&](std::size_t o) {
          return g.adjacent(subfamily[o], subfamily[e]);
        });
        if (fits) {
          grp.push_back(e);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({e});
    }
    for (const auto& grp : groups) {
      for (std::size_t e : grp) out.class_of[e] = static_cast<int>(out.points.size());
      out.points.emplace_back(std::nullopt);
    }
  }

  std::vector<std::vector<std::size_t>> by_class(out.points.size());
  for (std::size_t e = 0; e < subfamily.size(); ++e) {
    by_class[static_cast<std::size_t>(out.class_of[e])].push_back(subfamily[e]);
  }
  for (const auto& cls : by_class) {
    if (!is_clique(g, cls)) throw InvariantViolation("piercing class is not pairwise intersecting");
  }
  return out;
}

// Greedy rounds: smallest remaining member, everything meeting it, pierce,
// remove. Round representatives are pairwise disjoint, so rounds <= nu.
inline PartitionReport clique_partition_homothets(const Family& family, const CoveringCertificate& cert,
                                                  const SolverCaps& caps = {}) {
  require_same_body(family, cert);
  PartitionReport report;
  report.method = "theorem2";
  report.kappa_ub = cert.kappa_ub;
  report.bound_factor = cert.kappa_ub;
  report.bound_formula = "kappa * (nu - 1) + 1";
  if (family.size() == 0) return report;
  const Graph g = build_graph(family);
  const std::vector<std::size_t> order = size_order(family);

  report.classes.assign(family.size(), -1);
  std::vector<bool> removed(family.size(), false);
  std::vector<std::size_t> representatives;
  std::size_t last_round_classes = 0;
  for (std::size_t rep : order) {
    if (removed[rep]) continue;
    for (std::size_t other : representatives) {
      if (g.adjacent(rep, other)) throw InvariantViolation("round representatives intersect");
    }
    representatives.push_back(rep);
    std::vector<std::size_t> round{rep};
    for (std::size_t m : order) {
      if (!removed[m] && m != rep && g.adjacent(m, rep)) round.push_back(m);
    }
    for (std::size_t m : round) removed[m] = true;

    const int base = static_cast<int>(report.piercing.size());
    if (is_clique(g, round)) {
      // One class; keep a common candidate point when there is one.
      std::optional<Point> common;
      for (const Point& p : detail::piercing_candidates(family, rep, cert)) {
        const bool all = std::all_of(round.begin(), round.end(), [&](std::size_t m) {
          return contains(family.body, family.placements[m], p);
        });
        if (all) {
          common = p;
          break;
        }
      }
      for (std::size_t m : round) report.classes[m] = base;
      report.piercing.push_back(common);
      last_round_classes = 1;
    } else {
      const PiercingAssignment pa = pierce_intersecting_smallest(family, round, cert, g);
      report.fallback_used = report.fallback_used || pa.fallback_used;
      for (std::size_t e = 0; e < round.size(); ++e) report.classes[round[e]] = base + pa.class_of[e];
      report.piercing.insert(report.piercing.end(), pa.points.begin(), pa.points.end());
      last_round_classes = pa.class_count();
    }
  }
  report.rounds = representatives.size();
  report.classes_used = report.piercing.size();
  if (!verify_clique_partition(g, report.classes)) throw InvariantViolation("round partition has a non-clique class");

  report.round_bound = static_cast<double>(cert.kappa_ub) * static_cast<double>(report.rounds - 1) +
                       static_cast<double>(last_round_classes);
  const CliqueResult nu = max_independent_set(g, caps);
  report.nu_exact = !nu.capped;
  report.nu_used = nu.capped ? report.rounds : nu.size;
  report.bound_value = static_cast<double>(cert.kappa_ub) * static_cast<double>(report.nu_used - 1) + 1.0;
  return report;
}

// Replaces a translate family's body by K = (C - C)/2; the intersection
// graph is unchanged and K - K = 2K.
inline Family symmetrized_family(const Family& family) {
  if (!family.is_translate_family()) throw InputError("the symmetrized path expects translates (all scales equal)");
  Family sym{symmetrize(family.body), family.placements, family.meta};
  if (!(build_graph(sym) == build_graph(family))) {
    throw InvariantViolation("symmetrized body changed the intersection graph");
  }
  return sym;
}

inline ColoringReport color_translates_symmetrized(const Family& family, std::uint64_t /*seed*/,
                                                   const SolverCaps& caps = {},
                                                   std::size_t samples = kDefaultCoverSamples) {
  const Family sym = symmetrized_family(family);
  ColoringReport report = color_homothets(sym, difference_cover(sym.body, samples), caps);
  report.method = "corollary1";
  if (report.omega_exact) report.bound_formula = "t(C) * (omega - 1) + 1";
  return report;
}

inline PartitionReport clique_partition_translates_symmetrized(const Family& family, std::uint64_t /*seed*/,
                                                               const SolverCaps& caps = {},
                                                               std::size_t samples = kDefaultCoverSamples) {
  const Family sym = symmetrized_family(family);
  PartitionReport report = clique_partition_homothets(sym, difference_cover(sym.body, samples), caps);
  report.method = "corollary1";
  report.bound_formula = "t(C) * (nu - 1) + 1";
  return report;
}

}  // namespace convex_chroma
