#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "reports.hpp"

namespace convex_chroma {

inline constexpr std::size_t kMaxTranslateDimension = 6;
inline constexpr double kOffsetClearance = 1e-6;

// Ceiling that ignores floating-point noise just above an integer.
inline long tolerant_ceil(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

// Moduli for the line/cell decomposition derived from a containment ratio r:
// lines are grouped mod M = ceil(r) + 1 on each of the n-1 cross axes and
// cells mod c = ceil((ceil(r) + 1) / 2) along the last axis.
struct BoundParams {
  std::size_t n = 0;
  double r = 1.0;
  long M = 2;
  long c = 1;
  long t_bound = 2;

  static BoundParams from_ratio(std::size_t n, double r) {
    if (n == 0) throw InputError("dimension must be positive");
    if (!(r >= 1.0 - 1e-9)) throw InputError("containment ratio must be at least 1");
    BoundParams p;
    p.n = n;
    p.r = r;
    const long ceil_r = std::max(1L, tolerant_ceil(r));
    p.M = ceil_r + 1;
    p.c = (ceil_r + 2) / 2;
    p.t_bound = p.c;
    for (std::size_t i = 1; i < n; ++i) p.t_bound *= p.M;
    return p;
  }
};

// t_n = (n+1)^(n-1) * ceil((n+1)/2): the factor obtained with ratio r = n.
inline long theorem1_factor(std::size_t n) {
  long t = static_cast<long>(n + 2) / 2;
  for (std::size_t i = 1; i < n; ++i) t *= static_cast<long>(n + 1);
  return t;
}

// x -> linear * (x + shift), linear row-major n x n.
struct AffineMap {
  std::size_t n = 0;
  std::vector<double> linear;
  Point shift;

  Point apply(const Point& x) const {
    Point out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out[i] += linear[i * n + j] * (x[j] + shift[j]);
    }
    return out;
  }
};

// Reference points of a translate family after the affine map that sends
// the fitted parallelogram to the unit cube centred at the origin.
struct NormalizedFamily {
  std::size_t dim = 0;
  std::vector<double> coords;  // member-major, dim per member
  AffineMap map;
  BoundParams params;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> ref(std::size_t i) const { return {coords.data() + i * dim, dim}; }
  double height(std::size_t i) const { return coords[i * dim + dim - 1]; }
};

inline NormalizedFamily normalize(const Family& family) {
  family.validate();
  if (!family.is_translate_family()) throw InputError("normalize expects translates (all scales equal)");
  const ConvexBody& body = family.body;
  const std::size_t n = body.dimension();
  if (body.is_box() && n > kMaxTranslateDimension) throw InputError("boxes above dimension 6 are not supported");
  const double scale = family.placements.empty() ? 1.0 : family.placements.front().scale;

  NormalizedFamily out;
  out.dim = n;
  out.map.n = n;
  out.map.linear.assign(n * n, 0.0);
  out.map.shift.assign(n, 0.0);
  if (body.is_box()) {
    for (std::size_t i = 0; i < n; ++i) out.map.linear[i * n + i] = 1.0 / (scale * body.sides()[i]);
    out.params = BoundParams::from_ratio(n, 1.0);
  } else {
    const ParallelogramFit fit = inscribed_parallelogram(body);
    const Vec2 u = scale * fit.u, v = scale * fit.v;
    const double det = cross(u, v);
    out.map.linear = {v.y / det, -v.x / det, -u.y / det, u.x / det};
    out.map.shift = {scale * fit.center.x, scale * fit.center.y};
    out.params = BoundParams::from_ratio(n, fit.ratio);
  }
  out.coords.reserve(family.size() * n);
  for (const Placement& p : family.placements) {
    const Point x = out.map.apply(p.center);
    out.coords.insert(out.coords.end(), x.begin(), x.end());
  }
  return out;
}

// Per-axis offsets b: lines sit at j + b_a on the cross axes, cells are
// [j - 1/2, j + 1/2) + b_last along the last axis.
struct LineOffsets {
  Point shift;
  double clearance = 0.5;
};

namespace detail {

inline double frac(double x) { return x - std::floor(x); }

// Circular distance from b to the nearest sorted fractional part.
inline double circular_gap(const std::vector<double>& sorted, double b) {
  if (sorted.empty()) return 0.5;
  auto it = std::lower_bound(sorted.begin(), sorted.end(), b);
  const double above = it == sorted.end() ? sorted.front() + 1.0 : *it;
  const double below = it == sorted.begin() ? sorted.back() - 1.0 : *std::prev(it);
  return std::min(above - b, b - below);
}

}  // namespace detail

// Seeded offsets keeping every P-translate face and every cell boundary at
// least `delta` away from the lines / reference points.
inline LineOffsets choose_offsets(const NormalizedFamily& nf, std::uint64_t seed, double delta = kOffsetClearance,
                                  int max_draws = 100) {
  const std::size_t n = nf.dim;
  // A face of the unit cube around x lies on a line iff x + 1/2 - b is an
  // integer; a reference point lies on a cell boundary under the same test.
  std::vector<std::vector<double>> fracs(n);
  for (std::size_t a = 0; a < n; ++a) {
    fracs[a].reserve(nf.size());
    for (std::size_t i = 0; i < nf.size(); ++i) fracs[a].push_back(detail::frac(nf.ref(i)[a] + 0.5));
    std::sort(fracs[a].begin(), fracs[a].end());
  }
  Rng rng(seed);
  for (int draw = 0; draw < max_draws; ++draw) {
    LineOffsets off;
    off.shift.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      off.shift[a] = rng.uniform();
      off.clearance = std::min(off.clearance, detail::circular_gap(fracs[a], off.shift[a]));
    }
    if (off.clearance >= delta) return off;
  }
  throw ConstructionError("no offset with clearance " + std::to_string(delta) + " found in " +
                          std::to_string(max_draws) + " draws");
}

struct MemberCell {
  std::vector<long> line_key;      // j_1..j_{n-1}
  long cell = 0;                   // j along the last axis
  std::vector<long> line_residue;  // line_key mod M
  long cell_residue = 0;           // cell mod c
};

struct Decomposition {
  std::vector<MemberCell> members;
  LineOffsets offsets;
  BoundParams params;
};

inline long floor_mod(long a, long m) { return ((a % m) + m) % m; }

inline Decomposition decompose(const NormalizedFamily& nf, const LineOffsets& offsets, const BoundParams& params) {
  const std::size_t n = nf.dim;
  if (offsets.shift.size() != n) throw InputError("offsets dimension mismatch");
  Decomposition d{{}, offsets, params};
  d.members.reserve(nf.size());
  for (std::size_t i = 0; i < nf.size(); ++i) {
    const auto x = nf.ref(i);
    MemberCell m;
    for (std::size_t a = 0; a + 1 < n; ++a) {
      const long j = static_cast<long>(std::floor(x[a] - offsets.shift[a] + 0.5));
      m.line_key.push_back(j);
      m.line_residue.push_back(floor_mod(j, params.M));
    }
    m.cell = static_cast<long>(std::floor(x[n - 1] - offsets.shift[n - 1] + 0.5));
    m.cell_residue = floor_mod(m.cell, params.c);
    d.members.push_back(std::move(m));
  }
  return d;
}

// One (line, cell residue) class with the relation "disjoint and lower
// along the last axis". Members are sorted by height, then index;
// successors[a] holds the local indices b with a < b in the relation.
struct PosetClass {
  std::vector<std::size_t> members;
  std::vector<VertexSet> successors;

  std::size_t size() const { return members.size(); }
  bool precedes(std::size_t a, std::size_t b) const { return successors[a].test(b); }
};

inline PosetClass build_poset(std::vector<std::size_t> members, const NormalizedFamily& nf, const Graph& g) {
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    const double ha = nf.height(a), hb = nf.height(b);
    return ha != hb ? ha < hb : a < b;
  });
  PosetClass poset{members, std::vector<VertexSet>(members.size(), VertexSet(members.size()))};
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!g.adjacent(members[a], members[b])) poset.successors[a].set(b);
    }
  }
  for (std::size_t a = 0; a < members.size(); ++a) {
    const VertexSet& sa = poset.successors[a];
    for (std::size_t b = sa.find_first(); b != VertexSet::npos; b = sa.find_next(b)) {
      if (!poset.successors[b].is_subset_of(sa)) {
        throw InvariantViolation("comparability relation is not transitive (members " +
                                 std::to_string(members[a]) + ", " + std::to_string(members[b]) +
                                 "): the parallelogram fit does not bound the body");
      }
    }
  }
  return poset;
}

// Minimum chain cover (Dilworth) via maximum bipartite matching between
// "predecessor" and "successor" copies of the elements. Chains hold local
// indices in increasing order and are listed by their first element.
inline std::vector<std::vector<std::size_t>> chain_partition(const PosetClass& poset) {
  const std::size_t m = poset.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(m, kNone), prev(m, kNone);

  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t a) -> bool {
    const VertexSet& sa = poset.successors[a];
    for (std::size_t b = sa.find_first(); b != VertexSet::npos; b = sa.find_next(b)) {
      if (visited[b]) continue;
      visited[b] = 1;
      if (prev[b] == kNone || self(self, prev[b])) {
        next[a] = b;
        prev[b] = a;
        return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < m; ++a) {
    visited.assign(m, 0);
    augment(augment, a);
  }

  std::vector<std::vector<std::size_t>> chains;
  for (std::size_t a = 0; a < m; ++a) {
    if (prev[a] != kNone) continue;
    std::vector<std::size_t> chain;
    for (std::size_t x = a; x != kNone; x = next[x]) chain.push_back(x);
    chains.push_back(std::move(chain));
  }
  return chains;
}

// Minimum antichain cover (Mirsky): layer k holds the elements whose
// longest chain ending at them has k+1 elements.
inline std::vector<std::vector<std::size_t>> antichain_partition(const PosetClass& poset) {
  const std::size_t m = poset.size();
  std::vector<std::size_t> height(m, 0);
  std::size_t layers = 0;
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (poset.precedes(a, b)) height[b] = std::max(height[b], height[a] + 1);
    }
    layers = std::max(layers, height[b] + 1);
  }
  std::vector<std::vector<std::size_t>> out(layers);
  for (std::size_t a = 0; a < m; ++a) out[height[a]].push_back(a);
  return out;
}

// Full decomposition of a translate family into classes and posets.
struct TranslateAnalysis {
  NormalizedFamily normalized;
  Decomposition decomposition;
  Graph graph;
  // Class key: (line key, cell residue); block key: (line residue, cell residue).
  std::map<std::pair<std::vector<long>, long>, PosetClass> classes;

  static std::pair<std::vector<long>, long> block_of(const MemberCell& m) { return {m.line_residue, m.cell_residue}; }
};

inline TranslateAnalysis analyze_translates(const Family& family, std::uint64_t seed) {
  TranslateAnalysis t;
  t.normalized = normalize(family);
  const LineOffsets offsets = choose_offsets(t.normalized, seed);
  t.decomposition = decompose(t.normalized, offsets, t.normalized.params);
  t.graph = build_graph(family);
  std::map<std::pair<std::vector<long>, long>, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const MemberCell& m = t.decomposition.members[i];
    grouped[{m.line_key, m.cell_residue}].push_back(i);
  }
  for (auto& [key, members] : grouped) {
    t.classes.emplace(key, build_poset(std::move(members), t.normalized, t.graph));
  }
  return t;
}

inline std::string block_label(const std::vector<long>& line_residue, long cell_residue) {
  std::ostringstream os;
  os << "k=(";
  for (std::size_t i = 0; i < line_residue.size(); ++i) os << (i ? "," : "") << line_residue[i];
  os << "),c=" << cell_residue;
  return os.str();
}

// Coloring with palettes per block (line residue vector, cell residue);
// inside a block, classes on different lines reuse the same chain colors.
inline ColoringReport color_translates(const Family& family, std::uint64_t seed, const SolverCaps& caps = {}) {
  ColoringReport report;
  report.method = "theorem1";
  report.bound_formula = "t_bound * omega";
  if (family.size() == 0) return report;
  const TranslateAnalysis t = analyze_translates(family, seed);
  const BoundParams& params = t.normalized.params;

  std::map<std::pair<std::vector<long>, long>, std::size_t> palette;
  std::size_t max_class_clique = 0;
  std::map<std::pair<std::vector<long>, long>, std::vector<std::vector<std::size_t>>> chains;
  for (const auto& [key, poset] : t.classes) {
    auto cs = chain_partition(poset);
    const auto block = TranslateAnalysis::block_of(t.decomposition.members[poset.members.front()]);
    palette[block] = std::max(palette[block], cs.size());
    max_class_clique = std::max(max_class_clique, cs.size());
    chains.emplace(key, std::move(cs));
  }
  std::map<std::pair<std::vector<long>, long>, std::size_t> base;
  std::size_t next = 0;
  for (const auto& [block, size] : palette) {
    base[block] = next;
    next += size;
  }

  report.colors.assign(family.size(), -1);
  report.block_labels.resize(family.size());
  for (const auto& [key, poset] : t.classes) {
    const auto& cs = chains.at(key);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      for (std::size_t local : cs[ci]) {
        const std::size_t member = poset.members[local];
        const auto block = TranslateAnalysis::block_of(t.decomposition.members[member]);
        report.colors[member] = static_cast<int>(base.at(block) + ci);
        report.block_labels[member] = block_label(block.first, block.second);
      }
    }
  }
  report.colors_used = next;
  if (!verify_coloring(t.graph, report.colors)) throw InvariantViolation("line decomposition produced an improper coloring");

  const CliqueResult omega = max_clique(t.graph, caps);
  report.omega_exact = !omega.capped;
  report.omega_used = omega.capped ? max_class_clique : omega.size;
  report.bound_factor = static_cast<std::size_t>(params.t_bound);
  report.bound_value = static_cast<double>(params.t_bound) * static_cast<double>(report.omega_used);
  if (report.colors_used > static_cast<std::size_t>(params.t_bound) * max_class_clique) {
    throw InvariantViolation("palette accounting exceeded t_bound times the largest class clique");
  }
  return report;
}

// Clique partition by Mirsky layers per class; every class contributes its
// own layers (sum accounting across lines and blocks).
inline PartitionReport clique_partition_translates(const Family& family, std::uint64_t seed,
                                                   const SolverCaps& caps = {}) {
  PartitionReport report;
  report.method = "theorem1";
  report.bound_formula = "t_bound * nu";
  if (family.size() == 0) return report;
  const TranslateAnalysis t = analyze_translates(family, seed);
  const BoundParams& params = t.normalized.params;

  report.classes.assign(family.size(), -1);
  int next = 0;
  std::size_t max_class_layers = 0;
  for (const auto& [key, poset] : t.classes) {
    const auto layers = antichain_partition(poset);
    max_class_layers = std::max(max_class_layers, layers.size());
    for (const auto& layer : layers) {
      for (std::size_t local : layer) report.classes[poset.members[local]] = next;
      ++next;
    }
  }
  report.classes_used = static_cast<std::size_t>(next);
  report.piercing.assign(report.classes_used, std::nullopt);
  if (!verify_clique_partition(t.graph, report.classes)) {
    throw InvariantViolation("line decomposition produced a class that is not a clique");
  }

  const CliqueResult nu = max_independent_set(t.graph, caps);
  report.nu_exact = !nu.capped;
  report.nu_used = nu.capped ? nu.witness.size() : nu.size;
  report.bound_factor = static_cast<std::size_t>(params.t_bound);
  report.bound_value = static_cast<double>(params.t_bound) * static_cast<double>(report.nu_used);
  report.rounds = t.classes.size();
  return report;
}

}  // namespace convex_chroma
