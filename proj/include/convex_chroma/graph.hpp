#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "error.hpp"
#include "family.hpp"

namespace convex_chroma {

using VertexSet = boost::dynamic_bitset<std::uint64_t>;

// Simple undirected graph stored as packed bit rows. Value type.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : rows_(n, VertexSet(n)) {}

  std::size_t size() const { return rows_.size(); }

  void add_edge(std::size_t i, std::size_t j) {
    check(i);
    check(j);
    if (i == j) throw InputError("self loops are not allowed");
    rows_[i].set(j);
    rows_[j].set(i);
  }

  bool adjacent(std::size_t i, std::size_t j) const { return rows_.at(i).test(j); }
  const VertexSet& neighbors(std::size_t i) const { return rows_.at(i); }
  std::size_t degree(std::size_t i) const { return rows_.at(i).count(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const VertexSet& r : rows_) twice += r.count();
    return twice / 2;
  }

  // Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = rows_[i].find_next(i); j != VertexSet::npos; j = rows_[i].find_next(j)) {
        out.emplace_back(i, j);
      }
    }
    return out;
  }

  Graph complement() const {
    Graph g(size());
    for (std::size_t i = 0; i < size(); ++i) {
      g.rows_[i] = ~rows_[i];
      g.rows_[i].reset(i);
    }
    return g;
  }

  // Subgraph induced by `members`; vertex k of the result is members[k].
  Graph induced(const std::vector<std::size_t>& members) const {
    Graph g(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (adjacent(members[a], members[b])) g.add_edge(a, b);
      }
    }
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  void check(std::size_t i) const {
    if (i >= size()) throw InputError("vertex index " + std::to_string(i) + " out of range");
  }

  std::vector<VertexSet> rows_;
};

// Intersection graph of a family together with an identifier of its source.
struct IntersectionGraph {
  Graph graph;
  std::string family_ref;
};

inline Graph build_graph(const Family& family) {
  family.validate();
  const std::size_t n = family.size();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (homothets_intersect(family.body, family.placements[i], family.placements[j])) g.add_edge(i, j);
    }
  }
  return g;
}

inline IntersectionGraph build_intersection_graph(const Family& family) {
  return {build_graph(family), family.meta.construction};
}

// Member caps for the exact solvers.
struct SolverCaps {
  std::size_t clique = 100;
  std::size_t coloring = 45;
};

struct CliqueResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // ascending
  bool capped = false;               // witness is a greedy clique only
};

struct ColoringResult {
  std::size_t size = 0;            // classes used by `classes`
  std::vector<int> classes;        // class id per vertex, ids 0..size-1
  std::size_t lower_bound = 0;     // certified lower bound (== size when exact)
  bool capped = false;
};

namespace detail {

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  std::vector<std::size_t> run() {
    VertexSet r(g_.size()), p(g_.size()), x(g_.size());
    p.set();
    expand(r, p, x);
    return best_;
  }

 private:
  void expand(VertexSet& r, VertexSet p, VertexSet x) {
    const std::size_t rsize = r.count();
    if (p.none()) {
      if (x.none() && rsize > best_.size()) {
        best_.clear();
        for (std::size_t v = r.find_first(); v != VertexSet::npos; v = r.find_next(v)) best_.push_back(v);
      }
      return;
    }
    if (rsize + p.count() <= best_.size()) return;

    // Pivot maximizing |P & N(u)| over P | X, lowest index on ties.
    std::size_t pivot = VertexSet::npos, pivot_score = 0;
    const VertexSet px = p | x;
    for (std::size_t u = px.find_first(); u != VertexSet::npos; u = px.find_next(u)) {
      const std::size_t score = (p & g_.neighbors(u)).count();
      if (pivot == VertexSet::npos || score > pivot_score) {
        pivot = u;
        pivot_score = score;
      }
    }
    const VertexSet branch = p - g_.neighbors(pivot);
    for (std::size_t v = branch.find_first(); v != VertexSet::npos; v = branch.find_next(v)) {
      r.set(v);
      expand(r, p & g_.neighbors(v), x & g_.neighbors(v));
      r.reset(v);
      p.reset(v);
      x.set(v);
      if (r.count() + p.count() <= best_.size()) return;
    }
  }

  const Graph& g_;
  std::vector<std::size_t> best_;
};

// Greedy clique: repeatedly add the lowest-index vertex with most
// remaining candidate neighbors.
inline std::vector<std::size_t> greedy_clique(const Graph& g) {
  std::vector<std::size_t> clique;
  VertexSet cand(g.size());
  cand.set();
  while (cand.any()) {
    std::size_t best = VertexSet::npos, score = 0;
    for (std::size_t v = cand.find_first(); v != VertexSet::npos; v = cand.find_next(v)) {
      const std::size_t s = (cand & g.neighbors(v)).count();
      if (best == VertexSet::npos || s > score) {
        best = v;
        score = s;
      }
    }
    clique.push_back(best);
    cand &= g.neighbors(best);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

// DSATUR greedy coloring; deterministic (saturation, then degree, then index).
inline std::vector<int> dsatur_greedy(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> color(n, -1);
  std::vector<std::set<int>> seen(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      if (pick == n || seen[v].size() > seen[pick].size() ||
          (seen[v].size() == seen[pick].size() && g.degree(v) > g.degree(pick))) {
        pick = v;
      }
    }
    int c = 0;
    while (seen[pick].count(c)) ++c;
    color[pick] = c;
    const VertexSet& nb = g.neighbors(pick);
    for (std::size_t u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) seen[u].insert(c);
  }
  return color;
}

// Decides k-colorability by DSATUR-ordered backtracking with the seed clique
// precolored 0..|clique|-1 and new colors opened only in index order.
class KColoring {
 public:
  KColoring(const Graph& g, std::size_t k) : g_(g), k_(k), n_(g.size()), color_(n_, -1),
      forbidden_(n_, std::vector<int>(k, 0)), saturation_(n_, 0) {}

  bool run(const std::vector<std::size_t>& seed_clique, std::vector<int>& out) {
    if (seed_clique.size() > k_) return false;
    int next = 0;
    for (std::size_t v : seed_clique) assign(v, next++);
    used_ = next;
    colored_ = seed_clique.size();
    if (!search()) return false;
    out = color_;
    return true;
  }

 private:
  void assign(std::size_t v, int c) {
    color_[v] = c;
    const VertexSet& nb = g_.neighbors(v);
    for (std::size_t u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) {
      if (forbidden_[u][c]++ == 0) ++saturation_[u];
    }
  }

  void unassign(std::size_t v) {
    const int c = color_[v];
    color_[v] = -1;
    const VertexSet& nb = g_.neighbors(v);
    for (std::size_t u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) {
      if (--forbidden_[u][c] == 0) --saturation_[u];
    }
  }

  bool search() {
    if (colored_ == n_) return true;
    std::size_t pick = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      if (pick == n_ || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick))) {
        pick = v;
      }
    }
    if (saturation_[pick] >= k_) return false;
    const int limit = std::min<int>(static_cast<int>(k_), used_ + 1);
    for (int c = 0; c < limit; ++c) {
      if (forbidden_[pick][c] > 0) continue;
      const int saved_used = used_;
      if (c == used_) ++used_;
      assign(pick, c);
      ++colored_;
      if (search()) return true;
      --colored_;
      unassign(pick);
      used_ = saved_used;
    }
    return false;
  }

  const Graph& g_;
  std::size_t k_;
  std::size_t n_;
  std::vector<int> color_;
  std::vector<std::vector<int>> forbidden_;
  std::vector<std::size_t> saturation_;
  int used_ = 0;
  std::size_t colored_ = 0;
};

// Renumber class ids to 0..k-1 in order of first appearance.
inline std::size_t normalize_classes(std::vector<int>& classes) {
  std::vector<int> remap;
  int next = 0;
  for (int& c : classes) {
    if (c >= static_cast<int>(remap.size())) remap.resize(static_cast<std::size_t>(c) + 1, -1);
    int& slot = remap[static_cast<std::size_t>(c)];
    if (slot < 0) slot = next++;
    c = slot;
  }
  return static_cast<std::size_t>(next);
}

}  // namespace detail

inline CliqueResult max_clique(const Graph& g, const SolverCaps& caps = {}) {
  if (g.size() > caps.clique) return {0, detail::greedy_clique(g), true};
  CliqueResult r;
  r.witness = detail::CliqueSearch(g).run();
  std::sort(r.witness.begin(), r.witness.end());
  r.size = r.witness.size();
  return r;
}

inline CliqueResult max_independent_set(const Graph& g, const SolverCaps& caps = {}) {
  return max_clique(g.complement(), caps);
}

inline ColoringResult chromatic_number(const Graph& g, const SolverCaps& caps = {}) {
  ColoringResult r;
  if (g.size() == 0) return r;
  const CliqueResult clique = max_clique(g, caps);
  std::vector<int> greedy = detail::dsatur_greedy(g);
  const std::size_t upper = detail::normalize_classes(greedy);
  r.lower_bound = clique.capped ? clique.witness.size() : clique.size;
  if (g.size() > caps.coloring || clique.capped) {
    r.size = upper;
    r.classes = std::move(greedy);
    r.capped = true;
    return r;
  }
  for (std::size_t k = r.lower_bound; k < upper; ++k) {
    std::vector<int> colors;
    if (detail::KColoring(g, k).run(clique.witness, colors)) {
      r.size = detail::normalize_classes(colors);
      r.classes = std::move(colors);
      r.lower_bound = r.size;
      return r;
    }
  }
  r.size = upper;
  r.classes = std::move(greedy);
  r.lower_bound = upper;
  return r;
}

inline ColoringResult clique_cover_number(const Graph& g, const SolverCaps& caps = {}) {
  return chromatic_number(g.complement(), caps);
}

// Both checks require one class id per vertex, all non-negative.
inline void check_assignment(const Graph& g, const std::vector<int>& assignment) {
  if (assignment.size() != g.size()) {
    throw InputError("assignment has " + std::to_string(assignment.size()) + " entries for " +
                     std::to_string(g.size()) + " vertices");
  }
  for (int c : assignment) {
    if (c < 0) throw InputError("assignment contains a negative class id");
  }
}

inline bool verify_coloring(const Graph& g, const std::vector<int>& assignment) {
  check_assignment(g, assignment);
  for (const auto& [i, j] : g.edges()) {
    if (assignment[i] == assignment[j]) return false;
  }
  return true;
}

inline bool verify_clique_partition(const Graph& g, const std::vector<int>& assignment) {
  check_assignment(g, assignment);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (assignment[i] == assignment[j] && !g.adjacent(i, j)) return false;
    }
  }
  return true;
}

inline bool is_clique(const Graph& g, const std::vector<std::size_t>& members) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!g.adjacent(members[a], members[b])) return false;
    }
  }
  return true;
}

inline bool is_independent(const Graph& g, const std::vector<std::size_t>& members) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (g.adjacent(members[a], members[b])) return false;
    }
  }
  return true;
}

inline std::size_t count_classes(const std::vector<int>& assignment) {
  return std::set<int>(assignment.begin(), assignment.end()).size();
}

// Exact omega, alpha, chi, theta with witnesses.
struct GraphInvariants {
  CliqueResult omega;
  CliqueResult alpha;
  ColoringResult chi;
  ColoringResult theta;

  bool any_capped() const { return omega.capped || alpha.capped || chi.capped || theta.capped; }
};

inline GraphInvariants compute_invariants(const Graph& g, const SolverCaps& caps = {}) {
  GraphInvariants inv{max_clique(g, caps), max_independent_set(g, caps), chromatic_number(g, caps),
                      clique_cover_number(g, caps)};
  if (!inv.omega.capped && !inv.chi.capped && inv.omega.size > inv.chi.size) {
    throw InvariantViolation("omega exceeds chi");
  }
  if (!inv.alpha.capped && !inv.theta.capped && inv.alpha.size > inv.theta.size) {
    throw InvariantViolation("alpha exceeds theta");
  }
  return inv;
}

// ---------------------------------------------------------------------------
// DIMACS undirected graph format
// ---------------------------------------------------------------------------

inline void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {}) {
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
}

inline Graph read_dimacs(std::istream& in) {
  std::string line;
  bool have_header = false;
  Graph g;
  std::size_t declared_edges = 0;
  std::size_t line_no = 0, edge_lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'p') {
      std::string format;
      std::size_t n = 0;
      if (!(ls >> format >> n >> declared_edges) || (format != "edge" && format != "col")) {
        throw InputError("DIMACS line " + std::to_string(line_no) + ": bad problem line");
      }
      g = Graph(n);
      have_header = true;
    } else if (tag == 'e') {
      std::size_t i = 0, j = 0;
      if (!have_header || !(ls >> i >> j) || i == 0 || j == 0 || i > g.size() || j > g.size()) {
        throw InputError("DIMACS line " + std::to_string(line_no) + ": bad edge line");
      }
      if (i != j) g.add_edge(i - 1, j - 1);
      ++edge_lines;
    } else {
      throw InputError("DIMACS line " + std::to_string(line_no) + ": unknown line type");
    }
  }
  if (!have_header) throw InputError("DIMACS input has no problem line");
  if (edge_lines != declared_edges) {
    throw InputError("DIMACS problem line declares " + std::to_string(declared_edges) + " edges, found " +
                     std::to_string(edge_lines));
  }
  return g;
}

}  // namespace convex_chroma
