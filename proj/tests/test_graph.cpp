#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "convex_chroma/constructions.hpp"
#include "convex_chroma/graph.hpp"
#include "oracles.hpp"

using namespace convex_chroma;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution edge(p);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge(gen)) g.add_edge(i, j);
    }
  }
  return g;
}

Graph cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST(Graph, BasicQueries) {
  Graph g = cycle(5);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_TRUE(g.adjacent(0, 4));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_EQ(g.degree(3), 2u);
  EXPECT_EQ(g.complement().edge_count(), 5u);
  EXPECT_THROW(g.add_edge(1, 1), InputError);
  EXPECT_THROW(g.add_edge(0, 9), InputError);
  const Graph sub = g.induced({0, 1, 2});
  EXPECT_EQ(sub.edge_count(), 2u);
}

TEST(Solvers, CycleValues) {
  const Graph c5 = cycle(5);
  EXPECT_EQ(max_clique(c5).size, 2u);
  EXPECT_EQ(max_independent_set(c5).size, 2u);
  EXPECT_EQ(chromatic_number(c5).size, 3u);
  EXPECT_EQ(clique_cover_number(c5).size, 3u);
  const Graph c6 = cycle(6);
  EXPECT_EQ(chromatic_number(c6).size, 2u);
  EXPECT_EQ(clique_cover_number(c6).size, 3u);
}

TEST(Solvers, EmptyAndEdgeless) {
  EXPECT_EQ(max_clique(Graph(0)).size, 0u);
  EXPECT_EQ(chromatic_number(Graph(0)).size, 0u);
  const Graph empty(4);
  EXPECT_EQ(max_clique(empty).size, 1u);
  EXPECT_EQ(chromatic_number(empty).size, 1u);
  EXPECT_EQ(clique_cover_number(empty).size, 4u);
}

TEST(Solvers, MatchBruteForceOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 4 + s % 11;
    const double p = 0.2 + 0.1 * static_cast<double>(s % 7);
    const Graph g = random_graph(n, p, s);
    const oracle::Matrix m = oracle::adjacency(g);

    const CliqueResult w = max_clique(g);
    EXPECT_EQ(w.size, oracle::clique_number(m)) << "seed " << s;
    EXPECT_TRUE(is_clique(g, w.witness));
    const CliqueResult a = max_independent_set(g);
    EXPECT_EQ(a.size, oracle::independence_number(m));
    EXPECT_TRUE(is_independent(g, a.witness));

    const ColoringResult chi = chromatic_number(g);
    EXPECT_EQ(chi.size, oracle::chromatic_number(m)) << "seed " << s;
    EXPECT_TRUE(verify_coloring(g, chi.classes));
    const ColoringResult theta = clique_cover_number(g);
    EXPECT_EQ(theta.size, oracle::clique_cover_number(m));
    EXPECT_TRUE(verify_clique_partition(g, theta.classes));
  }
}

TEST(Solvers, CapsFallBackToBounds) {
  const Graph g = random_graph(30, 0.5, 3);
  const SolverCaps tight{10, 10};
  const CliqueResult w = max_clique(g, tight);
  EXPECT_TRUE(w.capped);
  EXPECT_TRUE(is_clique(g, w.witness));
  const ColoringResult chi = chromatic_number(g, tight);
  EXPECT_TRUE(chi.capped);
  EXPECT_TRUE(verify_coloring(g, chi.classes));
  EXPECT_LE(chi.lower_bound, chi.size);
  const GraphInvariants inv = compute_invariants(g, tight);
  EXPECT_TRUE(inv.any_capped());
}

TEST(Verify, AssignmentChecks) {
  const Graph g = cycle(5);
  EXPECT_TRUE(verify_coloring(g, {0, 1, 0, 1, 2}));
  EXPECT_FALSE(verify_coloring(g, {0, 1, 0, 1, 0}));
  EXPECT_THROW(verify_coloring(g, {0, 1}), InputError);
  EXPECT_THROW(verify_coloring(g, {0, 1, 0, 1, -1}), InputError);
  EXPECT_TRUE(verify_clique_partition(g, {0, 0, 1, 1, 2}));
  EXPECT_FALSE(verify_clique_partition(g, {0, 1, 0, 1, 2}));
  EXPECT_EQ(count_classes({4, 4, 7}), 2u);
}

TEST(Dimacs, RoundTripPreservesAdjacency) {
  const Graph g = random_graph(12, 0.4, 5);
  std::stringstream ss;
  write_dimacs(ss, g, "random");
  const Graph back = read_dimacs(ss);
  EXPECT_TRUE(back == g);
}

TEST(Dimacs, PentagonHeader) {
  std::stringstream ss;
  write_dimacs(ss, build_graph(pentagon_family(1)));
  std::string first;
  std::getline(ss, first);
  EXPECT_EQ(first, "p edge 5 5");
}

TEST(Dimacs, RejectsMalformedInput) {
  std::stringstream no_header("e 1 2\n");
  EXPECT_THROW(read_dimacs(no_header), InputError);
  std::stringstream bad_vertex("p edge 3 1\ne 1 4\n");
  EXPECT_THROW(read_dimacs(bad_vertex), InputError);
  std::stringstream bad_count("p edge 3 2\ne 1 2\n");
  EXPECT_THROW(read_dimacs(bad_count), InputError);
}

TEST(IntersectionGraph, MatchesOracleAdjacency) {
  const Family f = random_family(ConvexBody::disk(), 25, AxisBox{{0, 0}, {8, 8}}, {0.5, 1.5}, 9);
  EXPECT_EQ(oracle::adjacency(build_graph(f)), oracle::adjacency(f));
  const Family sq = random_family(ConvexBody::box({1, 1}), 25, AxisBox{{0, 0}, {5, 5}}, {1.0, 2.0}, 9);
  EXPECT_EQ(oracle::adjacency(build_graph(sq)), oracle::adjacency(sq));
}
