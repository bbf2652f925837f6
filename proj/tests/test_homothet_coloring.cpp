#include <gtest/gtest.h>

#include "convex_chroma/constructions.hpp"
#include "convex_chroma/homothet_coloring.hpp"
#include "oracles.hpp"

using namespace convex_chroma;

namespace {

const CoveringCertificate& square_cert() {
  static const CoveringCertificate cert = *known_kappa(ConvexBody::box({1, 1}), 5000);
  return cert;
}

const CoveringCertificate& disk_cert() {
  static const CoveringCertificate cert = *known_kappa(ConvexBody::disk(), 5000);
  return cert;
}

Family square_homothets(std::size_t count, std::uint64_t seed) {
  return random_family(ConvexBody::box({1, 1}), count, AxisBox{{0, 0}, {8, 8}}, {1.0, 3.0}, seed);
}

}  // namespace

TEST(SizeOrder, ScaleThenIndex) {
  Family f{ConvexBody::disk(), {{{0, 0}, 2.0}, {{5, 0}, 1.0}, {{9, 0}, 2.0}, {{20, 0}, 0.5}}, {}};
  EXPECT_EQ(size_order(f), (std::vector<std::size_t>{3, 1, 0, 2}));
}

TEST(ColorHomothets, BoundAndDegeneracy) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Family f = square_homothets(25, s);
    const Graph g = build_graph(f);
    const ColoringReport r = color_homothets(f, square_cert());
    ASSERT_TRUE(verify_coloring(g, r.colors));
    const std::size_t omega = oracle::clique_number(oracle::adjacency(f));
    EXPECT_EQ(r.omega_used, omega);
    EXPECT_LE(r.degeneracy, 4 * (omega - 1));
    EXPECT_LE(r.colors_used, r.degeneracy + 1);
    EXPECT_LE(r.colors_used, 4 * (omega - 1) + 1);
    EXPECT_EQ(r.method, "theorem2");
  }
}

TEST(ColorHomothets, CappedOmegaFallsBackToDegeneracy) {
  const Family f = square_homothets(20, 4);
  const ColoringReport r = color_homothets(f, square_cert(), SolverCaps{5, 5});
  EXPECT_FALSE(r.omega_exact);
  EXPECT_DOUBLE_EQ(r.bound_value, static_cast<double>(r.degeneracy) + 1.0);
}

TEST(ColorHomothets, RejectsForeignCertificate) {
  EXPECT_THROW(color_homothets(square_homothets(5, 1), disk_cert()), InputError);
}

TEST(Piercing, SquaresPiercedByCorners) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Family f = square_homothets(25, 100 + s);
    const Graph g = build_graph(f);
    const std::size_t smallest = size_order(f).front();
    std::vector<std::size_t> sub{smallest};
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i != smallest && g.adjacent(i, smallest)) sub.push_back(i);
    }
    const PiercingAssignment pa = pierce_intersecting_smallest(f, sub, square_cert(), g);
    EXPECT_FALSE(pa.fallback_used);
    EXPECT_LE(pa.class_count(), 4u);
    for (std::size_t e = 0; e < sub.size(); ++e) {
      const auto& p = pa.points[static_cast<std::size_t>(pa.class_of[e])];
      ASSERT_TRUE(p.has_value());
      EXPECT_TRUE(contains(f.body, f.placements[sub[e]], *p));
    }
  }
}

TEST(Piercing, DisksUseCertificatePoints) {
  std::size_t fallbacks = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Family f = random_family(ConvexBody::disk(), 25, AxisBox{{0, 0}, {8, 8}}, {0.5, 1.5}, s);
    const Graph g = build_graph(f);
    const std::size_t smallest = size_order(f).front();
    std::vector<std::size_t> sub{smallest};
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i != smallest && g.adjacent(i, smallest)) sub.push_back(i);
    }
    const PiercingAssignment pa = pierce_intersecting_smallest(f, sub, disk_cert(), g);
    fallbacks += pa.fallback_used ? 1 : 0;
    EXPECT_LE(pa.points_used(), 7u);
  }
  EXPECT_EQ(fallbacks, 0u);
}

TEST(Piercing, Preconditions) {
  const Family f = square_homothets(5, 2);
  const Graph g = build_graph(f);
  EXPECT_THROW(pierce_intersecting_smallest(f, {}, square_cert(), g), InputError);
  Family apart{ConvexBody::box({1, 1}), {{{0, 0}, 1.0}, {{10, 0}, 1.0}}, {}};
  EXPECT_THROW(pierce_intersecting_smallest(apart, {0, 1}, square_cert(), build_graph(apart)), InputError);
}

TEST(CliquePartition, BoundsOnRandomFamilies) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Family f = square_homothets(25, 200 + s);
    const Graph g = build_graph(f);
    const PartitionReport r = clique_partition_homothets(f, square_cert());
    ASSERT_TRUE(verify_clique_partition(g, r.classes));
    const std::size_t nu = oracle::independence_number(oracle::adjacency(f));
    EXPECT_EQ(r.nu_used, nu);
    EXPECT_LE(r.rounds, nu);
    EXPECT_LE(static_cast<double>(r.classes_used), r.round_bound);
    EXPECT_LE(r.classes_used, 4 * (nu - 1) + 1);
    EXPECT_EQ(r.kappa_ub, 4u);
  }
}

TEST(CliquePartition, PentagonDisjointFamily) {
  const Family f = pentagon_disjoint_family(2);
  const PartitionReport r = clique_partition_homothets(f, square_cert());
  EXPECT_TRUE(verify_clique_partition(build_graph(f), r.classes));
  EXPECT_GE(r.classes_used, 4u);
  EXPECT_LE(r.classes_used, 13u);
  Family empty{ConvexBody::box({1, 1}), {}, {}};
  EXPECT_EQ(clique_partition_homothets(empty, square_cert()).classes_used, 0u);
}

TEST(Symmetrized, TriangleTranslates) {
  const Family f =
      random_family(ConvexBody::polygon({{0, 0}, {1, 0}, {0, 1}}), 20, AxisBox{{0, 0}, {3, 3}}, {1, 1}, 5);
  const ColoringReport c = color_translates_symmetrized(f, 5, {}, 5000);
  EXPECT_TRUE(verify_coloring(build_graph(f), c.colors));
  EXPECT_EQ(c.method, "corollary1");
  EXPECT_LE(static_cast<double>(c.colors_used), c.bound_value);
  const PartitionReport p = clique_partition_translates_symmetrized(f, 5, {}, 5000);
  EXPECT_TRUE(verify_clique_partition(build_graph(f), p.classes));
  EXPECT_LE(static_cast<double>(p.classes_used), p.bound_value);

  Family mixed{ConvexBody::disk(), {{{0, 0}, 1.0}, {{3, 0}, 2.0}}, {}};
  EXPECT_THROW(color_translates_symmetrized(mixed, 0), InputError);
}
