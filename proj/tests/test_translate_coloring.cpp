#include <gtest/gtest.h>

#include <cmath>

#include "convex_chroma/constructions.hpp"
#include "convex_chroma/translate_coloring.hpp"
#include "oracles.hpp"

using namespace convex_chroma;

namespace {

Family squares(std::vector<Point> centers) {
  Family f{ConvexBody::box({1, 1}), {}, {}};
  for (auto& c : centers) f.placements.push_back({std::move(c), 1.0});
  return f;
}

// Normalized family over given reference points (unit cube already).
NormalizedFamily unit_cubes(std::size_t dim, std::vector<double> coords) {
  NormalizedFamily nf;
  nf.dim = dim;
  nf.coords = std::move(coords);
  nf.params = BoundParams::from_ratio(dim, 1.0);
  return nf;
}

}  // namespace

TEST(BoundParams, FromRatio) {
  const BoundParams sq = BoundParams::from_ratio(2, 1.0);
  EXPECT_EQ(sq.M, 2);
  EXPECT_EQ(sq.c, 1);
  EXPECT_EQ(sq.t_bound, 2);
  const BoundParams disk = BoundParams::from_ratio(2, std::sqrt(2.0));
  EXPECT_EQ(disk.M, 3);
  EXPECT_EQ(disk.c, 2);
  EXPECT_EQ(disk.t_bound, 6);
  const BoundParams tri = BoundParams::from_ratio(2, 2.0);
  EXPECT_EQ(tri.M, 3);
  EXPECT_EQ(tri.c, 2);
  EXPECT_EQ(tri.t_bound, 6);
  EXPECT_EQ(BoundParams::from_ratio(3, 1.0).t_bound, 4);
  EXPECT_EQ(BoundParams::from_ratio(2, 1.0 + 1e-12).t_bound, 2);  // rounding noise
  EXPECT_THROW(BoundParams::from_ratio(2, 0.5), InputError);
}

TEST(BoundParams, InvariantsAndPaperFactor) {
  EXPECT_EQ(theorem1_factor(2), 6);
  EXPECT_EQ(theorem1_factor(3), 32);
  EXPECT_EQ(theorem1_factor(4), 375);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double r = 1.0; r <= static_cast<double>(n); r += 0.125) {
      const BoundParams p = BoundParams::from_ratio(n, r);
      EXPECT_GE(p.M, 2);
      EXPECT_GE(2.0 * static_cast<double>(p.c) - 1.0, r - 1e-9);
      EXPECT_GE(static_cast<double>(p.M - 1), r - 1e-9);
      EXPECT_LE(p.t_bound, theorem1_factor(n)) << "n=" << n << " r=" << r;
    }
  }
}

TEST(Normalize, SquaresAreIdentity) {
  const NormalizedFamily nf = normalize(squares({{0.3, 2.7}, {5, 5}}));
  EXPECT_DOUBLE_EQ(nf.ref(0)[0], 0.3);
  EXPECT_DOUBLE_EQ(nf.ref(0)[1], 2.7);
  EXPECT_EQ(nf.params.t_bound, 2);
}

TEST(Normalize, ScaledBoxesAndBodies) {
  Family f{ConvexBody::box({2, 4}), {{{2, 4}, 0.5}}, {}};
  const NormalizedFamily nf = normalize(f);
  EXPECT_DOUBLE_EQ(nf.ref(0)[0], 2.0);
  EXPECT_DOUBLE_EQ(nf.ref(0)[1], 2.0);

  Family tri{ConvexBody::polygon({{0, 0}, {1, 0}, {0, 1}}), {{{0, 0}, 1.0}}, {}};
  EXPECT_EQ(normalize(tri).params.t_bound, 6);
  Family disk{ConvexBody::disk(), {{{0, 0}, 1.0}}, {}};
  EXPECT_NEAR(normalize(disk).params.r, std::sqrt(2.0), 1e-12);

  Family mixed{ConvexBody::disk(), {{{0, 0}, 1.0}, {{3, 0}, 2.0}}, {}};
  EXPECT_THROW(normalize(mixed), InputError);
  Family big{ConvexBody::box(std::vector<double>(7, 1.0)), {}, {}};
  EXPECT_THROW(normalize(big), InputError);
}

TEST(Offsets, SingleMemberAndGrid) {
  const LineOffsets one = choose_offsets(unit_cubes(2, {0.0, 0.0}), 1);
  EXPECT_GE(one.clearance, kOffsetClearance);

  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      grid.push_back(0.5 * i);
      grid.push_back(0.5 * j);
    }
  }
  const NormalizedFamily nf = unit_cubes(2, grid);
  const LineOffsets off = choose_offsets(nf, 3);
  // Exhaustive clearance check: no b_a may sit at a half-integer offset.
  for (std::size_t a = 0; a < 2; ++a) {
    const double d = std::abs(off.shift[a] - std::round(off.shift[a] * 2.0) / 2.0);
    EXPECT_GE(d, kOffsetClearance);
  }
  EXPECT_EQ(off.shift, choose_offsets(nf, 3).shift);
}

TEST(Offsets, AdversarialSpacingFails) {
  std::vector<double> coords(10'000'000);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = static_cast<double>(i) * 1e-7;
  EXPECT_THROW(choose_offsets(unit_cubes(1, std::move(coords)), 0), ConstructionError);
}

TEST(Decompose, ArithmeticExample) {
  NormalizedFamily nf = unit_cubes(2, {0.3, 2.7, 10.3, 2.7});
  nf.params = BoundParams::from_ratio(2, std::sqrt(2.0));  // c = 2
  const Decomposition d = decompose(nf, LineOffsets{{0.0, 0.0}, 0.2}, nf.params);
  EXPECT_EQ(d.members[0].line_key, std::vector<long>{0});
  EXPECT_EQ(d.members[0].cell, 3);
  EXPECT_EQ(d.members[0].cell_residue, 1);
  EXPECT_EQ(d.members[1].line_key, std::vector<long>{10});
  EXPECT_EQ(d.members[1].line_residue, std::vector<long>{1});
  EXPECT_TRUE(decompose(unit_cubes(2, {}), LineOffsets{{0.1, 0.1}, 0.4}, nf.params).members.empty());
}

TEST(Poset, ChainsAndAntichains) {
  // Stacked disjoint squares: a total order.
  const Family stack = squares({{0, 0}, {0, 2}, {0, 4}, {0, 6}, {0, 8}});
  const NormalizedFamily ns = normalize(stack);
  const PosetClass total = build_poset({0, 1, 2, 3, 4}, ns, build_graph(stack));
  EXPECT_EQ(chain_partition(total).size(), 1u);
  EXPECT_EQ(antichain_partition(total).size(), 5u);

  // Pairwise intersecting squares: an antichain.
  const Family pile = squares({{0, 0}, {0.1, 0.2}, {0.2, 0.1}, {0.3, 0.3}, {0.15, 0.4}});
  const PosetClass flat = build_poset({0, 1, 2, 3, 4}, normalize(pile), build_graph(pile));
  EXPECT_EQ(chain_partition(flat).size(), 5u);
  EXPECT_EQ(antichain_partition(flat).size(), 1u);
}

TEST(Poset, MatchesDirectRelationAndOracles) {
  const Family f = random_family(ConvexBody::box({1, 1}), 30, AxisBox{{0, 0}, {1.5, 6}}, {1, 1}, 7);
  const TranslateAnalysis t = analyze_translates(f, 7);
  std::size_t compared = 0;
  for (const auto& [key, poset] : t.classes) {
    for (std::size_t a = 0; a < poset.size(); ++a) {
      for (std::size_t b = 0; b < poset.size(); ++b) {
        const std::size_t ma = poset.members[a], mb = poset.members[b];
        const double ha = f.placements[ma].center[1], hb = f.placements[mb].center[1];
        const bool lower = ha < hb || (ha == hb && ma < mb);
        const bool expected = ma != mb && lower && !oracle::members_meet(f.body, f.placements[ma], f.placements[mb]);
        EXPECT_EQ(poset.precedes(a, b), expected);
        ++compared;
      }
    }
    const oracle::Matrix sub = oracle::adjacency(t.graph.induced(poset.members));
    EXPECT_EQ(chain_partition(poset).size(), oracle::clique_number(sub));
    EXPECT_EQ(antichain_partition(poset).size(), oracle::independence_number(sub));
  }
  EXPECT_GT(compared, 30u);
}

TEST(ColorTranslates, SmallCases) {
  const ColoringReport one = color_translates(squares({{0, 0}}), 0);
  EXPECT_EQ(one.colors_used, 1u);
  EXPECT_EQ(color_translates(squares({}), 0).colors_used, 0u);

  const Family c5 = pentagon_family(1);
  const ColoringReport r = color_translates(c5, 0);
  EXPECT_TRUE(verify_coloring(build_graph(c5), r.colors));
  EXPECT_GE(r.colors_used, 3u);
  EXPECT_LE(r.colors_used, 4u);
  EXPECT_EQ(r.method, "theorem1");
  EXPECT_EQ(r.block_labels.size(), 5u);
}

TEST(ColorTranslates, GridWithinTwiceOmega) {
  const Family grid = grid_family(ConvexBody::box({1, 1}), 2);
  const ColoringReport r = color_translates(grid, 0);
  EXPECT_TRUE(verify_coloring(build_graph(grid), r.colors));
  EXPECT_GE(r.colors_used, 9u);
  EXPECT_LE(r.colors_used, 18u);
  EXPECT_DOUBLE_EQ(r.bound_value, 18.0);

  const PartitionReport p = clique_partition_translates(grid, 0);
  EXPECT_TRUE(verify_clique_partition(build_graph(grid), p.classes));
  EXPECT_GE(p.classes_used, 4u);
  EXPECT_LE(p.classes_used, 8u);
}

TEST(ColorTranslates, PartitionSmallCases) {
  EXPECT_EQ(clique_partition_translates(squares({{0, 0}, {0.2, 0.3}, {0.4, 0.1}}), 0).classes_used, 1u);
  const PartitionReport far = clique_partition_translates(squares({{0, 0}, {50, 50}}), 0);
  EXPECT_EQ(far.classes_used, 2u);
  EXPECT_LE(static_cast<double>(far.classes_used), far.bound_value);
}

TEST(ColorTranslates, BoundsHoldAcrossBodiesAndSeeds) {
  const std::vector<ConvexBody> bodies{ConvexBody::box({1, 1}), ConvexBody::polygon({{0, 0}, {1, 0}, {0, 1}}),
                                       ConvexBody::disk(), ConvexBody::box({1, 1, 1})};
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    const std::size_t n = bodies[b].dimension();
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Family f = random_family(bodies[b], 25, AxisBox{Point(n, 0.0), Point(n, 4.0)}, {1, 1}, s);
      const Graph g = build_graph(f);
      const ColoringReport c = color_translates(f, s);
      const PartitionReport p = clique_partition_translates(f, s);
      ASSERT_TRUE(verify_coloring(g, c.colors));
      ASSERT_TRUE(verify_clique_partition(g, p.classes));
      EXPECT_LE(static_cast<double>(c.colors_used), c.bound_value);
      EXPECT_LE(static_cast<double>(p.classes_used), p.bound_value);
      EXPECT_EQ(c.colors, color_translates(f, s).colors);
    }
  }
}

TEST(ColorTranslates, RejectsHomothets) {
  Family f{ConvexBody::box({1, 1}), {{{0, 0}, 1.0}, {{2, 0}, 2.0}}, {}};
  EXPECT_THROW(color_translates(f, 0), InputError);
}
