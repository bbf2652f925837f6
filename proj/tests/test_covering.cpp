#include <gtest/gtest.h>

#include <random>

#include "convex_chroma/covering.hpp"
#include "oracles.hpp"

using namespace convex_chroma;

namespace {

ConvexBody triangle() { return ConvexBody::polygon({{0, 0}, {1, 0}, {0, 1}}); }

// Independent check: uniform points of the target must fall in some translate.
std::size_t uncovered_random_points(const CoveringCertificate& cert, std::size_t points, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const std::size_t n = cert.target.dimension();
  const AxisBox bb = bounding_box(cert.target, {Point(n, 0.0), cert.target_scale});
  std::vector<std::uniform_real_distribution<double>> axis;
  for (std::size_t a = 0; a < n; ++a) axis.emplace_back(bb.lo[a], bb.hi[a]);
  std::size_t missed = 0, drawn = 0;
  while (drawn < points) {
    Point x(n);
    for (std::size_t a = 0; a < n; ++a) x[a] = axis[a](gen);
    if (!contains(cert.target, {Point(n, 0.0), cert.target_scale}, x, 0.0)) continue;
    ++drawn;
    const bool hit = std::any_of(cert.translations.begin(), cert.translations.end(),
                                 [&](const Point& v) { return contains(cert.unit, {v, 1.0}, x, 1e-9); });
    missed += hit ? 0 : 1;
  }
  return missed;
}

}  // namespace

TEST(DifferenceBody, Shapes) {
  const ScaledBody tri = difference_body(triangle());
  EXPECT_NEAR(area(tri.body) * tri.scale * tri.scale, 3.0, 1e-12);
  const ScaledBody disk = difference_body(ConvexBody::disk());
  EXPECT_DOUBLE_EQ(disk.scale, 2.0);
}

TEST(Samples, CountAndMembership) {
  const ScaledBody target{ConvexBody::disk(), 2.0};
  const auto pts = coverage_samples(target, 5000);
  EXPECT_EQ(pts.size(), 5000u + kBoundarySamples);
  for (const Point& x : pts) EXPECT_TRUE(contains(target.body, {{0, 0}, 2.0}, x, 1e-9));
  // Deterministic.
  EXPECT_EQ(pts, coverage_samples(target, 5000));
}

TEST(KnownKappa, SquareNeedsFourTranslates) {
  const auto cert = known_kappa(ConvexBody::box({1, 1}));
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->kappa_ub, 4u);
  EXPECT_EQ(cert->verification.samples, kDefaultCoverSamples + kBoundarySamples);
  EXPECT_EQ(cert->verification.uncovered, 0u);
  EXPECT_EQ(uncovered_random_points(*cert, 20000, 1), 0u);
}

TEST(KnownKappa, BoxesUseTwoToTheN) {
  const auto cube = known_kappa(ConvexBody::box({1, 2, 0.5}), 5000);
  ASSERT_TRUE(cube.has_value());
  EXPECT_EQ(cube->kappa_ub, 8u);
  EXPECT_TRUE(cube->verification.ok());
}

TEST(KnownKappa, DiskHexagonalSeven) {
  const auto cert = known_kappa(ConvexBody::disk());
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->kappa_ub, 7u);
  EXPECT_EQ(cert->verification.uncovered, 0u);
  EXPECT_EQ(uncovered_random_points(*cert, 20000, 2), 0u);
  EXPECT_FALSE(known_kappa(triangle()).has_value());
}

TEST(Verification, DetectsGaps) {
  const ScaledBody target{ConvexBody::box({1, 1}), 2.0};
  const std::vector<Point> three{{-0.5, -0.5}, {0.5, -0.5}, {-0.5, 0.5}};
  const CoverageReport r = verify_translates(target, ConvexBody::box({1, 1}), three, 5000);
  EXPECT_GT(r.uncovered, 0u);
  EXPECT_LT(r.worst_margin, 0.0);
  EXPECT_THROW(verify_translates(target, ConvexBody::box({1, 1}), three, 999), InputError);
}

TEST(Lattice, TriangleDifferenceCover) {
  const CoveringCertificate cert = difference_cover(triangle(), 20000);
  EXPECT_TRUE(cert.verification.ok());
  EXPECT_GE(cert.kappa_ub, 4u);  // the hexagon has area 3, each triangle 1/2
  EXPECT_LE(static_cast<double>(cert.kappa_ub), covering_ceiling_proxy(2));
  EXPECT_EQ(uncovered_random_points(cert, 20000, 3), 0u);
  // Deterministic.
  EXPECT_EQ(cert.translations, difference_cover(triangle(), 20000).translations);
}

TEST(Lattice, CoarseStepFails) {
  EXPECT_THROW(cover_by_translates(difference_body(triangle()), triangle(), 5.0, 5000), ConstructionError);
  EXPECT_THROW(cover_by_translates(difference_body(triangle()), triangle(), 0.0, 5000), InputError);
}

TEST(Lattice, SquareByLatticeIsValid) {
  const CoveringCertificate cert =
      cover_by_translates({ConvexBody::box({1, 1}), 2.0}, ConvexBody::box({1, 1}), 0.25, 5000);
  EXPECT_TRUE(cert.verification.ok());
  EXPECT_GE(cert.kappa_ub, 4u);
}

TEST(Ceiling, PlanarValue) { EXPECT_DOUBLE_EQ(covering_ceiling_proxy(2), 108.0); }
