#include <gtest/gtest.h>

#include "convex_chroma/convex_chroma.hpp"

using namespace convex_chroma;

TEST(BodyJson, RoundTrip) {
  for (const ConvexBody& b : {ConvexBody::disk(), ConvexBody::box({1, 2, 3}),
                              ConvexBody::polygon({{0, 0}, {1, 0}, {0.25, 0.75}})}) {
    EXPECT_TRUE(body_from_json(to_json(b)) == b);
  }
  EXPECT_EQ(to_json(ConvexBody::disk()).dump(), R"({"kind":"disk"})");
}

TEST(BodyJson, Rejects) {
  EXPECT_THROW(body_from_json(Json::parse(R"({"kind":"polygon2d","vertices":[[0,0],[0,1],[1,0]]})")), InputError);
  EXPECT_THROW(body_from_json(Json::parse(R"({"kind":"ellipse"})")), InputError);
  EXPECT_THROW(body_from_json(Json::parse(R"({"sides":[1,1]})")), InputError);
  EXPECT_THROW(body_from_json(Json::parse(R"({"kind":"box","sides":[1,"x"]})")), InputError);
}

TEST(FamilyJson, RoundTripIsByteStable) {
  const Family f = random_family(ConvexBody::disk(), 12, AxisBox{{0, 0}, {5, 5}}, {0.5, 2.0}, 17);
  const std::string first = dump(to_json(f));
  const Family back = family_from_json(Json::parse(first));
  EXPECT_EQ(dump(to_json(back)), first);
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(back.placements[i].center, f.placements[i].center);  // exact doubles
    EXPECT_EQ(back.placements[i].scale, f.placements[i].scale);
  }
  EXPECT_EQ(back.meta.construction, "random");
  EXPECT_EQ(back.meta.seed, std::optional<std::uint64_t>(17));
}

TEST(FamilyJson, ClaimedEdgesAndErrors) {
  const Json j = Json::parse(R"({"body":{"kind":"disk"},
    "placements":[{"center":[0,0],"scale":1},{"center":[1,0],"scale":1}],
    "edges":[[0,1]]})");
  const FamilyFile file = family_file_from_json(j);
  ASSERT_TRUE(file.claimed_edges.has_value());
  EXPECT_EQ(file.claimed_edges->size(), 1u);

  EXPECT_THROW(family_file_from_json(Json::parse(R"({"body":{"kind":"disk"},"placements":[{"center":[0,0],"scale":-1}]})")),
               InputError);
  EXPECT_THROW(family_file_from_json(Json::parse(R"({"body":{"kind":"disk"},"placements":[{"center":[0,0,0]}]})")),
               InputError);
  EXPECT_THROW(family_file_from_json(Json::parse(R"({"body":{"kind":"disk"},"placements":[{"center":[0,0]}],"edges":[[0,3]]})")),
               InputError);
}

TEST(CertificateJson, RoundTrip) {
  const CoveringCertificate cert = *known_kappa(ConvexBody::disk(), 2000);
  const Json j = to_json(cert);
  EXPECT_EQ(j.at("kappa_ub"), 7);
  EXPECT_EQ(j.at("verified_samples"), 3000);
  const CoveringCertificate back = certificate_from_json(j);
  EXPECT_EQ(back.translations, cert.translations);
  EXPECT_TRUE(verify_certificate(back, 2000).ok());
}

TEST(Digest, StableAndSensitive) {
  const Json a = to_json(pentagon_family(2));
  EXPECT_EQ(digest(a), digest(to_json(pentagon_family(2))));
  EXPECT_NE(digest(a), digest(to_json(pentagon_family(3))));
  EXPECT_EQ(digest(a).size(), 16u);
}

TEST(Assignment, Forms) {
  EXPECT_EQ(assignment_from_json(Json::parse("[0,1,2]")), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(assignment_from_json(Json::parse(R"({"colors":[1,0]})")), (std::vector<int>{1, 0}));
  EXPECT_EQ(assignment_from_json(Json::parse(R"({"classes":[0,0]})")), (std::vector<int>{0, 0}));
  EXPECT_THROW(assignment_from_json(Json::parse(R"({"other":1})")), InputError);
}

TEST(RunVerify, PentagonPasses) {
  RunOptions opt;
  opt.samples = 5000;
  const VerifyResult r = run_verify(FamilyFile{pentagon_family(2), std::nullopt}, opt);
  EXPECT_EQ(r.exit_code(), kExitPass);
  EXPECT_EQ(r.report.at("oracles").at("chi").at("value"), 5);
  EXPECT_EQ(r.report.at("status"), "pass");
  // Same input, same bytes.
  EXPECT_EQ(dump(r.report), dump(run_verify(FamilyFile{pentagon_family(2), std::nullopt}, opt).report));
}

TEST(RunVerify, CorruptedClaimFails) {
  RunOptions opt;
  opt.samples = 5000;
  FamilyFile file{pentagon_family(1), std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}}};
  const VerifyResult r = run_verify(file, opt);
  EXPECT_EQ(r.exit_code(), kExitCheckFailed);
  EXPECT_EQ(r.report.at("adjacency_mismatches").size(), 2u);
}

TEST(RunVerify, CapsGiveCappedExit) {
  RunOptions opt;
  opt.samples = 5000;
  opt.caps = SolverCaps{4, 4};
  const VerifyResult r = run_verify(FamilyFile{pentagon_family(2), std::nullopt}, opt);
  EXPECT_EQ(r.exit_code(), kExitCapExceeded);
  EXPECT_EQ(r.report.at("status"), "capped");
}

TEST(RunVerify, EmptyFamily) {
  RunOptions opt;
  opt.samples = 5000;
  const VerifyResult r = run_verify(FamilyFile{Family{ConvexBody::box({1, 1}), {}, {}}, std::nullopt}, opt);
  EXPECT_EQ(r.exit_code(), kExitPass);
}

TEST(RunVerify, FlagsNearTangentPairs) {
  RunOptions opt;
  opt.samples = 5000;
  Family touching{ConvexBody::box({1, 1}), {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{5, 5}, 1.0}}, {}};
  const VerifyResult r = run_verify(FamilyFile{touching, std::nullopt}, opt);
  ASSERT_EQ(r.report.at("near_tangent_pairs").size(), 1u);
  EXPECT_EQ(r.report.at("near_tangent_pairs")[0].at("pair"), Json::parse("[0,1]"));
  EXPECT_EQ(r.report.at("edges"), 1);
  EXPECT_TRUE(run_verify(FamilyFile{pentagon_family(2), std::nullopt}, opt).report.at("near_tangent_pairs").empty());
}
