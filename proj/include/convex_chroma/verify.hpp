#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covering.hpp"
#include "error.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "homothet_coloring.hpp"
#include "io.hpp"
#include "reports.hpp"
#include "translate_coloring.hpp"

namespace convex_chroma {

// Exit codes shared by the command line tool and the acceptance runner.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 2, kExitCapExceeded = 3, kExitInputError = 4 };

// Families the lattice-line algorithm accepts: translates of a planar body
// or of a box of moderate dimension.
inline bool supports_line_method(const Family& family) {
  if (!family.is_translate_family()) return false;
  return family.body.dimension() == 2 || (family.body.is_box() && family.body.dimension() <= kMaxTranslateDimension);
}

struct RunOptions {
  std::uint64_t seed = 0;
  SolverCaps caps;
  std::size_t samples = kDefaultCoverSamples;
  // Precomputed certificates, looked up by unit body before covering anew.
  std::vector<CoveringCertificate> certificates;
};

inline CoveringCertificate certificate_for(const ConvexBody& body, const RunOptions& opt) {
  for (const CoveringCertificate& c : opt.certificates) {
    if (c.unit == body) return c;
  }
  return difference_cover(body, opt.samples);
}

inline ColoringReport run_coloring(const std::string& method, const Family& family, const RunOptions& opt,
                                   const CoveringCertificate* cert = nullptr) {
  if (method == "translates") {
    if (!family.is_translate_family()) throw InputError("method translates needs a family of translates");
    return color_translates(family, opt.seed, opt.caps);
  }
  if (method == "symmetrized") {
    const Family sym = symmetrized_family(family);
    ColoringReport report = color_homothets(sym, certificate_for(sym.body, opt), opt.caps);
    report.method = "corollary1";
    if (report.omega_exact) report.bound_formula = "t(C) * (omega - 1) + 1";
    return report;
  }
  if (method == "homothets") {
    if (cert) return color_homothets(family, *cert, opt.caps);
    return color_homothets(family, certificate_for(family.body, opt), opt.caps);
  }
  throw InputError("unknown method \"" + method + "\"");
}

inline PartitionReport run_partition(const std::string& method, const Family& family, const RunOptions& opt,
                                     const CoveringCertificate* cert = nullptr) {
  if (method == "translates") {
    if (!family.is_translate_family()) throw InputError("method translates needs a family of translates");
    return clique_partition_translates(family, opt.seed, opt.caps);
  }
  if (method == "symmetrized") {
    const Family sym = symmetrized_family(family);
    PartitionReport report = clique_partition_homothets(sym, certificate_for(sym.body, opt), opt.caps);
    report.method = "corollary1";
    report.bound_formula = "t(C) * (nu - 1) + 1";
    return report;
  }
  if (method == "homothets") {
    if (cert) return clique_partition_homothets(family, *cert, opt.caps);
    return clique_partition_homothets(family, certificate_for(family.body, opt), opt.caps);
  }
  throw InputError("unknown method \"" + method + "\"");
}

// One inequality of the verification chain.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool skipped = false;
  bool pass = true;
};

struct VerifyResult {
  Json report;
  std::vector<Check> checks;
  bool capped = false;

  bool all_pass() const {
    for (const Check& c : checks) {
      if (!c.skipped && !c.pass) return false;
    }
    return true;
  }
  int exit_code() const { return !all_pass() ? kExitCheckFailed : capped ? kExitCapExceeded : kExitPass; }
};

namespace detail {

class CheckList {
 public:
  explicit CheckList(std::vector<Check>& out) : out_(out) {}

  void leq(std::string name, double lhs, double rhs, bool available = true) {
    Check c{std::move(name), lhs, rhs, !available, true};
    if (available) c.pass = lhs <= rhs + kTolerance;
    out_.push_back(std::move(c));
  }
  void holds(std::string name, bool ok) { out_.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, false, ok}); }

 private:
  std::vector<Check>& out_;
};

inline Json oracle_json(const CliqueResult& r) {
  Json j;
  j["value"] = r.capped ? Json(nullptr) : Json(r.size);
  j["witness"] = r.witness;
  j["capped"] = r.capped;
  return j;
}

inline Json oracle_json(const ColoringResult& r) {
  Json j;
  j["value"] = r.capped ? Json(nullptr) : Json(r.size);
  j["upper"] = r.size;
  j["lower"] = r.lower_bound;
  j["capped"] = r.capped;
  return j;
}

// Pairs whose signed margin lies within `band` of zero; adjacency there
// depends on the closed-intersection convention.
inline Json near_tangent_pairs(const Family& family, double band) {
  Json out = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double m = intersection_margin(family.body, family.placements[i], family.placements[j]);
      if (std::abs(m) < band) out.push_back({{"pair", {i, j}}, {"margin", m}});
    }
  }
  return out;
}

}  // namespace detail

inline constexpr double kNearTangentBand = 1e-6;

// Runs every applicable algorithm together with the exact oracles and checks
// omega <= chi <= colors <= bound and nu <= theta <= classes <= bound.
inline VerifyResult run_verify(const FamilyFile& file, const RunOptions& opt) {
  const Family& family = file.family;
  family.validate();
  VerifyResult result;
  detail::CheckList checks(result.checks);
  const Graph g = build_graph(family);

  Json& r = result.report;
  r["command"] = "verify";
  r["input_digest"] = digest(to_json(family));
  r["seed"] = opt.seed;
  r["members"] = family.size();
  r["edges"] = g.edge_count();
  r["near_tangent_pairs"] = detail::near_tangent_pairs(family, kNearTangentBand);

  if (file.claimed_edges) {
    std::set<std::pair<std::size_t, std::size_t>> claimed;
    for (auto [a, b] : *file.claimed_edges) claimed.emplace(std::min(a, b), std::max(a, b));
    const auto actual = g.edges();
    const std::set<std::pair<std::size_t, std::size_t>> real(actual.begin(), actual.end());
    Json diff = Json::array();
    for (const auto& e : claimed) {
      if (!real.count(e)) diff.push_back({{"edge", {e.first, e.second}}, {"claimed", true}, {"actual", false}});
    }
    for (const auto& e : real) {
      if (!claimed.count(e)) diff.push_back({{"edge", {e.first, e.second}}, {"claimed", false}, {"actual", true}});
    }
    checks.holds("claimed adjacency matches geometry", diff.empty());
    r["adjacency_mismatches"] = std::move(diff);
  }

  const GraphInvariants inv = compute_invariants(g, opt.caps);
  result.capped = inv.any_capped();
  r["oracles"] = {{"omega", detail::oracle_json(inv.omega)},
                  {"nu", detail::oracle_json(inv.alpha)},
                  {"chi", detail::oracle_json(inv.chi)},
                  {"theta", detail::oracle_json(inv.theta)}};
  const bool omega_ok = !inv.omega.capped, chi_ok = !inv.chi.capped;
  const bool nu_ok = !inv.alpha.capped, theta_ok = !inv.theta.capped;
  checks.leq("omega <= chi", static_cast<double>(inv.omega.size), static_cast<double>(inv.chi.size), omega_ok && chi_ok);
  checks.leq("nu <= theta", static_cast<double>(inv.alpha.size), static_cast<double>(inv.theta.size), nu_ok && theta_ok);

  std::vector<std::string> methods;
  if (supports_line_method(family)) methods = {"translates", "symmetrized"};
  methods.push_back("homothets");

  std::optional<CoveringCertificate> cert;
  Json algorithms = Json::array();
  for (const std::string& method : methods) {
    const CoveringCertificate* shared = nullptr;
    if (method == "homothets" && family.size() > 0) {
      if (!cert) cert = certificate_for(family.body, opt);
      shared = &*cert;
    }
    const ColoringReport col = run_coloring(method, family, opt, shared);
    const PartitionReport part = run_partition(method, family, opt, shared);
    const bool proper = family.size() == 0 || verify_coloring(g, col.colors);
    const bool cliques = family.size() == 0 || verify_clique_partition(g, part.classes);
    const double colors = static_cast<double>(col.colors_used), classes = static_cast<double>(part.classes_used);
    checks.holds(method + ": coloring is proper", proper);
    checks.holds(method + ": partition classes are cliques", cliques);
    checks.leq(method + ": chi <= colors", static_cast<double>(inv.chi.size), colors, chi_ok);
    checks.leq(method + ": colors <= bound", colors, col.bound_value, col.omega_exact || family.size() == 0);
    checks.leq(method + ": theta <= classes", static_cast<double>(inv.theta.size), classes, theta_ok);
    checks.leq(method + ": classes <= bound", classes, part.bound_value, part.nu_exact || family.size() == 0);

    // Classes that all carry a point give a transversal, and theta <= tau.
    const bool all_pierced =
        !part.piercing.empty() && std::all_of(part.piercing.begin(), part.piercing.end(), [](const auto& p) {
          return p.has_value();
        });
    if (all_pierced) {
      checks.leq(method + ": theta <= piercing points", static_cast<double>(inv.theta.size),
                 static_cast<double>(part.piercing.size()), theta_ok);
    }

    Json a;
    a["method"] = method;
    a["colors_used"] = col.colors_used;
    a["color_bound"] = col.bound_value;
    a["color_bound_formula"] = col.bound_formula;
    a["classes_used"] = part.classes_used;
    a["class_bound"] = part.bound_value;
    a["class_bound_formula"] = part.bound_formula;
    if (method != "translates") {
      a["kappa_ub"] = part.kappa_ub;
      a["fallback_used"] = part.fallback_used;
    }
    algorithms.push_back(std::move(a));
  }
  r["algorithms"] = std::move(algorithms);

  Json list = Json::array();
  for (const Check& c : result.checks) {
    list.push_back({{"name", c.name},
                    {"lhs", c.lhs},
                    {"rhs", c.rhs},
                    {"status", c.skipped ? "skipped" : c.pass ? "pass" : "fail"}});
  }
  r["checks"] = std::move(list);
  r["status"] = !result.all_pass() ? "fail" : result.capped ? "capped" : "pass";
  return result;
}

}  // namespace convex_chroma
