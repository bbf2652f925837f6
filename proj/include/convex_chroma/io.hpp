#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "covering.hpp"
#include "error.hpp"
#include "family.hpp"
#include "geometry.hpp"
#include "reports.hpp"

namespace convex_chroma {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Bodies and families
// ---------------------------------------------------------------------------

inline Json to_json(const ConvexBody& body) {
  Json j;
  j["kind"] = to_string(body.kind());
  if (body.is_polygon()) {
    Json verts = Json::array();
    for (Vec2 v : body.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
  } else if (body.is_box()) {
    j["sides"] = body.sides();
  }
  return j;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline double number(const Json& j) {
  if (!j.is_number()) throw InputError("expected a number");
  return j.get<double>();
}

inline Point point(const Json& j) {
  if (!j.is_array()) throw InputError("expected a coordinate array");
  Point p;
  for (const Json& x : j) p.push_back(number(x));
  return p;
}

}  // namespace detail

inline ConvexBody body_from_json(const Json& j) {
  const Json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw InputError("body kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "polygon2d") {
    std::vector<Vec2> verts;
    for (const Json& v : detail::field(j, "vertices")) {
      const Point p = detail::point(v);
      if (p.size() != 2) throw InputError("polygon vertices must have two coordinates");
      verts.push_back({p[0], p[1]});
    }
    return ConvexBody::polygon(std::move(verts));
  }
  if (k == "disk") return ConvexBody::disk();
  if (k == "box") return ConvexBody::box(detail::point(detail::field(j, "sides")));
  throw InputError("unknown body kind \"" + k + "\"");
}

inline Json to_json(const Family& family) {
  Json j;
  j["body"] = to_json(family.body);
  Json placements = Json::array();
  for (const Placement& p : family.placements) placements.push_back({{"center", p.center}, {"scale", p.scale}});
  j["placements"] = std::move(placements);
  Json meta;
  meta["construction"] = family.meta.construction;
  meta["seed"] = family.meta.seed ? Json(*family.meta.seed) : Json(nullptr);
  j["meta"] = std::move(meta);
  return j;
}

// A family file may also carry the adjacency its writer believed in, as
// 0-based "edges"; verification compares it against the geometry.
struct FamilyFile {
  Family family;
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> claimed_edges;
};

inline FamilyFile family_file_from_json(const Json& j) {
  FamilyFile out{Family{body_from_json(detail::field(j, "body")), {}, {}}, std::nullopt};
  for (const Json& p : detail::field(j, "placements")) {
    Placement pl{detail::point(detail::field(p, "center")), p.contains("scale") ? detail::number(p.at("scale")) : 1.0};
    validate_placement(out.family.body, pl);
    out.family.placements.push_back(std::move(pl));
  }
  if (j.contains("meta") && j.at("meta").is_object()) {
    const Json& meta = j.at("meta");
    if (meta.contains("construction") && meta.at("construction").is_string()) {
      out.family.meta.construction = meta.at("construction").get<std::string>();
    }
    if (meta.contains("seed") && meta.at("seed").is_number_unsigned()) {
      out.family.meta.seed = meta.at("seed").get<std::uint64_t>();
    }
  }
  if (j.contains("edges")) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        throw InputError("edges must be pairs of member indices");
      }
      const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
      if (a >= out.family.size() || b >= out.family.size() || a == b) throw InputError("edge refers to a bad member");
      edges.emplace_back(a, b);
    }
    out.claimed_edges = std::move(edges);
  }
  return out;
}

inline Family family_from_json(const Json& j) { return family_file_from_json(j).family; }

// ---------------------------------------------------------------------------
// Certificates and reports
// ---------------------------------------------------------------------------

inline Json to_json(const CoveringCertificate& cert) {
  Json j;
  j["target"] = to_json(cert.target);
  j["target_scale"] = cert.target_scale;
  j["unit"] = to_json(cert.unit);
  j["translations"] = cert.translations;
  j["kappa_ub"] = cert.kappa_ub;
  j["verified_samples"] = cert.verification.samples;
  return j;
}

inline CoveringCertificate certificate_from_json(const Json& j) {
  CoveringCertificate cert{body_from_json(detail::field(j, "target")),
                           j.contains("target_scale") ? detail::number(j.at("target_scale")) : 1.0,
                           body_from_json(detail::field(j, "unit")),
                           {},
                           0,
                           {}};
  for (const Json& v : detail::field(j, "translations")) cert.translations.push_back(detail::point(v));
  cert.kappa_ub = cert.translations.size();
  if (j.contains("verified_samples") && j.at("verified_samples").is_number_unsigned()) {
    cert.verification.samples = j.at("verified_samples").get<std::size_t>();
  }
  return cert;
}

inline Json to_json(const ColoringReport& r) {
  Json j;
  j["method"] = r.method;
  j["colors"] = r.colors;
  if (!r.block_labels.empty()) j["blocks"] = r.block_labels;
  j["colors_used"] = r.colors_used;
  j["omega_used"] = r.omega_used;
  j["omega_exact"] = r.omega_exact;
  j["bound_factor"] = r.bound_factor;
  j["bound_formula"] = r.bound_formula;
  j["bound_value"] = r.bound_value;
  if (r.method != "theorem1") j["degeneracy"] = r.degeneracy;
  return j;
}

inline Json to_json(const PartitionReport& r) {
  Json j;
  j["method"] = r.method;
  j["classes"] = r.classes;
  Json points = Json::array();
  for (const auto& p : r.piercing) points.push_back(p ? Json(*p) : Json(nullptr));
  j["piercing"] = std::move(points);
  j["classes_used"] = r.classes_used;
  j["nu_used"] = r.nu_used;
  j["nu_exact"] = r.nu_exact;
  j["rounds"] = r.rounds;
  if (r.method != "theorem1") {
    j["kappa_ub"] = r.kappa_ub;
    j["round_bound"] = r.round_bound;
    j["fallback_used"] = r.fallback_used;
  }
  j["bound_factor"] = r.bound_factor;
  j["bound_formula"] = r.bound_formula;
  j["bound_value"] = r.bound_value;
  return j;
}

// Reads a per-member assignment from either a bare array or a report
// object with "colors" or "classes".
inline std::vector<int> assignment_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (j.contains("colors")) arr = &j.at("colors");
    else if (j.contains("classes")) arr = &j.at("classes");
    else throw InputError("no colors or classes in assignment file");
  }
  if (!arr->is_array()) throw InputError("assignment must be an array");
  std::vector<int> out;
  for (const Json& c : *arr) {
    if (!c.is_number_integer()) throw InputError("assignment entries must be integers");
    out.push_back(c.get<int>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files and digests
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

// FNV-1a over the canonical (compact) serialization.
inline std::string digest(const Json& j) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace convex_chroma
