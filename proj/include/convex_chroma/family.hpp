#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace convex_chroma {

struct FamilyMeta {
  std::string construction;
  std::optional<std::uint64_t> seed;
};

// A body plus one homothet placement per member.
struct Family {
  ConvexBody body;
  std::vector<Placement> placements;
  FamilyMeta meta;

  std::size_t size() const { return placements.size(); }

  void validate() const {
    for (const Placement& p : placements) validate_placement(body, p);
  }

  // All scales equal: a family of translates of (scale * body).
  bool is_translate_family() const {
    for (const Placement& p : placements) {
      if (p.scale != placements.front().scale) return false;
    }
    return true;
  }
};

}  // namespace convex_chroma
