#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace convex_chroma {

// Outcome of a coloring algorithm together with the bound it was held to.
struct ColoringReport {
  std::string method;
  std::vector<int> colors;                // color id per member, 0..colors_used-1
  std::vector<std::string> block_labels;  // palette block per member (theorem1 only)
  std::size_t colors_used = 0;
  std::size_t omega_used = 0;
  bool omega_exact = false;
  std::size_t bound_factor = 0;  // t_bound for theorem1, kappa_ub otherwise
  double bound_value = 0.0;
  std::string bound_formula;
  std::size_t degeneracy = 0;  // homothet methods: max later-neighbour count
};

// Outcome of a clique-partition algorithm.
struct PartitionReport {
  std::string method;
  std::vector<int> classes;                   // class id per member
  std::vector<std::optional<Point>> piercing;  // per class, when a common point is known
  std::size_t classes_used = 0;
  std::size_t nu_used = 0;
  bool nu_exact = false;
  std::size_t bound_factor = 0;
  double bound_value = 0.0;
  std::string bound_formula;
  std::size_t rounds = 0;
  std::size_t kappa_ub = 0;
  double round_bound = 0.0;  // kappa*(rounds-1) + classes of the last round
  bool fallback_used = false;
};

}  // namespace convex_chroma
