#pragma once

#include <stdexcept>
#include <string>

namespace convex_chroma {

// Malformed bodies, families, files or flags.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A constructive step could not reach its guarantee (parallelogram fit,
// offset clearance, certificate verification, rejection sampling).
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// An exact solver was asked to run beyond its configured member cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A proven structural property failed at runtime (e.g. a comparability
// relation that is not transitive, or a coloring that is not proper).
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace convex_chroma
