#pragma once

// Breadth-first subgroup closure on explicit elements. This is the reference
// answer for every generation question in the library.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrgen/group_spec.hpp"

namespace irrgen {

struct SubgroupClosure {
  std::vector<Element> elements;  // sorted by canonical encoding
  std::uint64_t order = 0;
  std::size_t generator_count = 0;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::uint64_t visited)
      : std::runtime_error("closure grew past cap after " + std::to_string(visited) + " elements"), visited_(visited) {}
  std::uint64_t visited() const { return visited_; }

 private:
  std::uint64_t visited_;
};

/// Subgroup generated by t.items. Throws CapExceeded once more than `cap`
/// elements have been found. Requires a finite group.
SubgroupClosure closure(const GeneratingTuple& t, std::uint64_t cap);

/// Order of the generated subgroup, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> closure_order(const GeneratingTuple& t, std::uint64_t cap);

}  // namespace irrgen
