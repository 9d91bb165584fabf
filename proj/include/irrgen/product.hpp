#pragma once

// Generation in a product of two finite simple groups. A subgroup of
// G1 x G2 that surjects onto both (nonabelian simple) factors is either the
// whole product or the graph {(g, f(g))} of an isomorphism f : G1 -> G2.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irrgen/group_spec.hpp"
#include "irrgen/indexed_group.hpp"

namespace irrgen {

/// Cached IndexedGroup per group description (thread-safe).
std::shared_ptr<const IndexedGroup> indexed(const GroupSpec& g);

/// First generating pair of `g` in index order, or nullopt if none exists.
std::optional<std::pair<std::uint32_t, std::uint32_t>> find_generating_pair(const IndexedGroup& g);

class Isomorphism {
 public:
  /// Conjugation x -> c x c^-1 by a PGL(2,p) representative c.
  static Isomorphism conjugation(GroupSpec psl2, FpMatrix conjugator);
  /// Explicit map on element indices.
  static Isomorphism from_index_map(std::shared_ptr<const IndexedGroup> domain, std::shared_ptr<const IndexedGroup> codomain,
                                    std::vector<std::uint32_t> images);

  Element apply(const Element& x) const;
  const GroupSpec& domain() const { return domain_; }
  const GroupSpec& codomain() const { return codomain_; }
  bool is_identity() const { return identity_; }
  std::string label() const;
  /// Images of the domain's fixed generating pair.
  std::pair<Element, Element> generator_images() const;

 private:
  Isomorphism() = default;
  GroupSpec domain_, codomain_;
  std::optional<FpMatrix> conjugator_;
  std::shared_ptr<const IndexedGroup> dom_index_, cod_index_;
  std::shared_ptr<const std::vector<std::uint32_t>> images_;
  bool identity_ = false;
};

/// All isomorphisms a -> b. PSL(2,p) pairs (p >= 5) use conjugation by
/// PGL(2,p); everything else falls back to brute_force_isomorphisms.
/// Non-isomorphic inputs give an empty list.
std::vector<Isomorphism> enumerate_isomorphisms(const GroupSpec& a, const GroupSpec& b);

/// Exhaustive search: images of a fixed generating tuple of `a`, extended
/// along the Cayley graph. Each result maps index i of a to result[i] of b.
std::vector<std::vector<std::uint32_t>> brute_force_isomorphisms(const IndexedGroup& a, const IndexedGroup& b);

// The finite Goursat criterion stands in for the algebraic-group statement;
// diagnostics carry this label.
inline constexpr const char* kProductMethod = "finite Goursat criterion (surrogate)";

enum class ProductVerdict { Generates, ProjectionProper, GraphOfIsomorphism };

struct ProductDiagnosis {
  bool generates = false;
  ProductVerdict verdict = ProductVerdict::Generates;
  int blocking_projection = 0;  // 1 or 2 when a projection is proper
  bool isomorphic_factors = false;
  std::optional<Isomorphism> aligning;
  std::string diagnosis;
};

/// Requires a nonempty tuple over a product of two nonabelian simple groups
/// (PSL(2,p) with p >= 5, or simple Cayley tables).
ProductDiagnosis product_generates(const GeneratingTuple& t);

/// Projection of a product tuple onto one factor (0-based).
GeneratingTuple project(const GeneratingTuple& t, std::size_t factor);

bool is_nonabelian_simple(const IndexedGroup& g);

}  // namespace irrgen
