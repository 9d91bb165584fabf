#pragma once

// Does a tuple generate its ambient group?
//
// The reference answer is the BFS closure. For SL(2,p) and PSL(2,p) with
// p >= 5 there is also a structural test built on the classification of
// subgroups of PSL(2,p): every proper subgroup either fixes a point of the
// projective line over F_{p^2}, permutes a pair of such points, or has order
// at most 60 (at most 120 in SL(2,p)). The structural test checks the first
// two conditions directly on the Mobius action and settles the third with a
// capped closure, so its verdict always equals the closure verdict.

#include <cstdint>
#include <optional>
#include <string>

#include "irrgen/closure.hpp"
#include "irrgen/group_spec.hpp"

namespace irrgen {

enum class GenerationReason {
  Generates,
  CommonEigenvector,  // all generators fix a point of P^1(F_{p^2})
  ImprimitivePair,    // all generators preserve a pair of points
  SmallClosure,       // the generated subgroup is small and proper
  ProperClosure,      // oracle: closure is a proper subgroup
  GcdNotOne,          // Z: gcd of entries exceeds 1
};

std::string to_string(GenerationReason r);

struct GenerationDiagnosis {
  bool generates = false;
  GenerationReason reason = GenerationReason::ProperClosure;
  std::optional<std::uint64_t> closure_order;  // when a closure ran to completion
  std::string describe() const;
};

enum class GenerationMethod { Auto, Oracle, Fast };

/// Structural test for (P)SL(2,p), p >= 5. Throws std::invalid_argument for
/// other groups or p < 5.
GenerationDiagnosis diagnose_psl2_fast(const GeneratingTuple& t);
bool is_generating_psl2_fast(const GeneratingTuple& t);

/// Closure-based diagnosis for any finite group; gcd for IntegersZ.
GenerationDiagnosis diagnose_oracle(const GeneratingTuple& t);

/// Auto uses the structural test where it applies and the oracle elsewhere.
GenerationDiagnosis diagnose_generation(const GeneratingTuple& t, GenerationMethod method = GenerationMethod::Auto);
bool is_generating(const GeneratingTuple& t, GenerationMethod method = GenerationMethod::Auto);

/// Entrywise image in PSL(n,p) of a tuple over SL(n,p).
GeneratingTuple project_to_psl(const GeneratingTuple& t);

}  // namespace irrgen
