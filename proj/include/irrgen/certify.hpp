#pragma once

// Zariski density and irredundancy of tuples in SL(n, Q) through reduction
// modulo primes.
//
// A tuple X in SL(n, Z[1/S]) is Zariski dense iff it generates SL(n, F_p) for
// some prime p outside S and outside a finite exceptional set Q; for such p the
// kernel of SL(n, Z_p) -> SL(n, F_p) lies in the Frattini subgroup, so a
// generating reduction lifts to a dense subgroup. Q is not known explicitly:
// primes at or below a configurable floor are skipped and every certificate
// states that it is conditional on the witness prime avoiding Q. Failure at
// finitely many primes is evidence against density, never a proof.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrgen/group_spec.hpp"
#include "irrgen/nielsen.hpp"
#include "irrgen/rational.hpp"

namespace irrgen {

struct DenominatorClash : std::domain_error {
  explicit DenominatorClash(std::uint32_t prime)
      : std::domain_error("prime " + std::to_string(prime) + " divides a denominator"), prime(prime) {}
  std::uint32_t prime;
};

FpMatrix reduce_mod_p(const RationalMatrix& m, std::uint32_t p);
/// Entrywise a/b -> a * b^-1 mod p, as a tuple over SL(n, p).
GeneratingTuple reduce_mod_p(const RationalTuple& t, std::uint32_t p);

inline constexpr int kDefaultExceptionalFloor = 3;

struct PrimePlanConfig {
  int exceptional_floor = kDefaultExceptionalFloor;
  int max_primes = 10;
  std::vector<std::uint32_t> primes;  // explicit candidates; empty = consecutive primes
};

struct PrimePlan {
  std::vector<std::uint32_t> candidates;
  std::vector<std::uint32_t> excluded_denominator_primes;
  int exceptional_floor = kDefaultExceptionalFloor;
  bool floor_clamped = false;  // requested floor was below the minimum for the dimension
  int max_primes_to_try = 10;
};

/// Smallest admissible floor: 3 for SL(2) (the structural facts used need
/// p >= 5), 2 for larger n.
int minimum_exceptional_floor(int dim);

/// Candidates are primes above the floor that divide no denominator.
/// Throws std::invalid_argument if max_primes < 1 or an explicit prime is not prime.
PrimePlan plan_primes(const RationalTuple& t, const PrimePlanConfig& config = {});

/// Generation checks at one prime.
struct PrimeRecord {
  std::uint32_t prime = 0;
  std::string status;  // "generates", "proper", "skipped"
  std::string diagnosis;
  std::optional<std::uint64_t> closure_order;
};

inline constexpr const char* kDensityCaveat =
    "valid only if the witness prime lies outside the exceptional set of primes for SL(n) over Z[1/S]";
inline constexpr int kCertificateVersion = 1;

struct DensityCertificate {
  int version = kCertificateVersion;
  int dim = 2;
  std::vector<std::vector<std::string>> tuple_entries;  // exact "a/b", row-major per matrix
  std::uint32_t witness_prime = 0;
  std::string evidence_kind;  // "closure" or "fast-test"
  std::optional<std::uint64_t> closure_order;
  std::string transcript;
  std::string caveat = kDensityCaveat;
  std::vector<PrimeRecord> per_prime;
  std::string fingerprint;

  std::string ambient() const { return "SL(" + std::to_string(dim) + ")"; }
};

struct CertificationResult {
  std::optional<DensityCertificate> certificate;
  std::vector<PrimeRecord> per_prime;
  std::string note;
  bool certified() const { return certificate.has_value(); }
};

/// Largest group order for which the closure oracle is run directly.
inline constexpr std::uint64_t kClosureEvidenceLimit = 2'000'000;

/// FNV-1a 64-bit over the exact entry encoding, as 16 hex digits.
std::string tuple_fingerprint(int dim, const std::vector<std::vector<std::string>>& entries);

/// Throws std::invalid_argument on an empty tuple or a plan without candidates.
CertificationResult certify_density(const RationalTuple& t, const PrimePlan& plan);

struct ReplayResult {
  bool ok = false;
  std::string detail;
};

/// Recomputes the fingerprint and reruns the witness-prime evidence.
ReplayResult replay(const DensityCertificate& c);

enum class EvidenceSummary { AllIrredundant, RedundantFromSomePoint, Mixed, Inconclusive };
std::string to_string(EvidenceSummary s);

struct PrimeVerdict {
  std::uint32_t prime = 0;
  bool generates = false;
  std::string verdict;  // RedundancyVerdict or NielsenVerdict name
  std::vector<bool> droppable;
  std::uint64_t orbit_states = 0;
  std::size_t path_length = 0;
};

struct IrredundancyEvidence {
  bool nielsen = false;
  std::vector<PrimeVerdict> per_prime;
  int irredundant = 0;
  int redundant = 0;
  int not_generating = 0;
  int unknown = 0;
  EvidenceSummary summary = EvidenceSummary::Mixed;
};

/// Uses the first k candidate primes at which the check can run; throws
/// std::invalid_argument if fewer than k are usable.
IrredundancyEvidence assess_irredundancy(const RationalTuple& t, const PrimePlan& plan, int k);

/// Per-prime Nielsen verdicts. Primes where the reduction cannot be indexed
/// are skipped; a reduction that does not generate is rejected with
/// std::invalid_argument.
IrredundancyEvidence assess_nielsen_irredundancy(const RationalTuple& t, const PrimePlan& plan, int k,
                                                 const OrbitLimits& budget = {});

}  // namespace irrgen
