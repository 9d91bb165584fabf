#pragma once

// Elementary Nielsen moves and orbit exploration on generating tuples.
//
// The elementary moves generate the action of Aut(F_n) on n-tuples (Nielsen),
// so a breadth-first search closed under them enumerates the whole orbit.
// Tuples are stored up to simultaneous conjugation: moves commute with
// conjugation and redundancy is conjugation invariant, so the canonical
// orbit is exactly the set of conjugacy classes of tuples in the true orbit.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irrgen/group_spec.hpp"
#include "irrgen/indexed_group.hpp"
#include "irrgen/lattice.hpp"
#include "irrgen/redundancy.hpp"

namespace irrgen {

enum class MoveKind { LeftMult, RightMult, Invert, Swap };

struct NielsenMove {
  MoveKind kind = MoveKind::Invert;
  std::size_t i = 0;
  std::size_t j = 0;
  int sign = 1;

  static NielsenMove left(std::size_t i, std::size_t j, int sign) { return {MoveKind::LeftMult, i, j, sign}; }
  static NielsenMove right(std::size_t i, std::size_t j, int sign) { return {MoveKind::RightMult, i, j, sign}; }
  static NielsenMove invert(std::size_t i) { return {MoveKind::Invert, i, 0, 1}; }
  static NielsenMove swap(std::size_t i, std::size_t j) { return {MoveKind::Swap, i, j, 1}; }

  NielsenMove inverse() const;
  std::string to_string() const;
  /// Throws std::invalid_argument on bad indices or sign for an n-tuple.
  void validate(std::size_t n) const;
  bool operator==(const NielsenMove&) const = default;
};

/// Every elementary move on an n-tuple, in a fixed order.
std::vector<NielsenMove> all_moves(std::size_t n);

/// LeftMult: x_i <- x_j^s x_i; RightMult: x_i <- x_i x_j^s; Invert: x_i <- x_i^-1.
GeneratingTuple apply_move(const GeneratingTuple& t, const NielsenMove& m);
void apply_move(const IndexedGroup& g, std::vector<std::uint32_t>& t, const NielsenMove& m);

/// Lexicographically smallest index tuple among all simultaneous conjugates.
/// Conjugators sending x_1 to its class representative form the coset
/// C(rep) * transporter(x_1), so only |C(rep)| candidates are compared.
class TupleCanonicalizer {
 public:
  explicit TupleCanonicalizer(const IndexedGroup& g) : g_(g) {}
  std::vector<std::uint32_t> canonical(const std::vector<std::uint32_t>& t) const;
  void canonicalize(std::vector<std::uint32_t>& t) const { t = canonical(t); }

 private:
  const IndexedGroup& g_;
};

/// Brute force over every conjugator; the reference for TupleCanonicalizer.
std::vector<std::uint32_t> canonical_brute_force(const IndexedGroup& g, const std::vector<std::uint32_t>& t);

/// Redundancy of generating index tuples: identity entries, repeated or
/// mutually inverse entries, then generation of each (n-1)-subtuple.
class RedundancyTester {
 public:
  explicit RedundancyTester(const IndexedGroup& g) : g_(g), lattice_(g) {}
  bool generates(const std::vector<std::uint32_t>& t);
  /// Assumes t generates.
  bool redundant(const std::vector<std::uint32_t>& t);
  SubgroupLattice& lattice() { return lattice_; }

 private:
  const IndexedGroup& g_;
  SubgroupLattice lattice_;
};

enum class NielsenVerdict { NielsenRedundant, NielsenIrredundant, Unknown };
std::string to_string(NielsenVerdict v);

struct OrbitLimits {
  std::uint64_t max_states = 20'000'000;
  double time_budget_seconds = 600.0;
  bool canonicalize = true;
};

struct OrbitReport {
  GeneratingTuple start;
  std::uint64_t visited = 0;
  NielsenVerdict verdict = NielsenVerdict::Unknown;
  std::vector<NielsenMove> path;          // NielsenRedundant only; replays from start
  std::optional<GeneratingTuple> redundant_tuple;
  std::uint64_t frontier_peak = 0;
};

/// Throws std::invalid_argument when t does not generate or the group cannot
/// be indexed.
OrbitReport is_nielsen_redundant(const GeneratingTuple& t, const OrbitLimits& limits = {});

struct MuRankResult {
  RankSearchResult mu;    // mu.computed is mu(G)
  int m = 0;              // largest irredundant generating set found
  int d = 0;              // smallest generating set size
  std::uint64_t orbits_explored = 0;
  std::uint64_t unknown_orbits = 0;
};

/// d(G) <= mu(G) <= m(G). Irredundant generating k-sets are enumerated up to
/// conjugation (every Nielsen-irredundant k-tuple is one of them, reordered)
/// for k = m, m-1, ..., d+1; mu is the first k with an orbit free of
/// redundant tuples, else d, since a minimum-size generating tuple stays
/// irredundant under every move.
MuRankResult mu_rank(const GroupSpec& g, const SearchLimits& limits = {});

struct OrbitStatistics {
  int n = 0;
  std::uint64_t generating_tuples = 0;  // all generating n-tuples, not up to conjugation
  std::vector<std::uint64_t> orbit_sizes;  // descending
  std::uint64_t orbits_with_redundant = 0;
  std::uint64_t orbit_count() const { return orbit_sizes.size(); }
  /// Fraction of orbits containing a redundant tuple, as "a/b" in lowest terms.
  std::string redundant_fraction() const;
};

/// Nielsen orbits on generating n-tuples. Limited to groups of order <= 1000.
/// Since a generating tuple can conjugate itself by any group element through
/// inner automorphisms of F_n, every orbit is a union of conjugacy classes of
/// tuples, each of size |G|/|Z(G)|.
OrbitStatistics orbit_statistics(const GroupSpec& g, int n);

}  // namespace irrgen
