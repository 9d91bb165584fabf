#pragma once

// Irredundant generating sets and the search for m(G), the largest size of
// an irredundant generating set.
//
// The search grows independent sets one element at a time: a set is
// independent when no member lies in the subgroup generated by the others.
// Every irredundant generating set is independent and so is each of its
// subsets, hence every prefix of every ordering of an irredundant generating
// set is a non-generating independent set and the depth-first search reaches
// it. Once a set generates, any extension is redundant, so the branch ends.
//
// Symmetry: generation and independence are invariant under simultaneous
// conjugation. The first element is taken from conjugacy class
// representatives, the second from orbit representatives of the first
// element's centralizer, and later elements in increasing candidate order.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "irrgen/group_spec.hpp"
#include "irrgen/indexed_group.hpp"

namespace irrgen {

enum class RedundancyVerdict { IrredundantGenerating, RedundantGenerating, NotGenerating };

std::string to_string(RedundancyVerdict v);

struct RedundancyReport {
  GeneratingTuple tuple;
  bool generates = false;
  std::vector<bool> droppable;
  RedundancyVerdict verdict = RedundancyVerdict::NotGenerating;
};

/// A generating tuple has a proper generating subset iff some entry can be
/// dropped, since supersets of generating sets generate.
RedundancyReport is_redundant(const GeneratingTuple& t);

struct SearchLimits {
  int max_size = 16;
  std::uint64_t node_budget = 100'000'000;
  double time_budget_seconds = 600.0;
  int threads = 0;  // 0: OpenMP default
  std::uint64_t seed = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::uint64_t subgroups = 0;
  double wall_seconds = 0;
};

struct RankSearchResult {
  GroupSpec group;
  int computed = 0;  // m, or mu for the Nielsen variant
  GeneratingTuple witness;
  bool exhaustive = false;
  SearchStats stats;
};

/// Exhaustive when the group is indexable and the search finishes within
/// budget; otherwise a lower bound from randomized witness search.
RankSearchResult max_irredundant_size(const GroupSpec& g, const SearchLimits& limits = {});

/// x_i = product of the first n primes except the i-th; irredundant
/// generating in Z. Requires 1 <= n <= 15.
GeneratingTuple z_witness(int n);

struct WitnessConstraints {
  bool involutions_only = false;
};

struct WitnessResult {
  std::optional<GeneratingTuple> tuple;
  bool indeterminate = false;  // budget ran out before the space was exhausted
  SearchStats stats;
};

/// Some irredundant generating k-tuple satisfying the constraints.
WitnessResult irredundant_witness(const GroupSpec& g, int k, const WitnessConstraints& constraints = {},
                                  const SearchLimits& limits = {});

/// For involutions a, b in PSL(2,p), p >= 5: checks that <a, b> is dihedral
/// of order 2 ord(ab) <= 2(p+1) < |G|. Throws std::invalid_argument when an
/// input is not an involution.
bool involution_pair_is_proper(const GroupSpec& g, const Element& a, const Element& b);

namespace search {

/// Callback for every irredundant generating set reached; return false to stop.
using FoundCallback = std::function<bool(const std::vector<std::uint32_t>&)>;

struct Options {
  int max_size = 16;
  std::optional<int> target_size;         // only report sets of exactly this size; stop at first
  std::vector<bool> allowed;              // conjugation-invariant candidate filter; empty = all
  std::uint64_t node_budget = 100'000'000;
  double time_budget_seconds = 600.0;
  int threads = 0;
  FoundCallback on_found;                 // forces a serial run when set
};

struct Outcome {
  int best = 0;
  int smallest = -1;  // smallest generating set size seen (= d(G) when complete)
  std::vector<std::uint32_t> witness;
  bool complete = false;  // every branch explored
  bool truncated = false; // some branch stopped at max_size
  SearchStats stats;
};

/// The depth-first independent-set search on an indexed group.
Outcome run(const IndexedGroup& g, const Options& options);

}  // namespace search

}  // namespace irrgen
