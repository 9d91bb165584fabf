#pragma once

// Interned subgroups of an indexed group with a memoized join
// <H, y>. One lattice per thread; instances are not thread-safe.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "irrgen/indexed_group.hpp"

namespace irrgen {

class SubgroupLattice {
 public:
  using Id = std::uint32_t;

  explicit SubgroupLattice(const IndexedGroup& group, std::size_t cache_entry_limit = 60'000'000);

  const IndexedGroup& group() const { return group_; }
  static constexpr Id trivial() { return 0; }

  bool contains(Id h, std::uint32_t x) const {
    return (bits_[static_cast<std::size_t>(h) * words_ + (x >> 6)] >> (x & 63)) & 1u;
  }
  std::uint32_t size(Id h) const { return sizes_[h]; }
  bool is_whole(Id h) const { return sizes_[h] == group_.order(); }

  /// Subgroup generated by h and y.
  Id join(Id h, std::uint32_t y);
  /// Subgroup generated by the given elements.
  Id span(std::span<const std::uint32_t> elems);
  bool generates(std::span<const std::uint32_t> elems) { return is_whole(span(elems)); }

  std::size_t subgroup_count() const { return sizes_.size(); }
  std::uint64_t joins_computed() const { return joins_computed_; }

 private:
  Id intern(const std::vector<std::uint64_t>& words, std::uint32_t size, std::vector<std::uint32_t> gens);
  Id compute_join(Id h, std::uint32_t y);

  const IndexedGroup& group_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::vector<std::uint32_t>> gens_;
  std::unordered_multimap<std::uint64_t, Id> by_hash_;
  std::vector<std::vector<Id>> join_rows_;
  std::size_t cache_entries_ = 0;
  std::size_t cache_entry_limit_;
  std::uint64_t joins_computed_ = 0;
  Id whole_ = 0xffffffffu;

  std::vector<std::uint64_t> scratch_words_;
  std::vector<std::uint32_t> scratch_queue_;
};

}  // namespace irrgen
