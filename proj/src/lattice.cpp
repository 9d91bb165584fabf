#include "irrgen/lattice.hpp"

#include <algorithm>

namespace irrgen {

namespace {

constexpr SubgroupLattice::Id kUnknown = 0xffffffffu;

std::uint64_t hash_words(const std::vector<std::uint64_t>& w) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto x : w) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const IndexedGroup& group, std::size_t cache_entry_limit)
    : group_(group), words_((group.order() + 63) / 64), cache_entry_limit_(cache_entry_limit) {
  std::vector<std::uint64_t> triv(words_, 0);
  triv[0] = 1;
  intern(triv, 1, {});
}

SubgroupLattice::Id SubgroupLattice::intern(const std::vector<std::uint64_t>& words, std::uint32_t size,
                                            std::vector<std::uint32_t> gens) {
  const std::uint64_t h = hash_words(words);
  auto [lo, hi] = by_hash_.equal_range(h);
  for (auto it = lo; it != hi; ++it)
    if (std::equal(words.begin(), words.end(), bits_.begin() + static_cast<std::ptrdiff_t>(it->second * words_)))
      return it->second;
  const auto id = static_cast<Id>(sizes_.size());
  bits_.insert(bits_.end(), words.begin(), words.end());
  sizes_.push_back(size);
  gens_.push_back(std::move(gens));
  join_rows_.emplace_back();
  by_hash_.emplace(h, id);
  if (size == group_.order()) whole_ = id;
  return id;
}

SubgroupLattice::Id SubgroupLattice::join(Id h, std::uint32_t y) {
  if (contains(h, y)) return h;
  auto& row = join_rows_[h];
  if (!row.empty() && row[y] != kUnknown) return row[y];
  const Id r = compute_join(h, y);
  auto& row2 = join_rows_[h];  // compute_join may have grown join_rows_
  if (row2.empty() && cache_entries_ + group_.order() <= cache_entry_limit_) {
    row2.assign(group_.order(), kUnknown);
    cache_entries_ += group_.order();
  }
  if (!row2.empty()) row2[y] = r;
  return r;
}

SubgroupLattice::Id SubgroupLattice::compute_join(Id h, std::uint32_t y) {
  ++joins_computed_;
  const std::uint32_t n = group_.order();
  std::vector<std::uint32_t> gens = gens_[h];
  gens.push_back(y);

  scratch_words_.assign(words_, 0);
  scratch_queue_.clear();
  auto mark = [&](std::uint32_t x) {
    std::uint64_t& w = scratch_words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (w & bit) return false;
    w |= bit;
    scratch_queue_.push_back(x);
    return true;
  };
  // Seed with all of H: every element of <H, y> is reached from H by right
  // multiplication with the generators.
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t x = bits_[h * words_ + w];
    while (x) {
      mark(static_cast<std::uint32_t>(w * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
  // Anything larger than half the group is the whole group.
  const std::uint32_t half = n / 2;
  for (std::size_t head = 0; head < scratch_queue_.size(); ++head) {
    const std::uint32_t x = scratch_queue_[head];
    for (auto g : gens) {
      mark(group_.mul(x, g));
      if (scratch_queue_.size() > half) {
        if (whole_ != kUnknown) return whole_;
        std::vector<std::uint64_t> all(words_, ~std::uint64_t{0});
        if (n % 64) all.back() = (std::uint64_t{1} << (n % 64)) - 1;
        return intern(all, n, group_.generators().size() ? std::vector<std::uint32_t>(group_.generators().begin(),
                                                                                       group_.generators().end())
                                                         : gens);
      }
    }
  }
  return intern(scratch_words_, static_cast<std::uint32_t>(scratch_queue_.size()), std::move(gens));
}

SubgroupLattice::Id SubgroupLattice::span(std::span<const std::uint32_t> elems) {
  Id h = trivial();
  for (auto x : elems) h = join(h, x);
  return h;
}

}  // namespace irrgen
