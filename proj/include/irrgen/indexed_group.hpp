#pragma once

// A finite group with its elements enumerated and numbered. Index 0 is the
// identity; remaining elements are numbered by increasing element order, then
// by canonical encoding (for products: mixed radix over factor indices).
// Small groups carry a full multiplication table.

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "irrgen/bitset.hpp"
#include "irrgen/group_spec.hpp"

namespace irrgen {

class IndexedGroup {
 public:
  static constexpr std::uint64_t kMaxOrder = 20000;
  static constexpr std::uint64_t kTableLimit = 6000;

  /// Throws std::invalid_argument for infinite groups or orders above kMaxOrder.
  static std::shared_ptr<const IndexedGroup> build(const GroupSpec& g);

  const GroupSpec& spec() const { return spec_; }
  std::uint32_t order() const { return n_; }
  static constexpr std::uint32_t identity() { return 0; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
    return mul_slow(a, b);
  }
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  /// g x g^-1
  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const { return mul(mul(g, x), inverse_[g]); }
  std::uint32_t power(std::uint32_t a, std::int64_t e) const;
  std::uint32_t element_order(std::uint32_t a) const { return orders_[a]; }

  const Element& element(std::uint32_t a) const { return elements_[a]; }
  /// Throws std::invalid_argument when e is not in the group.
  std::uint32_t index_of(const Element& e) const;
  std::span<const std::uint32_t> generators() const { return generators_; }

  /// Position of element a in the candidate enumeration order.
  std::uint32_t rank(std::uint32_t a) const { return rank_[a]; }
  std::span<const std::uint32_t> search_order() const { return search_order_; }

  std::uint32_t class_count() const { return static_cast<std::uint32_t>(class_reps_.size()); }
  std::uint32_t class_of(std::uint32_t a) const { return class_of_[a]; }
  /// Smallest index in the class.
  std::uint32_t class_rep(std::uint32_t c) const { return class_reps_[c]; }
  std::span<const std::uint32_t> class_reps() const { return class_reps_; }
  /// Some t with t a t^-1 = class_rep(class_of(a)).
  std::uint32_t transporter(std::uint32_t a) const { return transporter_[a]; }
  /// Centralizer of class_rep(c), ascending.
  std::span<const std::uint32_t> rep_centralizer(std::uint32_t c) const { return rep_centralizers_[c]; }
  std::vector<std::uint32_t> centralizer(std::span<const std::uint32_t> elems) const;

  struct Closure {
    Bitset members;
    std::uint32_t size = 0;
  };
  /// Serial reference BFS.
  Closure closure(std::span<const std::uint32_t> gens) const;
  /// Level-synchronous BFS with the frontier split across OpenMP threads;
  /// returns exactly the same member set as closure().
  Closure closure_parallel(std::span<const std::uint32_t> gens) const;
  bool generates(std::span<const std::uint32_t> gens) const { return closure(gens).size == n_; }

  bool is_product() const { return !factors_.empty(); }
  std::span<const std::shared_ptr<const IndexedGroup>> factors() const { return factors_; }
  std::uint32_t component(std::uint32_t a, std::size_t factor) const;
  std::uint32_t combine(std::span<const std::uint32_t> components) const;

 private:
  IndexedGroup() = default;
  void build_simple();
  void build_product();
  void finish();
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint64_t key_of_matrix(const FpMatrix& m) const;
  std::uint32_t lookup_key(std::uint64_t key) const;

  GroupSpec spec_;
  std::uint32_t n_ = 0;
  std::vector<Element> elements_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> search_order_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> class_reps_;
  std::vector<std::uint32_t> transporter_;
  std::vector<std::vector<std::uint32_t>> rep_centralizers_;

  // Lookup from element keys to indices.
  bool matrix_kind_ = false;
  bool projective_ = false;
  std::vector<FpMatrix> mats_;
  std::vector<std::uint32_t> roots_;
  std::vector<std::uint32_t> dense_lookup_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_lookup_;
  std::unordered_map<std::string, std::uint32_t> encoding_lookup_;

  std::vector<std::shared_ptr<const IndexedGroup>> factors_;
  std::vector<std::uint32_t> radix_;
};

}  // namespace irrgen
