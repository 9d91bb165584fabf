#pragma once

// Square matrices over a prime field and their projective (center-coset)
// forms. Storage is inline; dimensions up to kMaxDim are supported.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrgen/fp.hpp"

namespace irrgen {

inline constexpr int kMaxDim = 4;

class FpMatrix {
 public:
  /// Zero matrix.
  FpMatrix(int dim, std::uint32_t modulus);

  /// Row-major entries, reduced modulo `modulus`.
  static FpMatrix from_rows(int dim, std::uint32_t modulus, std::span<const std::int64_t> entries);
  static FpMatrix from_rows(int dim, std::uint32_t modulus, std::initializer_list<std::int64_t> entries);
  static FpMatrix identity(int dim, std::uint32_t modulus);
  static FpMatrix scalar(int dim, std::uint32_t modulus, std::uint32_t lambda);

  int dim() const { return dim_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t at(int row, int col) const { return entries_[row * dim_ + col]; }
  void set(int row, int col, std::int64_t value) { entries_[row * dim_ + col] = static_cast<std::uint16_t>(reduce_mod(value, modulus_)); }
  std::span<const std::uint16_t> entries() const { return {entries_.data(), static_cast<std::size_t>(dim_ * dim_)}; }

  std::uint32_t det() const;
  bool is_identity() const;
  bool is_scalar() const;

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix scaled(std::uint32_t lambda) const;
  FpMatrix transposed() const;

  /// Row-major residues, two bytes each, preceded by dim and modulus.
  void encode(std::string& out) const;
  std::string to_string() const;

  bool operator==(const FpMatrix& rhs) const;
  /// Lexicographic on the row-major entry sequence (same shape assumed).
  std::strong_ordering operator<=>(const FpMatrix& rhs) const;

 private:
  int dim_;
  std::uint32_t modulus_;
  std::array<std::uint16_t, kMaxDim * kMaxDim> entries_{};
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);

/// Gauss-Jordan inverse; throws std::domain_error when singular.
FpMatrix mat_inv(const FpMatrix& a);

/// Canonical representative of the coset {lambda * a : lambda^n = 1}, where
/// n = dim. Representatives are chosen lexicographically least.
class ProjectiveMatrix {
 public:
  const FpMatrix& rep() const { return rep_; }
  int dim() const { return rep_.dim(); }
  std::uint32_t modulus() const { return rep_.modulus(); }
  bool is_identity() const { return rep_.is_identity(); }

  ProjectiveMatrix operator*(const ProjectiveMatrix& rhs) const;
  ProjectiveMatrix inverse() const;

  bool operator==(const ProjectiveMatrix&) const = default;
  std::strong_ordering operator<=>(const ProjectiveMatrix& rhs) const { return rep_ <=> rhs.rep_; }

 private:
  friend ProjectiveMatrix projective_canonicalize(const FpMatrix& a);
  explicit ProjectiveMatrix(FpMatrix rep) : rep_(rep) {}
  FpMatrix rep_;
};

/// Requires det(a) = 1; throws std::invalid_argument otherwise.
ProjectiveMatrix projective_canonicalize(const FpMatrix& a);

/// All lambda in F_p with lambda^n = 1, ascending.
std::vector<std::uint32_t> roots_of_unity(int n, std::uint32_t p);

/// Thrown when an order computation runs past its cap.
class OrderCapExceeded : public std::runtime_error {
 public:
  explicit OrderCapExceeded(std::uint64_t cap)
      : std::runtime_error("element order exceeds cap " + std::to_string(cap)) {}
};

std::uint64_t element_order(const FpMatrix& a, std::uint64_t order_cap);
std::uint64_t element_order(const ProjectiveMatrix& a, std::uint64_t order_cap);

}  // namespace irrgen
