#pragma once

// Residues modulo a small prime.

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace irrgen {

/// Largest modulus accepted for matrix arithmetic; products of two residues
/// then fit comfortably in 32 bits before reduction.
inline constexpr std::uint32_t kMaxModulus = 1u << 15;

bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Inverse of a modulo m via extended Euclid; throws std::domain_error when
/// gcd(a, m) != 1.
std::uint32_t inverse_mod(std::int64_t a, std::uint32_t m);

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t m);

inline std::uint32_t reduce_mod(std::int64_t x, std::uint32_t m) {
  std::int64_t r = x % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

/// Throws std::invalid_argument unless p is a prime below kMaxModulus.
void require_prime_modulus(std::uint32_t p);

class FpScalar {
 public:
  FpScalar(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  FpScalar operator+(FpScalar rhs) const;
  FpScalar operator-(FpScalar rhs) const;
  FpScalar operator*(FpScalar rhs) const;
  FpScalar operator-() const { return FpScalar(unchecked(), modulus_ - value_, modulus_); }
  FpScalar inverse() const;
  FpScalar pow(std::uint64_t e) const;

  bool operator==(const FpScalar&) const = default;
  auto operator<=>(const FpScalar&) const = default;

 private:
  struct unchecked {};
  FpScalar(unchecked, std::uint32_t v, std::uint32_t m) : value_(v % m), modulus_(m) {}
  void require_same(FpScalar rhs) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

}  // namespace irrgen
