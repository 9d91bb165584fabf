#include "irrgen/fp.hpp"

#include <string>

namespace irrgen {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint32_t inverse_mod(std::int64_t a, std::uint32_t m) {
  std::int64_t r0 = m, r1 = reduce_mod(a, m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("element is not invertible modulo " + std::to_string(m));
  return reduce_mod(s0, m);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t m) {
  std::uint64_t result = 1 % m, b = base % m;
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

void require_prime_modulus(std::uint32_t p) {
  if (p >= kMaxModulus) throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds 2^15");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

FpScalar::FpScalar(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
  require_prime_modulus(modulus);
  value_ = reduce_mod(value, modulus);
}

void FpScalar::require_same(FpScalar rhs) const {
  if (rhs.modulus_ != modulus_) throw std::invalid_argument("modulus mismatch");
}

FpScalar FpScalar::operator+(FpScalar rhs) const {
  require_same(rhs);
  return FpScalar(unchecked(), value_ + rhs.value_, modulus_);
}

FpScalar FpScalar::operator-(FpScalar rhs) const {
  require_same(rhs);
  return FpScalar(unchecked(), value_ + modulus_ - rhs.value_, modulus_);
}

FpScalar FpScalar::operator*(FpScalar rhs) const {
  require_same(rhs);
  return FpScalar(unchecked(), value_ * rhs.value_, modulus_);
}

FpScalar FpScalar::inverse() const { return FpScalar(unchecked(), inverse_mod(value_, modulus_), modulus_); }

FpScalar FpScalar::pow(std::uint64_t e) const { return FpScalar(unchecked(), pow_mod(value_, e, modulus_), modulus_); }

}  // namespace irrgen
