#pragma once

// Exact rational matrices in SL(n, Q).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace irrgen {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Malformed or invalid input data (bad rationals, det != 1, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts "a" or "a/b" with optional sign; b != 0. Throws InputError.
Rational parse_rational(std::string_view s);
/// Lowest terms, always "a/b".
std::string format_rational(const Rational& q);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  /// Row-major; throws InputError on a size mismatch or dim outside 1..4.
  RationalMatrix(int dim, std::vector<Rational> entries);
  static RationalMatrix identity(int dim);
  static RationalMatrix from_strings(int dim, const std::vector<std::string>& entries);

  int dim() const { return n_; }
  const Rational& at(int r, int c) const { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<Rational>& entries() const { return e_; }
  std::vector<std::string> entry_strings() const;

  Rational det() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  /// Throws std::domain_error when singular.
  RationalMatrix inverse() const;
  /// Does p divide the denominator of some entry?
  bool denominator_divisible_by(std::uint64_t p) const;
  bool operator==(const RationalMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> e_;
};

struct RationalTuple {
  int dim = 0;
  std::vector<RationalMatrix> items;

  /// Checks shared dimension and det = 1 exactly; throws InputError.
  static RationalTuple make(int dim, std::vector<RationalMatrix> items);
  std::size_t size() const { return items.size(); }
};

}  // namespace irrgen
