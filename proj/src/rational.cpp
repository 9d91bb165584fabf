#include "irrgen/rational.hpp"

#include <cctype>

namespace irrgen {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  if (i == s.size()) throw InputError("malformed rational: '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("malformed rational: '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, s));
  const BigInt num = parse_integer(s.substr(0, slash), s);
  const auto den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-'))
    throw InputError("malformed rational: '" + std::string(s) + "'");
  const BigInt den = parse_integer(den_text, s);
  if (den == 0) throw InputError("zero denominator: '" + std::string(s) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

RationalMatrix::RationalMatrix(int dim, std::vector<Rational> entries) : n_(dim), e_(std::move(entries)) {
  if (dim < 1 || dim > 4) throw InputError("matrix dimension must be between 1 and 4");
  if (e_.size() != static_cast<std::size_t>(dim * dim))
    throw InputError("expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(e_.size()));
}

RationalMatrix RationalMatrix::identity(int dim) {
  std::vector<Rational> e(static_cast<std::size_t>(dim * dim), Rational(0));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i * dim + i)] = 1;
  return RationalMatrix(dim, std::move(e));
}

RationalMatrix RationalMatrix::from_strings(int dim, const std::vector<std::string>& entries) {
  std::vector<Rational> e;
  e.reserve(entries.size());
  for (const auto& s : entries) e.push_back(parse_rational(s));
  return RationalMatrix(dim, std::move(e));
}

std::vector<std::string> RationalMatrix::entry_strings() const {
  std::vector<std::string> out;
  out.reserve(e_.size());
  for (const auto& q : e_) out.push_back(format_rational(q));
  return out;
}

Rational RationalMatrix::det() const {
  std::vector<Rational> a = e_;
  const auto n = static_cast<std::size_t>(n_);
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot * n + c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[pivot * n + k], a[c * n + k]);
      d = -d;
    }
    d *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0) continue;
      const Rational f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return d;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
  const auto n = static_cast<std::size_t>(n_);
  std::vector<Rational> out(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (e_[i * n + k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += e_[i * n + k] * o.e_[k * n + j];
    }
  return RationalMatrix(n_, std::move(out));
}

RationalMatrix RationalMatrix::inverse() const {
  const auto n = static_cast<std::size_t>(n_);
  std::vector<Rational> a = e_;
  std::vector<Rational> inv = identity(n_).e_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot * n + c] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a[pivot * n + k], a[c * n + k]);
      std::swap(inv[pivot * n + k], inv[c * n + k]);
    }
    const Rational scale = 1 / a[c * n + c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c * n + k] *= scale;
      inv[c * n + k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * n + c] == 0) continue;
      const Rational f = a[r * n + c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  return RationalMatrix(n_, std::move(inv));
}

bool RationalMatrix::denominator_divisible_by(std::uint64_t p) const {
  for (const auto& q : e_)
    if (boost::multiprecision::denominator(q) % p == 0) return true;
  return false;
}

RationalTuple RationalTuple::make(int dim, std::vector<RationalMatrix> items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].dim() != dim) throw InputError("matrix " + std::to_string(i + 1) + " has the wrong dimension");
    if (items[i].det() != 1)
      throw InputError("matrix " + std::to_string(i + 1) + " has determinant " + format_rational(items[i].det()) +
                       ", expected 1");
  }
  return RationalTuple{dim, std::move(items)};
}

}  // namespace irrgen
