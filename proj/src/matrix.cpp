#include "irrgen/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace irrgen {

FpMatrix::FpMatrix(int dim, std::uint32_t modulus) : dim_(dim), modulus_(modulus) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("matrix dimension must be in [1, 4]");
  require_prime_modulus(modulus);
}

FpMatrix FpMatrix::from_rows(int dim, std::uint32_t modulus, std::span<const std::int64_t> entries) {
  FpMatrix m(dim, modulus);
  if (entries.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries");
  for (int i = 0; i < dim * dim; ++i) m.entries_[i] = static_cast<std::uint16_t>(reduce_mod(entries[i], modulus));
  return m;
}

FpMatrix FpMatrix::from_rows(int dim, std::uint32_t modulus, std::initializer_list<std::int64_t> entries) {
  return from_rows(dim, modulus, std::span<const std::int64_t>(entries.begin(), entries.size()));
}

FpMatrix FpMatrix::identity(int dim, std::uint32_t modulus) { return scalar(dim, modulus, 1); }

FpMatrix FpMatrix::scalar(int dim, std::uint32_t modulus, std::uint32_t lambda) {
  FpMatrix m(dim, modulus);
  for (int i = 0; i < dim; ++i) m.entries_[i * dim + i] = static_cast<std::uint16_t>(lambda % modulus);
  return m;
}

std::uint32_t FpMatrix::det() const {
  // Elimination on a copy; n <= 4.
  std::array<std::uint32_t, kMaxDim * kMaxDim> a{};
  std::copy_n(entries_.begin(), dim_ * dim_, a.begin());
  const std::uint64_t p = modulus_;
  std::uint64_t det = 1;
  for (int col = 0; col < dim_; ++col) {
    int pivot = -1;
    for (int r = col; r < dim_; ++r)
      if (a[r * dim_ + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < dim_; ++c) std::swap(a[pivot * dim_ + c], a[col * dim_ + c]);
      det = (p - det) % p;
    }
    const std::uint64_t pv = a[col * dim_ + col];
    det = det * pv % p;
    const std::uint64_t pinv = inverse_mod(pv, modulus_);
    for (int r = col + 1; r < dim_; ++r) {
      const std::uint64_t f = a[r * dim_ + col] * pinv % p;
      if (f == 0) continue;
      for (int c = col; c < dim_; ++c)
        a[r * dim_ + c] = static_cast<std::uint32_t>((a[r * dim_ + c] + (p - f) * a[col * dim_ + c]) % p);
    }
  }
  return static_cast<std::uint32_t>(det);
}

bool FpMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool FpMatrix::is_scalar() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if ((i == j && at(i, j) != at(0, 0)) || (i != j && at(i, j) != 0)) return false;
  return true;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  if (modulus_ != rhs.modulus_) throw std::invalid_argument("modulus mismatch");
  FpMatrix out = *this;
  const int n = dim_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint32_t acc = 0;
      for (int k = 0; k < n; ++k) acc += static_cast<std::uint32_t>(entries_[i * n + k]) * rhs.entries_[k * n + j] % modulus_;
      out.entries_[i * n + j] = static_cast<std::uint16_t>(acc % modulus_);
    }
  return out;
}

FpMatrix FpMatrix::scaled(std::uint32_t lambda) const {
  FpMatrix out = *this;
  for (int i = 0; i < dim_ * dim_; ++i) out.entries_[i] = static_cast<std::uint16_t>(entries_[i] * lambda % modulus_);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix out = *this;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out.entries_[j * dim_ + i] = entries_[i * dim_ + j];
  return out;
}

void FpMatrix::encode(std::string& out) const {
  out.push_back(static_cast<char>(dim_));
  out.push_back(static_cast<char>(modulus_ & 0xff));
  out.push_back(static_cast<char>(modulus_ >> 8));
  for (int i = 0; i < dim_ * dim_; ++i) {
    out.push_back(static_cast<char>(entries_[i] >> 8));
    out.push_back(static_cast<char>(entries_[i] & 0xff));
  }
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

bool FpMatrix::operator==(const FpMatrix& rhs) const {
  return dim_ == rhs.dim_ && modulus_ == rhs.modulus_ &&
         std::equal(entries_.begin(), entries_.begin() + dim_ * dim_, rhs.entries_.begin());
}

std::strong_ordering FpMatrix::operator<=>(const FpMatrix& rhs) const {
  if (auto c = dim_ <=> rhs.dim_; c != 0) return c;
  if (auto c = modulus_ <=> rhs.modulus_; c != 0) return c;
  return std::lexicographical_compare_three_way(entries_.begin(), entries_.begin() + dim_ * dim_, rhs.entries_.begin(),
                                                rhs.entries_.begin() + dim_ * dim_);
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) { return a * b; }

FpMatrix mat_inv(const FpMatrix& a) {
  const int n = a.dim();
  const std::uint64_t p = a.modulus();
  std::array<std::uint64_t, kMaxDim * 2 * kMaxDim> aug{};
  const int w = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i * w + j] = a.at(i, j);
    aug[i * w + n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (aug[r * w + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (int c = 0; c < w; ++c) std::swap(aug[pivot * w + c], aug[col * w + c]);
    const std::uint64_t pinv = inverse_mod(static_cast<std::int64_t>(aug[col * w + col]), a.modulus());
    for (int c = 0; c < w; ++c) aug[col * w + c] = aug[col * w + c] * pinv % p;
    for (int r = 0; r < n; ++r) {
      if (r == col || aug[r * w + col] == 0) continue;
      const std::uint64_t f = aug[r * w + col];
      for (int c = 0; c < w; ++c) aug[r * w + c] = (aug[r * w + c] + (p - f) * aug[col * w + c]) % p;
    }
  }
  FpMatrix inv(n, a.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, static_cast<std::int64_t>(aug[i * w + n + j]));
  return inv;
}

std::vector<std::uint32_t> roots_of_unity(int n, std::uint32_t p) {
  thread_local int cached_n = 0;
  thread_local std::uint32_t cached_p = 0;
  thread_local std::vector<std::uint32_t> cached;
  if (n == cached_n && p == cached_p) return cached;
  std::vector<std::uint32_t> roots;
  for (std::uint32_t l = 1; l < p; ++l)
    if (pow_mod(l, static_cast<std::uint64_t>(n), p) == 1) roots.push_back(l);
  cached_n = n;
  cached_p = p;
  cached = roots;
  return roots;
}

ProjectiveMatrix projective_canonicalize(const FpMatrix& a) {
  if (a.det() != 1) throw std::invalid_argument("projective form requires determinant 1");
  FpMatrix best = a;
  for (std::uint32_t lambda : roots_of_unity(a.dim(), a.modulus())) {
    FpMatrix c = a.scaled(lambda);
    if (c < best) best = c;
  }
  return ProjectiveMatrix(best);
}

ProjectiveMatrix ProjectiveMatrix::operator*(const ProjectiveMatrix& rhs) const {
  return projective_canonicalize(rep_ * rhs.rep_);
}

ProjectiveMatrix ProjectiveMatrix::inverse() const { return projective_canonicalize(mat_inv(rep_)); }

std::uint64_t element_order(const FpMatrix& a, std::uint64_t order_cap) {
  FpMatrix power = a;
  for (std::uint64_t k = 1; k <= order_cap; ++k) {
    if (power.is_identity()) return k;
    power = power * a;
  }
  throw OrderCapExceeded(order_cap);
}

std::uint64_t element_order(const ProjectiveMatrix& a, std::uint64_t order_cap) {
  ProjectiveMatrix power = a;
  for (std::uint64_t k = 1; k <= order_cap; ++k) {
    if (power.is_identity()) return k;
    power = power * a;
  }
  throw OrderCapExceeded(order_cap);
}

}  // namespace irrgen
