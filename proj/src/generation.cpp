#include "irrgen/generation.hpp"

#include <array>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace irrgen {

namespace {

// F_{p^2} = F_p[w] / (w^2 - r) for a fixed non-residue r.
struct Fp2 {
  std::uint64_t a = 0, b = 0;  // a + b w
  bool operator==(const Fp2&) const = default;
};

class Fp2Field {
 public:
  explicit Fp2Field(std::uint32_t p) : p_(p) {
    for (std::uint32_t r = 2; r < p; ++r)
      if (pow_mod(r, (p - 1) / 2, p) == p - 1) {
        nonresidue_ = r;
        break;
      }
  }
  std::uint32_t p() const { return p_; }
  Fp2 from(std::uint64_t x) const { return {x % p_, 0}; }
  Fp2 add(Fp2 x, Fp2 y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
  Fp2 sub(Fp2 x, Fp2 y) const { return {(x.a + p_ - y.a) % p_, (x.b + p_ - y.b) % p_}; }
  Fp2 mul(Fp2 x, Fp2 y) const {
    return {(x.a * y.a + x.b * y.b % p_ * nonresidue_) % p_, (x.a * y.b + x.b * y.a) % p_};
  }
  bool is_zero(Fp2 x) const { return x.a == 0 && x.b == 0; }
  Fp2 inv(Fp2 x) const {
    // (a + bw)^-1 = (a - bw) / (a^2 - r b^2)
    const std::uint64_t norm = (x.a * x.a % p_ + p_ - x.b * x.b % p_ * nonresidue_ % p_) % p_;
    const std::uint64_t ninv = inverse_mod(static_cast<std::int64_t>(norm), p_);
    return {x.a * ninv % p_, (p_ - x.b) % p_ * ninv % p_};
  }
  /// Square root of an F_p element inside F_{p^2}.
  Fp2 sqrt(std::uint64_t d) const {
    d %= p_;
    if (d == 0) return {0, 0};
    for (std::uint64_t s = 1; s < p_; ++s)
      if (s * s % p_ == d) return {s, 0};
    // d = r s^2  =>  sqrt(d) = s w
    const std::uint64_t q = d * inverse_mod(nonresidue_, p_) % p_;
    for (std::uint64_t s = 1; s < p_; ++s)
      if (s * s % p_ == q) return {0, s};
    throw std::logic_error("no square root in F_{p^2}");
  }

 private:
  std::uint32_t p_;
  std::uint64_t nonresidue_ = 0;
};

struct Point {
  bool infinity = false;
  Fp2 z;
  bool operator==(const Point&) const = default;
};

struct Mobius {
  std::uint64_t a, b, c, d;
  bool scalar() const { return b == 0 && c == 0 && a == d; }
};

Point apply(const Fp2Field& F, const Mobius& m, const Point& x) {
  if (x.infinity) {
    if (m.c == 0) return {true, {}};
    return {false, F.mul(F.from(m.a), F.inv(F.from(m.c)))};
  }
  const Fp2 num = F.add(F.mul(F.from(m.a), x.z), F.from(m.b));
  const Fp2 den = F.add(F.mul(F.from(m.c), x.z), F.from(m.d));
  if (F.is_zero(den)) return {true, {}};
  return {false, F.mul(num, F.inv(den))};
}

std::vector<Point> fixed_points(const Fp2Field& F, const Mobius& m) {
  const std::uint64_t p = F.p();
  std::vector<Point> out;
  if (m.c == 0) {
    out.push_back({true, {}});
    if (m.a != m.d) {
      const std::uint64_t dm = (m.d + p - m.a) % p;
      out.push_back({false, F.from(m.b * inverse_mod(static_cast<std::int64_t>(dm), F.p()) % p)});
    }
    return out;
  }
  // c z^2 + (d - a) z - b = 0
  const std::uint64_t amd = (m.a + p - m.d) % p;
  const std::uint64_t disc = (amd * amd + 4 * m.b % p * m.c) % p;
  const Fp2 root = F.sqrt(disc);
  const Fp2 inv2c = F.inv(F.from(2 * m.c));
  out.push_back({false, F.mul(F.add(F.from(amd), root), inv2c)});
  if (disc != 0) out.push_back({false, F.mul(F.sub(F.from(amd), root), inv2c)});
  return out;
}

Mobius compose(std::uint64_t p, const Mobius& x, const Mobius& y) {
  return {(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p, (x.c * y.a + x.d * y.c) % p,
          (x.c * y.b + x.d * y.d) % p};
}

const FpMatrix& matrix_of(const Element& e) {
  if (auto* m = std::get_if<FpMatrix>(&e.value)) return *m;
  return std::get<ProjectiveMatrix>(e.value).rep();
}

}  // namespace

std::string to_string(GenerationReason r) {
  switch (r) {
    case GenerationReason::Generates: return "generates";
    case GenerationReason::CommonEigenvector: return "common eigenvector";
    case GenerationReason::ImprimitivePair: return "imprimitive pair of lines";
    case GenerationReason::SmallClosure: return "small closure";
    case GenerationReason::ProperClosure: return "proper closure";
    case GenerationReason::GcdNotOne: return "gcd not 1";
  }
  return "unknown";
}

std::string GenerationDiagnosis::describe() const {
  std::string s = to_string(reason);
  if (closure_order) s += " (order " + std::to_string(*closure_order) + ")";
  return s;
}

GenerationDiagnosis diagnose_psl2_fast(const GeneratingTuple& t) {
  if (!t.group.is_rank_one_linear()) throw std::invalid_argument("structural test needs SL(2,p) or PSL(2,p)");
  const std::uint32_t p = *t.group.field_prime();
  if (p < 5) throw std::invalid_argument("structural test needs p >= 5");
  const Fp2Field F(p);

  std::vector<Mobius> gens;
  for (const auto& e : t.items) {
    const FpMatrix& m = matrix_of(e);
    Mobius mb{m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
    if (!mb.scalar()) gens.push_back(mb);
  }

  // (a) common fixed point on P^1(F_{p^2}); includes the all-scalar case.
  if (gens.empty()) return {false, GenerationReason::CommonEigenvector, std::nullopt};
  for (const Point& x : fixed_points(F, gens[0])) {
    bool common = true;
    for (std::size_t i = 1; i < gens.size() && common; ++i) common = apply(F, gens[i], x) == x;
    if (common) return {false, GenerationReason::CommonEigenvector, std::nullopt};
  }

  // (b) a pair of points permuted by every generator. A large subgroup of a
  // torus normalizer contains a torus element with non-scalar square among
  // the generators or their pairwise products; its fixed points are the pair.
  std::vector<Mobius> candidates = gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) candidates.push_back(compose(p, gens[i], gens[j]));
  for (const Mobius& c : candidates) {
    const Mobius sq = compose(p, c, c);
    if (sq.scalar()) continue;
    const auto pts = fixed_points(F, sq);
    if (pts.size() != 2) continue;
    bool preserved = true;
    for (const Mobius& g : gens) {
      const Point u = apply(F, g, pts[0]), v = apply(F, g, pts[1]);
      if (!((u == pts[0] && v == pts[1]) || (u == pts[1] && v == pts[0]))) {
        preserved = false;
        break;
      }
    }
    if (preserved) return {false, GenerationReason::ImprimitivePair, std::nullopt};
  }

  // (c) remaining proper subgroups have order <= 60 in PSL(2,p).
  const std::uint64_t order = *group_order(t.group);
  const std::uint64_t cap = 120 * center_size(t.group);
  if (auto co = closure_order(t, cap)) {
    if (*co == order) return {true, GenerationReason::Generates, co};
    return {false, GenerationReason::SmallClosure, co};
  }
  return {true, GenerationReason::Generates, std::nullopt};
}

bool is_generating_psl2_fast(const GeneratingTuple& t) { return diagnose_psl2_fast(t).generates; }

GenerationDiagnosis diagnose_oracle(const GeneratingTuple& t) {
  if (!t.group.is_finite()) {
    std::uint64_t g = 0;
    for (const auto& e : t.items) g = std::gcd<std::uint64_t>(g, static_cast<std::uint64_t>(std::llabs(std::get<std::int64_t>(e.value))));
    if (g == 1) return {true, GenerationReason::Generates, std::nullopt};
    return {false, GenerationReason::GcdNotOne, std::nullopt};
  }
  const std::uint64_t order = *group_order(t.group);
  const std::uint64_t co = *closure_order(t, order);
  return {co == order, co == order ? GenerationReason::Generates : GenerationReason::ProperClosure, co};
}

GenerationDiagnosis diagnose_generation(const GeneratingTuple& t, GenerationMethod method) {
  const bool fast_applies = t.group.is_rank_one_linear() && *t.group.field_prime() >= 5;
  if (method == GenerationMethod::Fast || (method == GenerationMethod::Auto && fast_applies)) return diagnose_psl2_fast(t);
  return diagnose_oracle(t);
}

bool is_generating(const GeneratingTuple& t, GenerationMethod method) { return diagnose_generation(t, method).generates; }

GeneratingTuple project_to_psl(const GeneratingTuple& t) {
  const auto* sl = std::get_if<SpecialLinear>(&t.group.kind);
  if (!sl) throw std::invalid_argument("projection needs a tuple over SL(n,p)");
  GeneratingTuple out{GroupSpec::psl(sl->n, sl->p), {}};
  for (const auto& e : t.items) out.items.push_back(Element{projective_canonicalize(std::get<FpMatrix>(e.value))});
  return out;
}

}  // namespace irrgen
