#include "irrgen/product.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "irrgen/generation.hpp"

namespace irrgen {

std::shared_ptr<const IndexedGroup> indexed(const GroupSpec& g) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const IndexedGroup>> cache;
  std::string key = describe(g);
  if (auto* t = std::get_if<std::shared_ptr<const CayleyTable>>(&g.kind))
    key += "@" + std::to_string(reinterpret_cast<std::uintptr_t>(t->get()));
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = IndexedGroup::build(g);
  std::lock_guard lock(mu);
  return cache.emplace(key, built).first->second;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> find_generating_pair(const IndexedGroup& g) {
  for (std::uint32_t a = 0; a < g.order(); ++a)
    for (std::uint32_t b = a; b < g.order(); ++b) {
      const std::uint32_t pair[2] = {a, b};
      if (g.generates(pair)) return std::make_pair(a, b);
    }
  return std::nullopt;
}

Isomorphism Isomorphism::conjugation(GroupSpec psl2, FpMatrix conjugator) {
  Isomorphism f;
  f.domain_ = psl2;
  f.codomain_ = psl2;
  f.identity_ = conjugator.is_scalar();
  f.conjugator_ = conjugator;
  return f;
}

Isomorphism Isomorphism::from_index_map(std::shared_ptr<const IndexedGroup> domain,
                                        std::shared_ptr<const IndexedGroup> codomain, std::vector<std::uint32_t> images) {
  Isomorphism f;
  f.domain_ = domain->spec();
  f.codomain_ = codomain->spec();
  f.identity_ = same_group(f.domain_, f.codomain_);
  for (std::uint32_t i = 0; i < images.size() && f.identity_; ++i) f.identity_ = images[i] == i;
  f.dom_index_ = std::move(domain);
  f.cod_index_ = std::move(codomain);
  f.images_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(images));
  return f;
}

Element Isomorphism::apply(const Element& x) const {
  if (conjugator_) {
    const FpMatrix& m = std::get<ProjectiveMatrix>(x.value).rep();
    return Element{projective_canonicalize(*conjugator_ * m * mat_inv(*conjugator_))};
  }
  return cod_index_->element((*images_)[dom_index_->index_of(x)]);
}

std::string Isomorphism::label() const {
  if (identity_) return "identity";
  if (conjugator_) return "conjugation by " + conjugator_->to_string();
  return "explicit map";
}

std::pair<Element, Element> Isomorphism::generator_images() const {
  if (conjugator_) {
    auto gens = standard_generators(domain_);
    return {apply(gens[0]), apply(gens[1])};
  }
  auto pair = find_generating_pair(*dom_index_);
  if (!pair) throw std::logic_error("domain is not 2-generated");
  return {apply(dom_index_->element(pair->first)), apply(dom_index_->element(pair->second))};
}

std::vector<std::vector<std::uint32_t>> brute_force_isomorphisms(const IndexedGroup& a, const IndexedGroup& b) {
  std::vector<std::vector<std::uint32_t>> out;
  if (a.order() != b.order()) return out;
  const std::uint32_t n = a.order();

  // Fixed generating tuple of a: a generating pair when one exists.
  std::vector<std::uint32_t> gens;
  if (auto pair = find_generating_pair(a))
    gens = {pair->first, pair->second};
  else
    gens.assign(a.generators().begin(), a.generators().end());

  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> images(gens.size());
  std::vector<std::uint32_t> map(n), preimage(n);
  std::vector<std::uint32_t> queue;

  auto try_extend = [&]() {
    std::fill(map.begin(), map.end(), kUnset);
    std::fill(preimage.begin(), preimage.end(), kUnset);
    map[0] = 0;
    preimage[0] = 0;
    queue.assign(1, 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t z = queue[head];
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::uint32_t w = a.mul(z, gens[g]);
        const std::uint32_t wi = b.mul(map[z], images[g]);
        if (map[w] == kUnset) {
          if (preimage[wi] != kUnset) return false;
          map[w] = wi;
          preimage[wi] = w;
          queue.push_back(w);
        } else if (map[w] != wi) {
          return false;
        }
      }
    }
    return queue.size() == n;
  };

  // Depth-first over images with matching element orders.
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == gens.size()) {
      if (gens.size() == 2 && b.element_order(b.mul(images[0], images[1])) != a.element_order(a.mul(gens[0], gens[1])))
        return;
      if (try_extend()) out.push_back(map);
      return;
    }
    for (std::uint32_t y = 0; y < n; ++y) {
      if (b.element_order(y) != a.element_order(gens[depth])) continue;
      images[depth] = y;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace {

bool is_psl2_prime(const GroupSpec& g) {
  auto* s = std::get_if<ProjectiveSpecialLinear>(&g.kind);
  return s && s->n == 2 && s->p >= 5;
}

std::vector<FpMatrix> pgl2_representatives(std::uint32_t p) {
  std::vector<FpMatrix> out;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          // First nonzero entry (row-major) normalized to 1.
          const std::uint32_t lead = a ? a : (b ? b : (c ? c : d));
          if (lead != 1) continue;
          FpMatrix m = FpMatrix::from_rows(2, p, {a, b, c, d});
          if (m.det() != 0) out.push_back(m);
        }
  return out;
}

}  // namespace

std::vector<Isomorphism> enumerate_isomorphisms(const GroupSpec& a, const GroupSpec& b) {
  std::vector<Isomorphism> out;
  if (is_psl2_prime(a) && is_psl2_prime(b)) {
    if (*a.field_prime() != *b.field_prime()) return out;
    for (auto& c : pgl2_representatives(*a.field_prime())) out.push_back(Isomorphism::conjugation(a, c));
    return out;
  }
  auto ia = indexed(a), ib = indexed(b);
  for (auto& m : brute_force_isomorphisms(*ia, *ib)) out.push_back(Isomorphism::from_index_map(ia, ib, std::move(m)));
  return out;
}

bool is_nonabelian_simple(const IndexedGroup& g) {
  if (g.order() < 60) return false;  // smallest nonabelian simple group has order 60
  for (std::uint32_t c = 1; c < g.class_count(); ++c) {
    // Normal closure of a nontrivial class must be everything.
    std::vector<std::uint32_t> cls;
    for (std::uint32_t x = 0; x < g.order(); ++x)
      if (g.class_of(x) == c) cls.push_back(x);
    if (!g.generates(cls)) return false;
  }
  return true;
}

GeneratingTuple project(const GeneratingTuple& t, std::size_t factor) {
  const auto& factors = std::get<ProductGroup>(t.group.kind).factors;
  GeneratingTuple out{factors.at(factor), {}};
  for (const auto& e : t.items) out.items.push_back(std::get<ProductElement>(e.value).parts.at(factor));
  return out;
}

ProductDiagnosis product_generates(const GeneratingTuple& t) {
  const auto* prod = std::get_if<ProductGroup>(&t.group.kind);
  if (!prod || prod->factors.size() != 2) throw std::invalid_argument("product check needs a product of two groups");
  if (t.items.empty()) throw std::invalid_argument("product check needs a nonempty tuple");
  for (const auto& f : prod->factors) {
    if (is_psl2_prime(f)) continue;
    if (std::holds_alternative<std::shared_ptr<const CayleyTable>>(f.kind) && is_nonabelian_simple(*indexed(f))) continue;
    throw std::invalid_argument("isomorphism enumeration unavailable for factor " + describe(f) +
                                " (need PSL(2,p), p >= 5, or a simple Cayley table)");
  }

  ProductDiagnosis d;
  for (int i = 0; i < 2; ++i)
    if (!is_generating(project(t, i))) {
      d.generates = false;
      d.verdict = ProductVerdict::ProjectionProper;
      d.blocking_projection = i + 1;
      d.diagnosis = "projection " + std::to_string(i + 1) + " proper";
      return d;
    }

  const GroupSpec& g1 = prod->factors[0];
  const GroupSpec& g2 = prod->factors[1];
  if (*group_order(g1) == *group_order(g2)) {
    auto isos = enumerate_isomorphisms(g1, g2);
    d.isomorphic_factors = !isos.empty();
    for (auto& f : isos) {
      bool aligned = true;
      for (const auto& e : t.items) {
        const auto& parts = std::get<ProductElement>(e.value).parts;
        if (!(f.apply(parts[0]) == parts[1])) {
          aligned = false;
          break;
        }
      }
      if (aligned) {
        d.generates = false;
        d.verdict = ProductVerdict::GraphOfIsomorphism;
        d.diagnosis = f.is_identity() ? "graph of identity" : "graph of isomorphism (" + f.label() + ")";
        d.aligning = std::move(f);
        return d;
      }
    }
  }
  d.generates = true;
  d.verdict = ProductVerdict::Generates;
  d.diagnosis = d.isomorphic_factors ? "both projections generate; no aligning isomorphism"
                                     : "both projections generate; factors not isomorphic";
  return d;
}

}  // namespace irrgen
