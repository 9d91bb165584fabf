#include "irrgen/indexed_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace irrgen {

namespace {

constexpr std::uint64_t kDenseKeyLimit = std::uint64_t{1} << 22;
constexpr std::uint32_t kMissing = 0xffffffffu;

}  // namespace

std::shared_ptr<const IndexedGroup> IndexedGroup::build(const GroupSpec& g) {
  if (!g.is_finite()) throw std::invalid_argument("cannot index an infinite group");
  const std::uint64_t order = *group_order(g);
  if (order > kMaxOrder)
    throw std::invalid_argument(describe(g) + " has order " + std::to_string(order) + ", above the indexing limit " +
                                std::to_string(kMaxOrder));
  std::shared_ptr<IndexedGroup> ig(new IndexedGroup());
  ig->spec_ = g;
  if (std::holds_alternative<ProductGroup>(g.kind))
    ig->build_product();
  else
    ig->build_simple();
  ig->finish();
  if (ig->n_ != order) throw std::logic_error("enumeration of " + describe(g) + " produced the wrong order");
  return ig;
}

std::uint64_t IndexedGroup::key_of_matrix(const FpMatrix& m) const {
  auto raw = [&](const FpMatrix& x) {
    std::uint64_t k = 0;
    for (auto e : x.entries()) k = k * x.modulus() + e;
    return k;
  };
  if (!projective_) return raw(m);
  std::uint64_t best = raw(m);
  for (auto lambda : roots_) best = std::min(best, raw(m.scaled(lambda)));
  return best;
}

std::uint32_t IndexedGroup::lookup_key(std::uint64_t key) const {
  if (!dense_lookup_.empty()) return key < dense_lookup_.size() ? dense_lookup_[key] : kMissing;
  auto it = sparse_lookup_.find(key);
  return it == sparse_lookup_.end() ? kMissing : it->second;
}

void IndexedGroup::build_simple() {
  const auto* sl = std::get_if<SpecialLinear>(&spec_.kind);
  const auto* psl = std::get_if<ProjectiveSpecialLinear>(&spec_.kind);
  matrix_kind_ = sl || psl;
  projective_ = psl != nullptr;

  // Enumerate in BFS order first; relabel once orders are known.
  std::vector<Element> bfs_elems;
  std::vector<FpMatrix> bfs_mats;
  std::unordered_map<std::uint64_t, std::uint32_t> bfs_keys;
  std::unordered_map<std::string, std::uint32_t> bfs_enc;
  const auto gens = standard_generators(spec_);

  if (matrix_kind_) {
    const int n = sl ? sl->n : psl->n;
    const std::uint32_t p = sl ? sl->p : psl->p;
    if (projective_) roots_ = roots_of_unity(n, p);
    std::vector<FpMatrix> gen_mats;
    for (const auto& e : gens)
      gen_mats.push_back(projective_ ? std::get<ProjectiveMatrix>(e.value).rep() : std::get<FpMatrix>(e.value));
    FpMatrix id = FpMatrix::identity(n, p);
    bfs_mats.push_back(id);
    bfs_keys.emplace(key_of_matrix(id), 0);
    for (std::size_t head = 0; head < bfs_mats.size(); ++head)
      for (const auto& gm : gen_mats) {
        FpMatrix y = bfs_mats[head] * gm;
        if (bfs_keys.emplace(key_of_matrix(y), static_cast<std::uint32_t>(bfs_mats.size())).second)
          bfs_mats.push_back(y);
      }
    n_ = static_cast<std::uint32_t>(bfs_mats.size());
  } else {
    bfs_elems.push_back(irrgen::identity(spec_));
    bfs_enc.emplace(encode(spec_, bfs_elems[0]), 0);
    for (std::size_t head = 0; head < bfs_elems.size(); ++head)
      for (const auto& gen : gens) {
        Element y = multiply(spec_, bfs_elems[head], gen);
        if (bfs_enc.emplace(encode(spec_, y), static_cast<std::uint32_t>(bfs_elems.size())).second)
          bfs_elems.push_back(std::move(y));
      }
    n_ = static_cast<std::uint32_t>(bfs_elems.size());
  }

  auto bfs_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (matrix_kind_) return bfs_keys.at(key_of_matrix(bfs_mats[a] * bfs_mats[b]));
    return bfs_enc.at(encode(spec_, multiply(spec_, bfs_elems[a], bfs_elems[b])));
  };

  std::vector<std::uint32_t> bfs_table;
  const bool tabled = n_ <= kTableLimit;
  if (tabled) {
    bfs_table.resize(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) bfs_table[static_cast<std::size_t>(a) * n_ + b] = bfs_mul(a, b);
  }
  std::vector<std::uint32_t> bfs_orders(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::uint32_t y = a, k = 1;
    while (y != 0) {
      y = tabled ? bfs_table[static_cast<std::size_t>(y) * n_ + a] : bfs_mul(y, a);
      ++k;
    }
    bfs_orders[a] = k;
  }

  std::vector<std::string> encodings(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    if (matrix_kind_) {
      Element e = projective_ ? Element{projective_canonicalize(bfs_mats[a])} : Element{bfs_mats[a]};
      encodings[a] = encode(spec_, e);
    } else {
      encodings[a] = encode(spec_, bfs_elems[a]);
    }
  }
  std::vector<std::uint32_t> perm(n_);  // perm[new] = old
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (bfs_orders[x] != bfs_orders[y]) return bfs_orders[x] < bfs_orders[y];
    return encodings[x] < encodings[y];
  });
  std::vector<std::uint32_t> relabel(n_);  // relabel[old] = new
  for (std::uint32_t i = 0; i < n_; ++i) relabel[perm[i]] = i;

  orders_.resize(n_);
  elements_.reserve(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t old = perm[i];
    orders_[i] = bfs_orders[old];
    if (matrix_kind_) {
      mats_.push_back(bfs_mats[old]);
      elements_.push_back(projective_ ? Element{projective_canonicalize(bfs_mats[old])} : Element{bfs_mats[old]});
    } else {
      elements_.push_back(bfs_elems[old]);
    }
  }
  if (tabled) {
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        table_[static_cast<std::size_t>(relabel[a]) * n_ + relabel[b]] = relabel[bfs_table[static_cast<std::size_t>(a) * n_ + b]];
  }

  if (matrix_kind_) {
    const auto& m0 = mats_[0];
    std::uint64_t keyspace = 1;
    bool small = true;
    for (int i = 0; i < m0.dim() * m0.dim(); ++i) {
      keyspace *= m0.modulus();
      if (keyspace > kDenseKeyLimit) {
        small = false;
        break;
      }
    }
    if (small) {
      dense_lookup_.assign(keyspace, kMissing);
      for (std::uint32_t i = 0; i < n_; ++i) dense_lookup_[key_of_matrix(mats_[i])] = i;
    } else {
      for (std::uint32_t i = 0; i < n_; ++i) sparse_lookup_.emplace(key_of_matrix(mats_[i]), i);
    }
  } else {
    for (std::uint32_t i = 0; i < n_; ++i) encoding_lookup_.emplace(encodings[perm[i]], i);
  }

  inverse_.resize(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    if (tabled) {
      for (std::uint32_t b = 0; b < n_; ++b)
        if (table_[static_cast<std::size_t>(a) * n_ + b] == 0) {
          inverse_[a] = b;
          break;
        }
    } else {
      inverse_[a] = index_of(invert(spec_, elements_[a]));
    }
  }

  if (std::holds_alternative<std::shared_ptr<const CayleyTable>>(spec_.kind)) {
    // Keep only generators not already in the closure of earlier ones.
    for (std::uint32_t a = 1; a < n_ && (generators_.empty() || closure(generators_).size < n_); ++a) {
      if (!closure(generators_).members.test(a)) generators_.push_back(a);
    }
  } else {
    for (const auto& e : gens) generators_.push_back(index_of(e));
  }
}

void IndexedGroup::build_product() {
  const auto& factors = std::get<ProductGroup>(spec_.kind).factors;
  n_ = 1;
  for (const auto& f : factors) {
    factors_.push_back(IndexedGroup::build(f));
    radix_.push_back(factors_.back()->order());
    n_ *= factors_.back()->order();
  }
  elements_.reserve(n_);
  orders_.resize(n_);
  inverse_.resize(n_);
  std::vector<std::uint32_t> comp(factors_.size());
  for (std::uint32_t a = 0; a < n_; ++a) {
    ProductElement pe;
    std::uint32_t ord = 1;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      comp[f] = component(a, f);
      pe.parts.push_back(factors_[f]->element(comp[f]));
      ord = std::lcm(ord, factors_[f]->element_order(comp[f]));
    }
    elements_.push_back(Element{std::move(pe)});
    orders_[a] = ord;
    for (std::size_t f = 0; f < factors_.size(); ++f) comp[f] = factors_[f]->inv(comp[f]);
    inverse_[a] = combine(comp);
  }
  if (n_ <= kTableLimit) {
    std::vector<std::uint32_t> t(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) t[static_cast<std::size_t>(a) * n_ + b] = mul_slow(a, b);
    table_ = std::move(t);
  }
  for (std::size_t f = 0; f < factors_.size(); ++f)
    for (auto g : factors_[f]->generators()) {
      std::vector<std::uint32_t> c(factors_.size(), 0);
      c[f] = g;
      generators_.push_back(combine(c));
    }
}

void IndexedGroup::finish() {
  search_order_.resize(n_);
  std::iota(search_order_.begin(), search_order_.end(), 0);
  std::stable_sort(search_order_.begin(), search_order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return orders_[a] < orders_[b]; });
  rank_.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) rank_[search_order_[i]] = i;

  class_of_.assign(n_, kMissing);
  transporter_.assign(n_, 0);
  for (std::uint32_t x = 0; x < n_; ++x) {
    if (class_of_[x] != kMissing) continue;
    const auto c = static_cast<std::uint32_t>(class_reps_.size());
    class_reps_.push_back(x);
    class_of_[x] = c;
    transporter_[x] = 0;
    std::vector<std::uint32_t> queue{x};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t z = queue[head];
      for (auto g : generators_) {
        const std::uint32_t y = conj(g, z);
        if (class_of_[y] != kMissing) continue;
        class_of_[y] = c;
        transporter_[y] = mul(transporter_[z], inverse_[g]);
        queue.push_back(y);
      }
    }
  }
  rep_centralizers_.resize(class_reps_.size());
  for (std::uint32_t c = 0; c < class_reps_.size(); ++c) {
    const std::uint32_t r = class_reps_[c];
    for (std::uint32_t g = 0; g < n_; ++g)
      if (mul(g, r) == mul(r, g)) rep_centralizers_[c].push_back(g);
  }
}

std::uint32_t IndexedGroup::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (!factors_.empty()) {
    std::uint32_t out = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f)
      out = out * radix_[f] + factors_[f]->mul(component(a, f), component(b, f));
    return out;
  }
  if (matrix_kind_) {
    const std::uint32_t r = lookup_key(key_of_matrix(mats_[a] * mats_[b]));
    if (r == kMissing) throw std::logic_error("product escaped the enumerated group");
    return r;
  }
  return encoding_lookup_.at(encode(spec_, multiply(spec_, elements_[a], elements_[b])));
}

std::uint32_t IndexedGroup::power(std::uint32_t a, std::int64_t e) const {
  std::uint32_t base = e < 0 ? inverse_[a] : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  k %= orders_[a];
  std::uint32_t r = 0;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::uint32_t IndexedGroup::index_of(const Element& e) const {
  validate_element(spec_, e);
  if (!factors_.empty()) {
    const auto& parts = std::get<ProductElement>(e.value).parts;
    std::vector<std::uint32_t> comp;
    for (std::size_t f = 0; f < factors_.size(); ++f) comp.push_back(factors_[f]->index_of(parts[f]));
    return combine(comp);
  }
  if (matrix_kind_) {
    const FpMatrix& m = projective_ ? std::get<ProjectiveMatrix>(e.value).rep() : std::get<FpMatrix>(e.value);
    const std::uint32_t r = lookup_key(key_of_matrix(m));
    if (r == kMissing) throw std::invalid_argument("element not found in " + describe(spec_));
    return r;
  }
  auto it = encoding_lookup_.find(encode(spec_, e));
  if (it == encoding_lookup_.end()) throw std::invalid_argument("element not found in " + describe(spec_));
  return it->second;
}

std::uint32_t IndexedGroup::component(std::uint32_t a, std::size_t factor) const {
  for (std::size_t f = factors_.size(); f-- > factor + 1;) a /= radix_[f];
  return a % radix_[factor];
}

std::uint32_t IndexedGroup::combine(std::span<const std::uint32_t> components) const {
  std::uint32_t out = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) out = out * radix_[f] + components[f];
  return out;
}

std::vector<std::uint32_t> IndexedGroup::centralizer(std::span<const std::uint32_t> elems) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t g = 0; g < n_; ++g) {
    bool ok = true;
    for (auto x : elems)
      if (mul(g, x) != mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

IndexedGroup::Closure IndexedGroup::closure(std::span<const std::uint32_t> gens) const {
  Closure c{Bitset(n_), 0};
  std::vector<std::uint32_t> queue;
  queue.reserve(64);
  queue.push_back(0);
  c.members.set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t x = queue[head];
    for (auto g : gens) {
      const std::uint32_t y = mul(x, g);
      if (!c.members.test(y)) {
        c.members.set(y);
        queue.push_back(y);
      }
    }
  }
  c.size = static_cast<std::uint32_t>(queue.size());
  return c;
}

IndexedGroup::Closure IndexedGroup::closure_parallel(std::span<const std::uint32_t> gens) const {
  Closure c{Bitset(n_), 0};
  c.members.set(0);
  std::vector<std::uint32_t> frontier{0};
  std::size_t total = 1;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
#pragma omp parallel
    {
      std::vector<std::uint32_t> local;
#pragma omp for schedule(static) nowait
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (auto g : gens) {
          const std::uint32_t y = mul(frontier[i], g);
          if (!c.members.atomic_test_and_set(y)) local.push_back(y);
        }
#pragma omp critical(irrgen_closure_merge)
      next.insert(next.end(), local.begin(), local.end());
    }
    total += next.size();
    frontier = std::move(next);
  }
  c.size = static_cast<std::uint32_t>(total);
  return c;
}

}  // namespace irrgen
