#include "irrgen/redundancy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <stdexcept>

#include <omp.h>

#include "irrgen/closure.hpp"
#include "irrgen/generation.hpp"
#include "irrgen/lattice.hpp"
#include "irrgen/product.hpp"

namespace irrgen {

std::string to_string(RedundancyVerdict v) {
  switch (v) {
    case RedundancyVerdict::IrredundantGenerating: return "IrredundantGenerating";
    case RedundancyVerdict::RedundantGenerating: return "RedundantGenerating";
    case RedundancyVerdict::NotGenerating: return "NotGenerating";
  }
  return "unknown";
}

RedundancyReport is_redundant(const GeneratingTuple& t) {
  RedundancyReport r{t, is_generating(t), std::vector<bool>(t.size(), false), RedundancyVerdict::NotGenerating};
  if (!r.generates) return r;
  bool any = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    r.droppable[i] = is_generating(t.without(i));
    any |= r.droppable[i];
  }
  r.verdict = any ? RedundancyVerdict::RedundantGenerating : RedundancyVerdict::IrredundantGenerating;
  return r;
}

GeneratingTuple z_witness(int n) {
  if (n < 1 || n > 15) throw std::invalid_argument("z_witness supports 1 <= n <= 15");
  std::vector<std::int64_t> primes;
  for (std::uint64_t q = 2; static_cast<int>(primes.size()) < n; q = next_prime(q)) primes.push_back(static_cast<std::int64_t>(q));
  GeneratingTuple t{GroupSpec::integers(), {}};
  for (int i = 0; i < n; ++i) {
    std::int64_t x = 1;
    for (int j = 0; j < n; ++j)
      if (j != i) x *= primes[j];
    t.items.push_back(Element{x});
  }
  return t;
}

namespace search {

namespace {

using Clock = std::chrono::steady_clock;

struct TaskResult {
  int best = 0;
  int smallest = -1;
  std::vector<std::uint32_t> witness;
  bool complete = true;
  bool truncated = false;
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
};

struct Shared {
  const IndexedGroup& g;
  const Options& opt;
  Clock::time_point start;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> out_of_budget{false};
  std::atomic<bool> stop{false};
};

class Dfs {
 public:
  Dfs(Shared& shared, SubgroupLattice& lattice, TaskResult& result)
      : s_(shared), g_(shared.g), L_(lattice), r_(result) {}

  void run_from(std::uint32_t first) {
    if (!admit(first)) return;
    if (L_.contains(SubgroupLattice::trivial(), first)) return;
    elems_ = {first};
    const auto h = L_.join(SubgroupLattice::trivial(), first);
    if (L_.is_whole(h)) {
      found();
      return;
    }
    // Orbit representatives of the centralizer of `first`.
    const auto centralizer = g_.rep_centralizer(g_.class_of(first));
    std::vector<char> marked(g_.order(), 0);
    for (auto y : g_.search_order()) {
      if (marked[y]) continue;
      second_reps_.push_back(y);
      for (auto c : centralizer) marked[g_.conj(c, y)] = 1;
    }
    std::vector<SubgroupLattice::Id> without = {SubgroupLattice::trivial()};
    extend(h, without);
  }

 private:
  bool admit(std::uint32_t y) const { return s_.opt.allowed.empty() || s_.opt.allowed[y]; }

  bool tick() {
    ++r_.nodes;
    if ((r_.nodes & 1023) == 0) {
      const auto total = s_.nodes.fetch_add(1024) + 1024;
      const double secs = std::chrono::duration<double>(Clock::now() - s_.start).count();
      if (total > s_.opt.node_budget || secs > s_.opt.time_budget_seconds) s_.out_of_budget = true;
    }
    return !s_.out_of_budget && !s_.stop;
  }

  void found() {
    const int size = static_cast<int>(elems_.size());
    if (r_.smallest < 0 || size < r_.smallest) r_.smallest = size;
    if (s_.opt.target_size) {
      if (size == *s_.opt.target_size) {
        r_.best = size;
        r_.witness = elems_;
        s_.stop = true;
      }
      return;
    }
    if (size > r_.best) {
      r_.best = size;
      r_.witness = elems_;
    }
    if (s_.opt.on_found && !s_.opt.on_found(elems_)) s_.stop = true;
  }

  // h = <elems>, without[i] = <elems minus elems[i]>.
  void extend(SubgroupLattice::Id h, const std::vector<SubgroupLattice::Id>& without) {
    const std::size_t depth = elems_.size();
    if (static_cast<int>(depth) >= s_.opt.max_size) {
      r_.truncated = true;
      return;
    }
    const bool second = depth == 1;
    const std::span<const std::uint32_t> candidates = second ? std::span<const std::uint32_t>(second_reps_) : g_.search_order();
    const std::uint32_t min_rank = depth >= 3 ? g_.rank(elems_.back()) + 1 : 0;

    std::vector<SubgroupLattice::Id> next(depth + 1);
    for (auto y : candidates) {
      if (g_.rank(y) < min_rank || !admit(y)) continue;
      if (!tick()) {
        r_.complete = false;
        return;
      }
      if (L_.contains(h, y)) {
        ++r_.prunes;
        continue;
      }
      bool independent = true;
      for (std::size_t i = 0; i < depth; ++i) {
        next[i] = L_.join(without[i], y);
        if (L_.contains(next[i], elems_[i])) {
          independent = false;
          break;
        }
      }
      if (!independent) {
        ++r_.prunes;
        continue;
      }
      next[depth] = h;
      const auto joined = L_.join(h, y);
      elems_.push_back(y);
      if (L_.is_whole(joined))
        found();
      else
        extend(joined, next);
      elems_.pop_back();
      if (s_.stop) return;
      if (s_.out_of_budget) {
        r_.complete = false;
        return;
      }
    }
  }

  Shared& s_;
  const IndexedGroup& g_;
  SubgroupLattice& L_;
  TaskResult& r_;
  std::vector<std::uint32_t> elems_;
  std::vector<std::uint32_t> second_reps_;
};

}  // namespace

Outcome run(const IndexedGroup& g, const Options& options) {
  Outcome out;
  const auto start = Clock::now();
  if (g.order() == 1) {
    out.complete = true;
    out.smallest = 0;
    return out;
  }
  std::vector<std::uint32_t> tasks(g.class_reps().begin(), g.class_reps().end());
  std::sort(tasks.begin(), tasks.end(), [&](auto a, auto b) { return g.rank(a) < g.rank(b); });

  Shared shared{g, options, start};
  std::vector<TaskResult> results(tasks.size());
  const bool serial = static_cast<bool>(options.on_found) || options.target_size.has_value() || options.threads == 1;
  const int threads = serial ? 1 : (options.threads > 0 ? options.threads : omp_get_max_threads());
  std::vector<std::unique_ptr<SubgroupLattice>> lattices(threads);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (shared.stop) {
      results[t].complete = false;
      continue;
    }
    auto& lattice = lattices[omp_get_thread_num()];
    if (!lattice) lattice = std::make_unique<SubgroupLattice>(g);
    Dfs dfs(shared, *lattice, results[t]);
    dfs.run_from(tasks[t]);
  }

  out.complete = true;
  for (const auto& r : results) {
    if (r.best > out.best) {
      out.best = r.best;
      out.witness = r.witness;
    }
    if (r.smallest >= 0 && (out.smallest < 0 || r.smallest < out.smallest)) out.smallest = r.smallest;
    out.complete &= r.complete;
    out.truncated |= r.truncated;
    out.stats.nodes += r.nodes;
    out.stats.prunes += r.prunes;
  }
  if (shared.out_of_budget) out.complete = false;
  for (const auto& l : lattices)
    if (l) out.stats.subgroups += l->subgroup_count();
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace search

namespace {

constexpr std::uint64_t kRandomAttemptsPerSize = 64;

GeneratingTuple to_tuple(const IndexedGroup& g, const std::vector<std::uint32_t>& idx) {
  GeneratingTuple t{g.spec(), {}};
  for (auto i : idx) t.items.push_back(g.element(i));
  return t;
}

bool satisfies(const GroupSpec& g, const Element& e, const WitnessConstraints& c) {
  return !c.involutions_only || element_order(g, e) == 2;
}

// Randomized search for groups too large to index.
WitnessResult random_witness(const GroupSpec& g, int k, const WitnessConstraints& c, const SearchLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  WitnessResult out;
  out.indeterminate = true;
  std::mt19937_64 rng(limits.seed);
  for (std::uint64_t attempt = 0; attempt < limits.node_budget; ++attempt) {
    if (std::chrono::duration<double>(Clock::now() - start).count() > limits.time_budget_seconds) break;
    ++out.stats.nodes;
    GeneratingTuple t{g, {}};
    while (static_cast<int>(t.items.size()) < k) {
      Element e = random_element(g, rng);
      if (satisfies(g, e, c)) t.items.push_back(std::move(e));
    }
    if (is_redundant(t).verdict == RedundancyVerdict::IrredundantGenerating) {
      out.tuple = std::move(t);
      out.indeterminate = false;
      break;
    }
  }
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace

RankSearchResult max_irredundant_size(const GroupSpec& g, const SearchLimits& limits) {
  if (!g.is_finite()) throw std::invalid_argument("m(Z) is infinite; only witnesses are produced (see z_witness)");
  RankSearchResult result{g, 0, GeneratingTuple{g, {}}, false, {}};
  if (*group_order(g) <= IndexedGroup::kMaxOrder) {
    auto ig = indexed(g);
    search::Options opt;
    opt.max_size = limits.max_size;
    opt.node_budget = limits.node_budget;
    opt.time_budget_seconds = limits.time_budget_seconds;
    opt.threads = limits.threads;
    auto o = search::run(*ig, opt);
    result.computed = o.best;
    result.witness = to_tuple(*ig, o.witness);
    result.exhaustive = o.complete && !o.truncated;
    result.stats = o.stats;
    return result;
  }
  // Lower-bound mode: grow k while random witnesses keep turning up. Groups
  // this large are not cyclic in the supported families, so k starts at 2.
  const auto start = std::chrono::steady_clock::now();
  SearchLimits per_size = limits;
  per_size.node_budget = std::min<std::uint64_t>(limits.node_budget, kRandomAttemptsPerSize);
  for (int k = 2; k <= limits.max_size; ++k) {
    per_size.time_budget_seconds =
        limits.time_budget_seconds - std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (per_size.time_budget_seconds <= 0) break;
    per_size.seed = limits.seed + static_cast<std::uint64_t>(k);
    auto w = random_witness(g, k, {}, per_size);
    result.stats.nodes += w.stats.nodes;
    if (!w.tuple) break;
    result.computed = k;
    result.witness = *w.tuple;
  }
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

WitnessResult irredundant_witness(const GroupSpec& g, int k, const WitnessConstraints& constraints,
                                  const SearchLimits& limits) {
  if (k < 0) throw std::invalid_argument("witness size must be nonnegative");
  WitnessResult out;
  if (!g.is_finite()) {
    if (!constraints.involutions_only && k >= 1) out.tuple = z_witness(k);
    return out;
  }
  if (*group_order(g) > IndexedGroup::kMaxOrder) return random_witness(g, k, constraints, limits);
  auto ig = indexed(g);
  if (k == 0) {
    if (ig->order() == 1) out.tuple = GeneratingTuple{g, {}};
    return out;
  }
  search::Options opt;
  opt.max_size = k;
  opt.target_size = k;
  opt.node_budget = limits.node_budget;
  opt.time_budget_seconds = limits.time_budget_seconds;
  if (constraints.involutions_only) {
    opt.allowed.assign(ig->order(), false);
    for (std::uint32_t x = 0; x < ig->order(); ++x) opt.allowed[x] = ig->element_order(x) == 2;
  }
  auto o = search::run(*ig, opt);
  out.stats = o.stats;
  if (o.best == k && !o.witness.empty()) {
    out.tuple = to_tuple(*ig, o.witness);
  } else {
    out.indeterminate = !o.complete;
  }
  return out;
}

bool involution_pair_is_proper(const GroupSpec& g, const Element& a, const Element& b) {
  const auto* psl = std::get_if<ProjectiveSpecialLinear>(&g.kind);
  if (!psl || psl->n != 2 || psl->p < 5) throw std::invalid_argument("involution pairs are checked in PSL(2,p), p >= 5");
  if (element_order(g, a) != 2 || element_order(g, b) != 2) throw std::invalid_argument("inputs must be involutions");
  const std::uint64_t order = *closure_order(GeneratingTuple::make(g, {a, b}), *group_order(g));
  const std::uint64_t dihedral = 2 * element_order(g, multiply(g, a, b));
  return order == dihedral && order <= 2 * (psl->p + 1) && order < *group_order(g);
}

}  // namespace irrgen
