#include "irrgen/nielsen.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "irrgen/product.hpp"

namespace irrgen {

NielsenMove NielsenMove::inverse() const {
  switch (kind) {
    case MoveKind::LeftMult:
    case MoveKind::RightMult: return {kind, i, j, -sign};
    case MoveKind::Invert:
    case MoveKind::Swap: return *this;
  }
  return *this;
}

std::string NielsenMove::to_string() const {
  const char* s = sign > 0 ? "+" : "-";
  switch (kind) {
    case MoveKind::LeftMult: return "L(" + std::to_string(i) + "," + std::to_string(j) + "," + s + ")";
    case MoveKind::RightMult: return "R(" + std::to_string(i) + "," + std::to_string(j) + "," + s + ")";
    case MoveKind::Invert: return "I(" + std::to_string(i) + ")";
    case MoveKind::Swap: return "S(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "?";
}

void NielsenMove::validate(std::size_t n) const {
  if (i >= n) throw std::invalid_argument("move index out of range: " + to_string());
  if (kind == MoveKind::Invert) return;
  if (j >= n || i == j) throw std::invalid_argument("invalid second index: " + to_string());
  if (sign != 1 && sign != -1) throw std::invalid_argument("move sign must be +1 or -1");
}

std::vector<NielsenMove> all_moves(std::size_t n) {
  std::vector<NielsenMove> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) {
        out.push_back(NielsenMove::left(i, j, s));
        out.push_back(NielsenMove::right(i, j, s));
      }
    }
  for (std::size_t i = 0; i < n; ++i) out.push_back(NielsenMove::invert(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(NielsenMove::swap(i, j));
  return out;
}

GeneratingTuple apply_move(const GeneratingTuple& t, const NielsenMove& m) {
  m.validate(t.size());
  GeneratingTuple out = t;
  auto& x = out.items;
  const auto& g = t.group;
  switch (m.kind) {
    case MoveKind::LeftMult: x[m.i] = multiply(g, power(g, t.items[m.j], m.sign), t.items[m.i]); break;
    case MoveKind::RightMult: x[m.i] = multiply(g, t.items[m.i], power(g, t.items[m.j], m.sign)); break;
    case MoveKind::Invert: x[m.i] = invert(g, t.items[m.i]); break;
    case MoveKind::Swap: std::swap(x[m.i], x[m.j]); break;
  }
  return out;
}

void apply_move(const IndexedGroup& g, std::vector<std::uint32_t>& t, const NielsenMove& m) {
  switch (m.kind) {
    case MoveKind::LeftMult: t[m.i] = g.mul(m.sign > 0 ? t[m.j] : g.inv(t[m.j]), t[m.i]); break;
    case MoveKind::RightMult: t[m.i] = g.mul(t[m.i], m.sign > 0 ? t[m.j] : g.inv(t[m.j])); break;
    case MoveKind::Invert: t[m.i] = g.inv(t[m.i]); break;
    case MoveKind::Swap: std::swap(t[m.i], t[m.j]); break;
  }
}

std::vector<std::uint32_t> TupleCanonicalizer::canonical(const std::vector<std::uint32_t>& t) const {
  if (t.empty()) return t;
  const std::uint32_t tr = g_.transporter(t[0]);
  std::vector<std::uint32_t> best, cand(t.size());
  for (auto z : g_.rep_centralizer(g_.class_of(t[0]))) {
    const std::uint32_t c = g_.mul(z, tr);
    cand[0] = g_.conj(c, t[0]);
    bool smaller = best.empty();
    bool decided = smaller;
    for (std::size_t k = 1; k < t.size(); ++k) {
      cand[k] = g_.conj(c, t[k]);
      if (!decided && cand[k] != best[k]) {
        decided = true;
        smaller = cand[k] < best[k];
        if (!smaller) break;
      }
    }
    if (smaller) best = cand;
  }
  return best;
}

std::vector<std::uint32_t> canonical_brute_force(const IndexedGroup& g, const std::vector<std::uint32_t>& t) {
  std::vector<std::uint32_t> best = t, cand(t.size());
  for (std::uint32_t c = 0; c < g.order(); ++c) {
    for (std::size_t k = 0; k < t.size(); ++k) cand[k] = g.conj(c, t[k]);
    best = std::min(best, cand);
  }
  return best;
}

bool RedundancyTester::generates(const std::vector<std::uint32_t>& t) {
  SubgroupLattice::Id h = SubgroupLattice::trivial();
  for (auto x : t) h = lattice_.join(h, x);
  return lattice_.is_whole(h);
}

bool RedundancyTester::redundant(const std::vector<std::uint32_t>& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] == IndexedGroup::identity()) return true;
    for (std::size_t j = i + 1; j < n; ++j)
      if (t[i] == t[j] || t[i] == g_.inv(t[j])) return true;
  }
  // prefix[i] = <t_0..t_{i-1}>, then extend past the gap.
  std::vector<SubgroupLattice::Id> prefix(n + 1, SubgroupLattice::trivial());
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = lattice_.join(prefix[i], t[i]);
  for (std::size_t i = 0; i < n; ++i) {
    SubgroupLattice::Id h = prefix[i];
    for (std::size_t k = i + 1; k < n; ++k) h = lattice_.join(h, t[k]);
    if (lattice_.is_whole(h)) return true;
  }
  return false;
}

std::string to_string(NielsenVerdict v) {
  switch (v) {
    case NielsenVerdict::NielsenRedundant: return "NielsenRedundant";
    case NielsenVerdict::NielsenIrredundant: return "NielsenIrredundant";
    case NielsenVerdict::Unknown: return "Unknown";
  }
  return "unknown";
}

namespace {

std::string state_key(const std::vector<std::uint32_t>& t) {
  std::string key(t.size() * sizeof(std::uint32_t), '\0');
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t b = 0; b < 4; ++b) key[4 * k + b] = static_cast<char>((t[k] >> (8 * b)) & 0xff);
  return key;
}

struct BfsResult {
  NielsenVerdict verdict = NielsenVerdict::Unknown;
  std::uint64_t visited = 0;
  std::uint64_t frontier_peak = 0;
  std::vector<NielsenMove> path;
  std::vector<std::string> keys;  // every state discovered
};

// Breadth-first search over the (canonicalized) orbit of start. States found
// in known_redundant count as redundant.
BfsResult orbit_bfs(const IndexedGroup& g, RedundancyTester& tester, const std::vector<std::uint32_t>& start,
                    const OrbitLimits& limits, const std::unordered_set<std::string>* known_redundant) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const TupleCanonicalizer canon(g);
  const std::size_t n = start.size();
  const auto moves = all_moves(n);

  std::vector<std::uint32_t> states;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint16_t> via;
  std::unordered_map<std::string, std::uint32_t> seen;
  BfsResult r;

  auto is_redundant_state = [&](const std::vector<std::uint32_t>& s, const std::string& key) {
    return (known_redundant && known_redundant->count(key)) || tester.redundant(s);
  };
  auto finish_path = [&](std::uint32_t id) {
    while (id != 0) {
      r.path.push_back(moves[via[id]]);
      id = parent[id];
    }
    std::reverse(r.path.begin(), r.path.end());
  };

  std::vector<std::uint32_t> s = limits.canonicalize ? canon.canonical(start) : start;
  std::string key = state_key(s);
  seen.emplace(key, 0);
  states.insert(states.end(), s.begin(), s.end());
  parent.push_back(0);
  via.push_back(0);
  r.keys.push_back(key);
  r.visited = 1;
  if (is_redundant_state(s, key)) {
    r.verdict = NielsenVerdict::NielsenRedundant;
    return r;
  }

  std::size_t level_begin = 0, level_end = 1;
  r.frontier_peak = 1;
  while (level_begin < level_end) {
    for (std::size_t id = level_begin; id < level_end; ++id) {
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        std::vector<std::uint32_t> next(states.begin() + static_cast<std::ptrdiff_t>(id * n),
                                        states.begin() + static_cast<std::ptrdiff_t>((id + 1) * n));
        apply_move(g, next, moves[mi]);
        if (limits.canonicalize) canon.canonicalize(next);
        key = state_key(next);
        if (seen.count(key)) continue;
        const auto nid = static_cast<std::uint32_t>(parent.size());
        seen.emplace(key, nid);
        states.insert(states.end(), next.begin(), next.end());
        parent.push_back(static_cast<std::uint32_t>(id));
        via.push_back(static_cast<std::uint16_t>(mi));
        r.keys.push_back(key);
        ++r.visited;
        if (is_redundant_state(next, key)) {
          r.verdict = NielsenVerdict::NielsenRedundant;
          finish_path(nid);
          return r;
        }
        if (r.visited >= limits.max_states) return r;
      }
      if ((id & 255) == 0 &&
          std::chrono::duration<double>(Clock::now() - t0).count() > limits.time_budget_seconds)
        return r;
    }
    level_begin = level_end;
    level_end = parent.size();
    r.frontier_peak = std::max<std::uint64_t>(r.frontier_peak, level_end - level_begin);
  }
  r.verdict = NielsenVerdict::NielsenIrredundant;
  return r;
}

std::vector<std::uint32_t> to_indices(const IndexedGroup& g, const GeneratingTuple& t) {
  std::vector<std::uint32_t> idx;
  for (const auto& e : t.items) idx.push_back(g.index_of(e));
  return idx;
}

}  // namespace

OrbitReport is_nielsen_redundant(const GeneratingTuple& t, const OrbitLimits& limits) {
  if (!t.group.is_finite()) throw std::invalid_argument("Nielsen orbits are explored in finite groups only");
  auto ig = indexed(t.group);
  RedundancyTester tester(*ig);
  const auto idx = to_indices(*ig, t);
  if (!tester.generates(idx)) throw std::invalid_argument("tuple does not generate the group");
  auto r = orbit_bfs(*ig, tester, idx, limits, nullptr);
  OrbitReport report{t, r.visited, r.verdict, std::move(r.path), std::nullopt, r.frontier_peak};
  if (report.verdict == NielsenVerdict::NielsenRedundant) {
    GeneratingTuple x = t;
    for (const auto& m : report.path) x = apply_move(x, m);
    report.redundant_tuple = std::move(x);
  }
  return report;
}

MuRankResult mu_rank(const GroupSpec& g, const SearchLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  if (!g.is_finite()) throw std::invalid_argument("mu is computed for finite groups only");
  auto ig = indexed(g);
  MuRankResult out{RankSearchResult{g, 0, GeneratingTuple{g, {}}, false, {}}, 0, 0, 0, 0};

  std::vector<std::vector<std::vector<std::uint32_t>>> by_size(static_cast<std::size_t>(limits.max_size) + 1);
  search::Options opt;
  opt.max_size = limits.max_size;
  opt.node_budget = limits.node_budget;
  opt.time_budget_seconds = limits.time_budget_seconds;
  opt.on_found = [&](const std::vector<std::uint32_t>& set) {
    by_size[set.size()].push_back(set);
    return true;
  };
  const auto found = search::run(*ig, opt);
  out.m = found.best;
  out.d = std::max(found.smallest, 0);
  out.mu.stats = found.stats;
  bool exact = found.complete && !found.truncated;

  const TupleCanonicalizer canon(*ig);
  RedundancyTester tester(*ig);
  std::unordered_set<std::string> known_redundant;
  int mu = out.d;
  std::vector<std::uint32_t> witness = by_size[static_cast<std::size_t>(out.d)].empty()
                                           ? std::vector<std::uint32_t>{}
                                           : by_size[static_cast<std::size_t>(out.d)].front();
  for (int k = out.m; k > out.d; --k) {
    bool found_irredundant = false;
    for (const auto& set : by_size[static_cast<std::size_t>(k)]) {
      if (known_redundant.count(state_key(canon.canonical(set)))) continue;
      OrbitLimits ol;
      ol.max_states = limits.node_budget;
      ol.time_budget_seconds =
          limits.time_budget_seconds - std::chrono::duration<double>(Clock::now() - t0).count();
      auto r = orbit_bfs(*ig, tester, set, ol, &known_redundant);
      ++out.orbits_explored;
      out.mu.stats.nodes += r.visited;
      if (r.verdict == NielsenVerdict::NielsenRedundant) {
        known_redundant.insert(r.keys.begin(), r.keys.end());
      } else if (r.verdict == NielsenVerdict::Unknown) {
        ++out.unknown_orbits;
        exact = false;
      } else {
        found_irredundant = true;
        witness = set;
        break;
      }
    }
    if (found_irredundant) {
      mu = k;
      break;
    }
  }
  out.mu.computed = mu;
  for (auto x : witness) out.mu.witness.items.push_back(ig->element(x));
  out.mu.exhaustive = exact;
  out.mu.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

std::string OrbitStatistics::redundant_fraction() const {
  const std::uint64_t den = orbit_sizes.size();
  if (den == 0) return "0";
  const std::uint64_t g = std::gcd(orbits_with_redundant, den);
  if (den / g == 1) return std::to_string(orbits_with_redundant / g);
  return std::to_string(orbits_with_redundant / g) + "/" + std::to_string(den / g);
}

OrbitStatistics orbit_statistics(const GroupSpec& g, int n) {
  if (n < 0) throw std::invalid_argument("tuple length must be nonnegative");
  if (!g.is_finite() || *group_order(g) > 1000) throw std::invalid_argument("orbit statistics need a group of order <= 1000");
  OrbitStatistics out;
  out.n = n;
  if (n == 0) return out;
  auto ig = indexed(g);
  const std::uint32_t order = ig->order();
  double work = ig->class_count();
  for (int k = 1; k < n; ++k) work *= order;
  if (work > 5e7) throw std::invalid_argument("orbit statistics: too many tuples to enumerate");

  const TupleCanonicalizer canon(*ig);
  RedundancyTester tester(*ig);
  std::unordered_map<std::string, std::uint32_t> id_of;
  std::vector<std::vector<std::uint32_t>> states;

  std::vector<std::uint32_t> t(static_cast<std::size_t>(n), 0);
  for (auto rep : ig->class_reps()) {
    t.assign(static_cast<std::size_t>(n), 0);
    t[0] = rep;
    while (true) {
      if (canon.canonical(t) == t && tester.generates(t)) {
        id_of.emplace(state_key(t), static_cast<std::uint32_t>(states.size()));
        states.push_back(t);
      }
      std::size_t k = 1;
      while (k < t.size() && ++t[k] == order) t[k++] = 0;
      if (k >= t.size()) break;
    }
  }

  std::vector<std::uint32_t> parent(states.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto moves = all_moves(static_cast<std::size_t>(n));
  for (std::uint32_t s = 0; s < states.size(); ++s)
    for (const auto& m : moves) {
      auto next = states[s];
      apply_move(*ig, next, m);
      canon.canonicalize(next);
      const auto a = find(s), b = find(id_of.at(state_key(next)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::uint32_t center = 0;
  for (std::uint32_t x = 0; x < order; ++x)
    if (ig->rep_centralizer(ig->class_of(x)).size() == order) ++center;
  const std::uint64_t class_size = order / center;

  std::unordered_map<std::uint32_t, std::pair<std::uint64_t, bool>> orbits;
  for (std::uint32_t s = 0; s < states.size(); ++s) {
    auto& o = orbits[find(s)];
    ++o.first;
    if (!o.second && tester.redundant(states[s])) o.second = true;
  }
  for (const auto& [root, o] : orbits) {
    out.orbit_sizes.push_back(o.first * class_size);
    if (o.second) ++out.orbits_with_redundant;
  }
  std::sort(out.orbit_sizes.rbegin(), out.orbit_sizes.rend());
  out.generating_tuples = states.size() * class_size;
  return out;
}

}  // namespace irrgen
