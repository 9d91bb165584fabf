#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "irrgen/generation.hpp"
#include "irrgen/nielsen.hpp"
#include "irrgen/product.hpp"

using namespace irrgen;

namespace {

NielsenMove random_move(std::size_t n, std::mt19937_64& rng) {
  const auto moves = all_moves(n);
  return moves[rng() % moves.size()];
}

std::vector<std::uint32_t> random_generating(const IndexedGroup& g, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::uint32_t> t(n);
    for (auto& x : t) x = static_cast<std::uint32_t>(rng() % g.order());
    if (g.generates(t)) return t;
  }
}

// Plain BFS over raw tuples, no canonicalization and no early stop.
// Returns the orbit and whether it holds a redundant tuple.
std::pair<std::set<std::vector<std::uint32_t>>, bool> raw_orbit(const IndexedGroup& g, const std::vector<std::uint32_t>& start) {
  std::set<std::vector<std::uint32_t>> seen = {start};
  std::vector<std::vector<std::uint32_t>> queue = {start};
  const auto moves = all_moves(start.size());
  bool redundant = false;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto t = queue[i];
    for (std::size_t drop = 0; drop < t.size(); ++drop) {
      auto rest = t;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
      redundant |= g.generates(rest);
    }
    for (const auto& m : moves) {
      auto u = t;
      apply_move(g, u, m);
      if (seen.insert(u).second) queue.push_back(u);
    }
  }
  return {seen, redundant};
}

}  // namespace

TEST_SUITE("nielsen") {
  TEST_CASE("move basics") {
    const auto g = GroupSpec::psl(2, 5);
    const auto ig = indexed(g);
    const GeneratingTuple t{g, {ig->element(3), ig->element(17), ig->element(40)}};
    CHECK(apply_move(apply_move(t, NielsenMove::invert(1)), NielsenMove::invert(1)).items == t.items);
    const auto s = apply_move(t, NielsenMove::swap(0, 1));
    CHECK(s.items == std::vector<Element>{t.items[1], t.items[0], t.items[2]});
    const auto l = apply_move(t, NielsenMove::left(0, 2, -1));
    CHECK(l.items[0] == multiply(g, invert(g, t.items[2]), t.items[0]));
    const auto r = apply_move(t, NielsenMove::right(2, 0, 1));
    CHECK(r.items[2] == multiply(g, t.items[2], t.items[0]));
    CHECK_THROWS_AS(apply_move(t, NielsenMove::swap(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(t, NielsenMove::invert(3)), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(t, NielsenMove::left(0, 1, 2)), std::invalid_argument);
    CHECK(all_moves(3).size() == 30);
  }

  TEST_CASE("every move is undone by its inverse") {
    for (const auto& g : {GroupSpec::psl(2, 7), GroupSpec::sl(2, 5), GroupSpec::cyclic_power(5, 2)}) {
      std::mt19937_64 rng(1);
      for (int i = 0; i < 300; ++i) {
        GeneratingTuple t{g, {}};
        for (int k = 0; k < 2 + i % 3; ++k) t.items.push_back(random_element(g, rng));
        const auto m = random_move(t.size(), rng);
        CHECK(apply_move(apply_move(t, m), m.inverse()).items == t.items);
      }
    }
  }

  TEST_CASE("moves preserve generation") {
    const auto g = GroupSpec::psl(2, 5);
    const auto ig = indexed(g);
    std::mt19937_64 rng(2);
    int failures = 0;
    for (int path = 0; path < 10000; ++path) {
      auto t = random_generating(*ig, 3, rng);
      for (int step = 0; step < 8; ++step) apply_move(*ig, t, random_move(3, rng));
      failures += !ig->generates(t);
    }
    CHECK(failures == 0);
  }

  TEST_CASE("index moves match element moves") {
    const auto g = GroupSpec::sl(2, 7);
    const auto ig = indexed(g);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
      std::vector<std::uint32_t> t = {static_cast<std::uint32_t>(rng() % ig->order()), static_cast<std::uint32_t>(rng() % ig->order())};
      GeneratingTuple e{g, {ig->element(t[0]), ig->element(t[1])}};
      const auto m = random_move(2, rng);
      apply_move(*ig, t, m);
      e = apply_move(e, m);
      CHECK(ig->element(t[0]) == e.items[0]);
      CHECK(ig->element(t[1]) == e.items[1]);
    }
  }

  TEST_CASE("canonical form equals the brute-force minimum") {
    for (const auto& g : {GroupSpec::psl(2, 5), GroupSpec::sl(2, 5), GroupSpec::psl(2, 7)}) {
      const auto ig = indexed(g);
      const TupleCanonicalizer canon(*ig);
      std::mt19937_64 rng(4);
      for (int i = 0; i < 500; ++i) {
        std::vector<std::uint32_t> t(1 + i % 3);
        for (auto& x : t) x = static_cast<std::uint32_t>(rng() % ig->order());
        const auto c = canon.canonical(t);
        CHECK(c == canonical_brute_force(*ig, t));
        CHECK(canon.canonical(c) == c);
      }
    }
  }

  TEST_CASE("canonicalization commutes with moves") {
    const auto ig = indexed(GroupSpec::psl(2, 7));
    const TupleCanonicalizer canon(*ig);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      std::vector<std::uint32_t> t(3);
      for (auto& x : t) x = static_cast<std::uint32_t>(rng() % ig->order());
      const auto c = static_cast<std::uint32_t>(rng() % ig->order());
      const auto m = random_move(3, rng);
      auto conj_then_move = t;
      for (auto& x : conj_then_move) x = ig->conj(c, x);
      apply_move(*ig, conj_then_move, m);
      auto move_then_conj = t;
      apply_move(*ig, move_then_conj, m);
      for (auto& x : move_then_conj) x = ig->conj(c, x);
      CHECK(canon.canonical(conj_then_move) == canon.canonical(move_then_conj));
    }
  }

  TEST_CASE("canonical orbits are the conjugacy classes of raw orbits in PSL(2,5)") {
    const auto g = GroupSpec::psl(2, 5);
    const auto ig = indexed(g);
    const TupleCanonicalizer canon(*ig);
    std::set<std::vector<std::uint32_t>> done;
    int orbits = 0;
    for (std::uint32_t a = 0; a < 60; ++a)
      for (std::uint32_t b = 0; b < 60; ++b) {
        const std::vector<std::uint32_t> t = {a, b};
        if (done.count(t) || !ig->generates(t)) continue;
        const auto [raw, raw_redundant] = raw_orbit(*ig, t);
        done.insert(raw.begin(), raw.end());
        ++orbits;
        std::set<std::vector<std::uint32_t>> classes;
        for (const auto& u : raw) classes.insert(canon.canonical(u));
        OrbitLimits exhaustive;
        const auto report = is_nielsen_redundant(GeneratingTuple{g, {ig->element(a), ig->element(b)}}, exhaustive);
        CHECK((report.verdict == NielsenVerdict::NielsenRedundant) == raw_redundant);
        if (report.verdict == NielsenVerdict::NielsenIrredundant) CHECK(report.visited == classes.size());
        // Generating tuples have centralizer Z(G) = 1, so classes have 60 members.
        CHECK(raw.size() == 60 * classes.size());
      }
    CHECK(orbits > 0);
  }

  TEST_CASE("orbit search verdicts") {
    const auto g = GroupSpec::psl(2, 5);
    const auto ig = indexed(g);
    const auto s = ig->element(ig->generators()[0]), t = ig->element(ig->generators()[1]);

    const auto with_identity = is_nielsen_redundant(GeneratingTuple{g, {s, identity(g), t}});
    CHECK(with_identity.verdict == NielsenVerdict::NielsenRedundant);
    CHECK(with_identity.path.empty());

    // A pair is redundant exactly when one entry generates, impossible in A5.
    const auto pair = is_nielsen_redundant(GeneratingTuple{g, {s, multiply(g, s, t)}});
    CHECK(pair.verdict == NielsenVerdict::NielsenIrredundant);

    CHECK_THROWS_AS(is_nielsen_redundant(GeneratingTuple{g, {s}}), std::invalid_argument);

    OrbitLimits tiny;
    tiny.max_states = 3;
    CHECK(is_nielsen_redundant(GeneratingTuple{g, {s, t}}, tiny).verdict == NielsenVerdict::Unknown);
  }

  TEST_CASE("redundant paths replay to redundant tuples") {
    const auto g = GroupSpec::psl(2, 5);
    const auto ig = indexed(g);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 200; ++i) {
      const auto idx = random_generating(*ig, 3, rng);
      GeneratingTuple t{g, {}};
      for (auto x : idx) t.items.push_back(ig->element(x));
      const auto r = is_nielsen_redundant(t);
      REQUIRE(r.verdict == NielsenVerdict::NielsenRedundant);
      GeneratingTuple x = t;
      for (const auto& m : r.path) x = apply_move(x, m);
      CHECK(is_redundant(x).verdict == RedundancyVerdict::RedundantGenerating);
      CHECK(r.redundant_tuple->items == x.items);
    }
  }

  TEST_CASE("mu") {
    const auto klein = mu_rank(GroupSpec::cyclic_power(2, 2));
    CHECK(klein.mu.computed == 2);
    CHECK(klein.mu.exhaustive);

    const auto a5 = mu_rank(GroupSpec::psl(2, 5));
    CHECK(a5.mu.computed == 2);
    CHECK(a5.mu.exhaustive);
    CHECK(a5.d <= a5.mu.computed);
    CHECK(a5.mu.computed <= a5.m);

    // (Z/2)^3: every generating triple is a basis, so mu = m = 3.
    const auto e8 = mu_rank(GroupSpec::cyclic_power(2, 3));
    CHECK(e8.mu.computed == 3);
    CHECK(e8.m == 3);
  }

  TEST_CASE("mu of Z/6 reaches the redundant pair") {
    // {2, 3} is irredundant in Z/6, but (2, 3) -> (2, 3 - 2) = (2, 1) is redundant.
    const auto r = mu_rank(GroupSpec::cyclic_power(6, 1));
    CHECK(r.m == 2);
    CHECK(r.d == 1);
    CHECK(r.mu.computed == 1);
    CHECK(r.mu.exhaustive);
  }

  TEST_CASE("orbit statistics") {
    const auto a5 = orbit_statistics(GroupSpec::psl(2, 5), 3);
    CHECK(a5.orbit_count() > 0);
    CHECK(a5.orbits_with_redundant == a5.orbit_count());
    CHECK(a5.redundant_fraction() == "1");

    const auto klein = orbit_statistics(GroupSpec::cyclic_power(2, 2), 2);
    // Ordered pairs of distinct nonzero vectors.
    std::uint64_t pairs = 0;
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b) pairs += a != b;
    CHECK(klein.generating_tuples == pairs);
    CHECK(klein.orbit_sizes == std::vector<std::uint64_t>{6});
    CHECK(klein.redundant_fraction() == "0");

    const auto empty = orbit_statistics(GroupSpec::psl(2, 5), 0);
    CHECK(empty.orbit_count() == 0);
    CHECK(empty.generating_tuples == 0);

    CHECK_THROWS_AS(orbit_statistics(GroupSpec::sl(2, 11), 2), std::invalid_argument);

    // Generating pairs of A5 number 60^2 * 19/30 = 2280.
    const auto a5pairs = orbit_statistics(GroupSpec::psl(2, 5), 2);
    std::uint64_t total = 0;
    for (auto s : a5pairs.orbit_sizes) total += s;
    CHECK(total == a5pairs.generating_tuples);
    CHECK(a5pairs.generating_tuples == 2280);
  }
}
