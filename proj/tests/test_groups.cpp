#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "irrgen/closure.hpp"
#include "irrgen/generation.hpp"
#include "irrgen/indexed_group.hpp"
#include "irrgen/product.hpp"

using namespace irrgen;

namespace {

Element S(std::uint32_t p) { return sl_element(p, 2, {0, -1, 1, 0}); }
Element T(std::uint32_t p) { return sl_element(p, 2, {1, 1, 0, 1}); }

std::uint64_t formula_sl2(std::uint64_t p) { return p * (p * p - 1); }

std::vector<std::uint32_t> indices(const IndexedGroup& g, const GeneratingTuple& t) {
  std::vector<std::uint32_t> out;
  for (const auto& e : t.items) out.push_back(g.index_of(e));
  return out;
}

Element pair_element(const Element& a, const Element& b) { return Element{ProductElement{{a, b}}}; }

}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("group orders") {
    CHECK(*group_order(GroupSpec::sl(2, 5)) == 120);
    CHECK(*group_order(GroupSpec::psl(2, 5)) == 60);
    CHECK(*group_order(GroupSpec::psl(2, 7)) == 168);
    CHECK(*group_order(GroupSpec::sl(3, 2)) == 168);
    CHECK(*group_order(GroupSpec::sl(3, 3)) == 5616);
    CHECK(*group_order(GroupSpec::psl(3, 7)) == 1876896);
    CHECK(*group_order(GroupSpec::cyclic_power(5, 3)) == 125);
    CHECK(*group_order(GroupSpec::product({GroupSpec::psl(2, 5), GroupSpec::psl(2, 7)})) == 10080);
    CHECK(!group_order(GroupSpec::integers()));
    CHECK(describe(GroupSpec::product({GroupSpec::psl(2, 5), GroupSpec::cyclic_power(2, 2)})) == "prod(psl2:5,cyclic:2^2)");
  }

  TEST_CASE("membership is validated") {
    const auto g = GroupSpec::sl(2, 5);
    CHECK_THROWS_AS(GeneratingTuple::make(g, {Element{FpMatrix::from_rows(2, 5, {2, 0, 0, 1})}}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratingTuple::make(g, {Element{FpMatrix::identity(2, 7)}}), std::invalid_argument);
    CHECK_NOTHROW(GeneratingTuple::make(g, {S(5), T(5)}));
  }

  TEST_CASE("closure examples") {
    CHECK(closure(GeneratingTuple{GroupSpec::psl(2, 5), {}}, 100).order == 1);
    CHECK(closure(GeneratingTuple::make(GroupSpec::sl(2, 5), {S(5), T(5)}), 1000).order == 120);
    CHECK(closure(GeneratingTuple::make(GroupSpec::sl(2, 7), {T(7)}), 1000).order == 7);
    CHECK_THROWS_AS(closure(GeneratingTuple::make(GroupSpec::sl(2, 7), {S(7), T(7)}), 100), CapExceeded);
  }

  TEST_CASE("standard pair generates SL(2,p)") {
    for (std::uint32_t p : {3u, 5u, 7u, 13u}) {
      const auto c = closure(GeneratingTuple::make(GroupSpec::sl(2, p), {S(p), T(p)}), formula_sl2(p));
      CHECK(c.order == formula_sl2(p));
      // Closed under products and inverses.
      std::set<std::string> enc;
      for (const auto& e : c.elements) enc.insert(encode(GroupSpec::sl(2, p), e));
      CHECK(enc.size() == c.order);
    }
  }

  TEST_CASE("closure orders divide the group order") {
    const auto g = GroupSpec::sl(2, 7);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      GeneratingTuple t{g, {random_element(g, rng)}};
      if (i % 2) t.items.push_back(random_element(g, rng));
      CHECK(formula_sl2(7) % closure(t, formula_sl2(7)).order == 0);
    }
  }

  TEST_CASE("indexed group matches the element closure") {
    for (auto g : {GroupSpec::sl(2, 5), GroupSpec::psl(2, 7), GroupSpec::sl(3, 2), GroupSpec::cyclic_power(3, 2)}) {
      const auto ig = IndexedGroup::build(g);
      CHECK(ig->order() == *group_order(g));
      CHECK(ig->generates(ig->generators()));
      std::mt19937_64 rng(12);
      for (int i = 0; i < 300; ++i) {
        const std::uint32_t a = rng() % ig->order(), b = rng() % ig->order();
        CHECK(ig->element(ig->mul(a, b)) == multiply(g, ig->element(a), ig->element(b)));
        CHECK(ig->mul(a, ig->inv(a)) == IndexedGroup::identity());
        CHECK(ig->element_order(a) == element_order(g, ig->element(a)));
        const auto t = GeneratingTuple{g, {ig->element(a), ig->element(b)}};
        const std::vector<std::uint32_t> ab = {a, b};
        CHECK(ig->closure(ab).size == closure(t, ig->order()).order);
        CHECK(ig->closure_parallel(ab).members == ig->closure(ab).members);
      }
    }
  }

  TEST_CASE("conjugacy classes") {
    // A5 has 5 classes, SL(2,5) has 9, PSL(2,7) has 6.
    CHECK(IndexedGroup::build(GroupSpec::psl(2, 5))->class_count() == 5);
    CHECK(IndexedGroup::build(GroupSpec::sl(2, 5))->class_count() == 9);
    CHECK(IndexedGroup::build(GroupSpec::psl(2, 7))->class_count() == 6);
    const auto g = IndexedGroup::build(GroupSpec::psl(2, 7));
    for (std::uint32_t a = 0; a < g->order(); ++a) CHECK(g->conj(g->transporter(a), a) == g->class_rep(g->class_of(a)));
  }

  TEST_CASE("generation examples") {
    CHECK(is_generating(GeneratingTuple{GroupSpec::integers(), {Element{std::int64_t{6}}, Element{std::int64_t{10}}, Element{std::int64_t{15}}}}));
    CHECK_FALSE(is_generating(GeneratingTuple{GroupSpec::integers(), {Element{std::int64_t{6}}, Element{std::int64_t{10}}}}));
    CHECK(is_generating(GeneratingTuple::make(GroupSpec::sl(2, 5), {S(5), T(5)})));
    const auto c53 = GroupSpec::cyclic_power(5, 3);
    CHECK_FALSE(is_generating(GeneratingTuple{c53, {Element{ModVector{{1, 0, 0}}}, Element{ModVector{{0, 1, 0}}}}}));
  }

  TEST_CASE("structural test") {
    const auto g = GroupSpec::sl(2, 7);
    const auto borel = GeneratingTuple::make(g, {T(7), sl_element(7, 2, {3, 1, 0, 5})});
    const auto d = diagnose_psl2_fast(borel);
    CHECK_FALSE(d.generates);
    CHECK(to_string(d.reason) == "common eigenvector");
    CHECK(is_generating_psl2_fast(GeneratingTuple::make(GroupSpec::sl(2, 5), {S(5), T(5)})));
    CHECK_THROWS_AS(diagnose_psl2_fast(GeneratingTuple::make(GroupSpec::sl(2, 3), {S(3)})), std::invalid_argument);
    CHECK_THROWS_AS(diagnose_psl2_fast(GeneratingTuple{GroupSpec::cyclic_power(5, 1), {}}), std::invalid_argument);
  }

  TEST_CASE("structural test agrees with closure on every pair in SL(2,5)") {
    const auto g = GroupSpec::sl(2, 5);
    const auto ig = IndexedGroup::build(g);
    int disagreements = 0;
    for (std::uint32_t a = 0; a < ig->order(); ++a)
      for (std::uint32_t b = 0; b < ig->order(); ++b) {
        const GeneratingTuple t{g, {ig->element(a), ig->element(b)}};
        disagreements += is_generating_psl2_fast(t) != (closure(t, 120).order == 120);
      }
    CHECK(disagreements == 0);
  }

  TEST_CASE("structural test agrees with closure on random tuples") {
    for (std::uint32_t p : {7u, 11u}) {
      for (bool projective : {false, true}) {
        const auto g = projective ? GroupSpec::psl(2, p) : GroupSpec::sl(2, p);
        const auto ig = IndexedGroup::build(g);
        std::mt19937_64 rng(p);
        int disagreements = 0;
        for (int i = 0; i < 1000; ++i) {
          GeneratingTuple t{g, {random_element(g, rng), random_element(g, rng)}};
          if (i % 2) t.items.push_back(random_element(g, rng));
          disagreements += is_generating_psl2_fast(t) != ig->generates(indices(*ig, t));
        }
        CHECK(disagreements == 0);
      }
    }
  }

  TEST_CASE("structural test on small subgroups") {
    // Tuples inside the exceptional subgroups must never pass.
    const auto g = GroupSpec::psl(2, 11);
    const auto ig = IndexedGroup::build(g);
    std::mt19937_64 rng(99);
    int small = 0;
    for (int i = 0; i < 20000 && small < 300; ++i) {
      const std::uint32_t a = rng() % ig->order(), b = rng() % ig->order();
      const std::vector<std::uint32_t> ab = {a, b};
      const auto c = ig->closure(ab);
      if (c.size == ig->order() || c.size < 12) continue;
      ++small;
      CHECK_FALSE(is_generating_psl2_fast(GeneratingTuple{g, {ig->element(a), ig->element(b)}}));
    }
    CHECK(small > 0);
  }

  TEST_CASE("projection to PSL") {
    const auto t = project_to_psl(GeneratingTuple::make(GroupSpec::sl(2, 5), {S(5), T(5)}));
    CHECK(closure(t, 60).order == 60);
    const auto minus = project_to_psl(GeneratingTuple::make(GroupSpec::sl(2, 5), {sl_element(5, 2, {4, 0, 0, 4})}));
    CHECK(minus.items[0] == identity(GroupSpec::psl(2, 5)));
  }

  TEST_CASE("the center is Frattini: generation transfers between SL(2,p) and PSL(2,p)") {
    for (std::uint32_t p : {5u, 7u}) {
      const auto sl = IndexedGroup::build(GroupSpec::sl(2, p));
      const auto psl = IndexedGroup::build(GroupSpec::psl(2, p));
      std::vector<std::uint32_t> image(sl->order());
      for (std::uint32_t a = 0; a < sl->order(); ++a)
        image[a] = psl->index_of(Element{projective_canonicalize(std::get<FpMatrix>(sl->element(a).value))});
      int disagreements = 0;
      for (std::uint32_t a = 0; a < sl->order(); ++a)
        for (std::uint32_t b = a; b < sl->order(); ++b) {
          const std::vector<std::uint32_t> x = {a, b}, y = {image[a], image[b]};
          disagreements += sl->generates(x) != psl->generates(y);
        }
      CHECK(disagreements == 0);
    }
  }

  TEST_CASE("automorphisms of PSL(2,5)") {
    const auto g = GroupSpec::psl(2, 5);
    const auto isos = enumerate_isomorphisms(g, g);
    CHECK(isos.size() == 120);
    CHECK(enumerate_isomorphisms(g, GroupSpec::psl(2, 7)).empty());

    // Brute force on the Cayley table of A5.
    const auto ig = IndexedGroup::build(g);
    CayleyTable table{"A5", 0, {}, 0};
    for (std::uint32_t a = 0; a < 60; ++a)
      for (std::uint32_t b = 0; b < 60; ++b) table.table.push_back(ig->mul(a, b));
    const auto cayley = IndexedGroup::build(GroupSpec::cayley(table));
    const auto brute = brute_force_isomorphisms(*cayley, *cayley);
    CHECK(brute.size() == 120);

    // The two enumerations give the same maps.
    std::set<std::vector<std::uint32_t>> from_brute;
    for (const auto& m : brute) {
      std::vector<std::uint32_t> mapped(60);
      for (std::uint32_t a = 0; a < 60; ++a)
        mapped[a] = std::get<TableElement>(cayley->element(m[cayley->index_of(Element{TableElement{a}})]).value).index;
      from_brute.insert(mapped);
    }
    std::set<std::vector<std::uint32_t>> from_conjugation;
    std::mt19937_64 rng(5);
    for (const auto& f : isos) {
      std::vector<std::uint32_t> mapped(60);
      for (std::uint32_t a = 0; a < 60; ++a) mapped[a] = ig->index_of(f.apply(ig->element(a)));
      from_conjugation.insert(mapped);
      for (int i = 0; i < 50; ++i) {
        const auto x = ig->element(rng() % 60), y = ig->element(rng() % 60);
        CHECK(f.apply(multiply(g, x, y)) == multiply(g, f.apply(x), f.apply(y)));
      }
    }
    CHECK(from_conjugation == from_brute);
  }

  TEST_CASE("isomorphisms are homomorphisms on random pairs") {
    const auto g = GroupSpec::psl(2, 7);
    const auto isos = enumerate_isomorphisms(g, g);
    CHECK(isos.size() == 7 * 48);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
      const auto& f = isos[rng() % isos.size()];
      const auto x = random_element(g, rng), y = random_element(g, rng);
      CHECK(f.apply(multiply(g, x, y)) == multiply(g, f.apply(x), f.apply(y)));
    }
  }

  TEST_CASE("product generation examples") {
    const auto a5 = GroupSpec::psl(2, 5);
    const auto prod = GroupSpec::product({a5, a5});
    const auto g = psl_element(5, 2, {0, -1, 1, 0}), h = psl_element(5, 2, {1, 1, 0, 1});
    const auto diag = product_generates(GeneratingTuple::make(prod, {pair_element(g, g), pair_element(h, h)}));
    CHECK_FALSE(diag.generates);
    CHECK(diag.diagnosis == "graph of identity");
    CHECK(diag.verdict == ProductVerdict::GraphOfIsomorphism);

    const auto mixed = GroupSpec::product({a5, GroupSpec::psl(2, 7)});
    const auto g7 = psl_element(7, 2, {0, -1, 1, 0}), h7 = psl_element(7, 2, {1, 1, 0, 1});
    const auto t = GeneratingTuple::make(mixed, {pair_element(g, g7), pair_element(h, h7)});
    const auto d = product_generates(t);
    const auto ig = IndexedGroup::build(mixed);
    CHECK(d.generates == ig->generates(indices(*ig, t)));
    CHECK(d.generates);

    const auto borel7 = psl_element(7, 2, {3, 1, 0, 5});
    const auto proper = product_generates(GeneratingTuple::make(mixed, {pair_element(g, h7), pair_element(h, borel7)}));
    CHECK_FALSE(proper.generates);
    CHECK(proper.diagnosis == "projection 2 proper");
  }

  TEST_CASE("product generation agrees with closure") {
    const auto a5 = GroupSpec::psl(2, 5);
    for (const auto& prod : {GroupSpec::product({a5, GroupSpec::psl(2, 7)}), GroupSpec::product({a5, a5})}) {
      const auto ig = IndexedGroup::build(prod);
      const auto isos = enumerate_isomorphisms(a5, a5);
      std::mt19937_64 rng(21);
      int disagreements = 0, generating = 0;
      for (int i = 0; i < 300; ++i) {
        GeneratingTuple t{prod, {random_element(prod, rng), random_element(prod, rng)}};
        if (i % 3 == 0) t.items.push_back(random_element(prod, rng));
        const bool same_factors = same_group(std::get<ProductGroup>(prod.kind).factors[0], std::get<ProductGroup>(prod.kind).factors[1]);
        if (same_factors && i % 4 == 0) {
          // Twist into the graph of a random automorphism.
          const auto& f = isos[rng() % isos.size()];
          for (auto& e : t.items) {
            auto& parts = std::get<ProductElement>(e.value).parts;
            parts[1] = f.apply(parts[0]);
          }
        }
        const auto d = product_generates(t);
        const bool oracle = ig->generates(indices(*ig, t));
        disagreements += d.generates != oracle;
        generating += oracle;
        if (same_factors && i % 4 == 0) {
          CHECK_FALSE(d.generates);
          // A graph tuple whose first projection generates must name its isomorphism.
          if (is_generating(project(t, 0))) CHECK(d.aligning.has_value());
        }
      }
      CHECK(disagreements == 0);
      CHECK(generating > 0);
    }
  }
}
