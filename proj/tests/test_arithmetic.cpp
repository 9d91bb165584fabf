#include <doctest.h>

#include <random>
#include <sstream>

#include "irrgen/certificate_io.hpp"
#include "irrgen/certify.hpp"
#include "irrgen/closure.hpp"
#include "irrgen/generation.hpp"

using namespace irrgen;

namespace {

RationalMatrix rm(std::initializer_list<const char*> entries) {
  std::vector<std::string> s(entries.begin(), entries.end());
  return RationalMatrix::from_strings(2, s);
}

RationalTuple standard_pair() { return RationalTuple::make(2, {rm({"0", "-1", "1", "0"}), rm({"1", "1", "0", "1"})}); }

// Random element of SL(2, Z[1/6]) as a word in elementary matrices.
RationalMatrix random_rational_sl2(std::mt19937_64& rng) {
  const char* values[] = {"1/2", "-1/3", "2", "5/6", "-3/2", "1", "7/3"};
  RationalMatrix m = RationalMatrix::identity(2);
  for (int i = 0; i < 4; ++i) {
    const std::string v = values[rng() % 7];
    m = m * (i % 2 ? rm({"1", v.c_str(), "0", "1"}) : rm({"1", "0", v.c_str(), "1"}));
  }
  if (rng() % 2) m = m * rm({"3", "0", "0", "1/3"});
  return m;
}

}  // namespace

TEST_SUITE("arithmetic") {
  TEST_CASE("rational parsing") {
    CHECK(format_rational(parse_rational("6/4")) == "3/2");
    CHECK(format_rational(parse_rational("-2")) == "-2/1");
    CHECK(format_rational(parse_rational("+4/8")) == "1/2");
    CHECK(format_rational(parse_rational("0/5")) == "0/1");
    CHECK(format_rational(parse_rational("-10/4")) == "-5/2");
  }

  TEST_CASE("malformed rationals are rejected") {
    for (const char* bad : {"", "x", "1/", "/2", "1/0", "1.5", "--1", "1/2/3", "1/+2"}) CHECK_THROWS_AS(parse_rational(bad), InputError);
  }

  TEST_CASE("exact determinant and inverse") {
    const auto m = rm({"2", "1/3", "3", "1"});
    CHECK(m.det() == Rational(1));
    CHECK(m * m.inverse() == RationalMatrix::identity(2));
    CHECK_THROWS_AS(RationalTuple::make(2, {rm({"2", "0", "0", "1"})}), InputError);
    CHECK_THROWS_AS(rm({"1", "2", "2", "4"}).inverse(), std::domain_error);
  }

  TEST_CASE("reduction examples") {
    const auto u = rm({"1", "1/2", "0", "1"});
    CHECK(reduce_mod_p(u, 3) == FpMatrix::from_rows(2, 3, {1, 2, 0, 1}));
    CHECK_THROWS_AS(reduce_mod_p(u, 2), DenominatorClash);
    const auto st = reduce_mod_p(standard_pair(), 5);
    CHECK(st.items[0] == sl_element(5, 2, {0, 4, 1, 0}));
    CHECK(st.items[1] == sl_element(5, 2, {1, 1, 0, 1}));
    for (const auto& e : st.items) CHECK(std::get<FpMatrix>(e.value).det() == 1);
  }

  TEST_CASE("reduction is a homomorphism") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_rational_sl2(rng), b = random_rational_sl2(rng);
      REQUIRE(a.det() == 1);
      for (std::uint32_t p : {5u, 7u, 11u, 13u, 101u}) {
        CHECK(reduce_mod_p(a * b, p) == reduce_mod_p(a, p) * reduce_mod_p(b, p));
        CHECK(reduce_mod_p(a.inverse(), p) == mat_inv(reduce_mod_p(a, p)));
      }
    }
  }

  TEST_CASE("prime plans") {
    const auto half = RationalTuple::make(2, {rm({"1", "1/2", "0", "1"})});
    const auto plan = plan_primes(half, {});
    CHECK(std::vector<std::uint32_t>(plan.candidates.begin(), plan.candidates.begin() + 3) == std::vector<std::uint32_t>{5, 7, 11});
    CHECK(plan.candidates.size() == 10);
    CHECK_FALSE(plan.floor_clamped);

    const auto sixth = RationalTuple::make(2, {rm({"1", "1/35", "0", "1"})});
    const auto p2 = plan_primes(sixth, {});
    CHECK(p2.candidates.front() == 11);
    CHECK(p2.excluded_denominator_primes == std::vector<std::uint32_t>{5, 7});

    const auto integer = plan_primes(standard_pair(), {});
    CHECK(std::vector<std::uint32_t>(integer.candidates.begin(), integer.candidates.begin() + 3) == std::vector<std::uint32_t>{5, 7, 11});

    PrimePlanConfig zero;
    zero.exceptional_floor = 0;
    const auto clamped = plan_primes(standard_pair(), zero);
    CHECK(clamped.floor_clamped);
    CHECK(clamped.exceptional_floor == 3);
    CHECK(clamped.candidates.front() == 5);

    for (const auto& p : {plan, p2, integer, clamped})
      for (auto c : p.candidates) {
        CHECK(static_cast<int>(c) > p.exceptional_floor);
        CHECK(std::find(p.excluded_denominator_primes.begin(), p.excluded_denominator_primes.end(), c) == p.excluded_denominator_primes.end());
      }
  }

  TEST_CASE("density certificates") {
    const auto st = standard_pair();
    const auto r = certify_density(st, plan_primes(st, {}));
    REQUIRE(r.certified());
    CHECK(r.certificate->witness_prime == 5);
    CHECK(r.certificate->closure_order == 120u);
    CHECK(r.certificate->caveat == kDensityCaveat);
    CHECK(replay(*r.certificate).ok);

    // Finite-index subgroup of SL(2, Z): generation at some small prime.
    const auto gamma = RationalTuple::make(2, {rm({"1", "1", "0", "1"}), rm({"1", "0", "3", "1"})});
    const auto g = certify_density(gamma, plan_primes(gamma, {}));
    REQUIRE(g.certified());
    const auto reduced = reduce_mod_p(gamma, g.certificate->witness_prime);
    CHECK(closure(reduced, *group_order(reduced.group)).order == *group_order(reduced.group));
  }

  TEST_CASE("Borel tuples never certify") {
    const auto borel = RationalTuple::make(2, {rm({"1", "1", "0", "1"}), rm({"2", "0", "0", "1/2"})});
    const auto r = certify_density(borel, plan_primes(borel, {}));
    CHECK_FALSE(r.certified());
    REQUIRE(r.per_prime.size() == 10);
    for (const auto& rec : r.per_prime) {
      CHECK(rec.status == "proper");
      CHECK(rec.diagnosis.rfind("common eigenvector", 0) == 0);
    }
    CHECK(r.note.find("not a proof") != std::string::npos);
  }

  TEST_CASE("certificates round-trip and detect tampering") {
    const auto st = standard_pair();
    const auto cert = *certify_density(st, plan_primes(st, {})).certificate;
    const auto text = to_json(cert).dump();
    const auto back = certificate_from_json(nlohmann::ordered_json::parse(text));
    CHECK(to_json(back).dump() == text);
    CHECK(replay(back).ok);

    auto tampered = back;
    tampered.tuple_entries[1][1] = "2/1";
    CHECK_FALSE(replay(tampered).ok);
    auto wrong_order = back;
    wrong_order.closure_order = 60;
    CHECK_FALSE(replay(wrong_order).ok);
    CHECK_THROWS_AS(certificate_from_json(nlohmann::ordered_json::parse("{\"version\": 1}")), InputError);
  }

  TEST_CASE("irredundancy evidence") {
    const auto st = standard_pair();
    const auto plan = plan_primes(st, {});
    const auto e1 = assess_irredundancy(st, plan, 3);
    CHECK(e1.irredundant == 3);
    CHECK(e1.summary == EvidenceSummary::AllIrredundant);

    const auto s = rm({"0", "-1", "1", "0"}), t = rm({"1", "1", "0", "1"});
    const auto stst = RationalTuple::make(2, {s, t, s * t});
    const auto e2 = assess_irredundancy(stst, plan, 3);
    CHECK(e2.redundant == 3);
    for (const auto& v : e2.per_prime) CHECK(v.droppable[2]);
    CHECK(e2.summary == EvidenceSummary::RedundantFromSomePoint);

    const auto with_id = RationalTuple::make(2, {s, t, RationalMatrix::identity(2)});
    CHECK(assess_irredundancy(with_id, plan, 3).redundant == 3);

    CHECK_THROWS_AS(assess_irredundancy(st, plan, 11), std::invalid_argument);
  }

  TEST_CASE("Nielsen evidence") {
    const auto s = rm({"0", "-1", "1", "0"}), t = rm({"1", "1", "0", "1"});
    PrimePlanConfig five;
    five.primes = {5};
    const auto stst = RationalTuple::make(2, {s, t, s * t});
    const auto e = assess_nielsen_irredundancy(stst, plan_primes(stst, five), 1);
    CHECK(e.per_prime[0].verdict == "NielsenRedundant");

    // For pairs, Nielsen and plain verdicts coincide.
    const auto st = RationalTuple::make(2, {s, t});
    const auto plan = plan_primes(st, {});
    const auto plain = assess_irredundancy(st, plan, 2);
    const auto nielsen = assess_nielsen_irredundancy(st, plan, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(plain.per_prime[i].verdict == "IrredundantGenerating");
      CHECK(nielsen.per_prime[i].verdict == "NielsenIrredundant");
    }

    const auto borel = RationalTuple::make(2, {t, rm({"2", "0", "0", "1/2"})});
    CHECK_THROWS_AS(assess_nielsen_irredundancy(borel, plan_primes(borel, {}), 1), std::invalid_argument);
  }

  TEST_CASE("Nielsen moves commute with reduction") {
    std::mt19937_64 rng(2);
    const std::uint32_t primes[] = {5, 7, 11, 13, 17};
    for (int i = 0; i < 1000; ++i) {
      std::vector<RationalMatrix> items = {random_rational_sl2(rng), random_rational_sl2(rng), random_rational_sl2(rng)};
      const auto moves = all_moves(3);
      const auto m = moves[rng() % moves.size()];
      const std::uint32_t p = primes[rng() % 5];
      // Move over Q.
      auto moved = items;
      switch (m.kind) {
        case MoveKind::LeftMult: moved[m.i] = (m.sign > 0 ? items[m.j] : items[m.j].inverse()) * items[m.i]; break;
        case MoveKind::RightMult: moved[m.i] = items[m.i] * (m.sign > 0 ? items[m.j] : items[m.j].inverse()); break;
        case MoveKind::Invert: moved[m.i] = items[m.i].inverse(); break;
        case MoveKind::Swap: std::swap(moved[m.i], moved[m.j]); break;
      }
      const auto lhs = reduce_mod_p(RationalTuple::make(2, moved), p);
      const auto rhs = apply_move(reduce_mod_p(RationalTuple::make(2, items), p), m);
      CHECK(lhs.items == rhs.items);
    }
  }

  TEST_CASE("structurally non-dense inputs fail at every prime") {
    // Common rational eigenvector e1 after conjugating by an integer matrix.
    const auto c = rm({"2", "1", "1", "1"});
    const auto ci = c.inverse();
    const auto borel = RationalTuple::make(2, {c * rm({"1", "3", "0", "1"}) * ci, c * rm({"5", "1", "0", "1/5"}) * ci});
    PrimePlanConfig cfg;
    cfg.max_primes = 10;
    const auto plan = plan_primes(borel, cfg);
    const auto r = certify_density(borel, plan);
    CHECK_FALSE(r.certified());
    for (const auto& rec : r.per_prime) CHECK(rec.diagnosis.rfind("common eigenvector", 0) == 0);
  }

  TEST_CASE("tuple files") {
    std::istringstream ok("sl 2\n0 -1 1 0\n1 1 0 1\n");
    CHECK(parse_tuple(ok).size() == 2);
    std::istringstream bad_det("sl 2\n2 0 0 1\n");
    CHECK_THROWS_AS(parse_tuple(bad_det), InputError);
    std::istringstream bad_count("sl 2\n1 0 1\n");
    CHECK_THROWS_AS(parse_tuple(bad_count), InputError);
    std::istringstream no_header("1 0 0 1\n");
    CHECK_THROWS_AS(parse_tuple(no_header), InputError);
    std::istringstream sl3("sl 3\n1 0 0 0 1 0 0 0 1\n1 1/2 0 0 1 0 0 0 1\n");
    CHECK(parse_tuple(sl3).dim == 3);
  }

  TEST_CASE("SL(3) certification uses the closure oracle") {
    std::istringstream in("sl 3\n1 1 0 0 1 0 0 0 1\n0 0 1 1 0 0 0 1 0\n");
    const auto t = parse_tuple(in);
    PrimePlanConfig cfg;
    cfg.max_primes = 1;
    cfg.exceptional_floor = 2;
    const auto plan = plan_primes(t, cfg);
    CHECK(plan.candidates.front() == 3);
    const auto r = certify_density(t, plan);
    REQUIRE(r.certified());
    CHECK(r.certificate->closure_order == 5616u);
    CHECK(replay(*r.certificate).ok);
  }
}
