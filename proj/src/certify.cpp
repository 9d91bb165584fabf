#include "irrgen/certify.hpp"

#include <cstdio>

#include "irrgen/closure.hpp"
#include "irrgen/fp.hpp"
#include "irrgen/generation.hpp"
#include "irrgen/indexed_group.hpp"
#include "irrgen/redundancy.hpp"

namespace irrgen {

namespace {

std::uint32_t residue(const BigInt& x, std::uint32_t p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

PrimeRecord check_prime(const RationalTuple& t, std::uint32_t p) {
  PrimeRecord rec;
  rec.prime = p;
  const GeneratingTuple reduced = reduce_mod_p(t, p);
  const std::uint64_t order = *group_order(reduced.group);
  const bool structural = reduced.group.is_rank_one_linear() && p >= 5;
  std::optional<GenerationDiagnosis> fast;
  if (structural) fast = diagnose_psl2_fast(reduced);
  if (order <= kClosureEvidenceLimit) {
    const std::uint64_t co = *closure_order(reduced, order);
    rec.closure_order = co;
    if (fast && fast->generates != (co == order))
      throw std::logic_error("structural generation test disagrees with closure at p = " + std::to_string(p));
    rec.status = co == order ? "generates" : "proper";
    rec.diagnosis = (fast ? to_string(fast->reason) : to_string(co == order ? GenerationReason::Generates
                                                                            : GenerationReason::ProperClosure)) +
                    " (order " + std::to_string(co) + ")";
  } else if (fast) {
    rec.status = fast->generates ? "generates" : "proper";
    rec.diagnosis = fast->describe();
  } else {
    rec.status = "skipped";
    rec.diagnosis = "group order " + std::to_string(order) + " exceeds the closure limit";
  }
  return rec;
}

std::vector<std::vector<std::string>> entries_of(const RationalTuple& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& m : t.items) out.push_back(m.entry_strings());
  return out;
}

EvidenceSummary summarize(const std::vector<PrimeVerdict>& v, const std::string& good, const std::string& bad) {
  std::vector<int> decisive;  // 1 good, 0 bad, -1 other decisive outcome
  for (const auto& x : v) {
    if (x.verdict == good) decisive.push_back(1);
    else if (x.verdict == bad) decisive.push_back(0);
    else if (x.verdict != "Unknown") decisive.push_back(-1);
  }
  if (decisive.empty()) return EvidenceSummary::Inconclusive;
  bool all_good = true;
  for (int d : decisive) all_good &= d == 1;
  if (all_good) return EvidenceSummary::AllIrredundant;
  std::size_t first_bad = 0;
  while (first_bad < decisive.size() && decisive[first_bad] != 0) ++first_bad;
  if (first_bad == decisive.size()) return EvidenceSummary::Mixed;
  for (std::size_t i = first_bad; i < decisive.size(); ++i)
    if (decisive[i] != 0) return EvidenceSummary::Mixed;
  return EvidenceSummary::RedundantFromSomePoint;
}

}  // namespace

FpMatrix reduce_mod_p(const RationalMatrix& m, std::uint32_t p) {
  require_prime_modulus(p);
  if (m.denominator_divisible_by(p)) throw DenominatorClash(p);
  std::vector<std::int64_t> entries;
  for (const auto& q : m.entries()) {
    const std::uint32_t num = residue(boost::multiprecision::numerator(q), p);
    const std::uint32_t den = residue(boost::multiprecision::denominator(q), p);
    entries.push_back(static_cast<std::int64_t>(static_cast<std::uint64_t>(num) * inverse_mod(den, p) % p));
  }
  return FpMatrix::from_rows(m.dim(), p, entries);
}

GeneratingTuple reduce_mod_p(const RationalTuple& t, std::uint32_t p) {
  const GroupSpec g = GroupSpec::sl(t.dim, p);
  std::vector<Element> items;
  for (const auto& m : t.items) items.push_back(Element{reduce_mod_p(m, p)});
  return GeneratingTuple::make(g, std::move(items));
}

int minimum_exceptional_floor(int dim) { return dim == 2 ? 3 : 2; }

PrimePlan plan_primes(const RationalTuple& t, const PrimePlanConfig& config) {
  if (config.max_primes < 1) throw std::invalid_argument("max primes must be at least 1");
  PrimePlan plan;
  plan.max_primes_to_try = config.max_primes;
  plan.exceptional_floor = config.exceptional_floor;
  const int minimum = minimum_exceptional_floor(t.dim);
  if (plan.exceptional_floor < minimum) {
    plan.exceptional_floor = minimum;
    plan.floor_clamped = true;
  }
  auto consider = [&](std::uint32_t p) {
    if (static_cast<std::int64_t>(p) <= plan.exceptional_floor) return;
    for (const auto& m : t.items)
      if (m.denominator_divisible_by(p)) {
        plan.excluded_denominator_primes.push_back(p);
        return;
      }
    plan.candidates.push_back(p);
  };
  if (!config.primes.empty()) {
    for (auto p : config.primes) {
      if (!is_prime(p) || p >= kMaxModulus) throw std::invalid_argument("not a usable prime: " + std::to_string(p));
      if (static_cast<int>(plan.candidates.size()) < config.max_primes) consider(p);
    }
    return plan;
  }
  for (std::uint64_t p = 2; static_cast<int>(plan.candidates.size()) < config.max_primes && p < kMaxModulus;
       p = next_prime(p))
    consider(static_cast<std::uint32_t>(p));
  return plan;
}

std::string tuple_fingerprint(int dim, const std::vector<std::vector<std::string>>& entries) {
  std::string text = "sl" + std::to_string(dim) + "|";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) text += ';';
    for (std::size_t k = 0; k < entries[i].size(); ++k) {
      if (k) text += ',';
      text += entries[i][k];
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CertificationResult certify_density(const RationalTuple& t, const PrimePlan& plan) {
  if (t.items.empty()) throw std::invalid_argument("cannot certify an empty tuple");
  if (plan.candidates.empty()) throw std::invalid_argument("prime plan has no usable candidates");
  CertificationResult out;
  const std::size_t tries = std::min<std::size_t>(plan.candidates.size(), static_cast<std::size_t>(plan.max_primes_to_try));
  for (std::size_t i = 0; i < tries; ++i) {
    out.per_prime.push_back(check_prime(t, plan.candidates[i]));
    const auto& rec = out.per_prime.back();
    if (rec.status != "generates") continue;
    DensityCertificate c;
    c.dim = t.dim;
    c.tuple_entries = entries_of(t);
    c.witness_prime = rec.prime;
    c.evidence_kind = rec.closure_order ? "closure" : "fast-test";
    c.closure_order = rec.closure_order;
    c.transcript = rec.diagnosis;
    c.per_prime = out.per_prime;
    c.fingerprint = tuple_fingerprint(c.dim, c.tuple_entries);
    out.certificate = std::move(c);
    return out;
  }
  out.note = "no tested prime generates; this is evidence against Zariski density, not a proof";
  return out;
}

ReplayResult replay(const DensityCertificate& c) {
  if (c.version != kCertificateVersion) return {false, "unsupported certificate version"};
  if (tuple_fingerprint(c.dim, c.tuple_entries) != c.fingerprint) return {false, "fingerprint mismatch"};
  try {
    std::vector<RationalMatrix> items;
    for (const auto& e : c.tuple_entries) items.push_back(RationalMatrix::from_strings(c.dim, e));
    const auto t = RationalTuple::make(c.dim, std::move(items));
    const auto rec = check_prime(t, c.witness_prime);
    if (rec.status != "generates") return {false, "reduction does not generate at the witness prime"};
    if (c.evidence_kind != (rec.closure_order ? "closure" : "fast-test")) return {false, "evidence kind mismatch"};
    if (rec.closure_order != c.closure_order) return {false, "closure order mismatch"};
    if (rec.diagnosis != c.transcript) return {false, "transcript mismatch"};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
  return {true, "witness prime " + std::to_string(c.witness_prime) + " reproduces: " + c.transcript};
}

std::string to_string(EvidenceSummary s) {
  switch (s) {
    case EvidenceSummary::AllIrredundant: return "all-irredundant";
    case EvidenceSummary::RedundantFromSomePoint: return "redundant-from-some-point";
    case EvidenceSummary::Mixed: return "mixed";
    case EvidenceSummary::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

IrredundancyEvidence assess_irredundancy(const RationalTuple& t, const PrimePlan& plan, int k) {
  if (k < 1) throw std::invalid_argument("at least one prime is required");
  IrredundancyEvidence ev;
  for (auto p : plan.candidates) {
    if (static_cast<int>(ev.per_prime.size()) == k) break;
    const GeneratingTuple reduced = reduce_mod_p(t, p);
    const bool fast = reduced.group.is_rank_one_linear() && p >= 5;
    if (!fast && *group_order(reduced.group) > kClosureEvidenceLimit) continue;
    const auto rep = is_redundant(reduced);
    PrimeVerdict v{p, rep.generates, to_string(rep.verdict), rep.droppable, 0, 0};
    if (rep.verdict == RedundancyVerdict::IrredundantGenerating) ++ev.irredundant;
    else if (rep.verdict == RedundancyVerdict::RedundantGenerating) ++ev.redundant;
    else ++ev.not_generating;
    ev.per_prime.push_back(std::move(v));
  }
  if (static_cast<int>(ev.per_prime.size()) < k)
    throw std::invalid_argument("only " + std::to_string(ev.per_prime.size()) + " usable primes in the plan, " +
                                std::to_string(k) + " requested");
  ev.summary = summarize(ev.per_prime, to_string(RedundancyVerdict::IrredundantGenerating),
                         to_string(RedundancyVerdict::RedundantGenerating));
  return ev;
}

IrredundancyEvidence assess_nielsen_irredundancy(const RationalTuple& t, const PrimePlan& plan, int k,
                                                 const OrbitLimits& budget) {
  if (k < 1) throw std::invalid_argument("at least one prime is required");
  IrredundancyEvidence ev;
  ev.nielsen = true;
  for (auto p : plan.candidates) {
    if (static_cast<int>(ev.per_prime.size()) == k) break;
    const GeneratingTuple reduced = reduce_mod_p(t, p);
    if (*group_order(reduced.group) > IndexedGroup::kMaxOrder) continue;
    if (!is_generating(reduced))
      throw std::invalid_argument("tuple does not generate at p = " + std::to_string(p));
    const auto r = is_nielsen_redundant(reduced, budget);
    PrimeVerdict v{p, true, to_string(r.verdict), {}, r.visited, r.path.size()};
    if (r.verdict == NielsenVerdict::NielsenIrredundant) ++ev.irredundant;
    else if (r.verdict == NielsenVerdict::NielsenRedundant) ++ev.redundant;
    else ++ev.unknown;
    ev.per_prime.push_back(std::move(v));
  }
  if (static_cast<int>(ev.per_prime.size()) < k)
    throw std::invalid_argument("only " + std::to_string(ev.per_prime.size()) + " primes with indexable reductions, " +
                                std::to_string(k) + " requested");
  ev.summary = summarize(ev.per_prime, to_string(NielsenVerdict::NielsenIrredundant),
                         to_string(NielsenVerdict::NielsenRedundant));
  return ev;
}

}  // namespace irrgen
