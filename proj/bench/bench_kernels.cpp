// Serial reference kernels against their OpenMP counterparts. Every pair
// is also checked for identical output.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "irrgen/generation.hpp"
#include "irrgen/product.hpp"
#include "irrgen/redundancy.hpp"

using namespace irrgen;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

bool bench_closure(std::uint32_t p) {
  auto g = indexed(GroupSpec::sl(2, p));
  const auto gens = std::vector<std::uint32_t>(g->generators().begin(), g->generators().end());
  IndexedGroup::Closure a, b;
  const int reps = 5;
  const double s = seconds([&] { for (int i = 0; i < reps; ++i) a = g->closure(gens); });
  const double q = seconds([&] { for (int i = 0; i < reps; ++i) b = g->closure_parallel(gens); });
  const bool same = a.size == b.size && a.members == b.members;
  char name[64];
  std::snprintf(name, sizeof name, "closure SL(2,%u) x%d", p, reps);
  report(name, s, q, same);
  return same;
}

// Fast generation test against the closure oracle on random pairs.
bool bench_oracle_sweep(std::uint32_t p, int count) {
  const GroupSpec g = GroupSpec::sl(2, p);
  std::mt19937_64 rng(7);
  std::vector<GeneratingTuple> tuples;
  for (int i = 0; i < count; ++i) tuples.push_back(GeneratingTuple{g, {random_element(g, rng), random_element(g, rng)}});
  std::vector<char> serial(tuples.size()), parallel(tuples.size());
  const double s = seconds([&] {
    for (std::size_t i = 0; i < tuples.size(); ++i)
      serial[i] = is_generating(tuples[i], GenerationMethod::Fast) == is_generating(tuples[i], GenerationMethod::Oracle);
  });
  const double q = seconds([&] {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < tuples.size(); ++i)
      parallel[i] = is_generating(tuples[i], GenerationMethod::Fast) == is_generating(tuples[i], GenerationMethod::Oracle);
  });
  bool agree = true;
  for (auto x : serial) agree &= x != 0;
  char name[64];
  std::snprintf(name, sizeof name, "oracle sweep SL(2,%u) %d pairs", p, count);
  report(name, s, q, serial == parallel && agree);
  return serial == parallel && agree;
}

bool bench_search(const GroupSpec& g, const char* label) {
  auto ig = indexed(g);
  search::Options opt;
  opt.threads = 1;
  search::Outcome a, b;
  const double s = seconds([&] { a = search::run(*ig, opt); });
  opt.threads = 0;
  const double q = seconds([&] { b = search::run(*ig, opt); });
  const bool same = a.best == b.best && a.witness == b.witness && a.complete == b.complete && a.stats.nodes == b.stats.nodes;
  char name[64];
  std::snprintf(name, sizeof name, "m search %s", label);
  report(name, s, q, same);
  return same;
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  bool ok = true;
  ok &= bench_closure(13);
  ok &= bench_closure(23);
  ok &= bench_oracle_sweep(7, 2000);
  ok &= bench_oracle_sweep(11, 2000);
  ok &= bench_search(GroupSpec::psl(2, 7), "PSL(2,7)");
  ok &= bench_search(GroupSpec::psl(2, 11), "PSL(2,11)");
  ok &= bench_search(GroupSpec::sl(2, 7), "SL(2,7)");
  return ok ? 0 : 1;
}
