// Serial reference against the OpenMP kernels. Each row reports the best of a
// few repetitions and checks that both paths produced the same answer.
//
//   topcoh_bench [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "topcoh/complexes/builders.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/homology/homology.hpp"
#include "topcoh/homology/sparse.hpp"

using namespace topcoh;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
              same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

  for (std::uint32_t p : {5u, 11u}) {
    formulas::RankSequence a, b;
    const double s = best_of(reps, [&] { a = formulas::t_sequence(p, 200, Execution::Serial); });
    const double q = best_of(reps, [&] { b = formulas::t_sequence(p, 200, Execution::Parallel); });
    row("t_sequence p=" + std::to_string(p) + " n<=200", s, q, a.values == b.values);
  }

  struct Build {
    const char* name;
    complexes::Family f;
    std::size_t n, m;
    std::uint32_t p;
  };
  for (const Build& c : {Build{"build bda-pm(3,0,5)", complexes::Family::BDAPm, 3, 0, 5},
                         Build{"build tits-oriented(3,11)", complexes::Family::TitsOriented, 3, 0, 11},
                         Build{"build b-pm(2,1,7)", complexes::Family::BPm, 2, 1, 7}}) {
    std::size_t a = 0, b = 0;
    const double s = best_of(reps, [&] {
      a = complexes::build(c.f, c.n, c.m, c.p, {.cap = 20'000'000, .exec = Execution::Serial}).total_simplices();
    });
    const double q = best_of(reps, [&] {
      b = complexes::build(c.f, c.n, c.m, c.p, {.cap = 20'000'000, .exec = Execution::Parallel}).total_simplices();
    });
    row(c.name, s, q, a == b);
  }

  {
    const auto bda = complexes::build_BDA_pm(3, 0, 5);
    const auto m = homology::coinvariants_matrix(bda);
    homology::RankResult a, b;
    const double s = best_of(reps, [&] { a = homology::rank_multimodular(m, 1, std::nullopt, 3, Execution::Serial); });
    const double q = best_of(reps, [&] { b = homology::rank_multimodular(m, 1, std::nullopt, 3, Execution::Parallel); });
    row("multimodular rank 15500x31000", s, q, a.rank == b.rank && a.per_prime == b.per_prime);
  }
  return 0;
}
