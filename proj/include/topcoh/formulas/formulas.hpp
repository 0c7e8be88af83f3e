#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "topcoh/execution.hpp"

namespace topcoh::formulas {

enum class SequenceKind { T, TPrime, LowerBound, Steinberg };

std::string to_string(SequenceKind kind);

/// Exact integer sequence indexed from n = 0, tagged with the prime and what it counts.
struct RankSequence {
  std::uint32_t p = 0;
  SequenceKind kind = SequenceKind::T;
  std::vector<mpz_class> values;
  std::string provenance;

  const mpz_class& at(std::size_t n) const { return values.at(n); }
  std::size_t max_n() const { return values.empty() ? 0 : values.size() - 1; }
};

/// |Gr_k(F_p^n)| by the product formula; every division is checked exact.
/// Throws DomainError when k > n.
mpz_class gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t p);

/// Row-cached Gaussian binomials |Gr_k(F_p^m)| for m <= max_n, filled by the
/// q-Pascal rule so every entry costs one shift-and-add.
class GaussianTable {
 public:
  GaussianTable(std::uint32_t p, std::size_t max_n);
  const mpz_class& operator()(std::size_t m, std::size_t k) const { return rows_.at(m).at(k); }
  std::uint32_t p() const { return p_; }
  std::size_t max_n() const { return rows_.size() - 1; }

 private:
  std::uint32_t p_;
  std::vector<std::vector<mpz_class>> rows_;
};

using topcoh::Execution;

/// t_0 .. t_N: top reduced Betti numbers of the +-oriented Tits building
/// over F_p, by the rank recursion. Requires p an odd prime.
/// Throws UnsupportedPrimeError for p = 2 and DomainError for composite p.
RankSequence t_sequence(std::uint32_t p, std::size_t max_n, Execution exec = Execution::Parallel);

/// Same recursion evaluated by the plain serial loop; kept as the reference
/// implementation the parallel kernel is tested against.
RankSequence t_sequence_reference(std::uint32_t p, std::size_t max_n);

/// t'_n = ((p-1)/2)^(n-1) p^C(n,2). Computes both the closed form and the
/// one-step recursion and throws if they ever disagree. Index 0 holds 1.
RankSequence paraschivescu_sequence(std::uint32_t p, std::size_t max_n);

/// p^C(n,2), the rank of the Steinberg module of SL_n(F_p).
mpz_class steinberg_rank(std::uint32_t p, std::size_t n);

/// (p+2)(p-3)(p-5)/24 for odd primes p.
mpz_class modular_genus(std::uint32_t p);

/// (p+2)(p-3)(p-5)(p-1)/24, the genus factor of the top-cohomology bound.
mpz_class genus_factor(std::uint32_t p);

/// t_n + genus_factor(p) |Gr_2(F_p^n)| t_{n-2}, for n >= 3.
mpz_class top_cohomology_lower_bound(std::uint32_t p, std::size_t n);
/// Variant reusing an already computed t-sequence (must reach n).
mpz_class top_cohomology_lower_bound(const RankSequence& t, std::size_t n);

struct BoundComparisonRow {
  std::size_t n = 0;
  mpz_class t;
  mpz_class t_prime;
  std::string ratio;  // t_n / t'_n as a reduced fraction "a/b"
  bool strictly_greater = false;
};

struct BoundComparison {
  std::uint32_t p = 0;
  bool skipped = false;
  std::string note;
  std::vector<BoundComparisonRow> rows;
};

/// Checks t_n > t'_n for 2 <= n <= N. Primes below 5 are skipped with a note;
/// a violation throws std::logic_error.
BoundComparison compare_bounds(std::uint32_t p, std::size_t max_n);

}  // namespace topcoh::formulas
