#include "topcoh/formulas/formulas.hpp"

#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "topcoh/errors.hpp"
#include "topcoh/gfq/field.hpp"

namespace topcoh::formulas {

namespace {

mpz_class power(std::uint32_t p, std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b, const char* what) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::logic_error(std::string("inexact division in ") + what);
  return q;
}

void require_odd_prime(std::uint32_t p) {
  if (!gfq::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p == 2) throw UnsupportedPrimeError("the rank recursion needs an odd prime");
}

// Coefficient of t_{n-1}: (p-3)/2 + ((p-1)/2) p^(n-1).
mpz_class leading_coefficient(std::uint32_t p, std::size_t n) {
  return mpz_class((p - 3) / 2) + mpz_class((p - 1) / 2) * power(p, n - 1);
}

// (p-1)(p-3)/4, an integer for odd p.
mpz_class convolution_coefficient(std::uint32_t p) {
  return exact_div(mpz_class(p - 1) * mpz_class(p - 3), 4, "convolution coefficient");
}

RankSequence start_t(std::uint32_t p, std::size_t max_n, const char* provenance) {
  require_odd_prime(p);
  if (max_n < 1) throw DomainError("t_sequence requires N >= 1");
  RankSequence seq;
  seq.p = p;
  seq.kind = SequenceKind::T;
  seq.provenance = provenance;
  seq.values.reserve(max_n + 1);
  seq.values.emplace_back(1);  // t_0
  seq.values.emplace_back(1);  // t_1
  return seq;
}

}  // namespace

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::T: return "t";
    case SequenceKind::TPrime: return "t-prime";
    case SequenceKind::LowerBound: return "lower-bound";
    case SequenceKind::Steinberg: return "steinberg";
  }
  return "unknown";
}

mpz_class gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t p) {
  if (k > n) throw DomainError("gaussian_binomial requires k <= n");
  if (p < 2) throw DomainError("gaussian_binomial requires p >= 2");
  mpz_class num = 1, den = 1;
  const mpz_class pn = power(p, n), pk = power(p, k);
  for (std::size_t i = 0; i < k; ++i) {
    const mpz_class pi = power(p, i);
    num *= pn - pi;
    den *= pk - pi;
  }
  return exact_div(num, den, "gaussian_binomial");
}

GaussianTable::GaussianTable(std::uint32_t p, std::size_t max_n) : p_(p), rows_(max_n + 1) {
  rows_[0] = {mpz_class(1)};
  for (std::size_t m = 1; m <= max_n; ++m) {
    auto& row = rows_[m];
    const auto& prev = rows_[m - 1];
    row.resize(m + 1);
    row[0] = 1;
    row[m] = 1;
    mpz_class pk = p;
    // [m, k] = [m-1, k-1] + p^k [m-1, k]
    for (std::size_t k = 1; k < m; ++k, pk *= p) row[k] = prev[k - 1] + pk * prev[k];
  }
}

RankSequence t_sequence_reference(std::uint32_t p, std::size_t max_n) {
  RankSequence seq = start_t(p, max_n, "rank recursion (serial reference)");
  const mpz_class c = convolution_coefficient(p);
  for (std::size_t n = 2; n <= max_n; ++n) {
    mpz_class sum = 0;
    for (std::size_t k = 1; k + 2 <= n; ++k)
      sum += power(p, k) * gaussian_binomial(n - 1, k, p) * seq.values[k] * seq.values[n - k - 1];
    seq.values.push_back(leading_coefficient(p, n) * seq.values[n - 1] + c * sum);
  }
  return seq;
}

RankSequence t_sequence(std::uint32_t p, std::size_t max_n, Execution exec) {
  RankSequence seq = start_t(p, max_n, "rank recursion");
  const mpz_class c = convolution_coefficient(p);
  const GaussianTable gr(p, max_n);
  std::vector<mpz_class> pk(max_n + 1);
  pk[0] = 1;
  for (std::size_t k = 1; k <= max_n; ++k) pk[k] = pk[k - 1] * p;

  for (std::size_t n = 2; n <= max_n; ++n) {
    const long terms = static_cast<long>(n) - 2;  // k = 1 .. n-2
    mpz_class sum = 0;
    if (exec == Execution::Parallel && terms > 8) {
#pragma omp parallel
      {
        mpz_class local = 0, term;
#pragma omp for schedule(dynamic, 4) nowait
        for (long i = 0; i < terms; ++i) {
          const std::size_t k = static_cast<std::size_t>(i) + 1;
          term = pk[k] * gr(n - 1, k);
          term *= seq.values[k];
          term *= seq.values[n - k - 1];
          local += term;
        }
#pragma omp critical(topcoh_t_sequence_sum)
        sum += local;
      }
    } else {
      mpz_class term;
      for (std::size_t k = 1; k + 2 <= n; ++k) {
        term = pk[k] * gr(n - 1, k);
        term *= seq.values[k];
        term *= seq.values[n - k - 1];
        sum += term;
      }
    }
    mpz_class next = (mpz_class((p - 3) / 2) + mpz_class((p - 1) / 2) * pk[n - 1]) * seq.values[n - 1];
    next += c * sum;
    seq.values.push_back(std::move(next));
  }
  return seq;
}

RankSequence paraschivescu_sequence(std::uint32_t p, std::size_t max_n) {
  if (!gfq::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p == 2) throw UnsupportedPrimeError("Paraschivescu's bound is stated for p >= 3");
  RankSequence seq;
  seq.p = p;
  seq.kind = SequenceKind::TPrime;
  seq.provenance = "closed form, checked against recursion";
  seq.values.emplace_back(1);
  if (max_n >= 1) seq.values.emplace_back(1);
  const mpz_class half = (p - 1) / 2;
  for (std::size_t n = 2; n <= max_n; ++n) {
    mpz_class recursive = half * power(p, n - 1) * seq.values[n - 1];
    mpz_class closed;
    mpz_pow_ui(closed.get_mpz_t(), half.get_mpz_t(), n - 1);
    closed *= steinberg_rank(p, n);
    if (closed != recursive) throw std::logic_error("Paraschivescu closed form and recursion disagree at n=" + std::to_string(n));
    seq.values.push_back(std::move(closed));
  }
  return seq;
}

mpz_class steinberg_rank(std::uint32_t p, std::size_t n) {
  if (n < 1) throw DomainError("steinberg_rank requires n >= 1");
  return power(p, n * (n - 1) / 2);
}

mpz_class modular_genus(std::uint32_t p) {
  require_odd_prime(p);
  const mpz_class q = p;
  return exact_div((q + 2) * (q - 3) * (q - 5), 24, "modular_genus");
}

mpz_class genus_factor(std::uint32_t p) {
  require_odd_prime(p);
  const mpz_class q = p;
  return exact_div((q + 2) * (q - 3) * (q - 5) * (q - 1), 24, "genus factor");
}

mpz_class top_cohomology_lower_bound(const RankSequence& t, std::size_t n) {
  if (n < 3) throw DomainError("the top-cohomology lower bound is stated for n >= 3");
  if (t.kind != SequenceKind::T || t.max_n() < n) throw DomainError("t-sequence does not reach n");
  return t.at(n) + genus_factor(t.p) * gaussian_binomial(n, 2, t.p) * t.at(n - 2);
}

mpz_class top_cohomology_lower_bound(std::uint32_t p, std::size_t n) {
  if (n < 3) throw DomainError("the top-cohomology lower bound is stated for n >= 3");
  return top_cohomology_lower_bound(t_sequence(p, n), n);
}

BoundComparison compare_bounds(std::uint32_t p, std::size_t max_n) {
  BoundComparison out;
  out.p = p;
  if (!gfq::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p < 5) {
    out.skipped = true;
    out.note = "strict dominance t_n > t'_n is only claimed for p >= 5";
    return out;
  }
  const RankSequence t = t_sequence(p, max_n);
  const RankSequence tp = paraschivescu_sequence(p, max_n);
  for (std::size_t n = 2; n <= max_n; ++n) {
    BoundComparisonRow row;
    row.n = n;
    row.t = t.at(n);
    row.t_prime = tp.at(n);
    mpq_class ratio(row.t, row.t_prime);
    ratio.canonicalize();
    row.ratio = ratio.get_num().get_str() + "/" + ratio.get_den().get_str();
    row.strictly_greater = row.t > row.t_prime;
    if (!row.strictly_greater) throw std::logic_error("t_n <= t'_n at n=" + std::to_string(n) + ", p=" + std::to_string(p));
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace topcoh::formulas
