#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "topcoh/execution.hpp"

namespace topcoh::homology {

/// Integer matrix in compressed-column form; row indices strictly increase within a column.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::int64_t value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(0) { reserve_columns(cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  /// Appends a column; entries are sorted by row and zeros dropped.
  void push_column(std::vector<Entry> column);
  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + start_[j], start_[j + 1] - start_[j]};
  }

  std::int64_t at(std::size_t i, std::size_t j) const;

  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);
  std::vector<std::vector<std::int64_t>> to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  void reserve_columns(std::size_t cols) { start_.reserve(cols + 1); }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> start_{0};
  std::vector<Entry> entries_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& m);

/// Coordinate-list text: "rows cols nnz" then one "i j value" line per entry
/// (0-based, column-major order).
void write_matrix(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& in);

// ---- rank and Smith normal form engines ----

struct ModularRank {
  std::uint64_t prime = 0;
  std::size_t rank = 0;
  std::size_t columns_used = 0;
  bool reached_bound = false;
};

/// Rank modulo a prime below 2^63 by left-looking sparse elimination over the
/// columns in `order` (all columns when empty). Stops as soon as the rank hits
/// `upper_bound`, which must be a valid bound on the rational rank.
ModularRank rank_mod_prime(const SparseMatrix& m, std::uint64_t prime, std::optional<std::size_t> upper_bound = {},
                           std::span<const std::uint32_t> order = {});

/// Deterministic primes in (2^61, 2^62) drawn from the seed.
std::vector<std::uint64_t> random_primes(std::uint64_t seed, std::size_t count);

struct RankResult {
  std::size_t rank = 0;
  bool exact = false;           // certified over Q (bound reached or integer elimination)
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> per_prime;
};

/// Rank over Q from several primes. Finishes early when one prime reaches the
/// bound, otherwise requires all primes to agree (RankDisagreementError).
RankResult rank_multimodular(const SparseMatrix& m, std::uint64_t seed, std::optional<std::size_t> upper_bound = {},
                             std::size_t prime_count = 3, Execution exec = Execution::Parallel);

struct SmithResult {
  std::size_t rank = 0;
  std::vector<mpz_class> divisors;  // d_1 | d_2 | ..., nonzero, length = rank
  std::size_t columns_used = 0;
  bool stopped_at_bound = false;

  /// Divisors other than 1.
  std::vector<mpz_class> torsion() const;
};

/// Elementary divisors by unimodular sparse column elimination over Z, with a
/// dense SNF on whatever part has no unit pivot. Exact. Uses 64-bit entries
/// with overflow checks and retries in arbitrary precision if needed.
/// When `upper_bound` is reached with only unit pivots the image is already
/// saturated, so the remaining columns are skipped.
/// Throws TooLargeError if rows*cols exceeds `budget`.
SmithResult smith_normal_form(const SparseMatrix& m, std::optional<std::size_t> upper_bound = {},
                              double budget = 4e8);

/// Dense Smith normal form over arbitrary-precision integers. Reference oracle.
std::vector<mpz_class> smith_normal_form_dense(std::vector<std::vector<mpz_class>> a);

/// Rank over Q by fraction-free Bareiss elimination on a dense copy. Reference oracle.
std::size_t rank_bareiss(const SparseMatrix& m);

}  // namespace topcoh::homology
