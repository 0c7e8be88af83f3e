#include "topcoh/homology/sparse.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <string>

#include "topcoh/errors.hpp"
#include "topcoh/gfq/field.hpp"

namespace topcoh::homology {

// ---- storage ----

void SparseMatrix::push_column(std::vector<Entry> column) {
  std::sort(column.begin(), column.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i].row >= rows_) throw ShapeError("row index out of range");
    if (i + 1 < column.size() && column[i].row == column[i + 1].row) throw ShapeError("duplicate row in column");
    if (column[i].value != 0) entries_.push_back(column[i]);
  }
  start_.push_back(entries_.size());
  ++cols_;
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& e : column(j))
    if (e.row == i) return e.value;
  return 0;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  SparseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<Entry> col;
    for (std::size_t i = 0; i < r; ++i)
      if (rows[i][j] != 0) col.push_back({static_cast<std::uint32_t>(i), rows[i][j]});
    m.push_column(std::move(col));
  }
  return m;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_, 0));
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) out[e.row][j] = e.value;
  return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("inner dimensions differ");
  SparseMatrix out(a.rows(), b.cols());
  std::vector<std::int64_t> acc(a.rows(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (const auto& eb : b.column(j)) {
      for (const auto& ea : a.column(eb.row)) {
        if (acc[ea.row] == 0) touched.push_back(ea.row);
        acc[ea.row] += ea.value * eb.value;
      }
    }
    std::vector<SparseMatrix::Entry> col;
    for (auto r : touched) {
      if (acc[r] != 0) col.push_back({r, acc[r]});
      acc[r] = 0;
    }
    touched.clear();
    out.push_column(std::move(col));
  }
  return out;
}

bool is_zero(const SparseMatrix& m) { return m.nnz() == 0; }

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) out << e.row << ' ' << j << ' ' << e.value << '\n';
}

SparseMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw ParseError("matrix header must be 'rows cols nnz'");
  std::vector<std::vector<SparseMatrix::Entry>> columns(cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    std::int64_t v = 0;
    if (!(in >> i >> j >> v)) throw ParseError("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
    if (i >= rows || j >= cols) throw ParseError("entry index out of range");
    columns[j].push_back({static_cast<std::uint32_t>(i), v});
  }
  SparseMatrix m(rows, cols);
  for (auto& c : columns) m.push_column(std::move(c));
  return m;
}

// ---- modular elimination ----

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, q))
    if (e & 1) r = mulmod(r, a, q);
  return r;
}

std::uint64_t to_residue(std::int64_t v, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t r = v % sq;
  return static_cast<std::uint64_t>(r < 0 ? r + sq : r);
}

// Rows touched by the column being reduced, visited largest first.
class RowQueue {
 public:
  explicit RowQueue(std::size_t rows) : queued_(rows, 0) {}
  void push(std::uint32_t r) {
    if (!queued_[r]) {
      queued_[r] = 1;
      heap_.push(r);
    }
  }
  bool empty() const { return heap_.empty(); }
  std::uint32_t pop() {
    const std::uint32_t r = heap_.top();
    heap_.pop();
    queued_[r] = 0;
    return r;
  }

 private:
  std::vector<char> queued_;
  std::priority_queue<std::uint32_t> heap_;
};

std::vector<std::uint32_t> identity_order(std::size_t cols) {
  std::vector<std::uint32_t> order(cols);
  std::iota(order.begin(), order.end(), 0u);
  return order;
}

}  // namespace

ModularRank rank_mod_prime(const SparseMatrix& m, std::uint64_t q, std::optional<std::size_t> upper_bound,
                           std::span<const std::uint32_t> order_in) {
  ModularRank out;
  out.prime = q;
  std::vector<std::uint32_t> fallback;
  if (order_in.empty()) {
    fallback = identity_order(m.cols());
    order_in = fallback;
  }
  if (upper_bound && *upper_bound == 0) {
    out.reached_bound = true;
    return out;
  }
  using Column = std::vector<std::pair<std::uint32_t, std::uint64_t>>;  // ascending rows, leading value 1
  std::vector<std::int32_t> pivot_of(m.rows(), -1);
  std::vector<Column> pivots;
  std::vector<std::uint64_t> acc(m.rows(), 0);
  RowQueue queue(m.rows());

  for (std::uint32_t j : order_in) {
    ++out.columns_used;
    for (const auto& e : m.column(j)) {
      acc[e.row] = to_residue(e.value, q);
      queue.push(e.row);
    }
    while (!queue.empty()) {
      const std::uint32_t r = queue.pop();
      const std::uint64_t c = acc[r];
      if (c == 0) continue;
      if (pivot_of[r] >= 0) {
        for (const auto& [row, val] : pivots[static_cast<std::size_t>(pivot_of[r])]) {
          const std::uint64_t sub = mulmod(c, val, q);
          acc[row] = acc[row] >= sub ? acc[row] - sub : acc[row] + q - sub;
          if (row != r) queue.push(row);
        }
        continue;
      }
      // New pivot at its largest row r; everything left in the queue lies below.
      const std::uint64_t inv = powmod(c, q - 2, q);
      Column col;
      col.emplace_back(r, 1);
      acc[r] = 0;
      while (!queue.empty()) {
        const std::uint32_t s = queue.pop();
        if (acc[s] != 0) col.emplace_back(s, mulmod(acc[s], inv, q));
        acc[s] = 0;
      }
      std::reverse(col.begin(), col.end());
      pivot_of[r] = static_cast<std::int32_t>(pivots.size());
      pivots.push_back(std::move(col));
      ++out.rank;
    }
    if (upper_bound && out.rank >= *upper_bound) {
      out.reached_bound = true;
      break;
    }
  }
  return out;
}

std::vector<std::uint64_t> random_primes(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    const std::uint64_t c = (rng() >> 3) | (std::uint64_t{1} << 61) | 1;
    if (gfq::is_prime(c) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

RankResult rank_multimodular(const SparseMatrix& m, std::uint64_t seed, std::optional<std::size_t> upper_bound,
                             std::size_t prime_count, Execution exec) {
  RankResult out;
  out.primes = random_primes(seed, prime_count);
  // Canonical simplex order keeps fill-in low; a random order is far worse.
  const auto order = identity_order(m.cols());

  // One prime first: if it reaches the bound the rank is certified and the
  // other primes add nothing.
  const ModularRank first = rank_mod_prime(m, out.primes[0], upper_bound, order);
  out.per_prime.push_back(first.rank);
  if (first.reached_bound) {
    out.rank = first.rank;
    out.exact = true;
    out.primes.resize(1);
    return out;
  }
  std::vector<ModularRank> rest(prime_count - 1);
  if (exec == Execution::Parallel) {
    const long count = static_cast<long>(rest.size());
#pragma omp parallel for schedule(static, 1)
    for (long i = 0; i < count; ++i)
      rest[static_cast<std::size_t>(i)] = rank_mod_prime(m, out.primes[static_cast<std::size_t>(i) + 1], upper_bound, order);
  } else {
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = rank_mod_prime(m, out.primes[i + 1], upper_bound, order);
  }
  out.rank = first.rank;
  for (const auto& r : rest) {
    out.per_prime.push_back(r.rank);
    if (r.reached_bound) out.exact = true;
    out.rank = std::max(out.rank, r.rank);
  }
  if (!out.exact && std::any_of(out.per_prime.begin(), out.per_prime.end(), [&](std::size_t r) { return r != out.rank; })) {
    std::string detail;
    for (auto r : out.per_prime) detail += " " + std::to_string(r);
    throw RankDisagreementError("modular ranks disagree:" + detail);
  }
  return out;
}

// ---- integer elimination ----

namespace {

struct Overflow {};

// Arithmetic policy for the unimodular eliminator: int64 with overflow traps, or mpz.
struct Checked64 {
  using T = std::int64_t;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static bool is_zero(T a) { return a == 0; }
  static bool is_unit(T a) { return a == 1 || a == -1; }
  static T from(std::int64_t v) { return v; }
  static mpz_class to_mpz(T a) { return mpz_class(static_cast<long>(a)); }
};

struct BigInt {
  using T = mpz_class;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static bool is_zero(const T& a) { return a == 0; }
  static bool is_unit(const T& a) { return a == 1 || a == -1; }
  static T from(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
  static mpz_class to_mpz(const T& a) { return a; }
};

template <typename Ops>
SmithResult unimodular_eliminate(const SparseMatrix& m, std::optional<std::size_t> upper_bound,
                                 std::span<const std::uint32_t> order) {
  using T = typename Ops::T;
  using Column = std::vector<std::pair<std::uint32_t, T>>;  // ascending rows; last entry is the leading +-1
  SmithResult out;
  std::vector<std::int32_t> pivot_of(m.rows(), -1);
  std::vector<Column> pivots;
  std::vector<T> acc(m.rows(), T(0));
  RowQueue queue(m.rows());

  auto load = [&](const auto& entries) {
    for (const auto& [row, val] : entries) {
      acc[row] = val;
      queue.push(row);
    }
  };
  auto eliminate = [&](std::uint32_t r) {
    const Column& u = pivots[static_cast<std::size_t>(pivot_of[r])];
    const T c = Ops::mul(acc[r], u.back().second);
    for (const auto& [row, val] : u) {
      acc[row] = Ops::sub(acc[row], Ops::mul(c, val));
      if (row != r) queue.push(row);
    }
  };
  auto drain = [&](Column& col) {
    while (!queue.empty()) {
      const std::uint32_t s = queue.pop();
      if (!Ops::is_zero(acc[s])) col.emplace_back(s, acc[s]);
      acc[s] = T(0);
    }
  };
  // Reduces the loaded column against unit pivots along its largest rows. A
  // new unit pivot is stored; a non-unit leading entry returns the column.
  auto reduce_leading = [&]() -> std::optional<Column> {
    while (!queue.empty()) {
      const std::uint32_t r = queue.pop();
      if (Ops::is_zero(acc[r])) continue;
      if (pivot_of[r] >= 0) {
        eliminate(r);
        continue;
      }
      Column col;
      col.emplace_back(r, acc[r]);
      acc[r] = T(0);
      drain(col);
      std::reverse(col.begin(), col.end());
      if (Ops::is_unit(col.back().second)) {
        pivot_of[r] = static_cast<std::int32_t>(pivots.size());
        pivots.push_back(std::move(col));
        return std::nullopt;
      }
      return col;
    }
    return std::nullopt;
  };

  std::vector<Column> deferred;
  for (std::uint32_t j : order) {
    // Unit pivots alone reaching the bound span a saturated lattice of full rank,
    // so every remaining column already lies in their image.
    if (upper_bound && pivots.size() >= *upper_bound) {
      out.stopped_at_bound = true;
      break;
    }
    ++out.columns_used;
    std::vector<std::pair<std::uint32_t, T>> entries;
    for (const auto& e : m.column(j)) entries.emplace_back(e.row, Ops::from(e.value));
    load(entries);
    if (auto col = reduce_leading()) deferred.push_back(std::move(*col));
  }
  // Deferred columns may meet new unit pivots; retry until nothing changes.
  for (bool progress = true; progress && !deferred.empty();) {
    progress = false;
    std::vector<Column> still;
    for (auto& col : deferred) {
      const std::size_t before = pivots.size();
      load(col);
      auto left = reduce_leading();
      if (pivots.size() != before) progress = true;
      if (left) still.push_back(std::move(*left));
    }
    deferred = std::move(still);
  }
  // Clear every unit-pivot row from the deferred columns; what remains is
  // independent of the unit part and goes to dense SNF.
  std::vector<std::vector<std::pair<std::uint32_t, mpz_class>>> reduced;
  for (auto& col : deferred) {
    load(col);
    std::vector<std::pair<std::uint32_t, mpz_class>> rest;
    while (!queue.empty()) {
      const std::uint32_t r = queue.pop();
      if (Ops::is_zero(acc[r])) continue;
      if (pivot_of[r] >= 0) {
        eliminate(r);
        continue;
      }
      rest.emplace_back(r, Ops::to_mpz(acc[r]));
      acc[r] = T(0);
    }
    if (!rest.empty()) reduced.push_back(std::move(rest));
  }
  std::vector<mpz_class> divisors(pivots.size(), mpz_class(1));
  if (!reduced.empty()) {
    std::vector<std::uint32_t> rows;
    for (const auto& c : reduced)
      for (const auto& e : c) rows.push_back(e.first);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (static_cast<double>(rows.size()) * static_cast<double>(reduced.size()) > 4e6)
      throw TooLargeError("non-unimodular remainder too large for dense SNF",
                          std::to_string(rows.size()) + "x" + std::to_string(reduced.size()));
    std::vector<std::vector<mpz_class>> dense(rows.size(), std::vector<mpz_class>(reduced.size(), 0));
    for (std::size_t j = 0; j < reduced.size(); ++j)
      for (const auto& e : reduced[j])
        dense[static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), e.first) - rows.begin())][j] = e.second;
    for (auto& d : smith_normal_form_dense(std::move(dense))) divisors.push_back(std::move(d));
  }
  out.divisors = std::move(divisors);
  out.rank = out.divisors.size();
  return out;
}

}  // namespace

std::vector<mpz_class> SmithResult::torsion() const {
  std::vector<mpz_class> t;
  for (const auto& d : divisors)
    if (d != 1) t.push_back(d);
  return t;
}

SmithResult smith_normal_form(const SparseMatrix& m, std::optional<std::size_t> upper_bound, double budget) {
  const double size = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (size > budget)
    throw TooLargeError("Smith normal form budget exceeded", std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const auto order = identity_order(m.cols());
  try {
    return unimodular_eliminate<Checked64>(m, upper_bound, order);
  } catch (const Overflow&) {
    return unimodular_eliminate<BigInt>(m, upper_bound, order);
  }
}

std::vector<mpz_class> smith_normal_form_dense(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) {
        std::sort(out.begin(), out.end());
        return out;
      }
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      const mpz_class piv = a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide the whole trailing block; otherwise fold an offending row in.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), piv.get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides_all = false;
            break;
          }
      if (!divides_all) continue;
      out.push_back(abs(piv));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t rank_bareiss(const SparseMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) a[e.row][j] = static_cast<long>(e.value);
  const std::size_t rows = m.rows(), cols = m.cols();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace topcoh::homology
