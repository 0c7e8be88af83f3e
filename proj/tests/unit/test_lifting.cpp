#include "doctest.h"

#include <random>

#include "topcoh/errors.hpp"
#include "topcoh/gfq/linalg.hpp"
#include "topcoh/lifting/lifting.hpp"

using namespace topcoh;
using namespace topcoh::lifting;
using gfq::Field;
using gfq::Matrix;
using gfq::Vector;

namespace {

Matrix mat(std::size_t n, std::vector<gfq::Residue> data) {
  Matrix m(n, n);
  m.data = std::move(data);
  return m;
}

// Uniform element of SL_n(F_p): rejection-sample GL_n, then scale the first row.
Matrix random_sl(std::mt19937_64& rng, const Field& f, std::size_t n) {
  while (true) {
    Matrix m(n, n);
    for (auto& x : m.data) x = static_cast<gfq::Residue>(rng() % f.p());
    const gfq::Residue d = gfq::det(f, m);
    if (d == 0) continue;
    const gfq::Residue s = f.inv(d);
    for (std::size_t j = 0; j < n; ++j) m(0, j) = f.mul(m(0, j), s);
    return m;
  }
}

// Exact integer determinant by cofactor expansion, independent of the library's Bareiss.
mpz_class cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    const mpz_class term = a[0][j] * cofactor_det(minor);
    total += j % 2 ? mpz_class(-term) : term;
  }
  return total;
}

IntMatrix from_columns(const std::vector<std::vector<mpz_class>>& cols) {
  const std::size_t n = cols.size();
  IntMatrix m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = cols[j][i];
  return m;
}

}  // namespace

TEST_CASE("decompose_elementary examples") {
  const Field f(5);
  CHECK(decompose_elementary(f, Matrix::identity(3)).empty());
  const auto word = decompose_elementary(f, mat(2, {1, 3, 0, 1}));
  CHECK(word == std::vector<Transvection>{{0, 1, 3}});
  const auto rot = decompose_elementary(f, mat(2, {0, 4, 1, 0}));
  CHECK(rot == std::vector<Transvection>{{0, 1, 4}, {1, 0, 1}, {0, 1, 4}});
  CHECK(multiply_word(f, 2, rot) == mat(2, {0, 4, 1, 0}));
}

TEST_CASE("decompose_elementary rejects determinant other than one") {
  const Field f(5);
  CHECK_THROWS_AS(decompose_elementary(f, mat(2, {2, 0, 0, 2})), NotSpecialLinearError);
  CHECK_THROWS_AS(decompose_elementary(f, Matrix(2, 3)), NotSpecialLinearError);
}

TEST_CASE("lift_sl examples") {
  const Field f5(5), f7(7);
  const IntMatrix id = lift_sl(f5, Matrix::identity(3));
  CHECK(id == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(lift_sl(f7, mat(2, {1, 1, 0, 1})) == IntMatrix{{1, 1}, {0, 1}});
  const IntMatrix l = lift_sl(f5, mat(2, {2, 0, 0, 3}));
  CHECK(cofactor_det(l) == 1);
  CHECK(reduce(f5, l) == mat(2, {2, 0, 0, 3}));
}

TEST_CASE("lift_sl roundtrip on 500 samples per size and prime") {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const Field f(p);
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int s = 0; s < 500; ++s) {
        const Matrix m = random_sl(rng, f, n);
        const auto word = decompose_elementary(f, m);
        REQUIRE(word.size() <= 3 * n + n * (n - 1));
        REQUIRE(multiply_word(f, n, word) == m);
        const IntMatrix l = lift_sl(f, m);
        REQUIRE(reduce(f, l) == m);
        REQUIRE(cofactor_det(l) == 1);
        REQUIRE(determinant(l) == 1);
      }
    }
  }
}

TEST_CASE("integer determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 5;
    IntMatrix a(n, std::vector<mpz_class>(n));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<long>(rng() % 21) - 10;
    REQUIRE(determinant(a) == cofactor_det(a));
  }
}

TEST_CASE("lift_pm_basis examples") {
  const Field f(5);
  const auto std_basis = lift_pm_basis(f, {{1, 0}, {0, 1}});
  CHECK(std_basis == std::vector<std::vector<mpz_class>>{{1, 0}, {0, 1}});
  const auto already = lift_pm_basis(f, {{1, 1}, {0, 1}});
  CHECK(already == std::vector<std::vector<mpz_class>>{{1, 1}, {0, 1}});

  const std::vector<Vector> diag{{2, 0}, {0, 3}};
  const auto lifted = lift_pm_basis(f, diag);
  const mpz_class d = cofactor_det(from_columns(lifted));
  CHECK((d == 1 || d == -1));
  for (std::size_t j = 0; j < 2; ++j) {
    Vector reduced;
    for (const auto& x : lifted[j]) reduced.push_back(f.reduce(mpz_class(x % 5).get_si()));
    CHECK(gfq::canonicalize_pm(f, reduced) == gfq::canonicalize_pm(f, diag[j]));
  }

  const std::vector<Vector> minus_one{{2, 0}, {0, 2}};
  const auto neg = lift_pm_basis(f, minus_one);
  CHECK(cofactor_det(from_columns(neg)) == -1);

  CHECK_THROWS_AS(lift_pm_basis(f, {{2, 0}, {0, 1}}), NotUnimodularError);
}

TEST_CASE("lift_pm_basis reduces to the given classes") {
  std::mt19937_64 rng(99);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const Field f(p);
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int s = 0; s < 100; ++s) {
        Matrix m = random_sl(rng, f, n);
        if (rng() % 2) {
          for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = f.neg(m(i, n - 1));
        }
        std::vector<Vector> cols(n, Vector(n));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) cols[j][i] = m(i, j);
        const auto lifted = lift_pm_basis(f, cols);
        const mpz_class d = cofactor_det(from_columns(lifted));
        REQUIRE((d == 1 || d == -1));
        for (std::size_t j = 0; j < n; ++j) {
          Vector reduced;
          for (const auto& x : lifted[j]) {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
            reduced.push_back(static_cast<gfq::Residue>(r.get_ui()));
          }
          REQUIRE(gfq::canonicalize_pm(f, reduced) == gfq::canonicalize_pm(f, cols[j]));
        }
      }
    }
  }
}
