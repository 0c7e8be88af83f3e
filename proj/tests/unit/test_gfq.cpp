#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "topcoh/errors.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/gfq/enumerate.hpp"
#include "topcoh/gfq/field.hpp"
#include "topcoh/gfq/linalg.hpp"

using namespace topcoh;
using namespace topcoh::gfq;

namespace {

// Leibniz expansion over all permutations; only for tiny matrices.
Residue leibniz_det(const Field& f, const Matrix& m) {
  std::vector<std::size_t> perm(m.rows);
  std::iota(perm.begin(), perm.end(), 0);
  Residue total = 0;
  do {
    Residue term = 1;
    for (std::size_t i = 0; i < m.rows; ++i) term = f.mul(term, m(i, perm[i]));
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  Matrix m(n, n);
  for (auto& x : m.data) x = static_cast<Residue>(rng() % p);
  return m;
}

// Independent iff no nonzero coefficient vector kills them, by trying all p^k of them.
bool brute_independent(const Field& f, const std::vector<Vector>& vs, std::size_t n) {
  const std::size_t k = vs.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= f.p();
  for (std::uint64_t code = 1; code < total; ++code) {
    Vector coeff = decode(code, k, f.p());
    Vector sum(n, 0);
    for (std::size_t i = 0; i < k; ++i) sum = combine(f, 1, sum, coeff[i], vs[i]);
    if (is_zero(sum)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("field rejects composite moduli") {
  CHECK_THROWS_AS(Field(4), DomainError);
  CHECK_THROWS_AS(Field(1), DomainError);
  CHECK_NOTHROW(Field(2));
  CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime(2305843009213693953ULL));
}

TEST_CASE("field inverses") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    Field f(p);
    for (Residue a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), DomainError);
  }
}

TEST_CASE("canonicalize_pm examples") {
  Field f5(5), f7(7);
  CHECK(canonicalize_pm(f5, {4, 0}).rep() == Vector{1, 0});
  CHECK(canonicalize_pm(f5, {2, 3}).rep() == Vector{2, 3});
  CHECK(canonicalize_pm(f7, {0, 5, 1}).rep() == Vector{0, 2, 6});
  CHECK_THROWS_AS(canonicalize_pm(f5, {0, 0}), ZeroVectorError);
}

TEST_CASE("canonicalize_pm is idempotent and negation invariant, exhaustively") {
  const std::vector<std::pair<std::size_t, std::uint32_t>> cases{{4, 2}, {5, 3}, {4, 5}, {3, 7}, {2, 11}, {5, 7}};
  for (auto [n, p] : cases) {
    Field f(p);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::uint64_t code = 1; code < total; ++code) {
      const Vector v = decode(code, n, p);
      const PmVector c = canonicalize_pm(f, v);
      REQUIRE(canonicalize_pm(f, c.rep()) == c);
      REQUIRE(canonicalize_pm(f, negate(f, v)) == c);
      REQUIRE((c.rep() == v || c.rep() == negate(f, v)));
    }
  }
}

TEST_CASE("canonicalize_proj picks leading one") {
  Field f(7);
  CHECK(canonicalize_proj(f, {0, 3, 5}).rep() == Vector{0, 1, 4});
  CHECK(canonicalize_proj(f, {6, 6}).rep() == Vector{1, 1});
}

TEST_CASE("det examples") {
  CHECK(det(Field(5), Matrix::identity(4)) == 1);
  Matrix a(2, 2);
  a.data = {1, 1, 0, 2};
  CHECK(det(Field(5), a) == 2);
  Matrix c(3, 3);
  c.data = {0, 1, 0, 0, 0, 1, 1, 0, 0};
  CHECK(det(Field(7), c) == 1);
  CHECK_THROWS_AS(det(Field(5), Matrix(2, 3)), ShapeError);
}

TEST_CASE("det matches the Leibniz expansion and is multiplicative") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    Field f(p);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 30; ++trial) {
        const Matrix a = random_matrix(rng, n, p), b = random_matrix(rng, n, p);
        REQUIRE(det(f, a) == leibniz_det(f, a));
        REQUIRE(det(f, multiply(f, a, b)) == f.mul(det(f, a), det(f, b)));
      }
    }
  }
}

TEST_CASE("det of permutation matrices is the sign") {
  Field f(7);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    Matrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, perm[i]) = 1;
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    CHECK(det(f, m) == (inversions % 2 ? 6u : 1u));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("is_partial_basis examples and brute-force agreement") {
  Field f5(5);
  const std::vector<Vector> e{{1, 0}, {0, 1}}, dep{{1, 2}, {2, 4}}, none{};
  CHECK(is_partial_basis(f5, e));
  CHECK_FALSE(is_partial_basis(f5, dep));
  CHECK(is_partial_basis(f5, none));

  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field f(p);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng() % 4, k = rng() % (n + 2);
      std::vector<Vector> vs(k, Vector(n));
      // Small entries make dependencies common enough to exercise both answers.
      for (auto& v : vs)
        for (auto& x : v) x = static_cast<Residue>(rng() % std::min<std::uint32_t>(p, 3));
      REQUIRE(is_partial_basis(f, vs) == brute_independent(f, vs, n));
    }
  }
}

TEST_CASE("enumerate_pm_vectors counts and order") {
  CHECK(enumerate_pm_vectors(1, 5).size() == 2);
  CHECK(enumerate_pm_vectors(2, 5).size() == 12);
  CHECK(enumerate_pm_vectors(2, 2).size() == 3);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    Field f(p);
    const auto all = enumerate_pm_vectors(3, p);
    CHECK(std::is_sorted(all.begin(), all.end()));
    // Oracle: distinct canonical classes of every nonzero vector.
    std::set<PmVector> classes;
    for (std::uint64_t code = 1; code < std::uint64_t(p) * p * p; ++code) classes.insert(canonicalize_pm(f, decode(code, 3, p)));
    CHECK(std::vector<PmVector>(classes.begin(), classes.end()) == all);
  }
}

TEST_CASE("enumerate_proj_vectors count") {
  CHECK(enumerate_proj_vectors(2, 5).size() == 6);
  CHECK(enumerate_proj_vectors(3, 2).size() == 7);
}

TEST_CASE("span examples") {
  Field f(5);
  const std::vector<Vector> full{{1, 0}, {1, 1}}, line{{2, 4}}, empty{};
  CHECK(span(f, full, 2).dim() == 2);
  const Subspace l = span(f, line, 2);
  CHECK(l.dim() == 1);
  CHECK(l.basis() == std::vector<Vector>{{1, 2}});
  CHECK(span(f, empty, 3).dim() == 0);
  CHECK(span(f, empty, 3).ambient() == 3);
}

TEST_CASE("span is a normal form") {
  std::mt19937_64 rng(3);
  Field f(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vector> vs(3, Vector(4));
    for (auto& v : vs)
      for (auto& x : v) x = static_cast<Residue>(rng() % 5);
    // Row operations must not change the span.
    std::vector<Vector> ws = vs;
    ws[0] = combine(f, 1, ws[0], 3, ws[1]);
    ws[2] = scale(f, 2, ws[2]);
    std::swap(ws[1], ws[2]);
    REQUIRE(span(f, vs, 4) == span(f, ws, 4));
    for (const auto& v : vs) REQUIRE(contains(f, span(f, vs, 4), v));
  }
}

TEST_CASE("orientation_of examples") {
  Field f(5);
  const std::vector<Vector> echelon{{1, 0}, {0, 1}}, twice{{2, 0}, {0, 1}}, minus{{4, 0}, {0, 1}};
  CHECK(orientation_of(f, echelon).cls == 1);
  CHECK(orientation_of(f, twice).cls == 2);
  CHECK(orientation_of(f, minus).cls == 1);
  const std::vector<Vector> dep{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(orientation_of(f, dep), NotABasisError);

  const Subspace plane = span(f, std::vector<Vector>{{1, 2, 3}, {0, 1, 4}}, 3);
  CHECK(orientation_of(f, plane.basis()).cls == 1);
}

TEST_CASE("orientation class scales with the determinant of a change of basis") {
  Field f(7);
  const std::vector<Vector> basis{{1, 0, 2}, {0, 1, 5}};
  // New basis (a*b0 + b*b1, c*b0 + d*b1) changes the class by ad - bc.
  for (Residue a = 0; a < 7; ++a)
    for (Residue d = 0; d < 7; ++d) {
      const Residue b = 1, c = 3;
      const Residue dt = f.sub(f.mul(a, d), f.mul(b, c));
      if (dt == 0) continue;
      const std::vector<Vector> nb{combine(f, a, basis[0], b, basis[1]), combine(f, c, basis[0], d, basis[1])};
      CHECK(orientation_of(f, nb).cls == f.sign_class(dt));
    }
}

TEST_CASE("number of orientations") {
  CHECK(all_orientations(Field(2)).size() == 1);
  CHECK(all_orientations(Field(3)).size() == 1);
  CHECK(all_orientations(Field(5)).size() == 2);
  CHECK(all_orientations(Field(11)).size() == 5);
}

TEST_CASE("enumerate_subspaces examples") {
  CHECK(enumerate_subspaces(2, 5, 1).size() == 6);
  CHECK(enumerate_subspaces(3, 2, 1).size() == 7);
  CHECK(enumerate_subspaces(4, 3, 0).size() == 1);
}

TEST_CASE("enumerate_subspaces matches distinct spans of tuples") {
  // Oracle independent of the echelon enumerator: span every k-tuple of vectors.
  for (auto [n, p, k] : std::vector<std::tuple<std::size_t, std::uint32_t, std::size_t>>{
           {3, 2, 1}, {3, 2, 2}, {3, 3, 2}, {4, 2, 2}, {2, 5, 1}, {3, 5, 1}}) {
    Field f(p);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    std::set<Subspace> spans;
    std::vector<std::uint64_t> idx(k, 1);
    while (true) {
      std::vector<Vector> vs;
      for (auto c : idx) vs.push_back(decode(c, n, p));
      if (is_partial_basis(f, vs)) spans.insert(span(f, vs, n));
      std::size_t pos = 0;
      while (pos < k && ++idx[pos] == total) idx[pos++] = 1;
      if (pos == k) break;
    }
    const auto listed = enumerate_subspaces(n, p, k);
    CHECK(std::set<Subspace>(listed.begin(), listed.end()) == spans);
    CHECK(listed.size() == spans.size());
  }
}

TEST_CASE("subspace counts equal Gaussian binomials") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::size_t n = 0; n <= 5; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        const auto subs = enumerate_subspaces(n, p, k);
        REQUIRE(mpz_class(static_cast<unsigned long>(subs.size())) == formulas::gaussian_binomial(n, k, p));
        for (const auto& s : subs) REQUIRE(s.dim() == k);
      }
    }
  }
}

TEST_CASE("count_avoiding_line examples") {
  CHECK(count_avoiding_line(2, 5, 1, span(Field(5), std::vector<Vector>{{1, 0}}, 2)) == 5);
  CHECK(count_avoiding_line(3, 2, 1, span(Field(2), std::vector<Vector>{{0, 0, 1}}, 3)) == 6);
  CHECK(count_avoiding_line(3, 3, 2, span(Field(3), std::vector<Vector>{{1, 1, 0}}, 3)) == 9);
}

TEST_CASE("count_avoiding_line equals p^k times a Gaussian binomial for every line") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const auto& line : enumerate_subspaces(n, p, 1)) {
        for (std::size_t k = 1; k + 1 <= n; ++k) {
          mpz_class expected;
          mpz_ui_pow_ui(expected.get_mpz_t(), p, k);
          expected *= formulas::gaussian_binomial(n - 1, k, p);
          REQUIRE(count_avoiding_line(n, p, k, line) == expected);
        }
      }
    }
  }
}

TEST_CASE("encode and decode are inverse") {
  for (std::uint64_t c = 0; c < 125; ++c) CHECK(encode(decode(c, 3, 5), 5) == c);
}
