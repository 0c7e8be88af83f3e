#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "topcoh/complexes/builders.hpp"
#include "topcoh/errors.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/homology/homology.hpp"
#include "topcoh/homology/sparse.hpp"

using namespace topcoh;
using namespace topcoh::homology;
using complexes::SimplicialComplex;

namespace {

std::vector<mpz_class> Zs(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

SparseMatrix random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density_pct, int range) {
  std::vector<std::vector<std::int64_t>> d(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& row : d)
    for (auto& x : row)
      if (static_cast<int>(rng() % 100) < density_pct) x = static_cast<std::int64_t>(rng() % (2 * range + 1)) - range;
  return SparseMatrix::from_dense(d);
}

mpz_class minor_det(const std::vector<std::vector<std::int64_t>>& a, const std::vector<std::size_t>& r,
                    const std::vector<std::size_t>& c) {
  // Laplace expansion along the first row; tiny sizes only.
  if (r.size() == 1) return a[r[0]][c[0]];
  mpz_class total = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<std::size_t> rr(r.begin() + 1, r.end()), cc;
    for (std::size_t t = 0; t < c.size(); ++t)
      if (t != j) cc.push_back(c[t]);
    const mpz_class term = a[r[0]][c[j]] * minor_det(a, rr, cc);
    total += j % 2 ? mpz_class(-term) : term;
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Elementary divisors from determinantal divisors: D_k = gcd of all k x k minors,
// d_k = D_k / D_{k-1}. Independent of any elimination.
std::vector<mpz_class> snf_by_minors(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    subsets(rows, k, [&](const std::vector<std::size_t>& r) {
      subsets(cols, k, [&](const std::vector<std::size_t>& c) {
        mpz_class d = minor_det(a, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

SimplicialComplex triangle_boundary() { return complexes::from_facets({{0, 1}, {1, 2}, {0, 2}}, 3); }

// Six-vertex real projective plane.
SimplicialComplex rp2() {
  return complexes::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5},
                                 {1, 3, 4}, {1, 3, 5}, {2, 4, 5}},
                                6);
}

mpz_class alternating_betti(const HomologyReport& r) {
  mpz_class s = 0;
  for (int d = r.min_degree; d <= r.max_degree(); ++d) s += (((d % 2) + 2) % 2 == 0) ? r.betti_at(d) : mpz_class(-r.betti_at(d));
  return s;
}

}  // namespace

TEST_CASE("sparse matrix basics") {
  SparseMatrix m(3, 0);
  m.push_column({{2, 5}, {0, -1}, {1, 0}});
  CHECK(m.cols() == 1);
  CHECK(m.nnz() == 2);
  CHECK(m.at(0, 0) == -1);
  CHECK(m.at(2, 0) == 5);
  CHECK(m.at(1, 0) == 0);
  CHECK_THROWS_AS(m.push_column({{0, 1}, {0, 2}}), ShapeError);
  CHECK_THROWS_AS(m.push_column({{3, 1}}), ShapeError);
  const std::vector<std::vector<std::int64_t>> d{{1, 0, 2}, {0, -3, 0}};
  CHECK(SparseMatrix::from_dense(d).to_dense() == d);
}

TEST_CASE("matrix text format round-trips") {
  std::mt19937_64 rng(5);
  const SparseMatrix m = random_sparse(rng, 7, 9, 30, 4);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
  std::stringstream header;
  write_matrix(header, SparseMatrix::from_dense({{0, 2}, {1, 0}}));
  CHECK(header.str() == "2 2 2\n1 0 1\n0 1 2\n");
  std::stringstream bad("2 2 1\n5 0 1\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
  std::stringstream truncated("2 2 3\n0 0 1\n");
  CHECK_THROWS_AS(read_matrix(truncated), ParseError);
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(SparseMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).divisors == Zs({1, 1, 1}));
  CHECK(smith_normal_form(SparseMatrix::from_dense({{2, 0}, {0, 3}})).divisors == Zs({1, 6}));
  CHECK(smith_normal_form(SparseMatrix::from_dense({{0, 0}, {0, 0}})).divisors.empty());
  CHECK(smith_normal_form(SparseMatrix::from_dense({{2, 4}, {6, 8}})).divisors == Zs({2, 4}));
  CHECK(smith_normal_form_dense({{2, 0}, {0, 3}}) == Zs({1, 6}));
}

TEST_CASE("smith normal form matches determinantal divisors") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    const SparseMatrix m = random_sparse(rng, rows, cols, 60, 6);
    const auto expected = snf_by_minors(m.to_dense());
    REQUIRE(smith_normal_form(m).divisors == expected);
    std::vector<std::vector<mpz_class>> dense;
    for (const auto& row : m.to_dense()) dense.emplace_back(row.begin(), row.end());
    REQUIRE(smith_normal_form_dense(dense) == expected);
  }
}

TEST_CASE("smith normal form on larger random matrices agrees with the dense oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 10 + rng() % 30, cols = 10 + rng() % 30;
    const SparseMatrix m = random_sparse(rng, rows, cols, 10 + static_cast<int>(rng() % 30), 3);
    std::vector<std::vector<mpz_class>> dense;
    for (const auto& row : m.to_dense()) dense.emplace_back(row.begin(), row.end());
    const auto s = smith_normal_form(m);
    REQUIRE(s.divisors == smith_normal_form_dense(dense));
    REQUIRE(s.rank == rank_bareiss(m));
  }
}

TEST_CASE("smith normal form survives 64-bit overflow") {
  // Entries near 2^40 force the arbitrary-precision retry.
  const std::int64_t big = std::int64_t(1) << 40;
  const SparseMatrix m = SparseMatrix::from_dense({{big, big + 1, 3}, {big - 1, big, 5}, {7, 11, big + 3}});
  std::vector<std::vector<mpz_class>> dense;
  for (const auto& row : m.to_dense()) dense.emplace_back(row.begin(), row.end());
  CHECK(smith_normal_form(m).divisors == smith_normal_form_dense(dense));
}

TEST_CASE("smith normal form respects its budget") {
  SparseMatrix m(100, 100);
  for (std::uint32_t j = 0; j < 100; ++j) m.push_column({{j, 1}});
  CHECK_THROWS_AS(smith_normal_form(m, std::nullopt, 50.0), TooLargeError);
  CHECK(smith_normal_form(m, std::nullopt, 1e4).rank == 100);
}

TEST_CASE("modular rank agrees with the exact rank") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 5 + rng() % 40, cols = 5 + rng() % 40;
    const SparseMatrix m = random_sparse(rng, rows, cols, 5 + static_cast<int>(rng() % 40), 5);
    const std::size_t exact = rank_bareiss(m);
    const RankResult serial = rank_multimodular(m, 1234 + static_cast<std::uint64_t>(trial), std::nullopt, 3, Execution::Serial);
    const RankResult parallel = rank_multimodular(m, 1234 + static_cast<std::uint64_t>(trial), std::nullopt, 3, Execution::Parallel);
    REQUIRE(serial.rank == exact);
    REQUIRE(parallel.rank == exact);
    REQUIRE(serial.per_prime == parallel.per_prime);
    REQUIRE(serial.primes.size() == 3);
  }
}

TEST_CASE("modular rank drops exactly at a dividing prime") {
  const SparseMatrix m = SparseMatrix::from_dense({{3, 0}, {0, 1}});
  CHECK(rank_mod_prime(m, 3).rank == 1);
  CHECK(rank_mod_prime(m, 5).rank == 2);
}

TEST_CASE("a reached bound certifies the rank and stops early") {
  // Identity followed by many redundant columns.
  SparseMatrix m(4, 0);
  for (std::uint32_t i = 0; i < 4; ++i) m.push_column({{i, 1}});
  for (int j = 0; j < 20; ++j) m.push_column({{0, 1}, {3, -1}});
  const auto r = rank_mod_prime(m, 1000003, 4);
  CHECK(r.rank == 4);
  CHECK(r.reached_bound);
  CHECK(r.columns_used == 4);
  const auto mm = rank_multimodular(m, 1, 4);
  CHECK(mm.exact);
  CHECK(mm.rank == 4);
  const auto s = smith_normal_form(m, 4);
  CHECK(s.stopped_at_bound);
  CHECK(s.divisors == Zs({1, 1, 1, 1}));
}

TEST_CASE("random primes are deterministic, distinct, and in range") {
  const auto a = random_primes(99, 5), b = random_primes(99, 5);
  CHECK(a == b);
  CHECK(std::set<std::uint64_t>(a.begin(), a.end()).size() == 5);
  for (auto q : a) {
    CHECK(q > (std::uint64_t(1) << 61));
    CHECK(q < (std::uint64_t(1) << 62));
  }
  CHECK(random_primes(100, 5) != a);
}

TEST_CASE("boundary matrices") {
  const auto edge = complexes::from_facets({{0, 1}}, 2);
  const auto d1 = boundary_matrix(edge, 1);
  CHECK(d1.to_dense() == std::vector<std::vector<std::int64_t>>{{-1}, {1}});

  const auto circle = triangle_boundary();
  CHECK(smith_normal_form(boundary_matrix(circle, 1)).rank == 2);

  const auto discrete = complexes::build_tits(2, 5);
  const auto reduced = boundary_matrices(discrete, true);
  REQUIRE(reduced.size() == 1);
  CHECK(reduced[0].degree == 0);
  CHECK(boundary_matrices(discrete, false).empty());
}

TEST_CASE("boundary of a boundary vanishes on every family") {
  for (auto fam : {complexes::Family::BPm, complexes::Family::BDAPm, complexes::Family::BAPm,
                   complexes::Family::TitsOriented}) {
    const auto k = complexes::build(fam, 3, 0, 3);
    const auto maps = boundary_matrices(k, true);
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) CHECK(is_zero(multiply(maps[i].matrix, maps[i + 1].matrix)));
    for (const auto& bm : maps)
      for (std::size_t j = 0; j < bm.matrix.cols(); ++j) CHECK(bm.matrix.column(j).size() <= static_cast<std::size_t>(bm.degree) + 1);
  }
}

TEST_CASE("malformed complexes are rejected") {
  SimplicialComplex k(complexes::Family::Derived, 0, 0, 0);
  k.set_labels({{0}, {1}, {2}});
  const std::vector<complexes::VertexId> v0{0}, v1{1}, v2{2}, tri{0, 1, 2}, e01{0, 1};
  k.mutable_layer(0).push(v0, complexes::SimplexKind::Standard);
  k.mutable_layer(0).push(v1, complexes::SimplexKind::Standard);
  k.mutable_layer(0).push(v2, complexes::SimplexKind::Standard);
  k.mutable_layer(1).push(e01, complexes::SimplexKind::Standard);
  k.mutable_layer(2).push(tri, complexes::SimplexKind::Standard);
  CHECK_THROWS_AS(boundary_matrices(k), MalformedComplexError);
}

TEST_CASE("betti examples") {
  const auto circle = betti(triangle_boundary());
  CHECK(circle.min_degree == -1);
  CHECK(circle.betti == Zs({0, 0, 1}));
  CHECK(circle.method == "exact");

  const auto t32 = betti(complexes::build_tits(3, 2));
  CHECK(t32.betti == Zs({0, 0, 8}));
  CHECK(t32.euler == -8);

  const auto td35 = betti(complexes::build_tits_oriented(3, 5));
  CHECK(td35.betti == Zs({0, 0, 621}));

  const auto empty = betti(complexes::build_tits(1, 7));
  CHECK(empty.betti == Zs({1}));

  HomologyOptions unreduced;
  unreduced.reduced = false;
  CHECK(betti(triangle_boundary(), unreduced).betti == Zs({1, 1}));
}

TEST_CASE("torsion is detected by the Smith normal form") {
  const auto r = betti(rp2());
  CHECK(r.betti == Zs({0, 0, 0, 0}));
  REQUIRE(r.torsion[2]);  // degree 1
  CHECK(*r.torsion[2] == Zs({2}));
  CHECK_FALSE(acyclicity_check(rp2(), 1).pass);

  HomologyOptions no_snf;
  no_snf.snf = false;
  const auto rank_only = betti(rp2(), no_snf);
  CHECK(rank_only.betti == r.betti);
  CHECK_FALSE(rank_only.torsion[2].has_value());
  // Ranks that hit their bound are certified even without the Smith form.
  CHECK(rank_only.method == "exact");

  // On the genus-3 surface the top boundary stops short of its bound, so the
  // rank rests on prime agreement alone.
  const auto surface = betti(complexes::build_BDA_pm(2, 0, 7), no_snf);
  CHECK(surface.betti == Zs({0, 0, 6, 1}));
  CHECK(surface.method == "multi-modular");
  CHECK(surface.seed == no_snf.seed);
}

TEST_CASE("over-budget boundaries fall back to rank-only") {
  HomologyOptions tight;
  tight.snf_budget = 10;
  const auto r = betti(complexes::build_BDA_pm(2, 0, 5), tight);
  CHECK(r.rank_only);
  CHECK(r.betti == Zs({0, 0, 0, 1}));
  const auto acyc = acyclicity_check(complexes::build_BDA_pm(2, 0, 5), 1, tight);
  CHECK(acyc.pass);
  CHECK(acyc.rank_only);
}

TEST_CASE("Euler characteristic equals the alternating Betti sum") {
  std::vector<SimplicialComplex> ks{triangle_boundary(), rp2(), complexes::build_tits(1, 3)};
  for (auto fam : {complexes::Family::BPm, complexes::Family::BProj, complexes::Family::BDPm, complexes::Family::BAPm,
                   complexes::Family::BDAPm, complexes::Family::Tits, complexes::Family::TitsOriented})
    for (auto [n, m, p] : std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>>{{2, 0, 5}, {3, 0, 3}, {2, 1, 3}}) {
      if ((fam == complexes::Family::Tits || fam == complexes::Family::TitsOriented) && m) continue;
      ks.push_back(complexes::build(fam, n, m, p));
    }
  ks.push_back(complexes::build_BDA_prime(3, 3));
  for (const auto& k : ks) {
    for (bool reduced : {true, false}) {
      HomologyOptions opt;
      opt.reduced = reduced;
      const auto r = betti(k, opt);
      CHECK(alternating_betti(r) == r.euler);
      const mpz_class unreduced_euler = static_cast<long>(complexes::stats(k).euler);
      CHECK(r.euler == (reduced ? mpz_class(unreduced_euler - 1) : unreduced_euler));
      for (const auto& b : r.betti) CHECK(b >= 0);
    }
  }
}

TEST_CASE("acyclicity examples") {
  CHECK(acyclicity_check(complexes::build_BDA_pm(2, 0, 5), 1).pass);
  CHECK(acyclicity_check(complexes::build_BD_pm(2, 0, 7), 0).pass);
  const auto fail = acyclicity_check(complexes::build_BDA_pm(2, 0, 7), 1);
  CHECK_FALSE(fail.pass);
  CHECK(fail.betti[2] == 6);
  CHECK_FALSE(fail.detail.empty());
}

TEST_CASE("surface examples") {
  CHECK(surface_check(complexes::build_BDA_pm(2, 0, 5)).genus == 0);
  CHECK(surface_check(complexes::build_BDA_pm(2, 0, 7)).genus == 3);
  CHECK(surface_check(complexes::build_BDA_pm(2, 0, 11)).genus == 26);
  CHECK(surface_check(complexes::build_BDA_pm(2, 0, 3)).genus == 0);
  CHECK_THROWS_AS(surface_check(complexes::build_tits(3, 2)), NotAClosedSurfaceError);
  CHECK_THROWS_AS(surface_check(complexes::from_facets({{0, 1, 2}}, 3)), NotAClosedSurfaceError);
  CHECK_THROWS_AS(surface_check(rp2()), NotAClosedSurfaceError);
  // Two tetrahedron boundaries glued at a vertex: vertex link is two cycles.
  const auto pinched = complexes::from_facets({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 5}, {0, 4, 6},
                                               {0, 5, 6}, {4, 5, 6}},
                                              7);
  CHECK_THROWS_AS(surface_check(pinched), NotAClosedSurfaceError);
}

TEST_CASE("coinvariants matrix has three entries per column") {
  const auto bda = complexes::build_BDA_pm(2, 0, 7);
  const auto m = coinvariants_matrix(bda);
  CHECK(m.cols() == 56);
  CHECK(m.rows() == 84);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    REQUIRE(m.column(j).size() == 3);
    for (const auto& e : m.column(j)) REQUIRE((e.value == 1 || e.value == -1));
  }
}

TEST_CASE("coinvariants examples") {
  CHECK(coinvariants_rank(2, 5).rank == 11);
  CHECK(coinvariants_rank(2, 7).rank == 29);
  CHECK(coinvariants_rank(3, 3).rank == 27);
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n = 2; n <= 3; ++n) CHECK(coinvariants_rank(n, p).rank == formulas::steinberg_rank(p, n));
  }
}

TEST_CASE("kernel reports") {
  const auto k5 = kernel_report(2, 5);
  CHECK(k5.kernel_rank == 0);
  CHECK(k5.consistent);
  const auto k7 = kernel_report(2, 7);
  CHECK(k7.coinv_rank == 29);
  CHECK(k7.t_n == 23);
  CHECK(k7.kernel_rank == 6);
  CHECK(k7.predicted_kernel_lower_bound == 6);
  CHECK(k7.consistent);
  const auto k33 = kernel_report(3, 3);
  CHECK(k33.kernel_rank == 0);
}
