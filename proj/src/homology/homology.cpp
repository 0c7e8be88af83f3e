#include "topcoh/homology/homology.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "topcoh/complexes/builders.hpp"
#include "topcoh/errors.hpp"
#include "topcoh/formulas/formulas.hpp"

namespace topcoh::homology {

using complexes::SimplexKind;
using complexes::SimplicialComplex;
using complexes::VertexId;

namespace {

SparseMatrix augmentation(const SimplicialComplex& k) {
  SparseMatrix m(1, k.count(0));
  for (std::size_t j = 0; j < k.count(0); ++j) m.push_column({{0, 1}});
  return m;
}

std::string combine_method(bool all_exact) { return all_exact ? "exact" : "multi-modular"; }

}  // namespace

SparseMatrix boundary_matrix(const SimplicialComplex& k, int degree) {
  if (degree < 1 || degree > k.dim()) throw DomainError("no boundary map of degree " + std::to_string(degree));
  const auto& faces = k.layer(degree - 1);
  const auto& cells = k.layer(degree);
  SparseMatrix m(faces.size(), cells.size());
  std::vector<VertexId> face(static_cast<std::size_t>(degree));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto vs = cells.vertices(j);
    std::vector<SparseMatrix::Entry> col;
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != drop) face[w++] = vs[i];
      auto row = faces.find(face);
      if (!row) throw MalformedComplexError("a face of a " + std::to_string(degree) + "-simplex is missing");
      col.push_back({static_cast<std::uint32_t>(*row), drop % 2 == 0 ? 1 : -1});
    }
    m.push_column(std::move(col));
  }
  return m;
}

std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& k, bool reduced) {
  if (auto bad = complexes::check_face_closure(k)) throw MalformedComplexError(*bad);
  std::vector<BoundaryMatrix> out;
  if (reduced && k.dim() >= 0) out.push_back({0, augmentation(k)});
  for (int d = 1; d <= k.dim(); ++d) out.push_back({d, boundary_matrix(k, d)});
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (!is_zero(multiply(out[i].matrix, out[i + 1].matrix)))
      throw MalformedComplexError("boundary of a boundary is nonzero in degree " + std::to_string(out[i + 1].degree));
  return out;
}

HomologyReport betti(const SimplicialComplex& k, const HomologyOptions& opt) {
  HomologyReport rep;
  rep.reduced = opt.reduced;
  rep.seed = opt.seed;
  rep.min_degree = opt.reduced ? -1 : 0;
  const int top = k.dim();
  int last = opt.max_degree ? std::min(*opt.max_degree, top) : top;
  if (last < rep.min_degree) last = rep.min_degree;

  // counts[d - min_degree]
  auto count = [&](int d) -> std::size_t {
    if (d == -1) return opt.reduced ? 1 : 0;
    return k.count(d);
  };
  for (int d = rep.min_degree; d <= top; ++d)
    rep.euler += (((d % 2) + 2) % 2 == 0 ? 1 : -1) * mpz_class(static_cast<unsigned long>(count(d)));

  // ranks[d] of the boundary C_d -> C_{d-1}, for d = 0 .. last + 1
  std::vector<std::size_t> rank(static_cast<std::size_t>(last + 3), 0);
  std::vector<std::optional<std::vector<mpz_class>>> divisors_torsion(static_cast<std::size_t>(last + 3));
  bool all_exact = true;
  for (int d = 0; d <= last + 1; ++d) {
    auto& tor = divisors_torsion[static_cast<std::size_t>(d)];
    if (d > top) {
      tor = std::vector<mpz_class>{};
      continue;
    }
    if (d == 0) {
      rank[0] = opt.reduced && k.count(0) > 0 ? 1 : 0;
      tor = std::vector<mpz_class>{};
      continue;
    }
    const SparseMatrix m = boundary_matrix(k, d);
    const std::size_t bound = count(d - 1) - rank[static_cast<std::size_t>(d - 1)];
    const double size = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
    if (opt.snf && size <= opt.snf_budget) {
      const SmithResult s = smith_normal_form(m, bound, opt.snf_budget);
      rank[static_cast<std::size_t>(d)] = s.rank;
      tor = s.torsion();
    } else {
      const RankResult r = rank_multimodular(m, opt.seed + static_cast<std::uint64_t>(d), bound, opt.prime_count, opt.exec);
      rank[static_cast<std::size_t>(d)] = r.rank;
      all_exact = all_exact && r.exact;
      if (opt.snf) rep.rank_only = true;
    }
  }
  for (int d = rep.min_degree; d <= last; ++d) {
    const std::size_t rk = d >= 0 ? rank[static_cast<std::size_t>(d)] : 0;
    const std::size_t rk_up = rank[static_cast<std::size_t>(d + 1)];
    rep.betti.push_back(mpz_class(static_cast<unsigned long>(count(d))) - rk - rk_up);
    rep.torsion.push_back(opt.snf ? divisors_torsion[static_cast<std::size_t>(d + 1)] : std::nullopt);
  }
  rep.method = combine_method(all_exact);
  return rep;
}

AcyclicityReport acyclicity_check(const SimplicialComplex& k, int through_degree, HomologyOptions opt) {
  opt.reduced = true;
  opt.max_degree = through_degree;
  const HomologyReport h = betti(k, opt);
  AcyclicityReport out;
  out.through_degree = through_degree;
  out.method = h.method;
  out.rank_only = h.rank_only;
  out.pass = true;
  for (int d = -1; d <= through_degree; ++d) {
    const bool present = d <= h.max_degree();
    const mpz_class b = present ? h.betti_at(d) : mpz_class(0);
    out.betti.push_back(b);
    std::optional<std::vector<mpz_class>> tor =
        present ? h.torsion[static_cast<std::size_t>(d + 1)] : std::optional<std::vector<mpz_class>>(std::vector<mpz_class>{});
    out.torsion.push_back(tor);
    if (b != 0) {
      out.pass = false;
      out.detail += "reduced b_" + std::to_string(d) + " = " + b.get_str() + "; ";
    }
    if (tor && !tor->empty()) {
      out.pass = false;
      out.detail += "torsion in degree " + std::to_string(d) + "; ";
    }
  }
  if (out.rank_only) out.detail += "torsion not certified (rank-only)";
  return out;
}

SurfaceReport surface_check(const SimplicialComplex& k, const HomologyOptions& opt) {
  if (k.dim() != 2) throw NotAClosedSurfaceError("complex is not 2-dimensional");
  SurfaceReport out;
  out.vertices = k.count(0);
  out.edges = k.count(1);
  out.triangles = k.count(2);

  std::vector<int> edge_degree(k.count(1), 0);
  std::vector<std::vector<std::pair<VertexId, VertexId>>> vertex_link(k.count(0));
  const auto& tri = k.layer(2);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    auto vs = tri.vertices(t);
    for (std::size_t drop = 0; drop < 3; ++drop) {
      std::array<VertexId, 2> e{};
      std::size_t w = 0;
      for (std::size_t i = 0; i < 3; ++i)
        if (i != drop) e[w++] = vs[i];
      ++edge_degree[*k.layer(1).find(e)];
      vertex_link[vs[drop]].emplace_back(e[0], e[1]);
    }
  }
  for (std::size_t e = 0; e < edge_degree.size(); ++e)
    if (edge_degree[e] != 2)
      throw NotAClosedSurfaceError("edge " + std::to_string(e) + " lies in " + std::to_string(edge_degree[e]) +
                                   " triangles instead of 2");
  for (std::size_t v = 0; v < vertex_link.size(); ++v) {
    const auto& link_edges = vertex_link[v];
    if (link_edges.empty()) throw NotAClosedSurfaceError("vertex " + std::to_string(v) + " lies in no triangle");
    // Every link vertex has degree 2 (edge condition); check the link graph is one cycle.
    std::set<VertexId> seen{link_edges[0].first};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& [a, b] : link_edges) {
        if (seen.count(a) != seen.count(b)) {
          seen.insert(a);
          seen.insert(b);
          grew = true;
        }
      }
    }
    if (seen.size() != link_edges.size())
      throw NotAClosedSurfaceError("link of vertex " + std::to_string(v) + " is not a single cycle");
  }

  HomologyOptions h_opt = opt;
  h_opt.reduced = false;
  h_opt.snf = true;
  h_opt.max_degree.reset();
  const HomologyReport h = betti(k, h_opt);
  out.method = h.method;
  if (h.betti_at(0) != 1) throw NotAClosedSurfaceError("surface is not connected");
  if (h.betti_at(2) != 1) throw NotAClosedSurfaceError("b_2 = " + h.betti_at(2).get_str() + ", not orientable");
  const auto& tor1 = h.torsion[1];
  if (!tor1) throw NotAClosedSurfaceError("torsion in H_1 could not be certified within the SNF budget");
  if (!tor1->empty()) throw NotAClosedSurfaceError("H_1 has torsion, not orientable");
  out.b1 = h.betti_at(1);
  if (out.b1 % 2 != 0) throw NotAClosedSurfaceError("odd first Betti number");
  out.genus = out.b1 / 2;
  return out;
}

SparseMatrix coinvariants_matrix(const SimplicialComplex& bda) {
  const int n = static_cast<int>(bda.n());
  if (bda.dim() < n) return SparseMatrix(0, 0);
  const auto& faces = bda.layer(n - 1);
  const auto& cells = bda.layer(n);
  std::vector<std::int64_t> row_of(faces.size(), -1);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces.kind(i) == SimplexKind::Standard) row_of[i] = static_cast<std::int64_t>(rows++);
  SparseMatrix m(rows, cells.size());
  std::vector<VertexId> face(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto vs = cells.vertices(j);
    std::vector<SparseMatrix::Entry> col;
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != drop) face[w++] = vs[i];
      auto idx = faces.find(face);
      if (!idx) throw MalformedComplexError("missing face in BDA");
      if (row_of[*idx] < 0) continue;  // proper span: zero in the relative chains
      col.push_back({static_cast<std::uint32_t>(row_of[*idx]), drop % 2 == 0 ? 1 : -1});
    }
    if (col.size() != 3) throw MalformedComplexError("relative boundary column without exactly three entries");
    m.push_column(std::move(col));
  }
  return m;
}

CoinvariantsResult coinvariants_rank(std::size_t n, std::uint32_t p, const HomologyOptions& opt, std::size_t cap) {
  if (n < 2) throw DomainError("coinvariants_rank requires n >= 2");
  complexes::BuildOptions b;
  b.cap = cap;
  b.exec = opt.exec;
  const SimplicialComplex bda = complexes::build_BDA_pm(n, 0, p, b);
  const SparseMatrix m = coinvariants_matrix(bda);
  CoinvariantsResult out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.seed = opt.seed;
  const double size = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (opt.snf && size <= opt.snf_budget) {
    out.matrix_rank = smith_normal_form(m, std::nullopt, opt.snf_budget).rank;
    out.method = "exact";
  } else {
    // No useful bound here: the cokernel is what we are measuring.
    const RankResult r = rank_multimodular(m, opt.seed, std::nullopt, opt.prime_count, opt.exec);
    out.matrix_rank = r.rank;
    out.primes = r.primes;
    out.method = "multi-modular";
  }
  out.rank = mpz_class(static_cast<unsigned long>(out.rows - out.matrix_rank));
  return out;
}

KernelReport kernel_report(std::size_t n, std::uint32_t p, const HomologyOptions& opt, std::size_t cap) {
  KernelReport out;
  out.n = n;
  out.p = p;
  const auto t = formulas::t_sequence(p, n);
  out.t_n = t.at(n);
  const CoinvariantsResult c = coinvariants_rank(n, p, opt, cap);
  out.coinv_rank = c.rank;
  out.method = c.method;
  out.kernel_rank = out.coinv_rank - out.t_n;
  if (n == 2) {
    // For n = 2 the kernel is H_1 of the surface BDA_2, of rank twice its genus.
    out.predicted_kernel_lower_bound = 2 * formulas::modular_genus(p);
  } else {
    out.predicted_kernel_lower_bound = formulas::genus_factor(p) * formulas::gaussian_binomial(n, 2, p) * t.at(n - 2);
  }
  out.consistent = p <= 5 ? out.kernel_rank == 0 : out.kernel_rank >= out.predicted_kernel_lower_bound;
  return out;
}

}  // namespace topcoh::homology
