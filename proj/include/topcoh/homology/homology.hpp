#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "topcoh/complexes/complex.hpp"
#include "topcoh/homology/sparse.hpp"

namespace topcoh::homology {

/// Boundary map C_k -> C_{k-1}. Rows follow the canonical order of (k-1)-simplices,
/// columns that of k-simplices. Degree 0 is the augmentation C_0 -> Z when reduced.
struct BoundaryMatrix {
  int degree = 0;
  SparseMatrix matrix;
};

/// d_1 .. d_dim (plus the augmentation d_0 first when `reduced`). Verifies face
/// closure and d o d = 0; throws MalformedComplexError otherwise.
std::vector<BoundaryMatrix> boundary_matrices(const complexes::SimplicialComplex& k, bool reduced = false);

/// Single boundary map of degree k >= 1 (no closure check).
SparseMatrix boundary_matrix(const complexes::SimplicialComplex& k, int degree);

struct HomologyOptions {
  bool reduced = true;
  bool snf = true;             // certify torsion where within budget
  double snf_budget = 4e8;     // rows*cols per boundary map
  std::uint64_t seed = 20240917;
  std::size_t prime_count = 3;
  Execution exec = Execution::Parallel;
  /// Highest homology degree needed; ranks above max_degree + 1 are skipped.
  std::optional<int> max_degree;
};

struct HomologyReport {
  bool reduced = true;
  int min_degree = 0;                             // -1 for reduced homology
  std::vector<mpz_class> betti;                   // betti[i] is degree min_degree + i
  std::vector<std::optional<std::vector<mpz_class>>> torsion;  // same indexing; nullopt = not certified
  mpz_class euler;                                // from simplex counts (reduced when requested)
  std::string method;                             // "exact" or "multi-modular"
  std::uint64_t seed = 0;
  bool rank_only = false;                         // some torsion could not be certified

  const mpz_class& betti_at(int degree) const { return betti.at(static_cast<std::size_t>(degree - min_degree)); }
  int max_degree() const { return min_degree + static_cast<int>(betti.size()) - 1; }
};

HomologyReport betti(const complexes::SimplicialComplex& k, const HomologyOptions& opt = {});

struct AcyclicityReport {
  bool pass = false;
  int through_degree = 0;
  bool rank_only = false;
  std::vector<mpz_class> betti;                              // reduced, degrees -1 .. through_degree
  std::vector<std::optional<std::vector<mpz_class>>> torsion;
  std::string method;
  std::string detail;
};

/// Checks that reduced H_k(K) vanishes for every k <= through_degree.
AcyclicityReport acyclicity_check(const complexes::SimplicialComplex& k, int through_degree, HomologyOptions opt = {});

struct SurfaceReport {
  mpz_class genus;
  mpz_class b1;
  std::size_t vertices = 0, edges = 0, triangles = 0;
  std::string method;
};

/// Closed connected orientable surface test; throws NotAClosedSurfaceError naming the failed condition.
SurfaceReport surface_check(const complexes::SimplicialComplex& k, const HomologyOptions& opt = {});

/// Relative boundary used for the coinvariants: rows are the standard full-span
/// (n-1)-simplices of BDA^+-_n(F_p), columns its augmented n-simplices.
SparseMatrix coinvariants_matrix(const complexes::SimplicialComplex& bda);

struct CoinvariantsResult {
  mpz_class rank;
  std::size_t rows = 0, cols = 0, matrix_rank = 0;
  std::string method;
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 0;
};

/// Rank of H_{n-1}(BDA^+-_n(F_p), BDA'_n(F_p)), i.e. rows minus rank of the relative boundary.
CoinvariantsResult coinvariants_rank(std::size_t n, std::uint32_t p, const HomologyOptions& opt = {},
                                     std::size_t cap = 5'000'000);

struct KernelReport {
  std::size_t n = 0;
  std::uint32_t p = 0;
  mpz_class coinv_rank;
  mpz_class t_n;
  mpz_class kernel_rank;
  mpz_class predicted_kernel_lower_bound;
  bool consistent = false;  // kernel 0 for p <= 5, kernel >= prediction otherwise
  std::string method;
};

KernelReport kernel_report(std::size_t n, std::uint32_t p, const HomologyOptions& opt = {}, std::size_t cap = 5'000'000);

}  // namespace topcoh::homology
