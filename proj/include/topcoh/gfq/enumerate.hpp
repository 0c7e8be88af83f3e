#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "topcoh/gfq/linalg.hpp"

namespace topcoh::gfq {

// Exhaustive enumerators. All outputs are in deterministic lexicographic order.

/// All (p^n - 1)/2 canonical +-vectors of F_p^n (p^n - 1 when p = 2).
std::vector<PmVector> enumerate_pm_vectors(std::size_t n, std::uint32_t p);

/// All (p^n - 1)/(p - 1) projective points of F_p^n.
std::vector<ProjVector> enumerate_proj_vectors(std::size_t n, std::uint32_t p);

/// Every k-dimensional subspace of F_p^n exactly once, via its echelon form.
std::vector<Subspace> enumerate_subspaces(std::size_t n, std::uint32_t p, std::size_t k);

/// Number of k-dimensional subspaces of F_p^n not containing the line `line`,
/// counted by enumeration.
mpz_class count_avoiding_line(std::size_t n, std::uint32_t p, std::size_t k, const Subspace& line);

}  // namespace topcoh::gfq
