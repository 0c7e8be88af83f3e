#pragma once

#include <cstddef>
#include <cstdint>

#include <gmpxx.h>

#include "topcoh/complexes/complex.hpp"
#include "topcoh/execution.hpp"

namespace topcoh::complexes {

struct BuildOptions {
  std::size_t cap = 5'000'000;  // total simplices, all dimensions
  Execution exec = Execution::Parallel;
};

// Every builder checks the exact projected size against the cap before
// enumerating anything and throws TooLargeError carrying the projection.

SimplicialComplex build_B_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_B_proj(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_BD_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_BA_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_BDA_pm(std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});
/// Simplices of BDA^+-_n whose vertices span a proper subspace. Requires n >= 2.
SimplicialComplex build_BDA_prime(std::size_t n, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_tits(std::size_t n, std::uint32_t p, const BuildOptions& opt = {});
SimplicialComplex build_tits_oriented(std::size_t n, std::uint32_t p, const BuildOptions& opt = {});

/// Dispatch by family; m is ignored by the families that do not take it.
SimplicialComplex build(Family family, std::size_t n, std::size_t m, std::uint32_t p, const BuildOptions& opt = {});

/// Exact total number of simplices the builder would produce, from counting formulas.
mpz_class projected_size(Family family, std::size_t n, std::size_t m, std::uint32_t p);

}  // namespace topcoh::complexes
