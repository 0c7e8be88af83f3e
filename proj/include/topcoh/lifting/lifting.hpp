#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "topcoh/gfq/linalg.hpp"

namespace topcoh::lifting {

/// Elementary matrix E_ij(a) = I + a e_ij, indices 0-based, i != j.
struct Transvection {
  std::size_t i = 0, j = 0;
  gfq::Residue a = 0;
  friend bool operator==(const Transvection&, const Transvection&) = default;
};

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Word in transvections whose product, in order, is m over F_p. The length is
/// bounded by the elimination schedule: at most 3n + n(n-1) factors.
/// Throws NotSpecialLinearError unless m is square with det 1.
std::vector<Transvection> decompose_elementary(const gfq::Field& f, const gfq::Matrix& m);

/// Product of a transvection word over F_p.
gfq::Matrix multiply_word(const gfq::Field& f, std::size_t n, const std::vector<Transvection>& word);

/// Integer matrix of determinant exactly 1 congruent to m mod p, built by
/// lifting each transvection coefficient to its least nonnegative residue.
IntMatrix lift_sl(const gfq::Field& f, const gfq::Matrix& m);

/// Integer basis of Z^n (det +-1) whose columns reduce to the given +-classes.
/// If the representatives have det -1 mod p the first column is negated,
/// lifted, and negated back. Throws NotUnimodularError unless det is +-1.
std::vector<std::vector<mpz_class>> lift_pm_basis(const gfq::Field& f, const std::vector<gfq::Vector>& basis);

mpz_class determinant(const IntMatrix& m);
/// Entrywise reduction mod p.
gfq::Matrix reduce(const gfq::Field& f, const IntMatrix& m);

}  // namespace topcoh::lifting
