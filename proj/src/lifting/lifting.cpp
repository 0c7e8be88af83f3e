#include "topcoh/lifting/lifting.hpp"

#include <string>

#include "topcoh/errors.hpp"

namespace topcoh::lifting {

using gfq::Field;
using gfq::Matrix;
using gfq::Residue;

namespace {

// Row operation R_i += c R_j on a, i.e. left multiplication by E_ij(c).
void add_row(const Field& f, Matrix& a, std::size_t i, std::size_t j, Residue c) {
  for (std::size_t k = 0; k < a.cols; ++k) a(i, k) = f.add(a(i, k), f.mul(c, a(j, k)));
}

}  // namespace

std::vector<Transvection> decompose_elementary(const Field& f, const Matrix& m) {
  if (m.rows != m.cols) throw NotSpecialLinearError("matrix is not square");
  if (gfq::det(f, m) != 1) throw NotSpecialLinearError("determinant is not 1 mod " + std::to_string(f.p()));
  const std::size_t n = m.rows;
  Matrix a = m;
  std::vector<Transvection> ops;  // applied to a in this order
  auto apply = [&](std::size_t i, std::size_t j, Residue c) {
    if (c == 0) return;
    add_row(f, a, i, j, c);
    ops.push_back({i, j, c});
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (a(j, j) == 0) {
      std::size_t i = j + 1;
      while (i < n && a(i, j) == 0) ++i;
      apply(j, i, 1);  // i < n: det != 0 and columns left of j are already unit vectors
    }
    const Residue d = a(j, j);
    if (d != 1) {
      // The last pivot equals det = 1, so a row below exists here.
      const std::size_t i = j + 1;
      const Residue want = f.sub(1, d);
      apply(i, j, f.mul(f.sub(want, a(i, j)), f.inv(d)));
      apply(j, i, 1);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (i != j && a(i, j) != 0) apply(i, j, f.neg(a(i, j)));
  }
  // E_k ... E_1 m = I, so m = E_1^-1 ... E_k^-1.
  std::vector<Transvection> word;
  word.reserve(ops.size());
  for (const auto& op : ops) word.push_back({op.i, op.j, f.neg(op.a)});
  return word;
}

Matrix multiply_word(const Field& f, std::size_t n, const std::vector<Transvection>& word) {
  Matrix a = Matrix::identity(n);
  // Right multiplication by E_ij(c): column j += c column i.
  for (const auto& t : word)
    for (std::size_t r = 0; r < n; ++r) a(r, t.j) = f.add(a(r, t.j), f.mul(t.a, a(r, t.i)));
  return a;
}

IntMatrix lift_sl(const Field& f, const Matrix& m) {
  const auto word = decompose_elementary(f, m);
  const std::size_t n = m.rows;
  IntMatrix a(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  for (const auto& t : word) {
    const mpz_class c = t.a;  // least nonnegative residue
    for (std::size_t r = 0; r < n; ++r) a[r][t.j] += c * a[r][t.i];
  }
  return a;
}

std::vector<std::vector<mpz_class>> lift_pm_basis(const Field& f, const std::vector<gfq::Vector>& basis) {
  const std::size_t n = basis.size();
  for (const auto& v : basis)
    if (v.size() != n) throw NotUnimodularError("a basis of F_p^n needs n vectors of length n");
  Matrix m = Matrix::from_columns(basis, n);
  const Residue d = gfq::det(f, m);
  if (!f.is_plus_minus_one(d)) throw NotUnimodularError("determinant is not +-1 mod " + std::to_string(f.p()));
  const bool flip = d != 1;
  if (flip)
    for (std::size_t r = 0; r < n; ++r) m(r, 0) = f.neg(m(r, 0));
  const IntMatrix lifted = lift_sl(f, m);
  std::vector<std::vector<mpz_class>> columns(n, std::vector<mpz_class>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) columns[c][r] = (flip && c == 0) ? mpz_class(-lifted[r][c]) : lifted[r][c];
  return columns;
}

mpz_class determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Matrix reduce(const Field& f, const IntMatrix& m) {
  const std::size_t n = m.size(), c = n ? m[0].size() : 0;
  Matrix out(n, c);
  const mpz_class p = f.p();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), m[i][j].get_mpz_t(), p.get_mpz_t());
      out(i, j) = static_cast<Residue>(r.get_ui());
    }
  return out;
}

}  // namespace topcoh::lifting
