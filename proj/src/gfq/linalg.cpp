#include "topcoh/gfq/linalg.hpp"

#include <algorithm>
#include <string>

#include "topcoh/errors.hpp"

namespace topcoh::gfq {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t length) {
  Matrix m(length, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != length) throw ShapeError("column length mismatch");
    for (std::size_t i = 0; i < length; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw ShapeError("matrix product shape mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      Residue x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

Vector negate(const Field& f, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.neg(v[i]);
  return r;
}

Vector scale(const Field& f, Residue c, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(c, v[i]);
  return r;
}

Vector combine(const Field& f, Residue a, const Vector& x, Residue b, const Vector& y) {
  if (x.size() != y.size()) throw ShapeError("vector length mismatch");
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.add(f.mul(a, x[i]), f.mul(b, y[i]));
  return r;
}

namespace {

Residue first_nonzero(const Vector& v) {
  for (Residue x : v)
    if (x != 0) return x;
  throw ZeroVectorError("zero vector has no canonical representative");
}

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(const Field& f, std::vector<Vector>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Residue inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Residue factor = rows[i][c];
      for (std::size_t j = c; j < width; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

PmVector canonicalize_pm(const Field& f, Vector v) {
  Residue lead = first_nonzero(v);
  if (f.p() != 2 && lead > (f.p() - 1) / 2) v = negate(f, v);
  return PmVector(std::move(v));
}

ProjVector canonicalize_proj(const Field& f, Vector v) {
  Residue lead = first_nonzero(v);
  if (lead != 1) v = scale(f, f.inv(lead), v);
  return ProjVector(std::move(v));
}

Residue det(const Field& f, const Matrix& m) {
  if (m.rows != m.cols) {
    throw ShapeError("determinant of a " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + " matrix");
  }
  const std::size_t n = m.rows;
  Matrix a = m;
  Residue d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(sel, j));
      d = f.neg(d);
    }
    d = f.mul(d, a(c, c));
    Residue inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Residue factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return d;
}

std::size_t rank(const Field& f, std::span<const Vector> vs) {
  if (vs.empty()) return 0;
  std::vector<Vector> rows(vs.begin(), vs.end());
  return rref(f, rows, rows.front().size()).size();
}

bool is_partial_basis(const Field& f, std::span<const Vector> vs) { return rank(f, vs) == vs.size(); }

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& row : basis_) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    out.push_back(c);
  }
  return out;
}

Subspace span(const Field& f, std::span<const Vector> vs, std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_.assign(vs.begin(), vs.end());
  for (const auto& v : s.basis_)
    if (v.size() != ambient) throw ShapeError("vector length does not match ambient dimension");
  rref(f, s.basis_, ambient);
  return s;
}

Subspace subspace_from_echelon(std::vector<Vector> rows, std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = std::move(rows);
  return s;
}

bool contains(const Field& f, const Subspace& s, const Vector& v) {
  // Reduce v against the echelon rows; v lies in s iff the remainder vanishes.
  Vector w = v;
  auto piv = s.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i) {
    Residue c = w[piv[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, s.basis()[i][j]));
  }
  return is_zero(w);
}

bool contains(const Field& f, const Subspace& outer, const Subspace& inner) {
  if (inner.dim() > outer.dim()) return false;
  return std::all_of(inner.basis().begin(), inner.basis().end(),
                     [&](const Vector& v) { return contains(f, outer, v); });
}

std::vector<Orientation> all_orientations(const Field& f) {
  std::vector<Orientation> out;
  for (Residue c = 1; c <= f.sign_classes(); ++c) out.push_back(Orientation{c});
  return out;
}

Orientation orientation_of(const Field& f, std::span<const Vector> vs) {
  if (vs.empty()) return Orientation{1};
  const std::size_t ambient = vs.front().size();
  if (!is_partial_basis(f, vs)) throw NotABasisError("orientation requested for a dependent family");
  Subspace s = span(f, vs, ambient);
  // Coordinates of v in the echelon basis are its entries at the pivot columns.
  auto piv = s.pivots();
  const std::size_t d = vs.size();
  Matrix change(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) change(i, j) = vs[j][piv[i]];
  return Orientation{f.sign_class(det(f, change))};
}

std::uint64_t encode(const Vector& v, std::uint32_t p) {
  std::uint64_t code = 0;
  for (Residue x : v) code = code * p + x;
  return code;
}

Vector decode(std::uint64_t code, std::size_t n, std::uint32_t p) {
  Vector v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<Residue>(code % p);
    code /= p;
  }
  return v;
}

}  // namespace topcoh::gfq
