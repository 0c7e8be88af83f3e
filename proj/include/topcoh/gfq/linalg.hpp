#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "topcoh/gfq/field.hpp"

namespace topcoh::gfq {

using Vector = std::vector<Residue>;

/// Dense row-major matrix over F_p.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Residue> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static Matrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of equal length).
  static Matrix from_columns(std::span<const Vector> columns, std::size_t length);

  Residue& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

bool is_zero(const Vector& v);
Vector negate(const Field& f, const Vector& v);
Vector scale(const Field& f, Residue c, const Vector& v);
/// a*x + b*y
Vector combine(const Field& f, Residue a, const Vector& x, Residue b, const Vector& y);

/// Canonical representative of the +-vector {v, -v}: first nonzero coordinate in [1, (p-1)/2].
class PmVector {
 public:
  const Vector& rep() const { return rep_; }
  friend auto operator<=>(const PmVector&, const PmVector&) = default;

 private:
  friend PmVector canonicalize_pm(const Field& f, Vector v);
  explicit PmVector(Vector v) : rep_(std::move(v)) {}
  Vector rep_;
};

/// Canonical representative of the F_p^x-orbit of v: first nonzero coordinate is 1.
class ProjVector {
 public:
  const Vector& rep() const { return rep_; }
  friend auto operator<=>(const ProjVector&, const ProjVector&) = default;

 private:
  friend ProjVector canonicalize_proj(const Field& f, Vector v);
  explicit ProjVector(Vector v) : rep_(std::move(v)) {}
  Vector rep_;
};

/// Throws ZeroVectorError on the zero vector.
PmVector canonicalize_pm(const Field& f, Vector v);
ProjVector canonicalize_proj(const Field& f, Vector v);

/// Exact determinant by Gaussian elimination. Throws ShapeError if m is not square.
Residue det(const Field& f, const Matrix& m);

/// Rank of the span of the given vectors.
std::size_t rank(const Field& f, std::span<const Vector> vs);

bool is_partial_basis(const Field& f, std::span<const Vector> vs);

/// A subspace of F_p^ambient held in reduced row-echelon form, which is a
/// normal form: two subspaces are equal iff their echelon matrices are equal.
class Subspace {
 public:
  Subspace() = default;
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  /// Column index of the leading 1 in each echelon row.
  std::vector<std::size_t> pivots() const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  friend Subspace span(const Field& f, std::span<const Vector> vs, std::size_t ambient);
  friend Subspace subspace_from_echelon(std::vector<Vector> rows, std::size_t ambient);
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
};

/// Echelon form of the linear span. `ambient` fixes the dimension when vs is empty.
Subspace span(const Field& f, std::span<const Vector> vs, std::size_t ambient);
/// Wraps rows already in reduced row-echelon form; no validation beyond shape.
Subspace subspace_from_echelon(std::vector<Vector> rows, std::size_t ambient);

bool contains(const Field& f, const Subspace& s, const Vector& v);
bool contains(const Field& f, const Subspace& outer, const Subspace& inner);

/// Class in F_p^x/{+-1} of a top exterior generator, canonical in [1, (p-1)/2].
struct Orientation {
  Residue cls = 1;
  friend auto operator<=>(const Orientation&, const Orientation&) = default;
};

/// All +-orientations of a subspace (independent of the subspace): 1..(p-1)/2.
std::vector<Orientation> all_orientations(const Field& f);

/// Orientation class of the ordered basis `vs` of span(vs), measured against the
/// echelon basis of that span. Throws NotABasisError if vs is dependent.
Orientation orientation_of(const Field& f, std::span<const Vector> vs);

struct OrientedSubspace {
  Subspace space;
  Orientation orient;
  friend auto operator<=>(const OrientedSubspace&, const OrientedSubspace&) = default;
};

/// Base-p integer code of a vector, most significant coordinate first; lexicographic
/// order on vectors agrees with numeric order on codes.
std::uint64_t encode(const Vector& v, std::uint32_t p);
Vector decode(std::uint64_t code, std::size_t n, std::uint32_t p);

}  // namespace topcoh::gfq
