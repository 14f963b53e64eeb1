#pragma once

#include <optional>
#include <vector>

#include "tambara/field.hpp"

namespace tambara {

// Dense matrix over a finite field, row-major. Matrices act on column vectors:
// an r x c matrix maps F^c to F^r.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(FieldPtr f, std::size_t n);
  static Matrix from_columns(FieldPtr f, std::size_t rows, const std::vector<Vec>& cols);
  static Matrix from_rows(FieldPtr f, std::size_t cols, const std::vector<Vec>& rows);

  const FieldPtr& field() const noexcept { return f_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return f_ == nullptr; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  Vec apply(const Vec& v) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem s) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
// Columns form a basis of the null space.
Matrix kernel(const Matrix& m);
std::vector<Vec> kernel_basis(const Matrix& m);
std::vector<Vec> image_basis(const Matrix& m);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);
Elem determinant(Matrix m);
bool is_injective(const Matrix& m);
bool is_surjective(const Matrix& m);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(FieldPtr f, const std::vector<Matrix>& blocks);

// Vector helpers.
Vec vadd(const Field& f, const Vec& a, const Vec& b);
Vec vsub(const Field& f, const Vec& a, const Vec& b);
Vec vscale(const Field& f, Elem s, const Vec& a);
void vaxpy(const Field& f, Vec& y, Elem s, const Vec& x);  // y += s x
bool vzero(const Vec& v);
Vec unit_vector(std::size_t n, std::size_t i);
// Decodes a base-q counter into a vector of length n.
Vec decode_vector(std::uint64_t code, std::uint32_t q, std::size_t n);
std::uint64_t encode_vector(const Vec& v, std::uint32_t q);

// A subspace of F^n kept as a reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr f, std::size_t ambient) : f_(std::move(f)), n_(ambient) {}
  static Subspace spanned_by(FieldPtr f, std::size_t ambient, const std::vector<Vec>& gens);
  static Subspace whole(FieldPtr f, std::size_t ambient);

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vec>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const FieldPtr& field() const noexcept { return f_; }

  // Adds v; returns true if the dimension grew.
  bool add(const Vec& v);
  Vec reduce(Vec v) const;  // remainder after eliminating pivots
  bool contains(const Vec& v) const { return vzero(reduce(v)); }
  bool contains(const Subspace& o) const;
  // Coordinates of v (assumed in the span) with respect to basis().
  Vec coords(const Vec& v) const;
  // Basis vectors as columns of an n x dim matrix.
  Matrix basis_matrix() const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  FieldPtr f_;
  std::size_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Quotient V / W with a fixed complement basis given by the non-pivot
// coordinates of W's echelon form.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subspace relations);
  std::size_t dim() const noexcept { return free_.size(); }
  std::size_t ambient() const noexcept { return rel_.ambient(); }
  const Subspace& relations() const noexcept { return rel_; }
  Vec project(const Vec& v) const;
  Vec lift(const Vec& q) const;
  Matrix projection_matrix() const;
  Matrix lift_matrix() const;

 private:
  Subspace rel_;
  std::vector<std::size_t> free_;
};

}  // namespace tambara

namespace tambara {
// For an injective matrix E (n x d), a d x n matrix L with L E = I.
Matrix left_inverse(const Matrix& e);
}  // namespace tambara
