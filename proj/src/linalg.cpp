#include "tambara/linalg.hpp"

#include <algorithm>

namespace tambara {

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(FieldPtr f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(std::move(f), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Matrix Matrix::from_rows(FieldPtr f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(std::move(f), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::apply(const Vec& v) const {
  const Field& f = *f_;
  Vec r(rows_, 0);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j] == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem a = data_[i * cols_ + j];
      if (a) r[i] = f.add(r[i], f.mul(a, v[j]));
    }
  }
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix product");
  const Field& f = *f_;
  Matrix r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = data_[i * cols_ + k];
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        Elem b = o.data_[k * o.cols_ + j];
        if (b) r.data_[i * o.cols_ + j] = f.add(r.data_[i * o.cols_ + j], f.mul(a, b));
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "matrix sum");
  Matrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "matrix difference");
  Matrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->sub(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix r(*this);
  for (auto& x : r.data_) x = f_->mul(x, s);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

std::vector<std::size_t> rref(Matrix& m) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Elem inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Elem s = f.neg(m(i, c));
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j)) m(i, j) = f.add(m(i, j), f.mul(s, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).size();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  const Field& f = *m.field();
  Matrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix kernel(const Matrix& m) {
  return Matrix::from_columns(m.field(), m.cols(), kernel_basis(m));
}

std::vector<Vec> image_basis(const Matrix& m) {
  Subspace s(m.field(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) s.add(m.column(j));
  return s.basis();
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug = hstack(m, Matrix::identity(m.field(), n));
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  Matrix r(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

Elem determinant(Matrix m) {
  if (m.rows() != m.cols()) throw Error("DimensionMismatch", "determinant of non-square matrix");
  const Field& f = *m.field();
  const std::size_t n = m.rows();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    Elem inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Elem s = f.neg(f.mul(m(i, c), inv));
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.add(m(i, j), f.mul(s, m(c, j)));
    }
  }
  return det;
}

bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("DimensionMismatch", "vstack");
  Matrix r(a.field() ? a.field() : b.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("DimensionMismatch", "hstack");
  Matrix r(a.field() ? a.field() : b.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Matrix block_diagonal(FieldPtr f, const std::vector<Matrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix r(std::move(f), rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r(ro + i, co + j) = b(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

Vec vadd(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec vsub(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vscale(const Field& f, Elem s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(s, a[i]);
  return r;
}

void vaxpy(const Field& f, Vec& y, Elem s, const Vec& x) {
  if (s == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = f.add(y[i], f.mul(s, x[i]));
}

bool vzero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Vec decode_vector(std::uint64_t code, std::uint32_t q, std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  return v;
}

std::uint64_t encode_vector(const Vec& v, std::uint32_t q) {
  std::uint64_t c = 0;
  for (std::size_t i = v.size(); i-- > 0;) c = c * q + v[i];
  return c;
}

Subspace Subspace::spanned_by(FieldPtr f, std::size_t ambient, const std::vector<Vec>& gens) {
  Subspace s(std::move(f), ambient);
  for (const auto& g : gens) s.add(g);
  return s;
}

Subspace Subspace::whole(FieldPtr f, std::size_t ambient) {
  Subspace s(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.add(unit_vector(ambient, i));
  return s;
}

Vec Subspace::reduce(Vec v) const {
  const Field& f = *f_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Elem c = v[pivots_[i]];
    if (c) vaxpy(f, v, f.neg(c), rows_[i]);
  }
  return v;
}

bool Subspace::add(const Vec& v) {
  const Field& f = *f_;
  Vec r = reduce(v);
  std::size_t p = 0;
  while (p < n_ && r[p] == 0) ++p;
  if (p == n_) return false;
  r = vscale(f, f.inv(r[p]), r);
  for (auto& row : rows_)
    if (row[p]) vaxpy(f, row, f.neg(row[p]), r);
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_columns(f_, n_, rows_); }

Subspace Subspace::intersect(const Subspace& o) const {
  // Solve sum a_i u_i = sum b_j w_j.
  const std::size_t d1 = dim(), d2 = o.dim();
  Matrix m(f_, n_, d1 + d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t r = 0; r < n_; ++r) m(r, i) = rows_[i][r];
  for (std::size_t j = 0; j < d2; ++j)
    for (std::size_t r = 0; r < n_; ++r) m(r, d1 + j) = f_->neg(o.rows_[j][r]);
  Subspace res(f_, n_);
  for (const auto& k : kernel_basis(m)) {
    Vec v(n_, 0);
    for (std::size_t i = 0; i < d1; ++i) vaxpy(*f_, v, k[i], rows_[i]);
    res.add(v);
  }
  return res;
}

Quotient::Quotient(Subspace relations) : rel_(std::move(relations)) {
  std::vector<bool> piv(rel_.ambient(), false);
  for (auto p : rel_.pivots()) piv[p] = true;
  for (std::size_t i = 0; i < rel_.ambient(); ++i)
    if (!piv[i]) free_.push_back(i);
}

Vec Quotient::project(const Vec& v) const {
  Vec r = rel_.reduce(v);
  Vec q(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) q[i] = r[free_[i]];
  return q;
}

Vec Quotient::lift(const Vec& q) const {
  Vec v(rel_.ambient(), 0);
  for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = q[i];
  return v;
}

Matrix Quotient::projection_matrix() const {
  Matrix m(rel_.field(), dim(), ambient());
  for (std::size_t j = 0; j < ambient(); ++j) {
    Vec q = project(unit_vector(ambient(), j));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = q[i];
  }
  return m;
}

Matrix Quotient::lift_matrix() const {
  Matrix m(rel_.field(), ambient(), dim());
  for (std::size_t i = 0; i < free_.size(); ++i) m(free_[i], i) = 1;
  return m;
}

}  // namespace tambara

namespace tambara {

Matrix left_inverse(const Matrix& e) {
  const std::size_t n = e.rows(), d = e.cols();
  Matrix t = e.transpose();
  auto piv = rref(t);
  if (piv.size() != d) throw Error("NotInjective", "left inverse of a non-injective map");
  Matrix sq(e.field(), d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) sq(i, j) = e(piv[i], j);
  auto inv = inverse(sq);
  Matrix sel(e.field(), d, n);
  for (std::size_t i = 0; i < d; ++i) sel(i, piv[i]) = 1;
  return *inv * sel;
}

}  // namespace tambara
