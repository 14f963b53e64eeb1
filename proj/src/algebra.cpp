#include "tambara/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace tambara {

FinAlgebra::FinAlgebra(FieldPtr f, std::size_t dim, std::vector<Vec> products, Vec one)
    : f_(std::move(f)), n_(dim), table_(std::move(products)), one_(std::move(one)) {
  if (n_ > kMaxDim) throw Error("CapExceeded", "algebra dimension " + std::to_string(n_));
  if (table_.size() != n_ * n_) throw Error("ParseError", "structure constant table size");
  for (const auto& v : table_)
    if (v.size() != n_) throw Error("ParseError", "structure constant vector length");
  if (one_.size() != n_) throw Error("ParseError", "unit vector length");
}

FinAlgebra FinAlgebra::split(FieldPtr f, std::size_t n) {
  std::vector<Vec> t(n * n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) t[i * n + i][i] = 1;
  return FinAlgebra(std::move(f), n, std::move(t), Vec(n, 1));
}

FinAlgebra FinAlgebra::polynomial_quotient(FieldPtr f, const Vec& m) {
  if (m.empty() || m.back() != 1) throw Error("ParseError", "modulus must be monic");
  const std::size_t n = m.size() - 1;
  const Field& F = *f;
  // x^k reduced, k < 2n.
  std::vector<Vec> power(2 * n + 1, Vec(n, 0));
  if (n == 0) return FinAlgebra(f, 0, {}, {});
  power[0][0] = 1;
  for (std::size_t k = 1; k < power.size(); ++k) {
    Vec& r = power[k];
    const Vec& p = power[k - 1];
    Elem top = p[n - 1];
    for (std::size_t i = n; i-- > 1;) r[i] = p[i - 1];
    r[0] = 0;
    for (std::size_t i = 0; i < n; ++i) r[i] = F.sub(r[i], F.mul(top, m[i]));
  }
  std::vector<Vec> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = power[i + j];
  return FinAlgebra(std::move(f), n, std::move(t), unit_vector(n, 0));
}

FinAlgebra FinAlgebra::product(const std::vector<FinAlgebra>& fs) {
  if (fs.empty()) throw Error("ParseError", "empty product");
  std::size_t n = 0;
  for (const auto& a : fs) n += a.dim();
  std::vector<Vec> t(n * n, Vec(n, 0));
  Vec one(n, 0);
  std::size_t off = 0;
  for (const auto& a : fs) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      one[off + i] = a.one()[i];
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
          t[(off + i) * n + off + j][off + k] = a.basis_product(i, j)[k];
    }
    off += a.dim();
  }
  return FinAlgebra(fs.front().field(), n, std::move(t), std::move(one));
}

FinAlgebra FinAlgebra::tensor(const FinAlgebra& a, const FinAlgebra& b) {
  const Field& F = *a.field();
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  if (n > kMaxDim) throw Error("CapExceeded", "tensor dimension " + std::to_string(n));
  std::vector<Vec> t(n * n, Vec(n, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          const Vec& p = a.basis_product(i, k);
          const Vec& q = b.basis_product(j, l);
          Vec& out = t[(i * nb + j) * n + (k * nb + l)];
          for (std::size_t r = 0; r < na; ++r) {
            if (!p[r]) continue;
            for (std::size_t s = 0; s < nb; ++s)
              if (q[s]) out[r * nb + s] = F.add(out[r * nb + s], F.mul(p[r], q[s]));
          }
        }
  Vec one(n, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) one[i * nb + j] = F.mul(a.one()[i], b.one()[j]);
  return FinAlgebra(a.field(), n, std::move(t), std::move(one));
}

Vec FinAlgebra::mul(const Vec& a, const Vec& b) const {
  const Field& F = *f_;
  Vec r(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!b[j]) continue;
      Elem c = F.mul(a[i], b[j]);
      const Vec& p = table_[i * n_ + j];
      for (std::size_t k = 0; k < n_; ++k)
        if (p[k]) r[k] = F.add(r[k], F.mul(c, p[k]));
    }
  }
  return r;
}

Vec FinAlgebra::pow(Vec a, std::uint64_t e) const {
  Vec r = one_;
  while (e) {
    if (e & 1U) r = mul(r, a);
    e >>= 1U;
    if (e) a = mul(a, a);
  }
  return r;
}

Matrix FinAlgebra::mult_matrix(const Vec& a) const {
  Matrix m(f_, n_, n_);
  for (std::size_t j = 0; j < n_; ++j) m.set_column(j, mul(a, unit_vector(n_, j)));
  return m;
}

Elem FinAlgebra::trace(const Vec& a) const {
  const Field& F = *f_;
  Elem t = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    Elem s = 0;
    for (std::size_t j = 0; j < n_; ++j) s = F.add(s, table_[i * n_ + j][j]);
    t = F.add(t, F.mul(a[i], s));
  }
  return t;
}

Matrix FinAlgebra::trace_form() const {
  Matrix m(f_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = trace(table_[i * n_ + j]);
  return m;
}

bool FinAlgebra::is_unit(const Vec& a) const { return rank(mult_matrix(a)) == n_; }

void FinAlgebra::validate() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (table_[i * n_ + j] != table_[j * n_ + i])
        throw Error("NonCommutative", "e" + std::to_string(i) + "·e" + std::to_string(j));
  for (std::size_t i = 0; i < n_; ++i) {
    Vec e = unit_vector(n_, i);
    if (mul(one_, e) != e) throw Error("NoIdentity", "unit fails on e" + std::to_string(i));
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        Vec l = mul(table_[i * n_ + j], unit_vector(n_, k));
        Vec r = mul(unit_vector(n_, i), table_[j * n_ + k]);
        if (l != r)
          throw Error("NonAssociative", "(e" + std::to_string(i) + ",e" + std::to_string(j) +
                                            ",e" + std::to_string(k) + ")");
      }
}

FinAlgebra FinAlgebra::subalgebra(const Matrix& basis) const {
  const std::size_t d = basis.cols();
  Subspace s(f_, n_);
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < d; ++j) cols.push_back(basis.column(j));
  // Coordinates by solving against the given columns.
  auto coords = [&](const Vec& v) {
    auto x = solve(basis, v);
    if (!x) throw Error("NotClosed", "subalgebra not closed under multiplication");
    return *x;
  };
  std::vector<Vec> t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[i * d + j] = coords(mul(cols[i], cols[j]));
  return FinAlgebra(f_, d, std::move(t), coords(one_));
}

FinAlgebra FinAlgebra::quotient(const Quotient& q) const {
  const std::size_t d = q.dim();
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < d; ++i) lifts.push_back(q.lift(unit_vector(d, i)));
  std::vector<Vec> t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[i * d + j] = q.project(mul(lifts[i], lifts[j]));
  return FinAlgebra(f_, d, std::move(t), q.project(one_));
}

Subspace FinAlgebra::ideal_generated(const std::vector<Vec>& gens) const {
  Subspace s(f_, n_);
  for (const auto& g : gens)
    for (std::size_t j = 0; j < n_; ++j) s.add(mul(g, unit_vector(n_, j)));
  return s;
}

bool FinAlgebra::is_ideal(const Subspace& s) const {
  for (const auto& b : s.basis())
    for (std::size_t j = 0; j < n_; ++j)
      if (!s.contains(mul(b, unit_vector(n_, j)))) return false;
  return true;
}

Matrix FinAlgebra::frobenius() const {
  Matrix m(f_, n_, n_);
  for (std::size_t j = 0; j < n_; ++j) m.set_column(j, pow(unit_vector(n_, j), f_->order()));
  return m;
}

bool FinAlgebra::is_ring_map_to(const FinAlgebra& t, const Matrix& m) const {
  if (m.rows() != t.dim() || m.cols() != n_) return false;
  if (m.apply(one_) != t.one()) return false;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (m.apply(table_[i * n_ + j]) != t.mul(m.column(i), m.column(j))) return false;
  return true;
}

Matrix unit_map(const FinAlgebra& a) {
  Matrix m(a.field(), a.dim(), 1);
  m.set_column(0, a.one());
  return m;
}

RelativeTensor relative_tensor(const FinAlgebra& a, const FinAlgebra& b, const Matrix& u,
                               const FinAlgebra& c, const Matrix& v) {
  const Field& F = *a.field();
  FinAlgebra full = FinAlgebra::tensor(a, c);
  const std::size_t na = a.dim(), nc = c.dim();
  auto embed_left = [&](const Vec& x) {
    Vec r(na * nc, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nc; ++j) r[i * nc + j] = F.mul(x[i], c.one()[j]);
    return r;
  };
  auto embed_right = [&](const Vec& y) {
    Vec r(na * nc, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nc; ++j) r[i * nc + j] = F.mul(a.one()[i], y[j]);
    return r;
  };
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < b.dim(); ++k) {
    auto d = vsub(F, embed_left(u.column(k)), embed_right(v.column(k)));
    if (!vzero(d)) gens.push_back(d);
  }
  Quotient q(full.ideal_generated(gens));
  FinAlgebra alg = full.quotient(q);
  Matrix left(a.field(), q.dim(), na), right(a.field(), q.dim(), nc);
  for (std::size_t i = 0; i < na; ++i) left.set_column(i, q.project(embed_left(unit_vector(na, i))));
  for (std::size_t j = 0; j < nc; ++j)
    right.set_column(j, q.project(embed_right(unit_vector(nc, j))));
  return {std::move(full), std::move(q), std::move(alg), std::move(left), std::move(right)};
}

ClassicalKahler classical_kahler(const FinAlgebra& a, const FinAlgebra& b, const Matrix& u) {
  const Field& F = *a.field();
  RelativeTensor rt = relative_tensor(a, b, u, a, u);
  const FinAlgebra& C = rt.algebra;
  const std::size_t n = a.dim(), nc = C.dim();
  // Multiplication C -> A, read off on lifted basis vectors.
  Matrix mu(a.field(), n, nc);
  for (std::size_t j = 0; j < nc; ++j) {
    Vec w = rt.quotient.lift(unit_vector(nc, j));
    Vec img(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        Elem s = w[i * n + k];
        if (s) vaxpy(F, img, s, a.basis_product(i, k));
      }
    mu.set_column(j, img);
  }
  auto ibasis = kernel_basis(mu);
  Subspace sq(a.field(), nc);
  for (std::size_t i = 0; i < ibasis.size(); ++i)
    for (std::size_t j = i; j < ibasis.size(); ++j) sq.add(C.mul(ibasis[i], ibasis[j]));
  ClassicalKahler out;
  out.ideal_dim = ibasis.size();
  out.square_dim = sq.dim();
  out.dim = out.ideal_dim - out.square_dim;
  // Ω = I / I² with basis given by a complement of I² inside I.
  Subspace ispace = Subspace::spanned_by(a.field(), nc, ibasis);
  std::vector<Vec> complement;
  Subspace acc = sq;
  for (const auto& v : ispace.basis())
    if (acc.add(v)) complement.push_back(v);
  Matrix cmat = Matrix::from_columns(a.field(), nc, complement);
  Matrix full_mat = hstack(cmat, sq.basis_matrix());
  auto q_of = [&](const Vec& v) {
    auto x = solve(full_mat, v);
    if (!x) throw Error("Internal", "element outside the Kähler ideal");
    return Vec(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(complement.size()));
  };
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = unit_vector(n, i);
    Vec d = vsub(F, rt.left.apply(e), rt.right.apply(e));
    out.generators.push_back(d);
    if (!vzero(q_of(d))) out.nonzero_generators.push_back(i);
    Matrix act(a.field(), complement.size(), complement.size());
    Vec le = rt.left.apply(e);
    for (std::size_t j = 0; j < complement.size(); ++j) act.set_column(j, q_of(C.mul(le, complement[j])));
    out.action.push_back(std::move(act));
  }
  return out;
}

ClassicalKahler classical_kahler(const FinAlgebra& a) {
  FinAlgebra g = FinAlgebra::ground(a.field());
  return classical_kahler(a, g, unit_map(a));
}

std::size_t kahler_dim_by_generators(const FinAlgebra& a) {
  const Field& F = *a.field();
  const std::size_t n = a.dim();
  // Free A-module on symbols d e_0..d e_{n-1}: coordinate (k, i) = coefficient of e_k d e_i.
  const std::size_t N = n * n;
  auto idx = [n](std::size_t k, std::size_t i) { return k * n + i; };
  Subspace rel(a.field(), N);
  auto times = [&](const Vec& r, std::size_t l) {
    // multiply the element sum r[(k,i)] e_k de_i by e_l
    Vec out(N, 0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        Elem c = r[idx(k, i)];
        if (!c) continue;
        const Vec& p = a.basis_product(l, k);
        for (std::size_t m = 0; m < n; ++m)
          if (p[m]) out[idx(m, i)] = F.add(out[idx(m, i)], F.mul(c, p[m]));
      }
    return out;
  };
  auto add_rel = [&](const Vec& r) {
    for (std::size_t l = 0; l < n; ++l) rel.add(times(r, l));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // d(e_i e_j) - e_i de_j - e_j de_i
      const Vec& p = a.basis_product(i, j);
      // the term d(e_m) carries coefficient 1 = sum one_k e_k
      Vec r2(N, 0);
      for (std::size_t m = 0; m < n; ++m)
        if (p[m])
          for (std::size_t k = 0; k < n; ++k)
            if (a.one()[k]) r2[idx(k, m)] = F.add(r2[idx(k, m)], F.mul(p[m], a.one()[k]));
      r2[idx(i, j)] = F.sub(r2[idx(i, j)], 1);
      r2[idx(j, i)] = F.sub(r2[idx(j, i)], 1);
      add_rel(r2);
    }
  // d(1) = 0
  Vec d1(N, 0);
  for (std::size_t m = 0; m < n; ++m)
    if (a.one()[m])
      for (std::size_t k = 0; k < n; ++k)
        if (a.one()[k]) d1[idx(k, m)] = F.add(d1[idx(k, m)], F.mul(a.one()[m], a.one()[k]));
  add_rel(d1);
  return N - rel.dim();
}

EtaleCertificate is_etale_classical(const FinAlgebra& a) {
  EtaleCertificate c;
  c.trace_determinant = a.dim() == 0 ? 1 : determinant(a.trace_form());
  auto k = classical_kahler(a);
  c.kahler_dim = k.dim;
  c.witness = k.nonzero_generators;
  c.etale = c.trace_determinant != 0;
  if (c.etale != (k.dim == 0))
    throw Error("MismatchWitness", "trace form and Kähler differentials disagree");
  return c;
}

bool is_field(const FinAlgebra& a) {
  if (a.dim() == 0 || !is_etale_classical(a).etale) return false;
  Matrix fr = a.frobenius() - Matrix::identity(a.field(), a.dim());
  return a.dim() - rank(fr) == 1;
}

std::optional<std::vector<Vec>> primitive_idempotents(const FinAlgebra& a) {
  const Field& F = *a.field();
  const std::size_t n = a.dim();
  if (n == 0) return std::vector<Vec>{};
  if (!is_etale_classical(a).etale) return std::nullopt;
  std::vector<Vec> idem{a.one()};
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<Vec> next;
    for (const auto& e : idem) {
      Vec x = a.mul(unit_vector(n, b), e);
      Subspace eA(a.field(), n);
      for (std::size_t j = 0; j < n; ++j) eA.add(a.mul(e, unit_vector(n, j)));
      std::vector<Elem> vals;
      for (Elem lam = 0; lam < F.order(); ++lam) {
        Vec y = vsub(F, x, vscale(F, lam, e));
        Subspace img(a.field(), n);
        for (const auto& v : eA.basis()) img.add(a.mul(y, v));
        if (img.dim() < eA.dim()) vals.push_back(lam);
      }
      if (vals.empty()) return std::nullopt;
      if (vals.size() == 1) {
        next.push_back(e);
        continue;
      }
      Vec total(n, 0);
      for (Elem lam : vals) {
        Vec p = e;
        for (Elem mu : vals) {
          if (mu == lam) continue;
          Vec f = vscale(F, F.inv(F.sub(lam, mu)), vsub(F, x, vscale(F, mu, e)));
          p = a.mul(p, f);
        }
        total = vadd(F, total, p);
        next.push_back(p);
      }
      if (total != e) return std::nullopt;  // eigenvalues outside F
    }
    idem = std::move(next);
  }
  // Split iff every e·A is one-dimensional.
  for (const auto& e : idem) {
    Subspace eA(a.field(), n);
    for (std::size_t j = 0; j < n; ++j) eA.add(a.mul(e, unit_vector(n, j)));
    if (eA.dim() != 1) return std::nullopt;
  }
  std::sort(idem.begin(), idem.end(), [](const Vec& x, const Vec& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  return idem;
}

void GRing::validate() const {
  A.validate();
  if (static_cast<int>(act.size()) != G->order()) throw Error("ParseError", "action size");
  auto els = G->subgroup_elements(domain);
  for (int g : els) {
    const Matrix& m = act[g];
    if (m.rows() != A.dim() || m.cols() != A.dim())
      throw Error("NotAnAction", "matrix shape for element " + std::to_string(g));
    if (!A.is_ring_map_to(A, m))
      throw Error("NotAnAction", "element " + std::to_string(g) + " is not a ring map");
  }
  if (!(act[0] == Matrix::identity(A.field(), A.dim())))
    throw Error("NotAnAction", "identity acts nontrivially");
  for (int g : els)
    for (int h : els)
      if (!(act[G->mul(g, h)] == act[g] * act[h]))
        throw Error("NotAnAction", "not a homomorphism at (" + std::to_string(g) + "," +
                                       std::to_string(h) + ")");
}

Matrix GRing::fixed_basis(int H) const {
  const std::size_t n = A.dim();
  Matrix stacked(A.field(), 0, n);
  Matrix id = Matrix::identity(A.field(), n);
  for (int h : G->subgroup_elements(H)) {
    if (h == 0) continue;
    stacked = vstack(stacked, act[h] - id);
  }
  if (stacked.rows() == 0) return id;
  // Take an echelon basis of the kernel for deterministic output.
  Subspace s = Subspace::spanned_by(A.field(), n, kernel_basis(stacked));
  return s.basis_matrix();
}

Vec GRing::transfer(int K, int H, const Vec& x) const {
  const Field& F = *A.field();
  Vec r(A.dim(), 0);
  for (int g : G->left_coset_reps(K, H)) r = vadd(F, r, apply(g, x));
  return r;
}

Vec GRing::norm(int K, int H, const Vec& x) const {
  Vec r = A.one();
  for (int g : G->left_coset_reps(K, H)) r = A.mul(r, apply(g, x));
  return r;
}

GRing GRing::restrict(int H) const {
  if (!G->contains(domain, H)) throw Error("WrongGroup", "restriction to a non-subgroup");
  GRing r{G, H, A, std::vector<Matrix>(G->order())};
  for (int h : G->subgroup_elements(H)) r.act[h] = act[h];
  return r;
}

GRing GRing::trivial(GroupPtr G, int domain, FinAlgebra A) {
  std::vector<Matrix> act(G->order());
  for (int g : G->subgroup_elements(domain)) act[g] = Matrix::identity(A.field(), A.dim());
  return GRing{std::move(G), domain, std::move(A), std::move(act)};
}

GRing GRing::coinduced(const GRing& s, int D) {
  const auto& G = s.G;
  const int H = s.domain;
  if (!G->contains(D, H)) throw Error("WrongGroup", "coinduction target must contain the domain");
  auto reps = G->right_coset_reps(D, H);
  const std::size_t m = reps.size(), d = s.dim();
  FinAlgebra alg = FinAlgebra::product(std::vector<FinAlgebra>(m, s.A));
  auto locate = [&](int x, int& h) {
    for (std::size_t j = 0; j < m; ++j) {
      int hh = G->mul(x, G->inv(reps[j]));
      if (G->contains_elem(H, hh)) {
        h = hh;
        return j;
      }
    }
    throw Error("Internal", "right coset lookup failed");
  };
  std::vector<Matrix> act(G->order());
  for (int g : G->subgroup_elements(D)) {
    Matrix M(s.field(), m * d, m * d);
    for (std::size_t i = 0; i < m; ++i) {
      int h = 0;
      std::size_t j = locate(G->mul(reps[i], g), h);
      const Matrix& a = s.act[h];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) M(i * d + r, j * d + c) = a(r, c);
    }
    act[g] = std::move(M);
  }
  return GRing{G, D, std::move(alg), std::move(act)};
}

GRing GRing::product(const std::vector<GRing>& rs) {
  if (rs.empty()) throw Error("ParseError", "empty product");
  std::vector<FinAlgebra> as;
  for (const auto& r : rs) {
    if (r.G != rs.front().G || r.domain != rs.front().domain)
      throw Error("GroupMismatch", "product of G-rings over different groups");
    as.push_back(r.A);
  }
  GRing out{rs.front().G, rs.front().domain, FinAlgebra::product(as),
            std::vector<Matrix>(rs.front().G->order())};
  for (int g : out.G->subgroup_elements(out.domain)) {
    std::vector<Matrix> blocks;
    for (const auto& r : rs) blocks.push_back(r.act[g]);
    out.act[g] = block_diagonal(out.A.field(), blocks);
  }
  return out;
}

GRing relative_tensor_gring(const GRing& a, const GRing& b, const Matrix& u, const GRing& c,
                            const Matrix& v, RelativeTensor* out) {
  RelativeTensor rt = relative_tensor(a.A, b.A, u, c.A, v);
  const std::size_t na = a.dim(), nc = c.dim();
  GRing r{a.G, a.domain, rt.algebra, std::vector<Matrix>(a.G->order())};
  for (int g : a.G->subgroup_elements(a.domain)) {
    Matrix m(a.field(), rt.algebra.dim(), rt.algebra.dim());
    for (std::size_t j = 0; j < rt.algebra.dim(); ++j) {
      Vec w = rt.quotient.lift(unit_vector(rt.algebra.dim(), j));
      Vec img(na * nc, 0);
      const Field& F = *a.field();
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t k = 0; k < nc; ++k) {
          Elem s = w[i * nc + k];
          if (!s) continue;
          Vec x = a.act[g].column(i), y = c.act[g].column(k);
          for (std::size_t p = 0; p < na; ++p) {
            if (!x[p]) continue;
            for (std::size_t q = 0; q < nc; ++q)
              if (y[q]) img[p * nc + q] = F.add(img[p * nc + q], F.mul(s, F.mul(x[p], y[q])));
          }
        }
      m.set_column(j, rt.quotient.project(img));
    }
    r.act[g] = std::move(m);
  }
  if (out) *out = std::move(rt);
  return r;
}

bool is_equivariant(const GRing& src, const GRing& dst, const Matrix& m) {
  for (int g : src.G->subgroup_elements(src.domain))
    if (!(m * src.act[g] == dst.act[g] * m)) return false;
  return true;
}

Vec first_irreducible(FieldPtr K, std::size_t n) {
  const std::uint32_t q = K->order();
  if (n == 0) throw Error("ParseError", "degree must be positive");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec m = decode_vector(code, q, n);
    m.push_back(1);
    if (n > 1 && m[0] == 0) continue;
    if (is_field(FinAlgebra::polynomial_quotient(K, m))) return m;
  }
  throw Error("Internal", "no irreducible polynomial found");
}

GRing galois_extension(FieldPtr K, std::size_t n, GroupPtr G) {
  if (!G->is_cyclic()) throw Error("NonCyclicGroup", "Galois groups of finite fields are cyclic");
  if (static_cast<std::size_t>(G->order()) != n)
    throw Error("GroupMismatch", "group order differs from the extension degree");
  Vec m = first_irreducible(K, n);
  FinAlgebra L = FinAlgebra::polynomial_quotient(K, m);
  Matrix fr = L.frobenius();
  int gen = G->cyclic_generator();
  std::vector<Matrix> act(G->order());
  Matrix cur = Matrix::identity(K, n);
  int x = 0;
  for (std::size_t i = 0; i < n; ++i) {
    act[x] = cur;
    cur = fr * cur;
    x = G->mul(gen, x);
  }
  GRing r{G, G->whole(), std::move(L), std::move(act)};
  r.validate();
  return r;
}

Vec normal_basis(const GRing& L) {
  const std::size_t n = L.dim();
  auto els = L.G->subgroup_elements(L.domain);
  if (els.size() != n) throw Error("NoNormalBasis", "group order differs from the dimension");
  const std::uint32_t q = L.field()->order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > 10'000'000) throw Error("CapExceeded", "normal basis search space");
  }
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec th = decode_vector(code, q, n);
    std::vector<Vec> orb;
    for (int g : els) orb.push_back(L.apply(g, th));
    if (rank(Matrix::from_columns(L.field(), n, orb)) == n) return th;
  }
  throw Error("NoNormalBasis", "no element has an orbit spanning the algebra");
}

std::string vec_string(const Vec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace tambara
