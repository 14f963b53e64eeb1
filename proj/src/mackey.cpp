#include "tambara/mackey.hpp"

#include <sstream>

namespace tambara {

namespace {

std::string pair_str(const FiniteGroup& G, int K, int H) {
  return G.subgroup_label(H) + " ⊆ " + G.subgroup_label(K);
}

}  // namespace

MackeyModule::MackeyModule(GroupPtr g, FieldPtr f, int dom)
    : G(std::move(g)), F(std::move(f)), domain(dom) {
  const int ns = G->num_subgroups();
  dims.assign(ns, 0);
  res_.assign(static_cast<std::size_t>(ns) * ns, Matrix());
  tr_.assign(static_cast<std::size_t>(ns) * ns, Matrix());
  conj_.assign(static_cast<std::size_t>(G->order()) * ns, Matrix());
}

void MackeyModule::allocate() {
  for (int K : subgroups())
    for (int H : subgroups())
      if (G->contains(K, H)) {
        res(K, H) = Matrix(F, dims[H], dims[K]);
        tr(K, H) = Matrix(F, dims[K], dims[H]);
      }
  for (int g : G->subgroup_elements(domain))
    for (int H : subgroups()) conj(g, H) = Matrix(F, dims[G->conjugate(g, H)], dims[H]);
}

Matrix MackeyModule::res_along(int A, int B, int c) const {
  int cB = G->conjugate(c, B);
  return res(cB, A) * conj(c, B);
}

Matrix MackeyModule::tr_along(int A, int B, int c) const {
  int cB = G->conjugate(c, B);
  return conj(G->inv(c), cB) * tr(cB, A);
}

std::size_t MackeyModule::total_dim() const {
  std::size_t s = 0;
  for (int H : subgroups()) s += dims[H];
  return s;
}

std::vector<AxiomFailure> check_mackey_axioms(const MackeyModule& m) {
  std::vector<AxiomFailure> out;
  const FiniteGroup& G = *m.G;
  auto subs = m.subgroups();
  auto els = G.subgroup_elements(m.domain);
  for (int H : subs) {
    Matrix id = Matrix::identity(m.F, m.dim(H));
    if (!(m.res(H, H) == id)) out.push_back({"res-identity", G.subgroup_label(H)});
    if (!(m.tr(H, H) == id)) out.push_back({"tr-identity", G.subgroup_label(H)});
    for (int h : G.subgroup_elements(H))
      if (!(m.conj(h, H) == id))
        out.push_back({"conj-trivial-on-own-level",
                       "element " + std::to_string(h) + " on " + G.subgroup_label(H)});
  }
  for (int g : els)
    for (int g2 : els)
      for (int H : subs) {
        Matrix lhs = m.conj(G.mul(g, g2), H);
        Matrix rhs = m.conj(g, G.conjugate(g2, H)) * m.conj(g2, H);
        if (!(lhs == rhs))
          out.push_back({"conj-composition", std::to_string(g) + "," + std::to_string(g2) +
                                                 " on " + G.subgroup_label(H)});
      }
  for (int L : subs)
    for (int K : subs)
      for (int H : subs) {
        if (!G.contains(L, K) || !G.contains(K, H)) continue;
        if (!(m.res(K, H) * m.res(L, K) == m.res(L, H)))
          out.push_back({"res-functorial", pair_str(G, K, H) + " ⊆ " + G.subgroup_label(L)});
        if (!(m.tr(L, K) * m.tr(K, H) == m.tr(L, H)))
          out.push_back({"tr-functorial", pair_str(G, K, H) + " ⊆ " + G.subgroup_label(L)});
      }
  for (int g : els)
    for (int K : subs)
      for (int H : subs) {
        if (!G.contains(K, H)) continue;
        int gK = G.conjugate(g, K), gH = G.conjugate(g, H);
        if (!(m.conj(g, H) * m.res(K, H) == m.res(gK, gH) * m.conj(g, K)))
          out.push_back({"conj-res", std::to_string(g) + " on " + pair_str(G, K, H)});
        if (!(m.conj(g, K) * m.tr(K, H) == m.tr(gK, gH) * m.conj(g, H)))
          out.push_back({"conj-tr", std::to_string(g) + " on " + pair_str(G, K, H)});
      }
  for (int K : subs)
    for (int J : subs)
      for (int H : subs) {
        if (!G.contains(K, J) || !G.contains(K, H)) continue;
        Matrix lhs = m.res(K, J) * m.tr(K, H);
        Matrix rhs(m.F, m.dim(J), m.dim(H));
        for (const auto& dc : G.double_cosets(J, H, K)) {
          int x = dc.rep;
          int inner = G.intersect(G.conjugate(G.inv(x), J), H);
          rhs = rhs + m.tr(J, dc.intersection) * m.conj(x, inner) * m.res(H, inner);
        }
        if (!(lhs == rhs))
          out.push_back({"mackey-double-coset",
                         "res to " + G.subgroup_label(J) + " of tr from " + G.subgroup_label(H) +
                             " in " + G.subgroup_label(K)});
      }
  return out;
}

bool check_cohomological(const MackeyModule& m) {
  const FiniteGroup& G = *m.G;
  for (int K : m.subgroups())
    for (int H : m.subgroups()) {
      if (!G.contains(K, H)) continue;
      Matrix idx = Matrix::identity(m.F, m.dim(K)).scaled(m.F->from_int(G.index(K, H)));
      if (!(m.tr(K, H) * m.res(K, H) == idx)) return false;
    }
  return true;
}

bool transfers_surjective(const MackeyModule& m) {
  const FiniteGroup& G = *m.G;
  for (int K : m.subgroups())
    for (int H : m.subgroups())
      if (H != K && G.contains(K, H) && !is_surjective(m.tr(K, H))) return false;
  return true;
}

bool restrictions_injective(const MackeyModule& m) {
  const FiniteGroup& G = *m.G;
  for (int K : m.subgroups())
    for (int H : m.subgroups())
      if (H != K && G.contains(K, H) && !is_injective(m.res(K, H))) return false;
  return true;
}

std::vector<AxiomFailure> check_module_map(const MackeyModule& a, const MackeyModule& b,
                                           const ModuleMap& f) {
  std::vector<AxiomFailure> out;
  const FiniteGroup& G = *a.G;
  for (int H : a.subgroups()) {
    const Matrix& m = f.level.at(H);
    if (m.rows() != b.dim(H) || m.cols() != a.dim(H))
      out.push_back({"map-shape", G.subgroup_label(H)});
  }
  if (!out.empty()) return out;
  for (int K : a.subgroups())
    for (int H : a.subgroups()) {
      if (!G.contains(K, H)) continue;
      if (!(f.level[H] * a.res(K, H) == b.res(K, H) * f.level[K]))
        out.push_back({"map-res", pair_str(G, K, H)});
      if (!(f.level[K] * a.tr(K, H) == b.tr(K, H) * f.level[H]))
        out.push_back({"map-tr", pair_str(G, K, H)});
    }
  for (int g : G.subgroup_elements(a.domain))
    for (int H : a.subgroups()) {
      int gH = G.conjugate(g, H);
      if (!(f.level[gH] * a.conj(g, H) == b.conj(g, H) * f.level[H]))
        out.push_back({"map-conj", std::to_string(g) + " on " + G.subgroup_label(H)});
    }
  return out;
}

bool is_isomorphism(const MackeyModule& a, const MackeyModule& b, const ModuleMap& f) {
  if (!check_module_map(a, b, f).empty()) return false;
  for (int H : a.subgroups()) {
    const Matrix& m = f.level[H];
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap r;
  r.level.resize(f.level.size());
  for (std::size_t i = 0; i < f.level.size(); ++i)
    if (!f.level[i].empty() && !g.level[i].empty()) r.level[i] = g.level[i] * f.level[i];
  return r;
}

MackeyModule direct_sum(const std::vector<MackeyModule>& ms) {
  if (ms.empty()) throw Error("ParseError", "empty direct sum");
  const auto& first = ms.front();
  for (const auto& m : ms) {
    if (m.G != first.G || m.domain != first.domain)
      throw Error("GroupMismatch", "direct sum over different groups");
    if (!same_field(m.F, first.F)) throw Error("FieldMismatch", "direct sum over different fields");
  }
  MackeyModule r(first.G, first.F, first.domain);
  const FiniteGroup& G = *r.G;
  for (int H : r.subgroups())
    for (const auto& m : ms) r.dims[H] += m.dims[H];
  auto blocks = [&](auto getter) {
    std::vector<Matrix> bs;
    for (const auto& m : ms) bs.push_back(getter(m));
    return block_diagonal(r.F, bs);
  };
  for (int K : r.subgroups())
    for (int H : r.subgroups())
      if (G.contains(K, H)) {
        r.res(K, H) = blocks([&](const MackeyModule& m) { return m.res(K, H); });
        r.tr(K, H) = blocks([&](const MackeyModule& m) { return m.tr(K, H); });
      }
  for (int g : G.subgroup_elements(r.domain))
    for (int H : r.subgroups())
      r.conj(g, H) = blocks([&](const MackeyModule& m) { return m.conj(g, H); });
  return r;
}

MackeyModule restrict_module(const MackeyModule& m, int H) {
  if (!m.G->contains(m.domain, H)) throw Error("WrongGroup", "restriction to a non-subgroup");
  MackeyModule r = m;
  r.domain = H;
  for (int K = 0; K < r.nsub(); ++K)
    if (!r.G->contains(H, K)) r.dims[K] = 0;
  return r;
}

CoindLevel coind_level(const MackeyModule& t, int D, int K) {
  CoindLevel lv;
  std::size_t off = 0;
  for (const auto& dc : t.G->double_cosets(t.domain, K, D)) {
    lv.reps.push_back(dc.rep);
    lv.inter.push_back(dc.intersection);
    lv.offset.push_back(off);
    off += t.dim(dc.intersection);
  }
  lv.offset.push_back(off);
  return lv;
}

namespace {

// Locates the H-orbit of y·B in D/B: returns (j, h) with y B = h g_j B.
std::pair<std::size_t, int> locate_orbit(const FiniteGroup& G, int H, const CoindLevel& lv,
                                         int B, int y) {
  for (std::size_t j = 0; j < lv.reps.size(); ++j)
    for (int h : G.subgroup_elements(H)) {
      int z = G.mul(G.inv(G.mul(h, lv.reps[j])), y);
      if (G.contains_elem(B, z)) return {j, h};
    }
  throw Error("Internal", "orbit lookup failed");
}

void put_block(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& b, bool accumulate) {
  const Field& F = *dst.field();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      dst(r0 + i, c0 + j) = accumulate ? F.add(dst(r0 + i, c0 + j), b(i, j)) : b(i, j);
}

}  // namespace

MackeyModule coinduce_module(const MackeyModule& t, int D) {
  const FiniteGroup& G = *t.G;
  const int H = t.domain;
  if (!G.contains(D, H)) throw Error("WrongGroup", "coinduction target must contain the domain");
  MackeyModule r(t.G, t.F, D);
  auto subs = r.subgroups();
  std::vector<CoindLevel> lv(r.nsub());
  for (int K : subs) {
    lv[K] = coind_level(t, D, K);
    r.dims[K] = lv[K].offset.back();
  }
  auto res_f = [&](int A, int B, int c) {
    Matrix m(r.F, r.dims[A], r.dims[B]);
    for (std::size_t i = 0; i < lv[A].reps.size(); ++i) {
      auto [j, h] = locate_orbit(G, H, lv[B], B, G.mul(lv[A].reps[i], c));
      put_block(m, lv[A].offset[i], lv[B].offset[j],
                t.res_along(lv[A].inter[i], lv[B].inter[j], h), false);
    }
    return m;
  };
  auto tr_f = [&](int A, int B, int c) {
    Matrix m(r.F, r.dims[B], r.dims[A]);
    for (std::size_t i = 0; i < lv[A].reps.size(); ++i) {
      auto [j, h] = locate_orbit(G, H, lv[B], B, G.mul(lv[A].reps[i], c));
      put_block(m, lv[B].offset[j], lv[A].offset[i],
                t.tr_along(lv[A].inter[i], lv[B].inter[j], h), true);
    }
    return m;
  };
  for (int K : subs)
    for (int L : subs)
      if (G.contains(K, L)) {
        r.res(K, L) = res_f(L, K, 0);
        r.tr(K, L) = tr_f(L, K, 0);
      }
  for (int g : G.subgroup_elements(D))
    for (int K : subs) r.conj(g, K) = res_f(G.conjugate(g, K), K, g);
  return r;
}

MackeyModule cp_module(GroupPtr G, FieldPtr F, std::size_t top, std::size_t bottom,
                       const Matrix& sigma, const Matrix& res, const Matrix& tr) {
  if (G->num_subgroups() != 2) throw Error("WrongGroup", "expected a group of prime order");
  MackeyModule m(G, F, G->whole());
  const int e = 0, T = 1;
  m.dims[e] = bottom;
  m.dims[T] = top;
  m.allocate();
  m.res(e, e) = Matrix::identity(F, bottom);
  m.tr(e, e) = Matrix::identity(F, bottom);
  m.res(T, T) = Matrix::identity(F, top);
  m.tr(T, T) = Matrix::identity(F, top);
  m.res(T, e) = res;
  m.tr(T, e) = tr;
  int gen = G->cyclic_generator();
  Matrix cur = Matrix::identity(F, bottom);
  int x = 0;
  for (int i = 0; i < G->order(); ++i) {
    m.conj(x, e) = cur;
    m.conj(x, T) = Matrix::identity(F, top);
    cur = sigma * cur;
    x = G->mul(gen, x);
  }
  return m;
}

MackeyModule special_module_D(GroupPtr G, FieldPtr F) {
  return cp_module(G, F, 0, 1, Matrix::identity(F, 1), Matrix(F, 1, 0), Matrix(F, 0, 1));
}

Representation ev_bottom(const MackeyModule& m) {
  Representation r;
  r.dim = m.dim(0);
  r.act.resize(m.G->order());
  for (int g : m.G->subgroup_elements(m.domain)) r.act[g] = m.conj(g, 0);
  return r;
}

std::string dims_string(const MackeyModule& m) {
  std::ostringstream os;
  bool first = true;
  for (int H : m.subgroups()) {
    os << (first ? "" : " ") << m.G->subgroup_label(H) << ":" << m.dim(H);
    first = false;
  }
  return os.str();
}

}  // namespace tambara

namespace tambara {

MapSystem::MapSystem(const MackeyModule& A, const MackeyModule& B) : A_(A), B_(B) {
  const FiniteGroup& G = *A.G;
  offset_.assign(A.nsub(), 0);
  for (int H : A.subgroups()) {
    offset_[H] = total_;
    total_ += B.dim(H) * A.dim(H);
  }
  const Field& f = *A.F;
  // Each matrix identity X(f) = 0 contributes one equation per entry; the
  // entries are linear in f, so they are read off by evaluating on unit maps.
  auto identity = [&](const std::function<Matrix(const std::vector<Matrix>&)>& X) {
    std::vector<Matrix> zero(A.nsub());
    for (int H : A.subgroups()) zero[H] = Matrix(A.F, B.dim(H), A.dim(H));
    Matrix base = X(zero);
    const std::size_t n = base.rows() * base.cols();
    if (n == 0) return;
    std::vector<Vec> cols;
    cols.reserve(total_);
    std::vector<Matrix> m = zero;
    for (int H : A.subgroups())
      for (std::size_t i = 0; i < B.dim(H) * A.dim(H); ++i) {
        m[H](i / A.dim(H), i % A.dim(H)) = 1;
        cols.push_back(X(m).data());
        m[H](i / A.dim(H), i % A.dim(H)) = 0;
      }
    for (std::size_t r = 0; r < n; ++r) {
      Vec row(total_, 0);
      for (std::size_t c = 0; c < total_; ++c) row[c] = cols[c][r];
      rows_.push_back(std::move(row));
      rhs_.push_back(f.neg(base.data()[r]));
    }
  };
  for (int K : A.subgroups())
    for (int H : G.subgroups_in(K)) {
      if (H == K) continue;
      identity([&, K, H](const std::vector<Matrix>& m) { return m[H] * A.res(K, H) - B.res(K, H) * m[K]; });
      identity([&, K, H](const std::vector<Matrix>& m) { return m[K] * A.tr(K, H) - B.tr(K, H) * m[H]; });
    }
  for (int g : G.subgroup_elements(A.domain))
    for (int H : A.subgroups()) {
      int gH = G.conjugate(g, H);
      identity([&, g, H, gH](const std::vector<Matrix>& m) { return m[gH] * A.conj(g, H) - B.conj(g, H) * m[H]; });
    }
}

void MapSystem::require(int H, const Vec& x, const Vec& y) {
  const std::size_t c = A_.dim(H);
  for (std::size_t r = 0; r < B_.dim(H); ++r) {
    Vec row(total_, 0);
    for (std::size_t j = 0; j < c; ++j) row[offset_[H] + r * c + j] = x[j];
    rows_.push_back(std::move(row));
    rhs_.push_back(y[r]);
  }
}

void MapSystem::require(int H, const Matrix& left, const Vec& x, const Vec& y) {
  const Field& f = *A_.F;
  const std::size_t c = A_.dim(H);
  for (std::size_t r = 0; r < left.rows(); ++r) {
    Vec row(total_, 0);
    for (std::size_t k = 0; k < B_.dim(H); ++k) {
      Elem l = left(r, k);
      if (!l) continue;
      for (std::size_t j = 0; j < c; ++j) row[offset_[H] + k * c + j] = f.add(row[offset_[H] + k * c + j], f.mul(l, x[j]));
    }
    rows_.push_back(std::move(row));
    rhs_.push_back(y[r]);
  }
}

ModuleMap MapSystem::unpack(const Vec& x) const {
  ModuleMap m;
  m.level.resize(A_.nsub());
  for (int H : A_.subgroups()) {
    Matrix l(A_.F, B_.dim(H), A_.dim(H));
    for (std::size_t i = 0; i < B_.dim(H) * A_.dim(H); ++i) l(i / A_.dim(H), i % A_.dim(H)) = x[offset_[H] + i];
    m.level[H] = std::move(l);
  }
  return m;
}

std::optional<ModuleMap> MapSystem::solve() const {
  if (rows_.empty()) return unpack(Vec(total_, 0));
  Matrix a = Matrix::from_rows(A_.F, total_, rows_);
  auto x = tambara::solve(a, rhs_);
  if (!x) return std::nullopt;
  return unpack(*x);
}

std::vector<ModuleMap> MapSystem::kernel() const {
  std::vector<ModuleMap> out;
  if (rows_.empty()) {
    for (std::size_t i = 0; i < total_; ++i) out.push_back(unpack(unit_vector(total_, i)));
    return out;
  }
  Matrix a = Matrix::from_rows(A_.F, total_, rows_);
  for (const Vec& v : kernel_basis(a)) out.push_back(unpack(v));
  return out;
}

Submodule submodule(const MackeyModule& M, const std::vector<Subspace>& levels) {
  const FiniteGroup& G = *M.G;
  Submodule s;
  s.module = MackeyModule(M.G, M.F, M.domain);
  s.inclusion.level.resize(M.nsub());
  for (int H : M.subgroups()) {
    s.module.dims[H] = levels[H].dim();
    s.inclusion.level[H] = levels[H].dim() ? levels[H].basis_matrix() : Matrix(M.F, M.dim(H), 0);
  }
  s.module.allocate();
  auto induced = [&](int src, int dst, const Matrix& m) {
    Matrix out(M.F, levels[dst].dim(), levels[src].dim());
    for (std::size_t c = 0; c < levels[src].dim(); ++c) {
      Vec v = m.apply(levels[src].basis()[c]);
      if (!levels[dst].contains(v)) throw Error("NotClosed", "subspaces are not a submodule");
      out.set_column(c, levels[dst].coords(v));
    }
    return out;
  };
  for (int K : M.subgroups()) {
    for (int H : G.subgroups_in(K)) {
      s.module.res(K, H) = induced(K, H, M.res(K, H));
      s.module.tr(K, H) = induced(H, K, M.tr(K, H));
    }
    for (int g : G.subgroup_elements(M.domain)) s.module.conj(g, K) = induced(K, G.conjugate(g, K), M.conj(g, K));
  }
  return s;
}

}  // namespace tambara
