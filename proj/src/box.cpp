#include "tambara/box.hpp"

#include <limits>

namespace tambara {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kSummandCap = 4096;

Vec outer(const Field& f, const Vec& a, const Vec& b) {
  Vec t(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) t[i * b.size() + j] = f.mul(a[i], b[j]);
  }
  return t;
}

void place(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& block) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) m(r0 + r, c0 + c) = block(r, c);
}

// Induces gen-level map g on quotients, checking that relations go to relations.
Matrix induce(const Matrix& g, const Quotient& src, const Quotient& dst, const char* what) {
  for (const Vec& r : src.relations().basis())
    if (!dst.relations().contains(g.apply(r)))
      throw Error("Internal", std::string("box ") + what + " does not preserve relations");
  return dst.projection_matrix() * g * src.lift_matrix();
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + j, k * b.cols() + l) = f.mul(x, b(j, l));
    }
  return out;
}

Vec BoxPresentation::generator(int K, int L, const Vec& a, const Vec& b) const {
  const Level& lv = levels.at(K);
  Vec v(lv.gens, 0);
  Vec t = outer(*module.F, a, b);
  std::size_t off = lv.offset.at(L);
  if (off == kNone) throw Error("Internal", "summand not below level");
  for (std::size_t i = 0; i < t.size(); ++i) v[off + i] = t[i];
  return v;
}

Vec BoxPresentation::element(int K, int L, const Vec& a, const Vec& b) const {
  return levels.at(K).q.project(generator(K, L, a, b));
}

BoxPresentation box_presentation(const MackeyModule& M, const MackeyModule& N,
                                 const RelationHook& extra) {
  if (M.G != N.G && !M.G->same_table(*N.G)) throw Error("GroupMismatch", "box of modules over different groups");
  if (M.domain != N.domain) throw Error("GroupMismatch", "box of modules over different domains");
  if (!same_field(M.F, N.F)) throw Error("FieldMismatch", "box of modules over different fields");
  const FiniteGroup& G = *M.G;
  const FieldPtr& F = M.F;
  const Field& f = *F;
  const int n = M.nsub();
  BoxPresentation out;
  out.left = M;
  out.right = N;
  out.levels.resize(n);
  auto subs = M.subgroups();

  for (int K : subs) {
    auto& lv = out.levels[K];
    lv.offset.assign(n, kNone);
    for (int L : G.subgroups_in(K)) {
      std::size_t sz = M.dim(L) * N.dim(L);
      if (sz > kSummandCap) throw Error("CapExceeded", "box summand exceeds 4096 dimensions");
      lv.summands.push_back(L);
      lv.offset[L] = lv.gens;
      lv.gens += sz;
    }
    Subspace rel(F, lv.gens);
    auto put = [&](int L, const Vec& t, Vec& into, Elem s) {
      std::size_t off = lv.offset[L];
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i]) into[off + i] = f.add(into[off + i], f.mul(s, t[i]));
    };
    const Elem minus = f.neg(f.one());
    for (int L : lv.summands) {
      const std::size_t dm = M.dim(L), dn = N.dim(L);
      // conjugation by elements of K
      for (int k : G.subgroup_elements(K)) {
        int kL = G.conjugate(k, L);
        if (k == 0) continue;
        Matrix c = kron(M.conj(k, L), N.conj(k, L));
        for (std::size_t x = 0; x < dm * dn; ++x) {
          Vec r(lv.gens, 0);
          put(kL, c.column(x), r, f.one());
          put(L, unit_vector(dm * dn, x), r, minus);
          rel.add(r);
        }
      }
      // Frobenius relations along L' ⊂ L
      for (int Lp : G.subgroups_in(L)) {
        if (Lp == L) continue;
        const std::size_t em = M.dim(Lp), en = N.dim(Lp);
        for (std::size_t a = 0; a < em; ++a)
          for (std::size_t b = 0; b < dn; ++b) {
            Vec r(lv.gens, 0);
            put(L, outer(f, M.tr(L, Lp).column(a), unit_vector(dn, b)), r, f.one());
            put(Lp, outer(f, unit_vector(em, a), N.res(L, Lp).column(b)), r, minus);
            rel.add(r);
          }
        for (std::size_t a = 0; a < dm; ++a)
          for (std::size_t b = 0; b < en; ++b) {
            Vec r(lv.gens, 0);
            put(L, outer(f, unit_vector(dm, a), N.tr(L, Lp).column(b)), r, f.one());
            put(Lp, outer(f, M.res(L, Lp).column(a), unit_vector(en, b)), r, minus);
            rel.add(r);
          }
      }
      if (extra)
        for (const Vec& t : extra(L)) {
          Vec r(lv.gens, 0);
          put(L, t, r, f.one());
          rel.add(r);
        }
    }
    lv.q = Quotient(std::move(rel));
  }

  MackeyModule& B = out.module;
  B = MackeyModule(M.G, F, M.domain);
  for (int K : subs) B.dims[K] = out.levels[K].q.dim();
  B.allocate();

  for (int K : subs) {
    const auto& src = out.levels[K];
    // transfers: summand inclusion
    for (int J : subs) {
      if (!G.contains(J, K)) continue;
      const auto& dst = out.levels[J];
      Matrix g(F, dst.gens, src.gens);
      for (int L : src.summands)
        for (std::size_t x = 0; x < M.dim(L) * N.dim(L); ++x) g(dst.offset[L] + x, src.offset[L] + x) = 1;
      B.tr(J, K) = induce(g, src.q, dst.q, "transfer");
    }
    // conjugations
    for (int g0 : G.subgroup_elements(M.domain)) {
      int gK = G.conjugate(g0, K);
      const auto& dst = out.levels[gK];
      Matrix g(F, dst.gens, src.gens);
      for (int L : src.summands)
        place(g, dst.offset[G.conjugate(g0, L)], src.offset[L], kron(M.conj(g0, L), N.conj(g0, L)));
      B.conj(g0, K) = induce(g, src.q, dst.q, "conjugation");
    }
    // restrictions by the double coset formula
    for (int J : G.subgroups_in(K)) {
      const auto& dst = out.levels[J];
      Matrix g(F, dst.gens, src.gens);
      for (int L : src.summands) {
        for (const auto& dc : G.double_cosets(J, L, K)) {
          int x = dc.rep;
          int I = dc.intersection;                       // J ∩ xLx⁻¹
          int Ip = G.conjugate(G.inv(x), I);             // x⁻¹Jx ∩ L
          Matrix bm = kron(M.conj(x, Ip) * M.res(L, Ip), N.conj(x, Ip) * N.res(L, Ip));
          for (std::size_t r = 0; r < bm.rows(); ++r)
            for (std::size_t c = 0; c < bm.cols(); ++c)
              if (bm(r, c)) {
                Elem& e = g(dst.offset[I] + r, src.offset[L] + c);
                e = f.add(e, bm(r, c));
              }
        }
      }
      B.res(K, J) = induce(g, src.q, dst.q, "restriction");
    }
  }
  return out;
}

MackeyModule box_modules(const MackeyModule& M, const MackeyModule& N) { return box_presentation(M, N).module; }

Matrix action_of(const ModuleOver& M, int H, const Vec& x) {
  Matrix out(M.M.F, M.M.dim(H), M.M.dim(H));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) out = out + M.act.at(H).at(i).scaled(x[i]);
  return out;
}

ModuleOver scalar_module(const Tambara& k, const MackeyModule& M) {
  ModuleOver out{M, {}};
  out.act.resize(M.nsub());
  for (int H : M.subgroups()) {
    if (k.dim(H) != 1 || k.ring[H].one() != Vec{1}) throw Error("NotAModule", "base is not a constant field");
    out.act[H].push_back(Matrix::identity(M.F, M.dim(H)));
  }
  return out;
}

void check_module_over(const Tambara& k, const ModuleOver& Mo) {
  const MackeyModule& M = Mo.M;
  const FiniteGroup& G = *M.G;
  if (k.domain() != M.domain || !same_field(k.field(), M.F))
    throw Error("NotAModule", "base and module disagree on domain or field");
  auto fail = [](const std::string& what) { throw Error("NotAModule", what); };
  const auto subs = M.subgroups();
  if (Mo.act.size() < static_cast<std::size_t>(M.nsub())) fail("missing action levels");
  for (int H : subs) {
    const FinAlgebra& A = k.ring[H];
    if (Mo.act[H].size() != A.dim()) fail("action width at level " + std::to_string(H));
    if (!(action_of(Mo, H, A.one()) == Matrix::identity(M.F, M.dim(H)))) fail("unit acts nontrivially");
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j)
        if (!(action_of(Mo, H, A.mul(unit_vector(A.dim(), i), unit_vector(A.dim(), j))) ==
              Mo.act[H][i] * Mo.act[H][j]))
          fail("action not associative");
  }
  for (int K : subs)
    for (int H : G.subgroups_in(K)) {
      if (H == K) continue;
      const std::size_t dk = k.dim(K), dh = k.dim(H);
      for (std::size_t i = 0; i < dk; ++i) {
        Vec xr = k.M.res(K, H).column(i);
        if (!(M.res(K, H) * Mo.act[K][i] == action_of(Mo, H, xr) * M.res(K, H))) fail("res not linear");
        if (!(M.tr(K, H) * action_of(Mo, H, xr) == Mo.act[K][i] * M.tr(K, H))) fail("Frobenius (module side)");
      }
      for (std::size_t j = 0; j < dh; ++j)
        if (!(action_of(Mo, K, k.M.tr(K, H).column(j)) == M.tr(K, H) * Mo.act[H][j] * M.res(K, H)))
          fail("Frobenius (base side)");
    }
  for (int g : G.subgroup_elements(M.domain))
    for (int H : subs) {
      int gH = G.conjugate(g, H);
      for (std::size_t i = 0; i < k.dim(H); ++i)
        if (!(M.conj(g, H) * Mo.act[H][i] == action_of(Mo, gH, k.M.conj(g, H).column(i)) * M.conj(g, H)))
          fail("conjugation not compatible");
    }
}

BoxPresentation box_over_base(const Tambara& k, const ModuleOver& M, const ModuleOver& N) {
  check_module_over(k, M);
  check_module_over(k, N);
  const Field& f = *k.field();
  RelationHook hook = [&](int L) {
    std::vector<Vec> out;
    const std::size_t dm = M.M.dim(L), dn = N.M.dim(L);
    for (std::size_t x = 0; x < k.dim(L); ++x)
      for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t b = 0; b < dn; ++b) {
          Vec l = outer(f, M.act[L][x].column(a), unit_vector(dn, b));
          Vec r = outer(f, unit_vector(dm, a), N.act[L][x].column(b));
          Vec d = vsub(f, l, r);
          if (!vzero(d)) out.push_back(std::move(d));
        }
    return out;
  };
  return box_presentation(M.M, N.M, hook);
}

ModuleOver box_module_over(const Tambara& k, const ModuleOver& M, const BoxPresentation& box) {
  const FiniteGroup& G = *k.group();
  ModuleOver out{box.module, {}};
  out.act.resize(box.module.nsub());
  const auto& N = box.right;
  for (int K : box.module.subgroups()) {
    const auto& lv = box.levels[K];
    for (std::size_t x = 0; x < k.dim(K); ++x) {
      Matrix g(k.field(), lv.gens, lv.gens);
      for (int L : lv.summands) {
        Vec xr = k.M.res(K, L).column(x);
        place(g, lv.offset[L], lv.offset[L], kron(action_of(M, L, xr), Matrix::identity(k.field(), N.dim(L))));
      }
      out.act[K].push_back(induce(g, lv.q, lv.q, "action"));
    }
  }
  (void)G;
  return out;
}

// Top of the Mazur form as a quotient of M(T)⊗N(T) ⊕ M(e)⊗N(e).
static Quotient mazur_top(const MackeyModule& M, const MackeyModule& N, const Matrix& sig) {
  const FiniteGroup& G = *M.G;
  const FieldPtr& F = M.F;
  const Field& f = *F;
  const int T = G.whole(), e = 0;
  const std::size_t mb = M.dim(e), nb = N.dim(e), mt = M.dim(T), nt = N.dim(T);
  const std::size_t vb = mb * nb, vt = mt * nt;
  Subspace rel(F, vt + vb);
  auto add = [&](const Vec& top, const Vec& bottom, Elem s) {
    Vec r(vt + vb, 0);
    for (std::size_t i = 0; i < vt; ++i) r[i] = top[i];
    for (std::size_t i = 0; i < vb; ++i) r[vt + i] = f.mul(s, bottom[i]);
    rel.add(r);
  };
  const Elem minus = f.neg(f.one());
  for (std::size_t v = 0; v < vb; ++v) {
    Vec d = sig.column(v);
    d[v] = f.sub(d[v], f.one());
    add(Vec(vt, 0), d, f.one());
  }
  for (std::size_t a = 0; a < mb; ++a)
    for (std::size_t b = 0; b < nt; ++b)
      add(outer(f, M.tr(T, e).column(a), unit_vector(nt, b)),
          outer(f, unit_vector(mb, a), N.res(T, e).column(b)), minus);
  for (std::size_t a = 0; a < mt; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      add(outer(f, unit_vector(mt, a), N.tr(T, e).column(b)),
          outer(f, M.res(T, e).column(a), unit_vector(nb, b)), minus);
  return Quotient(std::move(rel));
}

static Matrix mazur_sigma(const MackeyModule& M, const MackeyModule& N) {
  const FiniteGroup& G = *M.G;
  if (!G.is_cyclic() || M.domain != G.whole() || N.domain != G.whole())
    throw Error("WrongGroup", "Mazur form needs a cyclic group of prime order");
  const std::size_t p = G.order();
  if (p < 2) throw Error("WrongGroup", "Mazur form needs prime order");
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error("WrongGroup", "Mazur form needs prime order");
  const int s = G.cyclic_generator();
  return kron(M.conj(s, 0), N.conj(s, 0));
}

MackeyModule mazur_box(const MackeyModule& M, const MackeyModule& N) {
  Matrix sig = mazur_sigma(M, N);
  const FiniteGroup& G = *M.G;
  const FieldPtr& F = M.F;
  const int T = G.whole(), e = 0;
  const std::size_t vb = M.dim(e) * N.dim(e), vt = M.dim(T) * N.dim(T);
  Quotient q = mazur_top(M, N, sig);
  // res: [a⊗b]_T -> res a ⊗ res b, [v] -> Σ σ^i v
  Matrix resg(F, vb, vt + vb);
  place(resg, 0, 0, kron(M.res(T, e), N.res(T, e)));
  Matrix orbit(F, vb, vb), pw = Matrix::identity(F, vb);
  for (std::size_t i = 0; i < static_cast<std::size_t>(G.order()); ++i) {
    orbit = orbit + pw;
    pw = sig * pw;
  }
  place(resg, 0, vt, orbit);
  Matrix trg(F, vt + vb, vb);
  place(trg, vt, 0, Matrix::identity(F, vb));
  return cp_module(M.G, F, q.dim(), vb, sig, resg * q.lift_matrix(), q.projection_matrix() * trg);
}

ModuleMap mazur_comparison(const BoxPresentation& box, const MackeyModule& mz) {
  const auto& M = box.left;
  const auto& N = box.right;
  const FiniteGroup& G = *M.G;
  const FieldPtr& F = M.F;
  const int T = G.whole(), e = 0;
  const std::size_t vt = M.dim(T) * N.dim(T), vb = M.dim(e) * N.dim(e);
  Quotient q = mazur_top(M, N, mazur_sigma(M, N));
  if (q.dim() != mz.dim(T)) throw Error("Internal", "Mazur top rebuilt with a different dimension");
  ModuleMap out;
  out.level.resize(box.module.nsub());
  out.level[e] = induce(Matrix::identity(F, vb), box.levels[e].q, Quotient(Subspace(F, vb)), "Mazur comparison");
  const auto& lv = box.levels[T];
  Matrix emb(F, vt + vb, lv.gens);
  for (std::size_t i = 0; i < vt; ++i) emb(i, lv.offset[T] + i) = 1;
  for (std::size_t i = 0; i < vb; ++i) emb(vt + i, lv.offset[e] + i) = 1;
  out.level[T] = induce(q.projection_matrix() * emb, lv.q, Quotient(Subspace(F, mz.dim(T))), "Mazur comparison");
  return out;
}

ModuleMap box_swap(const BoxPresentation& mn, const BoxPresentation& nm) {
  const FieldPtr& F = mn.module.F;
  ModuleMap out;
  out.level.resize(mn.module.nsub());
  for (int K : mn.module.subgroups()) {
    const auto& s = mn.levels[K];
    const auto& d = nm.levels[K];
    Matrix g(F, d.gens, s.gens);
    for (int L : s.summands) {
      const std::size_t a = mn.left.dim(L), b = mn.right.dim(L);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) g(d.offset[L] + j * a + i, s.offset[L] + i * b + j) = 1;
    }
    out.level[K] = induce(g, s.q, d.q, "swap");
  }
  return out;
}

ModuleMap box_map(const BoxPresentation& src, const BoxPresentation& dst, const ModuleMap& f, const ModuleMap& g) {
  ModuleMap out;
  out.level.resize(src.module.nsub());
  for (int K : src.module.subgroups()) {
    const auto& s = src.levels[K];
    const auto& d = dst.levels[K];
    Matrix m(src.module.F, d.gens, s.gens);
    for (int L : s.summands) place(m, d.offset[L], s.offset[L], kron(f.level[L], g.level[L]));
    out.level[K] = induce(m, s.q, d.q, "induced map");
  }
  return out;
}

ModuleMap box_map_right(const BoxPresentation& src, const BoxPresentation& dst, const ModuleMap& fm) {
  const FieldPtr& F = src.module.F;
  ModuleMap out;
  out.level.resize(src.module.nsub());
  for (int K : src.module.subgroups()) {
    const auto& s = src.levels[K];
    const auto& d = dst.levels[K];
    Matrix g(F, d.gens, s.gens);
    for (int L : s.summands)
      place(g, d.offset[L], s.offset[L], kron(Matrix::identity(F, src.left.dim(L)), fm.level[L]));
    out.level[K] = induce(g, s.q, d.q, "induced map");
  }
  return out;
}

ModuleMap box_unit_counit(const Tambara& k, const ModuleOver& N, const BoxPresentation& box) {
  const FieldPtr& F = k.field();
  ModuleMap out;
  out.level.resize(box.module.nsub());
  for (int K : box.module.subgroups()) {
    const auto& lv = box.levels[K];
    Matrix g(F, N.M.dim(K), lv.gens);
    for (int L : lv.summands) {
      const std::size_t dn = N.M.dim(L);
      for (std::size_t x = 0; x < k.dim(L); ++x) {
        Matrix blk = N.M.tr(K, L) * N.act[L][x];
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < dn; ++c) g(r, lv.offset[L] + x * dn + c) = blk(r, c);
      }
    }
    out.level[K] = induce(g, lv.q, Quotient(Subspace(F, N.M.dim(K))), "counit");
  }
  return out;
}

CoindResIso coind_res_box_iso(const Tambara& k, int H, const ModuleOver& M, const BoxPresentation& box,
                              const Tambara& unit) {
  const FiniteGroup& G = *k.group();
  const FieldPtr& F = k.field();
  const int D = k.domain();
  CoindResIso out;
  MackeyModule resM = restrict_module(M.M, H);
  out.target = coinduce_module(resM, D);
  out.psi.level.resize(box.module.nsub());
  MackeyModule resk = restrict_module(k.M, H);
  for (int K : box.module.subgroups()) {
    const auto& lv = box.levels[K];
    Matrix g(F, out.target.dim(K), lv.gens);
    for (int L : lv.summands) {
      CoindLevel cu = coind_level(resk, D, L);
      CoindLevel cm = coind_level(resM, D, L);
      const std::size_t du = unit.dim(L), dm = M.M.dim(L);
      Matrix tr = out.target.tr(K, L);
      for (std::size_t a = 0; a < du; ++a)
        for (std::size_t b = 0; b < dm; ++b) {
          Vec fvec = unit_vector(du, a);
          Vec y(out.target.dim(L), 0);
          for (std::size_t j = 0; j < cu.reps.size(); ++j) {
            int Lj = cu.inter[j];
            Vec fj(fvec.begin() + cu.offset[j], fvec.begin() + cu.offset[j] + k.dim(Lj));
            Vec mj = M.M.res_along(Lj, L, cu.reps[j]).apply(unit_vector(dm, b));
            Vec prod = action_of(M, Lj, fj).apply(mj);
            for (std::size_t i = 0; i < prod.size(); ++i) y[cm.offset[j] + i] = prod[i];
          }
          g.set_column(lv.offset[L] + a * dm + b, tr.apply(y));
        }
    }
    out.psi.level[K] = induce(g, lv.q, Quotient(Subspace(F, out.target.dim(K))), "coinduction comparison");
  }
  (void)G;
  out.iso = check_module_map(box.module, out.target, out.psi).empty() &&
            is_isomorphism(box.module, out.target, out.psi);
  return out;
}

std::string box_shape(const Extension& R, const Extension& T) {
  if (R.kind == ExtKind::CoindUnit || T.kind == ExtKind::CoindUnit || R.kind == ExtKind::Identity ||
      T.kind == ExtKind::Identity)
    return "coinduction-unit";
  if (R.kind == ExtKind::Product || T.kind == ExtKind::Product) return "product";
  if (R.k->group()->order() % R.k->field()->characteristic() != 0) return "invertible-order";
  if (transfers_surjective(R.k->M)) return "surjective-transfers";
  return "validated";
}

AlgebraBox box_algebras(const Extension& E1, const Extension& E2) {
  if (E1.k != E2.k) {
    if (E1.k->fp->S.A == E2.k->fp->S.A && E1.k->domain() == E2.k->domain()) {
      // same base data built twice; accepted
    } else {
      throw Error("GroupMismatch", "box of algebras over different bases");
    }
  }
  const Tambara& k = *E1.k;
  const Tambara& R = *E1.R;
  const Tambara& T = *E2.R;
  AlgebraBox out;
  out.shape = box_shape(E1, E2);
  GRing P = relative_tensor_gring(R.fp->S, k.fp->S, E1.unit, T.fp->S, E2.unit, &out.tensor);
  out.left = out.tensor.left;
  out.right = out.tensor.right;
  out.result = fixed_point(P, R.label + " ⊠ " + T.label);
  out.over_base = make_extension(E1.k, out.result, out.left * E1.unit, ExtKind::Generic, {},
                                 out.result->label + " over " + k.label);
  const Tambara& Pt = *out.result;

  ModuleOver Mr = module_via(k, R, E1.unit_levels());
  ModuleOver Mt = module_via(k, T, E2.unit_levels());
  out.module_box = box_over_base(k, Mr, Mt);
  const auto& box = out.module_box;
  const FieldPtr& F = k.field();
  out.phi.level.resize(box.module.nsub());
  for (int K : box.module.subgroups()) {
    const auto& lv = box.levels[K];
    Matrix g(F, Pt.dim(K), lv.gens);
    for (int L : lv.summands) {
      Matrix i1 = Pt.fp->proj[L] * out.left * R.fp->embed[L];
      Matrix i2 = Pt.fp->proj[L] * out.right * T.fp->embed[L];
      const Matrix& tr = Pt.M.tr(K, L);
      for (std::size_t a = 0; a < R.dim(L); ++a)
        for (std::size_t b = 0; b < T.dim(L); ++b)
          g.set_column(lv.offset[L] + a * T.dim(L) + b,
                       tr.apply(Pt.mul(L, i1.column(a), i2.column(b))));
    }
    out.phi.level[K] = induce(g, lv.q, Quotient(Subspace(F, Pt.dim(K))), "canonical map");
  }
  bool ok = check_module_map(box.module, Pt.M, out.phi).empty() && is_isomorphism(box.module, Pt.M, out.phi);
  if (!ok) {
    if (out.shape == "validated")
      throw Error("UnsupportedPair", "no closed form and FP(S⊗T) differs from the module box");
    throw Error("MismatchWitness", "closed form " + out.shape + " disagrees with the module box");
  }
  return out;
}

ExtensionPtr base_change_extension(const ExtensionPtr& R, const ExtensionPtr& l) {
  AlgebraBox b = box_algebras(*R, *l);
  return make_extension(l->R, b.result, b.right, ExtKind::BaseChange, {R, l},
                        R->R->label + " ⊠ " + l->R->label + " over " + l->R->label);
}

}  // namespace tambara
