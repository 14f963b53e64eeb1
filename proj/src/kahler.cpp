#include "tambara/kahler.hpp"

#include <deque>
#include <functional>

namespace tambara {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, q);
  return r;
}

// All elements of a subspace when it has at most `cap` elements.
std::vector<Vec> all_elements(const Subspace& s, std::uint64_t cap) {
  const std::uint32_t q = s.field()->order();
  std::uint64_t total = sat_pow(q, s.dim());
  if (total > cap) return {};
  const Field& f = *s.field();
  std::vector<Vec> out;
  out.reserve(total);
  for (std::uint64_t c = 0; c < total; ++c) {
    Vec co = decode_vector(c, q, s.dim());
    Vec v(s.ambient(), 0);
    for (std::size_t i = 0; i < co.size(); ++i)
      if (co[i]) vaxpy(f, v, co[i], s.basis()[i]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> some_elements(const Subspace& s) {
  auto all = all_elements(s, 4096);
  if (!all.empty() || s.dim() == 0) return all.empty() ? std::vector<Vec>{Vec(s.ambient(), 0)} : all;
  const Field& f = *s.field();
  std::vector<Vec> out = s.basis();
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) out.push_back(vadd(f, s.basis()[i], s.basis()[j]));
  return out;
}

// N'(r) for the prime-index pair L ⊂ H: product over nontrivial double cosets
// LaL of nm along K/(L∩aLa⁻¹) -> K/L, x -> xaL, of res r.
Vec norm_deviation(const Tambara& R, int H, int L, const Vec& r) {
  const FiniteGroup& G = *R.group();
  Vec out = R.ring[L].one();
  for (const auto& dc : G.double_cosets(L, L, H)) {
    if (dc.rep == 0) continue;
    int A = dc.intersection;
    Vec t = R.norm_along(A, L, dc.rep, R.M.res(L, A).apply(r));
    out = R.mul(L, out, t);
  }
  return out;
}

bool prime_index(const FiniteGroup& G, int H, int L) {
  int n = G.index(H, L);
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Backtracking over levelwise linear maps. shape(H) = (rows, cols);
// residual(H, maps) checks the constraints owned by level H, which only
// involve H and smaller subgroup ids.
struct Search {
  FieldPtr F;
  std::vector<int> levels;
  std::function<std::pair<std::size_t, std::size_t>(int)> shape;
  std::function<Vec(int, const std::vector<Matrix>&)> residual;
  int nsub = 0;

  std::uint64_t space() const {
    std::uint64_t s = 1;
    for (int H : levels) {
      auto [r, c] = shape(H);
      s = sat_mul(s, sat_pow(F->order(), r * c));
    }
    return s;
  }

  Enumeration run(SearchCaps caps) const {
    Enumeration out;
    out.space = space();
    if (out.space > caps.space) throw Error("SearchCapExceeded", "search space " + std::to_string(out.space));
    std::vector<Matrix> maps(nsub);
    for (int H : levels) {
      auto [r, c] = shape(H);
      maps[H] = Matrix(F, r, c);
    }
    const std::uint32_t q = F->order();
    std::function<void(std::size_t)> rec = [&](std::size_t li) {
      if (li == levels.size()) {
        ++out.count;
        if (out.found.size() < caps.keep) out.found.push_back({maps});
        return;
      }
      int H = levels[li];
      Matrix& m = maps[H];
      const std::size_t n = m.rows() * m.cols();
      std::vector<Elem> digits(n, 0);
      while (true) {
        for (std::size_t i = 0; i < n; ++i) m(i / m.cols(), i % m.cols()) = digits[i];
        if (vzero(residual(H, maps))) rec(li + 1);
        std::size_t i = 0;
        while (i < n && digits[i] == q - 1) digits[i++] = 0;
        if (i == n) break;
        ++digits[i];
      }
      m = Matrix(F, m.rows(), m.cols());
    };
    rec(0);
    return out;
  }

  std::size_t dimension() const {
    std::vector<std::size_t> off(nsub, 0);
    std::size_t total = 0;
    for (int H : levels) {
      off[H] = total;
      auto [r, c] = shape(H);
      total += r * c;
    }
    std::vector<Matrix> maps(nsub);
    for (int H : levels) {
      auto [r, c] = shape(H);
      maps[H] = Matrix(F, r, c);
    }
    auto all_residuals = [&]() {
      Vec out;
      for (int H : levels) {
        Vec r = residual(H, maps);
        out.insert(out.end(), r.begin(), r.end());
      }
      return out;
    };
    std::vector<Vec> cols;
    for (int H : levels) {
      Matrix& m = maps[H];
      for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
        m(i / m.cols(), i % m.cols()) = 1;
        cols.push_back(all_residuals());
        m(i / m.cols(), i % m.cols()) = 0;
      }
    }
    if (cols.empty()) return 0;
    Matrix A = Matrix::from_columns(F, cols.front().size(), cols);
    return total - rank(A);
  }
};

void append(Vec& out, const Matrix& m) { out.insert(out.end(), m.data().begin(), m.data().end()); }

void append(Vec& out, const Vec& v) { out.insert(out.end(), v.begin(), v.end()); }

}  // namespace

std::vector<AxiomFailure> check_ideal(const TambaraIdeal& I) {
  std::vector<AxiomFailure> out;
  const Tambara& R = *I.ambient;
  const FiniteGroup& G = *R.group();
  auto fail = [&](const std::string& a, int H) { out.push_back({a, "level " + G.subgroup_label(H)}); };
  for (int H : R.M.subgroups()) {
    for (const Vec& v : I.level[H].basis()) {
      for (std::size_t b = 0; b < R.dim(H); ++b)
        if (!I.level[H].contains(R.mul(H, unit_vector(R.dim(H), b), v))) {
          fail("multiplication", H);
          break;
        }
      for (int J : G.subgroups_in(H))
        if (!I.level[J].contains(R.M.res(H, J).apply(v))) fail("restriction", H);
      for (int J : R.M.subgroups())
        if (G.contains(J, H) && !I.level[J].contains(R.M.tr(J, H).apply(v))) fail("transfer", H);
      for (int g : G.subgroup_elements(R.domain()))
        if (!I.level[G.conjugate(g, H)].contains(R.M.conj(g, H).apply(v))) fail("conjugation", H);
    }
    for (int K : R.M.subgroups()) {
      if (K == H || !G.contains(K, H)) continue;
      for (const Vec& v : some_elements(I.level[H]))
        if (!I.level[K].contains(R.norm(K, H, v))) {
          fail("norm", K);
          break;
        }
    }
  }
  return out;
}

TambaraIdeal kernel_ideal(const TambaraPtr& src, const ModuleMap& f) {
  TambaraIdeal I{src, std::vector<Subspace>(src->M.nsub())};
  for (int H : src->M.subgroups())
    I.level[H] = Subspace::spanned_by(src->field(), src->dim(H), kernel_basis(f.level[H]));
  auto fails = check_ideal(I);
  if (!fails.empty()) throw Error("Internal", "kernel is not an ideal: " + fails.front().axiom);
  return I;
}

TambaraIdeal ideal_closure(const TambaraPtr& Rp, std::vector<std::vector<Vec>> gens) {
  const Tambara& R = *Rp;
  const FiniteGroup& G = *R.group();
  TambaraIdeal I{Rp, std::vector<Subspace>(R.M.nsub())};
  for (int H : R.M.subgroups()) I.level[H] = Subspace(R.field(), R.dim(H));
  std::deque<std::pair<int, Vec>> work;
  auto add = [&](int H, const Vec& v) {
    if (I.level[H].add(v)) work.emplace_back(H, v);
  };
  gens.resize(R.M.nsub());
  for (int H : R.M.subgroups())
    for (const Vec& v : gens[H]) add(H, v);
  while (!work.empty()) {
    auto [H, v] = work.front();
    work.pop_front();
    for (std::size_t b = 0; b < R.dim(H); ++b) add(H, R.mul(H, unit_vector(R.dim(H), b), v));
    for (int J : G.subgroups_in(H))
      if (J != H) add(J, R.M.res(H, J).apply(v));
    for (int J : R.M.subgroups())
      if (J != H && G.contains(J, H)) add(J, R.M.tr(J, H).apply(v));
    for (int g : G.subgroup_elements(R.domain())) add(G.conjugate(g, H), R.M.conj(g, H).apply(v));
  }
  return I;
}

IdealPower ideal_power_gt1(const TambaraIdeal& I, PowerStrategy s) {
  const Tambara& R = *I.ambient;
  const FiniteGroup& G = *R.group();
  IdealPower out;
  bool use_enum = s == PowerStrategy::Enum;
  if (s != PowerStrategy::Span) {
    bool fits = true;
    for (int H : R.M.subgroups())
      if (sat_pow(R.field()->order(), I.dim(H)) > kEnumCap) fits = false;
    if (!fits && s == PowerStrategy::Enum) throw Error("EnumCapExceeded", "ideal level exceeds 10^5 elements");
    use_enum = fits;
    out.flagged = !fits && s == PowerStrategy::Auto;
  }
  out.strategy = use_enum ? "enum" : (out.flagged ? "span (enum cap exceeded)" : "span");
  std::vector<std::vector<Vec>> gens(R.M.nsub());
  for (int H : R.M.subgroups()) {
    const auto& B = I.level[H].basis();
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i; j < B.size(); ++j) gens[H].push_back(R.mul(H, B[i], B[j]));
    for (int K : G.subgroups_in(H)) {
      if (K == H) continue;
      std::vector<Vec> xs = use_enum ? all_elements(I.level[K], kEnumCap) : I.level[K].basis();
      for (const Vec& x : xs) gens[H].push_back(R.norm(H, K, x));
    }
  }
  out.ideal = ideal_closure(I.ambient, std::move(gens));
  for (int H : R.M.subgroups())
    if (!I.level[H].contains(out.ideal.level[H])) throw Error("Internal", "I^{>1} escapes I");
  return out;
}

Vec Kahler::class_of(int H, const Vec& x) const { return quot.at(H).project(I.level.at(H).coords(x)); }

Kahler genuine_kahler(const Extension& E, PowerStrategy strat) {
  Kahler om;
  om.box = box_algebras(E, E);
  const Tambara& R = *E.R;
  const Tambara& P = *om.box.result;
  const FieldPtr& F = R.field();
  const Field& f = *F;
  const FinAlgebra& S = R.fp->S.A;
  const std::size_t ds = S.dim();
  const FinAlgebra& PA = P.fp->S.A;
  om.mu = Matrix(F, ds, PA.dim());
  for (std::size_t c = 0; c < PA.dim(); ++c) {
    Vec full = om.box.tensor.quotient.lift(unit_vector(PA.dim(), c));
    Vec acc(ds, 0);
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < ds; ++j) {
        Elem x = full[i * ds + j];
        if (x) vaxpy(f, acc, x, S.basis_product(i, j));
      }
    om.mu.set_column(c, acc);
  }
  if (!PA.is_ring_map_to(S, om.mu) || !is_equivariant(P.fp->S, R.fp->S, om.mu))
    throw Error("Internal", "multiplication map is not an equivariant ring map");
  om.I = kernel_ideal(om.box.result, fp_map(P, R, om.mu));
  IdealPower pw = ideal_power_gt1(om.I, strat);
  om.I2 = pw.ideal;
  om.strategy = pw.strategy;
  om.flagged = pw.flagged;

  const FiniteGroup& G = *R.group();
  const int n = R.M.nsub();
  om.quot.resize(n);
  MackeyModule W(R.group(), F, R.domain());
  for (int H : R.M.subgroups()) {
    std::vector<Vec> rel;
    for (const Vec& v : om.I2.level[H].basis()) rel.push_back(om.I.level[H].coords(v));
    om.quot[H] = Quotient(Subspace::spanned_by(F, om.I.dim(H), rel));
    W.dims[H] = om.quot[H].dim();
  }
  W.allocate();
  auto to_p = [&](int H, const Vec& w) {
    return om.I.level[H].basis_matrix().apply(om.quot[H].lift(w));
  };
  auto induced = [&](int src, int dst, const Matrix& m) {
    Matrix out(F, W.dim(dst), W.dim(src));
    for (std::size_t c = 0; c < W.dim(src); ++c)
      out.set_column(c, om.class_of(dst, m.apply(to_p(src, unit_vector(W.dim(src), c)))));
    return out;
  };
  for (int K : R.M.subgroups()) {
    for (int J : G.subgroups_in(K)) {
      W.res(K, J) = induced(K, J, P.M.res(K, J));
      W.tr(K, J) = induced(J, K, P.M.tr(K, J));
    }
    for (int g : G.subgroup_elements(R.domain())) W.conj(g, K) = induced(K, G.conjugate(g, K), P.M.conj(g, K));
  }
  om.omega.M = W;
  om.omega.act.resize(n);
  for (int H : R.M.subgroups()) {
    Matrix iota = P.fp->proj[H] * om.box.left * R.fp->embed[H];
    for (std::size_t i = 0; i < R.dim(H); ++i)
      om.omega.act[H].push_back(induced(H, H, P.ring[H].mult_matrix(iota.column(i))));
  }
  auto ax = check_mackey_axioms(W);
  if (!ax.empty()) throw Error("Internal", "Ω fails " + ax.front().axiom);
  check_module_over(R, om.omega);
  return om;
}

BottomCheck bottom_level_kahler_check(const Extension& E, const Kahler& om) {
  BottomCheck out;
  const Tambara& P = *om.box.result;
  const int e = 0;
  const FinAlgebra& PA = P.ring[e];
  // I(e)² as a subspace of the bottom ring
  Subspace sq(P.field(), PA.dim());
  const auto& B = om.I.level[e].basis();
  for (const Vec& x : B)
    for (const Vec& y : B) sq.add(PA.mul(x, y));
  Subspace ker = Subspace::spanned_by(P.field(), PA.dim(), kernel_basis(om.mu * P.fp->embed[e]));
  ClassicalKahler ck = classical_kahler(E.R->fp->S.A, E.k->fp->S.A, E.unit);
  out.genuine_dim = om.module().dim(e);
  out.classical_dim = ck.dim;
  if (!(ker == om.I.level[e])) throw Error("MismatchWitness", "I(e) differs from the classical kernel");
  if (!(sq == om.I2.level[e])) throw Error("MismatchWitness", "I^{>1}(e) differs from I(e)²");
  if (out.genuine_dim != out.classical_dim)
    throw Error("MismatchWitness", "Ω(e) has dimension " + std::to_string(out.genuine_dim) + ", classical " +
                                       std::to_string(out.classical_dim));
  out.ok = true;
  return out;
}

namespace {

struct DerContext {
  const Tambara& R;
  const ModuleOver& M;
  ModuleMap unit;
  // per prime-index pair (L ⊂ H): test elements r with nm r and tr∘N'(r)
  struct NormCase {
    int H, L;
    std::vector<Vec> r, nm;
    std::vector<Matrix> rhs;  // M(L) -> M(H)
  };
  std::vector<NormCase> norms;

  DerContext(const Extension& E, const ModuleOver& Mo) : R(*E.R), M(Mo), unit(E.unit_levels()) {
    const FiniteGroup& G = *R.group();
    for (int H : R.M.subgroups())
      for (int L : G.subgroups_in(H)) {
        if (!prime_index(G, H, L)) continue;
        NormCase nc{H, L, {}, {}, {}};
        for (const Vec& r : test_elements(R.ring[L], 4096)) {
          nc.r.push_back(r);
          nc.nm.push_back(R.norm(H, L, r));
          nc.rhs.push_back(M.M.tr(H, L) * action_of(M, L, norm_deviation(R, H, L, r)));
        }
        norms.push_back(std::move(nc));
      }
  }

  Vec residual(int H, const std::vector<Matrix>& d) const {
    const FiniteGroup& G = *R.group();
    const Field& f = *R.field();
    Vec out;
    const Matrix& dH = d[H];
    append(out, dH * unit.level[H]);
    const FinAlgebra& A = R.ring[H];
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = i; j < A.dim(); ++j) {
        Vec l = dH.apply(A.basis_product(i, j));
        Vec r = vadd(f, M.act[H][i].apply(dH.column(j)), M.act[H][j].apply(dH.column(i)));
        append(out, vsub(f, l, r));
      }
    for (int L : G.subgroups_in(H)) {
      if (L == H) continue;
      append(out, d[L] * R.M.res(H, L) - M.M.res(H, L) * dH);
      append(out, dH * R.M.tr(H, L) - M.M.tr(H, L) * d[L]);
    }
    for (int g : G.subgroup_elements(R.domain())) {
      int gH = G.conjugate(g, H);
      if (gH > H) continue;
      append(out, d[gH] * R.M.conj(g, H) - M.M.conj(g, H) * dH);
    }
    for (const auto& nc : norms) {
      if (nc.H != H) continue;
      for (std::size_t t = 0; t < nc.r.size(); ++t)
        append(out, vsub(f, dH.apply(nc.nm[t]), nc.rhs[t].apply(d[nc.L].apply(nc.r[t]))));
    }
    return out;
  }
};

Search make_search(const MackeyModule& shape_src, const MackeyModule& shape_dst,
                   std::function<Vec(int, const std::vector<Matrix>&)> residual) {
  Search s;
  s.F = shape_src.F;
  s.levels = shape_src.subgroups();
  s.nsub = shape_src.nsub();
  s.shape = [&shape_src, &shape_dst](int H) { return std::make_pair(shape_dst.dim(H), shape_src.dim(H)); };
  s.residual = std::move(residual);
  return s;
}

Vec hom_residual(const ModuleOver& A, const ModuleOver& B, int H, const std::vector<Matrix>& h) {
  const FiniteGroup& G = *A.M.G;
  Vec out;
  const Matrix& hH = h[H];
  for (std::size_t i = 0; i < A.act[H].size(); ++i) append(out, hH * A.act[H][i] - B.act[H][i] * hH);
  for (int L : G.subgroups_in(H)) {
    if (L == H) continue;
    append(out, h[L] * A.M.res(H, L) - B.M.res(H, L) * hH);
    append(out, hH * A.M.tr(H, L) - B.M.tr(H, L) * h[L]);
  }
  for (int g : G.subgroup_elements(A.M.domain)) {
    int gH = G.conjugate(g, H);
    if (gH > H) continue;
    append(out, h[gH] * A.M.conj(g, H) - B.M.conj(g, H) * hH);
  }
  return out;
}

}  // namespace

Enumeration enumerate_derivations(const Extension& E, const ModuleOver& M, SearchCaps caps) {
  check_module_over(*E.R, M);
  DerContext ctx(E, M);
  Search s = make_search(E.R->M, M.M, [&ctx](int H, const std::vector<Matrix>& d) { return ctx.residual(H, d); });
  return s.run(caps);
}

std::size_t derivation_dim(const Extension& E, const ModuleOver& M) {
  check_module_over(*E.R, M);
  DerContext ctx(E, M);
  Search s = make_search(E.R->M, M.M, [&ctx](int H, const std::vector<Matrix>& d) { return ctx.residual(H, d); });
  return s.dimension();
}

Enumeration enumerate_homs(const ModuleOver& A, const ModuleOver& B, SearchCaps caps) {
  Search s = make_search(A.M, B.M, [&](int H, const std::vector<Matrix>& h) { return hom_residual(A, B, H, h); });
  return s.run(caps);
}

std::size_t hom_dim(const ModuleOver& A, const ModuleOver& B) {
  Search s = make_search(A.M, B.M, [&](int H, const std::vector<Matrix>& h) { return hom_residual(A, B, H, h); });
  return s.dimension();
}

bool is_derivation(const Extension& E, const ModuleOver& M, const ModuleMap& d) {
  DerContext ctx(E, M);
  for (int H : E.R->M.subgroups())
    if (!vzero(ctx.residual(H, d.level))) return false;
  return true;
}

ModuleMap universal_derivation(const Extension& E, const Kahler& om) {
  const Tambara& R = *E.R;
  const Tambara& P = *om.box.result;
  const Field& f = *R.field();
  ModuleMap d;
  d.level.resize(R.M.nsub());
  for (int H : R.M.subgroups()) {
    Matrix i1 = P.fp->proj[H] * om.box.left * R.fp->embed[H];
    Matrix i2 = P.fp->proj[H] * om.box.right * R.fp->embed[H];
    Matrix m(R.field(), om.module().dim(H), R.dim(H));
    for (std::size_t c = 0; c < R.dim(H); ++c) m.set_column(c, om.class_of(H, vsub(f, i1.column(c), i2.column(c))));
    d.level[H] = m;
  }
  return d;
}

namespace {

// Ring map S⊗_B S -> S'⊗_B' S' induced by φ : S -> S' on both factors.
Matrix tensor_square_map(const Kahler& src, const Kahler& dst, const Matrix& phi) {
  const RelativeTensor& a = src.box.tensor;
  const RelativeTensor& b = dst.box.tensor;
  Matrix full = kron(phi, phi);
  for (const Vec& r : a.quotient.relations().basis())
    if (!b.quotient.relations().contains(full.apply(r)))
      throw Error("Internal", "induced tensor map is not well defined");
  return b.quotient.projection_matrix() * full * a.quotient.lift_matrix();
}

// Induced Ω(H) maps from a ring map Φ : P -> P' (as matrices on the FP rings).
ModuleMap omega_map(const Kahler& src, const Kahler& dst, const Matrix& Phi) {
  const Tambara& P = *src.box.result;
  const Tambara& Q = *dst.box.result;
  ModuleMap lv = fp_map(P, Q, Phi);
  ModuleMap out;
  out.level.resize(P.M.nsub());
  for (int H : P.M.subgroups()) {
    Matrix m(P.field(), dst.module().dim(H), src.module().dim(H));
    for (std::size_t c = 0; c < src.module().dim(H); ++c) {
      Vec x = src.I.level[H].basis_matrix().apply(src.quot[H].lift(unit_vector(src.module().dim(H), c)));
      m.set_column(c, dst.class_of(H, lv.level[H].apply(x)));
    }
    out.level[H] = m;
  }
  return out;
}

}  // namespace

SplitCheck kahler_product_split(const ExtensionPtr& R1, const ExtensionPtr& R2) {
  SplitCheck out;
  auto prod = product_extension({R1, R2});
  out.whole = genuine_kahler(*prod);
  out.parts.push_back(genuine_kahler(*R1));
  out.parts.push_back(genuine_kahler(*R2));
  const FieldPtr& F = R1->k->field();
  const std::size_t d1 = R1->R->fp->S.dim(), d2 = R2->R->fp->S.dim();
  std::vector<MackeyModule> ms;
  std::vector<ModuleMap> maps;
  for (int i = 0; i < 2; ++i) {
    std::size_t di = i == 0 ? d1 : d2, off = i == 0 ? 0 : d1;
    Matrix pi(F, di, d1 + d2);
    for (std::size_t r = 0; r < di; ++r) pi(r, off + r) = 1;
    maps.push_back(omega_map(out.whole, out.parts[i], tensor_square_map(out.whole, out.parts[i], pi)));
    ms.push_back(out.parts[i].module());
  }
  out.sum = direct_sum(ms);
  out.map.level.resize(out.sum.nsub());
  for (int H : out.sum.subgroups()) out.map.level[H] = vstack(maps[0].level[H], maps[1].level[H]);
  out.iso = check_module_map(out.whole.module(), out.sum, out.map).empty() &&
            is_isomorphism(out.whole.module(), out.sum, out.map);
  return out;
}

BaseChangeCheck kahler_base_change(const ExtensionPtr& E, int H) {
  BaseChangeCheck out;
  const Tambara& k = *E->k;
  auto l = coinduction_unit_extension(E->k, H);
  AlgebraBox bb = box_algebras(*E, *l);
  auto Ebc = make_extension(l->R, bb.result, bb.right, ExtKind::BaseChange, {E, l});
  out.lhs = genuine_kahler(*Ebc);
  out.rhs_omega = genuine_kahler(*E);
  const Kahler& om = out.rhs_omega;
  // Ω_{R/k} as a k-module and ℓ as a k-module
  ModuleMap u = E->unit_levels();
  ModuleOver Wk{om.module(), std::vector<std::vector<Matrix>>(om.module().nsub())};
  for (int L : om.module().subgroups())
    for (std::size_t x = 0; x < k.dim(L); ++x) Wk.act[L].push_back(action_of(om.omega, L, u.level[L].column(x)));
  ModuleOver lk = module_via(k, *l->R, l->unit_levels());
  out.rhs = box_over_base(k, Wk, lk);

  ModuleMap j = omega_map(om, out.lhs, tensor_square_map(om, out.lhs, bb.left));
  ModuleMap yl = Ebc->unit_levels();
  const auto& box = out.rhs;
  const FieldPtr& F = k.field();
  out.map.level.resize(box.module.nsub());
  for (int K : box.module.subgroups()) {
    const auto& lv = box.levels[K];
    Matrix g(F, out.lhs.module().dim(K), lv.gens);
    for (int L : lv.summands) {
      const std::size_t dw = om.module().dim(L), dl = l->R->dim(L);
      for (std::size_t a = 0; a < dw; ++a)
        for (std::size_t b = 0; b < dl; ++b) {
          Vec w = j.level[L].column(a);
          Vec y = yl.level[L].column(b);
          g.set_column(lv.offset[L] + a * dl + b, out.lhs.module().tr(K, L).apply(action_of(out.lhs.omega, L, y).apply(w)));
        }
    }
    for (const Vec& r : lv.q.relations().basis())
      if (!vzero(g.apply(r))) throw Error("Internal", "base-change comparison not well defined");
    out.map.level[K] = g * lv.q.lift_matrix();
  }
  out.iso = check_module_map(box.module, out.lhs.module(), out.map).empty() &&
            is_isomorphism(box.module, out.lhs.module(), out.map);
  return out;
}

}  // namespace tambara
