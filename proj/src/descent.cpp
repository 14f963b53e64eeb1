#include "tambara/descent.hpp"

#include <numeric>

namespace tambara {

namespace {

Matrix mult_map(const FinAlgebra& A) {
  const std::size_t d = A.dim();
  Matrix m(A.field(), d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.set_column(i * d + j, A.basis_product(i, j));
  return m;
}

Matrix one_column(const FinAlgebra& A) { return Matrix::from_columns(A.field(), A.dim(), {A.one()}); }

bool same_maps(const MackeyModule& M, const ModuleMap& a, const ModuleMap& b) {
  for (int H : M.subgroups())
    if (!(a.level[H] == b.level[H])) return false;
  return true;
}

ModuleMap identity_map(const MackeyModule& M) {
  ModuleMap m;
  m.level.resize(M.nsub());
  for (int H : M.subgroups()) m.level[H] = Matrix::identity(M.F, M.dim(H));
  return m;
}

void append(std::vector<AxiomFailure>& out, const std::string& what, std::vector<AxiomFailure> more) {
  for (auto& f : more) out.push_back({what + ": " + f.axiom, f.detail});
}

// Action of the generator powers: element gen^i acts by perm^i.
std::vector<std::vector<int>> cyclic_action(const GroupPtr& G, const std::vector<int>& perm) {
  std::vector<std::vector<int>> alpha(G->order());
  std::vector<int> cur(perm.size());
  std::iota(cur.begin(), cur.end(), 0);
  int x = 0, gen = G->cyclic_generator();
  for (int i = 0; i < G->order(); ++i) {
    alpha[x] = cur;
    std::vector<int> next(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) next[j] = perm[cur[j]];
    cur = next;
    x = G->mul(gen, x);
  }
  return alpha;
}

std::vector<int> cyclic_powers(const GroupPtr& G, int n, int p) {
  std::vector<int> power(G->order());
  int cur = 1, x = 0, gen = G->cyclic_generator();
  for (int i = 0; i < G->order(); ++i) {
    power[x] = cur;
    cur = (cur * p) % n;
    x = G->mul(gen, x);
  }
  return power;
}

GroupPtr klein_four() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return FiniteGroup::from_table(t, "V4");
}

}  // namespace

std::vector<AxiomFailure> check_hopf(const HopfData& H) {
  std::vector<AxiomFailure> out;
  const FinAlgebra& A = H.S.A;
  const FieldPtr& F = A.field();
  const std::size_t d = A.dim();
  auto fail = [&](const char* ax) { out.push_back({ax, H.label}); };
  try {
    H.S.validate();
  } catch (const Error& e) {
    out.push_back({"action", e.what()});
    return out;
  }
  if (H.delta.rows() != d * d || H.delta.cols() != d || H.counit.rows() != 1 || H.counit.cols() != d ||
      H.antipode.rows() != d || H.antipode.cols() != d) {
    fail("shapes");
    return out;
  }
  const Matrix I = Matrix::identity(F, d);
  if (!A.is_ring_map_to(FinAlgebra::tensor(A, A), H.delta)) fail("comultiplication is a ring map");
  if (!A.is_ring_map_to(FinAlgebra::ground(F), H.counit)) fail("counit is a ring map");
  if (!A.is_ring_map_to(A, H.antipode)) fail("antipode is a ring map");
  if (!(kron(H.delta, I) * H.delta == kron(I, H.delta) * H.delta)) fail("coassociativity");
  if (!(kron(H.counit, I) * H.delta == I) || !(kron(I, H.counit) * H.delta == I)) fail("counit law");
  const Matrix m = mult_map(A), ee = one_column(A) * H.counit;
  if (!(m * kron(H.antipode, I) * H.delta == ee) || !(m * kron(I, H.antipode) * H.delta == ee))
    fail("antipode law");
  for (int g : H.S.G->subgroup_elements(H.S.domain)) {
    const Matrix& a = H.S.act[g];
    if (!(H.delta * a == kron(a, a) * H.delta) || !(H.counit * a == H.counit) ||
        !(H.antipode * a == a * H.antipode)) {
      fail("G acts by Hopf automorphisms");
      break;
    }
  }
  return out;
}

bool is_hopf_map(const HopfData& A, const HopfData& B, const Matrix& f) {
  return A.S.A.is_ring_map_to(B.S.A, f) && is_equivariant(A.S, B.S, f) && B.delta * f == kron(f, f) * A.delta &&
         B.counit * f == A.counit;
}

HopfData constant_scheme(const GroupPtr& gamma, const GroupPtr& G, const FieldPtr& F,
                         std::vector<std::vector<int>> alpha, std::string label) {
  const int n = gamma->order();
  if (alpha.empty()) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    alpha.assign(G->order(), id);
  }
  for (int g = 0; g < G->order(); ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (alpha[g][gamma->mul(a, b)] != gamma->mul(alpha[g][a], alpha[g][b]))
          throw Error("NotAnAutomorphism", "the action does not respect the group law of Γ");
  HopfData h;
  h.label = label.empty() ? "Map(" + gamma->name() + "," + F->name() + ")" : std::move(label);
  std::vector<Matrix> act(G->order());
  for (int g = 0; g < G->order(); ++g) {
    act[g] = Matrix(F, n, n);
    for (int c = 0; c < n; ++c) act[g](alpha[g][c], c) = 1;
  }
  h.S = GRing{G, G->whole(), FinAlgebra::split(F, n), std::move(act)};
  h.delta = Matrix(F, n * n, n);
  h.counit = Matrix(F, 1, n);
  h.antipode = Matrix(F, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h.delta(a * n + b, gamma->mul(a, b)) = 1;
  h.counit(0, 0) = 1;
  for (int c = 0; c < n; ++c) h.antipode(gamma->inv(c), c) = 1;
  return h;
}

HopfData mu_scheme(int n, const GroupPtr& G, const FieldPtr& F, std::vector<int> power, std::string label) {
  if (power.empty()) power.assign(G->order(), 1);
  Vec modulus(n + 1, 0);
  modulus[0] = F->neg(1);
  modulus[n] = 1;
  HopfData h;
  h.label = label.empty() ? "mu_" + std::to_string(n) + "/" + F->name() : std::move(label);
  const std::size_t d = n;
  std::vector<Matrix> act(G->order());
  for (int g = 0; g < G->order(); ++g) {
    act[g] = Matrix(F, d, d);
    for (int i = 0; i < n; ++i) act[g]((i * power[g]) % n, i) = 1;
  }
  h.S = GRing{G, G->whole(), FinAlgebra::polynomial_quotient(F, modulus), std::move(act)};
  h.delta = Matrix(F, d * d, d);
  h.counit = Matrix(F, 1, d);
  h.antipode = Matrix(F, d, d);
  for (int i = 0; i < n; ++i) {
    h.delta(i * d + i, i) = 1;
    h.counit(0, i) = 1;
    h.antipode((n - i) % n, i) = 1;
  }
  return h;
}

HopfData trivial_scheme(const GroupPtr& G, const FieldPtr& F) {
  return constant_scheme(FiniteGroup::trivial(), G, F, {}, "point/" + F->name());
}

CogroupData fp_cogroup(const HopfData& H, const EtaleConfig& cfg) {
  auto bad = check_hopf(H);
  if (!bad.empty()) throw Error("NotAHopfAlgebra", bad.front().axiom + " fails for " + H.label);
  const GroupPtr& G = H.S.G;
  const FieldPtr& F = H.S.field();
  const FinAlgebra& A = H.S.A;
  CogroupData C;
  if (G->subgroup_order(H.S.domain) % F->characteristic() != 0) {
    C.route = "invertible-order";
  } else if (primitive_idempotents(A)) {
    C.route = "classification";
  } else {
    throw Error("UnsupportedRoute", "|G| is not invertible and " + H.label + " is not split");
  }
  auto k = constant(G, H.S.domain, FinAlgebra::ground(F), F->name());
  auto R = fixed_point(H.S, "FP(" + H.label + ")");
  C.ext = over_constant(k, R);
  C.box = box_algebras(*C.ext, *C.ext);
  const Matrix L = C.box.tensor.quotient.lift_matrix();
  const Matrix P = C.box.tensor.quotient.projection_matrix();
  const TambaraPtr& RR = C.box.result;

  std::vector<Matrix> act3(G->order());
  for (int g : G->subgroup_elements(H.S.domain)) act3[g] = kron(kron(H.S.act[g], H.S.act[g]), H.S.act[g]);
  C.triple = fixed_point(GRing{G, H.S.domain, FinAlgebra::tensor(FinAlgebra::tensor(A, A), A), std::move(act3)},
                         "FP(" + H.label + "^⊗3)");

  C.delta = fp_map(*R, *RR, P * H.delta);
  C.counit = fp_map(*R, *k, H.counit);
  C.antipode = fp_map(*R, *R, H.antipode);
  C.mult = fp_map(*RR, *R, mult_map(A) * L);
  C.verdict = check_etale(C.ext, cfg);
  if (C.route == "classification") {
    Classification cl = classify_finite_etale(R);
    if (!cl.etale) throw Error("Internal", "split étale functor failed to classify: " + cl.witness);
    C.classes = cl.classes;
  }
  return C;
}

std::vector<AxiomFailure> check_cogroup(const CogroupData& C) {
  std::vector<AxiomFailure> out;
  const Tambara& R = *C.ext->R;
  const Tambara& k = *C.ext->k;
  const Tambara& RR = *C.box.result;
  const Tambara& T = *C.triple;
  append(out, "Δ", check_algebra_map(R, RR, C.delta));
  append(out, "ε", check_algebra_map(R, k, C.counit));
  append(out, "χ", check_algebra_map(R, R, C.antipode));
  append(out, "μ", check_algebra_map(RR, R, C.mult));

  // Structure maps on the box are FP of the maps on S ⊗ S, read back in S-coordinates.
  const FieldPtr& F = R.field();
  const std::size_t d = R.fp->S.dim();
  const Matrix I = Matrix::identity(F, d);
  const Matrix L = C.box.tensor.quotient.lift_matrix();
  const Matrix P = C.box.tensor.quotient.projection_matrix();
  const Matrix delta_S = L * RR.fp->embed[0] * C.delta.level[0] * R.fp->proj[0];
  const Matrix eps_S = k.fp->embed[0] * C.counit.level[0] * R.fp->proj[0];
  const Matrix chi_S = R.fp->embed[0] * C.antipode.level[0] * R.fp->proj[0];

  auto lhs = compose(fp_map(RR, T, kron(delta_S, I) * L), C.delta);
  auto rhs = compose(fp_map(RR, T, kron(I, delta_S) * L), C.delta);
  if (!same_maps(R.M, lhs, rhs)) out.push_back({"coassociativity", "levelwise"});
  auto id = identity_map(R.M);
  if (!same_maps(R.M, compose(fp_map(RR, R, kron(eps_S, I) * L), C.delta), id) ||
      !same_maps(R.M, compose(fp_map(RR, R, kron(I, eps_S) * L), C.delta), id))
    out.push_back({"counit law", "levelwise"});
  auto ee = compose(C.ext->unit_levels(), C.counit);
  auto left = compose(C.mult, compose(fp_map(RR, RR, P * kron(chi_S, I) * L), C.delta));
  auto right = compose(C.mult, compose(fp_map(RR, RR, P * kron(I, chi_S) * L), C.delta));
  if (!same_maps(R.M, left, ee) || !same_maps(R.M, right, ee)) out.push_back({"antipode law", "levelwise"});
  return out;
}

HopfData ev_cogroup(const CogroupData& C) {
  const Tambara& R = *C.ext->R;
  const Tambara& k = *C.ext->k;
  const Tambara& RR = *C.box.result;
  const GroupPtr& G = R.group();
  const FieldPtr& F = R.field();
  const FinAlgebra& A = R.ring[0];
  const std::size_t d = A.dim();
  HopfData h;
  h.label = "ev(" + R.label + ")";
  std::vector<Matrix> act(G->order());
  for (int g : G->subgroup_elements(R.domain())) act[g] = R.M.conj(g, 0);
  h.S = GRing{G, R.domain(), A, std::move(act)};

  // R(e) ⊗ R(e) -> (R ⊠ R)(e), a ⊗ b -> ι₁a · ι₂b.
  const Matrix l = fp_map(R, RR, C.box.left).level[0];
  const Matrix r = fp_map(R, RR, C.box.right).level[0];
  Matrix T(F, RR.dim(0), d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) T.set_column(i * d + j, RR.mul(0, l.column(i), r.column(j)));
  auto Ti = inverse(T);
  if (!Ti) throw Error("AxiomFailureDownstairs", "the bottom level of R ⊠ R is not R(e) ⊗ R(e)");
  h.delta = *Ti * C.delta.level[0];
  h.counit = C.counit.level[0].scaled(F->inv(k.ring[0].one()[0]));
  h.antipode = C.antipode.level[0];
  auto bad = check_hopf(h);
  if (!bad.empty()) throw Error("AxiomFailureDownstairs", bad.front().axiom);
  return h;
}

RoundTrip roundtrip(const HopfData& H, const EtaleConfig& cfg) {
  RoundTrip rt;
  rt.instance = H.label;
  try {
    CogroupData C = fp_cogroup(H, cfg);
    rt.route = C.route;
    auto bad = check_cogroup(C);
    if (!bad.empty()) {
      rt.detail = "cogroup axiom fails upstairs: " + bad.front().axiom;
      return rt;
    }
    HopfData E = ev_cogroup(C);
    bool same_action = true;
    for (int g : H.S.G->subgroup_elements(H.S.domain)) same_action = same_action && E.S.act[g] == H.S.act[g];
    rt.ev_fp_identity = E.S.A == H.S.A && same_action && E.delta == H.delta && E.counit == H.counit &&
                        E.antipode == H.antipode;
    rt.counit_iso = is_hopf_map(E, H, Matrix::identity(H.S.field(), H.S.dim()));

    // Unit R -> FP(ev R) through restriction to the bottom.
    const Tambara& R = *C.ext->R;
    auto Rp = fixed_point(E.S, "FP(ev " + R.label + ")");
    ModuleMap u;
    u.level.resize(R.M.nsub());
    for (int K : R.M.subgroups()) u.level[K] = Rp->fp->proj[K] * R.M.res(K, 0);
    bool iso = check_module_map(R.M, Rp->M, u).empty() && is_isomorphism(R.M, Rp->M, u) &&
               check_algebra_map(R, *Rp, u).empty();
    // Compatible with the cogroup structures (determined by the bottom, where restrictions are injective).
    HopfData E2 = ev_cogroup(fp_cogroup(E, cfg));
    const Matrix ue = Rp->fp->embed[0] * u.level[0];
    bool compatible = is_hopf_map(E, E2, ue) && restrictions_injective(R.M);
    rt.unit_iso = iso && compatible;
    rt.etale_preserved = C.verdict.verdict != "etale" || is_etale_classical(E.S.A).etale;
    rt.passed = rt.ev_fp_identity && rt.counit_iso && rt.unit_iso && rt.etale_preserved;
    rt.detail = "verdict " + C.verdict.verdict;
    if (!C.classes.empty()) rt.detail += ", " + std::to_string(C.classes.size()) + " coinduced factors";
  } catch (const Error& e) {
    rt.detail = e.what();
  }
  return rt;
}

HomCount count_homs(const HopfData& A, const HopfData& B, std::uint64_t cap) {
  HomCount hc;
  hc.source = A.label;
  hc.target = B.label;
  const FieldPtr& F = A.S.field();
  const Field& f = *F;
  const std::uint32_t q = f.order();
  const std::size_t dA = A.S.dim(), dB = B.S.dim();

  // Downstairs: an algebra map into a split algebra is a tuple of characters.
  auto idem = primitive_idempotents(B.S.A);
  if (!idem) {
    hc.skipped = true;
    hc.note = "target not split";
    return hc;
  }
  std::vector<Vec> chars;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dA; ++i) total *= q;
  if (total > cap) {
    hc.skipped = true;
    hc.note = "character search exceeds cap";
    return hc;
  }
  auto dot = [&](const Vec& c, const Vec& v) {
    Elem s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s = f.add(s, f.mul(c[i], v[i]));
    return s;
  };
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec c = decode_vector(code, q, dA);
    if (dot(c, A.S.A.one()) != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < dA && ok; ++i)
      for (std::size_t j = 0; j < dA && ok; ++j) ok = dot(c, A.S.A.basis_product(i, j)) == f.mul(c[i], c[j]);
    if (ok) chars.push_back(c);
  }
  const std::size_t m = idem->size();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < m; ++i) tuples = chars.empty() ? 0 : tuples * chars.size();
  if (tuples > cap) {
    hc.skipped = true;
    hc.note = "character tuples exceed cap";
    return hc;
  }
  for (std::uint64_t code = 0; code < tuples; ++code) {
    Matrix phi(F, dB, dA);
    std::uint64_t c = code;
    for (std::size_t x = 0; x < m; ++x) {
      const Vec& ch = chars[c % chars.size()];
      c /= chars.size();
      for (std::size_t r = 0; r < dB; ++r)
        for (std::size_t s = 0; s < dA; ++s) phi(r, s) = f.add(phi(r, s), f.mul((*idem)[x][r], ch[s]));
    }
    if (is_hopf_map(A, B, phi)) ++hc.downstairs;
  }

  // Upstairs: unital, counital module maps FP(A) -> FP(B), then the nonlinear conditions.
  CogroupData CA = fp_cogroup(A), CB = fp_cogroup(B);
  const Tambara& RA = *CA.ext->R;
  const Tambara& RB = *CB.ext->R;
  MapSystem sys(RA.M, RB.M);
  for (int H : RA.M.subgroups()) {
    sys.require(H, RA.ring[H].one(), RB.ring[H].one());
    for (std::size_t i = 0; i < RA.dim(H); ++i)
      sys.require(H, CB.counit.level[H], unit_vector(RA.dim(H), i), CA.counit.level[H].column(i));
  }
  auto part = sys.solve();
  if (!part) return hc;
  auto ker = sys.kernel();
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < ker.size(); ++i) {
    space *= q;
    if (space > cap) {
      hc.skipped = true;
      hc.note = "module-map search exceeds cap";
      return hc;
    }
  }
  hc.space = space;
  std::vector<Matrix> phiA_inv(RA.M.nsub());
  for (int H : RA.M.subgroups()) phiA_inv[H] = *inverse(CA.box.phi.level[H]);
  for (std::uint64_t code = 0; code < space; ++code) {
    Vec c = decode_vector(code, q, ker.size());
    ModuleMap phi = *part;
    for (std::size_t i = 0; i < ker.size(); ++i)
      if (c[i])
        for (int H : RA.M.subgroups()) phi.level[H] = phi.level[H] + ker[i].level[H].scaled(c[i]);
    bool ok = true;
    for (int H : RA.M.subgroups())
      if (!(ok = RA.ring[H].is_ring_map_to(RB.ring[H], phi.level[H]))) break;
    if (!ok || !check_algebra_map(RA, RB, phi).empty()) continue;
    ModuleMap pp = box_map(CA.box.module_box, CB.box.module_box, phi, phi);
    for (int H : RA.M.subgroups()) pp.level[H] = CB.box.phi.level[H] * pp.level[H] * phiA_inv[H];
    if (same_maps(RA.M, compose(CB.delta, phi), compose(pp, CA.delta))) ++hc.upstairs;
  }
  return hc;
}

std::vector<HopfData> descent_corpus(const GroupPtr& G, const FieldPtr& F) {
  std::vector<HopfData> out;
  out.push_back(trivial_scheme(G, F));
  auto Z2 = FiniteGroup::cyclic(2), Z3 = FiniteGroup::cyclic(3), V4 = klein_four();
  out.push_back(constant_scheme(Z2, G, F));
  const std::uint32_t q = F->order();
  if (G->is_cyclic() && G->order() == 2) {
    out.push_back(constant_scheme(Z3, G, F, cyclic_action(G, {0, 2, 1}), "Map(Z/3," + F->name() + ") inverted"));
    out.push_back(constant_scheme(V4, G, F, cyclic_action(G, {0, 2, 1, 3}), "Map(V4," + F->name() + ") swapped"));
    for (int n : {2, 3, 4})
      if ((q - 1) % n == 0)
        out.push_back(mu_scheme(n, G, F, cyclic_powers(G, n, n - 1), "mu_" + std::to_string(n) + "/" + F->name() + " inverted"));
  } else if (G->is_cyclic() && G->order() == 3) {
    out.push_back(constant_scheme(V4, G, F, cyclic_action(G, {0, 2, 3, 1}), "Map(V4," + F->name() + ") rotated"));
  }
  return out;
}

}  // namespace tambara
