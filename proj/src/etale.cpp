#include "tambara/etale.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tambara {

namespace {

constexpr int kE = 0, kT = 1;

struct Cp {
  int p;
  int gen;
};

Cp cp_of(const MackeyModule& M) {
  const FiniteGroup& G = *M.G;
  if (G.num_subgroups() != 2 || M.domain != G.whole())
    throw Error("WrongGroup", "expected a module over a group of prime order");
  if (M.F->characteristic() != static_cast<std::uint32_t>(G.order()))
    throw Error("WrongCharacteristic", "the field must have characteristic p = |G|");
  return {G.order(), G.cyclic_generator()};
}

Matrix mat_pow(Matrix m, int e) {
  Matrix r = Matrix::identity(m.field(), m.rows());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

Matrix sigma_minus_one(const MackeyModule& M, int gen) {
  return M.conj(gen, kE) - Matrix::identity(M.F, M.dim(kE));
}

// The free module CoInd_e F: bottom F^p permuted cyclically.
MackeyModule cp_coind(GroupPtr G, FieldPtr F) {
  const std::size_t p = G->order();
  Matrix s(F, p, p), res(F, p, 1), tr(F, 1, p);
  for (std::size_t j = 0; j < p; ++j) {
    s((j + 1) % p, j) = 1;
    res(j, 0) = 1;
    tr(0, j) = 1;
  }
  return cp_module(G, F, 1, p, s, res, tr);
}

MackeyModule cp_constant(GroupPtr G, FieldPtr F) {
  return cp_module(G, F, 1, 1, Matrix::identity(F, 1), Matrix::identity(F, 1), Matrix(F, 1, 1));
}

ModuleMap identity_map(const MackeyModule& M) {
  ModuleMap m;
  m.level.resize(M.nsub());
  for (int H : M.subgroups()) m.level[H] = Matrix::identity(M.F, M.dim(H));
  return m;
}

Subspace kernel_space(const Matrix& m) {
  return Subspace::spanned_by(m.field(), m.cols(), m.cols() ? kernel_basis(m) : std::vector<Vec>{});
}

// Basis vectors first, then every nonzero vector when there are few.
std::vector<Vec> candidates(const Field& f, std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= f.order();
  if (total <= 4096)
    for (std::uint64_t c = 1; c < total; ++c) out.push_back(decode_vector(c, f.order(), n));
  return out;
}

bool constant_base(const Extension& E) {
  return E.k->fp && E.k->fp->S.dim() == 1 && E.k->domain() == E.R->domain();
}

bool cp_applicable(const Extension& E) {
  const FiniteGroup& G = *E.R->group();
  return constant_base(E) && G.num_subgroups() == 2 && E.R->domain() == G.whole() &&
         E.R->field()->characteristic() == static_cast<std::uint32_t>(G.order());
}

bool structural(const Extension& E) {
  switch (E.kind) {
    case ExtKind::Identity:
    case ExtKind::CoindUnit:
      return true;
    case ExtKind::Generic:
      return false;
    default:
      return !E.parts.empty() &&
             std::all_of(E.parts.begin(), E.parts.end(), [](const ExtensionPtr& p) { return structural(*p); });
  }
}

// A basis of S permuted by the acting group makes FP(S) a sum of CoInd_H F.
std::optional<std::string> permutation_basis(const GRing& S) {
  if (primitive_idempotents(S.A)) return std::string("primitive idempotents are permuted");
  if (static_cast<std::size_t>(S.G->subgroup_order(S.domain)) == S.dim()) {
    try {
      return "normal basis " + vec_string(normal_basis(S));
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

FlatCertificate generic_route(const Extension& E) {
  if (!constant_base(E)) return {false, false, "none", "base is not a constant field functor"};
  if (cp_applicable(E)) {
    FlatStatus fs = flat_status(E.R->M);
    std::string d = fs.flat ? std::to_string(fs.decomposition.coind) + " CoInd + " +
                                  std::to_string(fs.decomposition.constant) + " constant summands"
                            : fs.witness;
    return {true, fs.flat, "cp-structure", d};
  }
  const FiniteGroup& G = *E.R->group();
  const std::uint32_t p = E.R->field()->characteristic();
  if (G.subgroup_order(E.R->domain()) % p != 0) {
    if (!check_cohomological(E.R->M)) throw Error("Internal", "module over a constant functor is not cohomological");
    return {true, true, "semisimple", ""};
  }
  if (auto b = permutation_basis(E.R->fp->S)) return {true, true, "free-presentation", *b};
  return {false, false, "none", "no flatness certificate for this presentation"};
}

int first_nonzero_level(const MackeyModule& M) {
  for (int H : M.subgroups())
    if (M.dim(H)) return H;
  return -1;
}

}  // namespace

std::vector<std::size_t> jordan_partition(const MackeyModule& M) {
  Cp c = cp_of(M);
  Matrix n = sigma_minus_one(M, c.gen);
  std::vector<std::size_t> r(c.p + 2, 0);
  Matrix cur = Matrix::identity(M.F, M.dim(kE));
  for (int i = 0; i <= c.p; ++i) {
    r[i] = rank(cur);
    cur = cur * n;
  }
  if (r[c.p] != 0) throw Error("Internal", "σ is not unipotent of order p");
  std::vector<std::size_t> out;
  // blocks of size >= i number r[i-1] - r[i]
  for (int i = c.p; i >= 1; --i) {
    std::size_t ge = r[i - 1] - r[i], gt = r[i] - r[i + 1];
    out.insert(out.end(), ge - gt, static_cast<std::size_t>(i));
  }
  return out;
}

DecompositionReport decompose_module(const MackeyModule& M) {
  Cp c = cp_of(M);
  const FieldPtr& F = M.F;
  const MackeyModule C = cp_coind(M.G, F), K = cp_constant(M.G, F);
  DecompositionReport rep;
  MackeyModule cur = M;
  ModuleMap into = identity_map(M);  // cur -> M
  std::vector<MackeyModule> parts;
  std::vector<ModuleMap> incl;

  // Splits off the image of i : S -> cur when it has a retraction.
  auto split = [&](const MackeyModule& S, const ModuleMap& i, const char* name) {
    std::optional<ModuleMap> r;
    {
      MapSystem sys(cur, S);
      for (int H : {kE, kT})
        for (std::size_t b = 0; b < S.dim(H); ++b)
          sys.require(H, i.level[H].column(b), unit_vector(S.dim(H), b));
      r = sys.solve();
    }
    if (!r) return false;
    std::vector<Subspace> kers(cur.nsub());
    for (int H : {kE, kT}) kers[H] = kernel_space(r->level[H]);
    Submodule sub = submodule(cur, kers);
    parts.push_back(S);
    incl.push_back(compose(into, i));
    rep.summands.push_back(name);
    into = compose(into, sub.inclusion);
    cur = sub.module;
    return true;
  };

  // Free summands at elements whose orbit is independent, i.e. (σ-1)^{p-1} x != 0.
  for (;;) {
    Matrix top = mat_pow(sigma_minus_one(cur, c.gen), c.p - 1);
    std::optional<Vec> x;
    for (std::size_t j = 0; j < top.cols() && !x; ++j)
      if (!vzero(top.column(j))) x = unit_vector(top.cols(), j);
    if (!x) break;
    std::optional<ModuleMap> i;
    {
      MapSystem sys(C, cur);
      sys.require(kE, unit_vector(c.p, 0), *x);
      i = sys.solve();
    }
    if (!i || !split(C, *i, "CoInd")) break;
    ++rep.coind;
  }
  // Constant summands at top elements with nonzero restriction.
  for (bool found = true; found;) {
    found = false;
    for (const Vec& y : candidates(*F, cur.dim(kT))) {
      if (vzero(cur.res(kT, kE).apply(y))) continue;
      std::optional<ModuleMap> j;
      {
        MapSystem sys(K, cur);
        sys.require(kT, Vec{1}, y);
        j = sys.solve();
      }
      if (j && split(K, *j, "F")) {
        found = true;
        ++rep.constant;
        break;
      }
    }
  }

  rep.remainder = cur;
  parts.push_back(cur);
  incl.push_back(into);
  MackeyModule sum = direct_sum(parts);
  rep.comparison.level.resize(M.nsub());
  for (int H : M.subgroups()) {
    Matrix m(F, M.dim(H), 0);
    for (const auto& f : incl) m = hstack(m, f.level[H]);
    rep.comparison.level[H] = m;
  }
  rep.verified = check_module_map(sum, M, rep.comparison).empty() && is_isomorphism(sum, M, rep.comparison);
  return rep;
}

bool d_test(const MackeyModule& M) {
  cp_of(M);
  auto k = constant(M.G, M.G->whole(), FinAlgebra::ground(M.F));
  MackeyModule D = special_module_D(M.G, M.F);
  BoxPresentation box = box_over_base(*k, scalar_module(*k, D), scalar_module(*k, M));
  const auto& top = box.levels.at(kT);
  // Only the summand D(e) ⊗ M(e) = M(e) contributes; its class goes to tr.
  Matrix g(M.F, M.dim(kT), top.gens);
  const std::size_t off = top.offset.at(kE);
  for (std::size_t j = 0; j < M.dim(kE); ++j) g.set_column(off + j, M.tr(kT, kE).column(j));
  for (const Vec& r : top.q.relations().basis())
    if (!vzero(g.apply(r))) throw Error("NotAModule", "transfer does not factor through D ⊠ M");
  return rank(g * top.q.lift_matrix()) == top.q.dim();
}

std::size_t d_formula_dim(const MackeyModule& M) {
  Cp c = cp_of(M);
  return M.dim(kE) - rank(hstack(sigma_minus_one(M, c.gen), M.res(kT, kE)));
}

bool is_projective_cp(const MackeyModule& M) {
  Cp c = cp_of(M);
  const std::size_t a = M.dim(kT), b = M.dim(kE);
  if (a + b == 0) return true;
  std::vector<MackeyModule> ps(a, cp_constant(M.G, M.F));
  ps.insert(ps.end(), b, cp_coind(M.G, M.F));
  const MackeyModule P = direct_sum(ps);
  std::optional<ModuleMap> pi;
  {
    MapSystem cover(P, M);
    for (std::size_t i = 0; i < a; ++i) cover.require(kT, unit_vector(P.dim(kT), i), unit_vector(a, i));
    for (std::size_t j = 0; j < b; ++j)
      cover.require(kE, unit_vector(P.dim(kE), a + j * c.p), unit_vector(b, j));
    pi = cover.solve();
  }
  if (!pi) throw Error("NotAModule", "not a module over the constant functor (tr∘res != 0)");
  MapSystem sec(M, P);
  for (int H : {kE, kT})
    for (std::size_t i = 0; i < M.dim(H); ++i)
      sec.require(H, pi->level[H], unit_vector(M.dim(H), i), unit_vector(M.dim(H), i));
  return sec.solve().has_value();
}

FlatStatus flat_status(const MackeyModule& M) {
  FlatStatus s;
  s.decomposition = decompose_module(M);
  const bool inj = restrictions_injective(M);
  const bool dt = d_test(M);
  s.flat = inj && dt;
  s.free = s.decomposition.verified && s.decomposition.remainder.is_zero();
  s.projective = is_projective_cp(M);
  s.agree = s.flat == s.free && s.free == s.projective;
  if (!s.free) {
    std::ostringstream os;
    if (!inj) {
      os << "restriction not injective: kernel of dimension "
         << M.dim(kT) - rank(M.res(kT, kE));
    } else if (!dt) {
      os << "D-test: (D ⊠ M)(C_p/C_p) of dimension " << d_formula_dim(M)
         << " does not inject into M(C_p/C_p)";
    } else {
      os << "remainder " << dims_string(s.decomposition.remainder) << " (no flatness witness)";
    }
    s.witness = os.str();
  }
  return s;
}

MackeyModule random_cp_module(GroupPtr G, FieldPtr F, std::mt19937_64& rng, std::size_t max_top,
                              std::size_t max_bottom) {
  if (G->num_subgroups() != 2) throw Error("WrongGroup", "expected a group of prime order");
  const std::size_t p = G->order();
  if (F->characteristic() != p) throw Error("WrongCharacteristic", "char F must equal |G|");
  if (max_bottom == 0) max_bottom = 2 * p;
  const Field& f = *F;
  auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto elem = [&] { return static_cast<Elem>(uni(0, f.order() - 1)); };
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = elem();
    return m;
  };
  auto random_invertible = [&](std::size_t n) {
    for (;;) {
      Matrix m = random_matrix(n, n);
      if (auto inv = inverse(m)) return std::make_pair(m, *inv);
    }
  };

  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t n = uni(0, max_bottom);
    Matrix J = Matrix::identity(F, n);
    for (std::size_t pos = 0; pos < n;) {
      std::size_t s = uni(1, std::min(p, n - pos));
      for (std::size_t i = 0; i + 1 < s; ++i) J(pos + i, pos + i + 1) = 1;
      pos += s;
    }
    auto [P, Pinv] = random_invertible(n);
    Matrix sigma = P * J * Pinv;
    Matrix N = sigma - Matrix::identity(F, n);
    Matrix Np = mat_pow(N, static_cast<int>(p) - 1);
    auto fix = n ? kernel_basis(N) : std::vector<Vec>{};
    auto img = n ? image_basis(Np) : std::vector<Vec>{};
    // res must contain im (σ-1)^{p-1} for res∘tr = Σσ^i to be solvable.
    const std::size_t t = img.size() + uni(0, max_top);
    Matrix res(F, n, t);
    for (std::size_t j = 0; j < t; ++j) {
      Vec col(n, 0);
      if (j < img.size()) {
        col = img[j];
      } else {
        for (const Vec& v : fix) vaxpy(f, col, elem(), v);
      }
      res.set_column(j, col);
    }
    res = res * random_invertible(t).first;

    // Unknown tr = X (t x n), entry (i, j) at i*n + j.
    Matrix X(F, t, n);
    if (t && n) {
      const std::size_t u = t * n;
      std::vector<Vec> rows;
      Vec rhs;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {  // res X = Np
          Vec row(u, 0);
          for (std::size_t i = 0; i < t; ++i) row[i * n + c] = res(r, i);
          rows.push_back(row);
          rhs.push_back(Np(r, c));
        }
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t c = 0; c < n; ++c) {  // X σ = X
          Vec row(u, 0);
          for (std::size_t j = 0; j < n; ++j) row[i * n + j] = f.add(row[i * n + j], sigma(j, c));
          row[i * n + c] = f.sub(row[i * n + c], 1);
          rows.push_back(row);
          rhs.push_back(0);
        }
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t c = 0; c < t; ++c) {  // X res = 0
          Vec row(u, 0);
          for (std::size_t j = 0; j < n; ++j) row[i * n + j] = res(j, c);
          rows.push_back(row);
          rhs.push_back(0);
        }
      Matrix A = Matrix::from_rows(F, u, rows);
      auto part = solve(A, rhs);
      if (!part) continue;
      Vec x = *part;
      for (const Vec& k : kernel_basis(A)) vaxpy(f, x, elem(), k);
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < n; ++j) X(i, j) = x[i * n + j];
    } else if (!Np.is_zero()) {
      continue;
    }
    MackeyModule m = cp_module(G, F, t, n, sigma, res, X);
    if (!check_mackey_axioms(m).empty()) throw Error("Internal", "random module violates the axioms");
    return m;
  }
  throw Error("SearchCapExceeded", "no random module found");
}

FlatCertificate certify_flat(const Extension& E) {
  FlatCertificate c;
  auto from_parts = [&](const std::vector<ExtensionPtr>& ps, const char* route) {
    for (const auto& p : ps) {
      FlatCertificate s = certify_flat(*p);
      if (!s.decided || !s.flat) return FlatCertificate{s.decided, false, route, s.route + ": " + s.detail};
    }
    return FlatCertificate{true, true, route, ""};
  };
  switch (E.kind) {
    case ExtKind::Identity:
      c = {true, true, "identity", ""};
      break;
    case ExtKind::CoindUnit:
      c = {true, true, "coinduction-unit", ""};
      break;
    case ExtKind::Product:
      c = from_parts(E.parts, "product");
      break;
    case ExtKind::Composite:
      c = from_parts(E.parts, "composite");
      break;
    case ExtKind::BaseChange:
      // R ⊠ ℓ over ℓ is flat when R is flat over k.
      c = from_parts({E.parts.at(0)}, "base-change");
      break;
    case ExtKind::Coinduced:
      c = from_parts(E.parts, "coinduced");
      break;
    case ExtKind::Generic:
      return generic_route(E);
  }
  if (c.decided && cp_applicable(E)) {
    FlatStatus fs = flat_status(E.R->M);
    if (fs.flat != c.flat) throw Error("Internal", "structural flatness disagrees with the C_p structure theory");
  }
  return c;
}

BottomDetect detect_bottom_level(const Extension& E, bool strict) {
  BottomDetect d;
  const MackeyModule& M = E.R->M;
  const FiniteGroup& G = *M.G;
  const bool invertible = G.subgroup_order(M.domain) % M.F->characteristic() != 0;
  const bool h1 = invertible && check_cohomological(M);
  const bool h2 = transfers_surjective(M);
  d.applicable = h1 || h2;
  d.hypothesis = h1 ? "cohomological, |G| invertible" : h2 ? "transfers surjective" : "none";
  if (strict) {
    if (!d.applicable) throw Error("HypothesesNotMet", "neither bottom-level hypothesis holds");
    FlatCertificate fc = certify_flat(E);
    if (!fc.decided || !fc.flat) throw Error("HypothesesNotMet", "flatness is not certified");
  }
  Matrix u = E.unit_levels().level[kE];
  d.bottom_etale = classical_kahler(E.R->ring[kE], E.k->ring[kE], u).dim == 0;
  return d;
}

EtaleVerdict check_etale(const ExtensionPtr& Ep, const EtaleConfig& cfg) {
  const Extension& E = *Ep;
  const MackeyModule& M = E.R->M;
  EtaleVerdict v;
  for (int H : M.subgroups()) v.dims.push_back(M.dim(H));
  v.finite = true;

  FlatCertificate fc = certify_flat(E);
  v.flat = fc.decided && fc.flat;
  v.flat_route = fc.route;

  Kahler om = genuine_kahler(E, cfg.strategy);
  for (int H : M.subgroups()) v.omega_dims.push_back(om.module().dim(H));
  v.omega_zero = om.is_zero();
  v.omega_flagged = om.flagged;
  v.omega_route = "genuine-kahler (" + om.strategy + ")";

  v.bottom = detect_bottom_level(E, false);
  if (v.flat && v.bottom.applicable) {
    if (v.bottom.bottom_etale != v.omega_zero)
      throw Error("MismatchWitness", "bottom-level detection disagrees with the genuine Kähler module");
    v.omega_route += "; confirmed at the bottom level (" + v.bottom.hypothesis + ")";
  }

  const bool st = structural(E);
  v.fp_reported = v.finite && (cfg.assume_hbt || st);
  v.fp_basis = st ? "structural presentation" : cfg.assume_hbt ? "assume_hbt" : "not reported";

  if (!v.omega_zero) {
    std::ostringstream os;
    if (om.module().dim(kE)) {
      BottomCheck bc = bottom_level_kahler_check(E, om);
      os << "Ω(G/e) has dimension " << bc.genuine_dim << ", equal to the classical Ω¹ of the bottom rings";
      auto ck = classical_kahler(E.R->ring[kE], E.k->ring[kE], E.unit_levels().level[kE]);
      if (!ck.nonzero_generators.empty()) os << "; d(e_" << ck.nonzero_generators.front() << ") != 0";
    } else {
      int H = first_nonzero_level(om.module());
      os << "Ω(" << M.G->subgroup_label(H) << ") has dimension " << om.module().dim(H);
    }
    v.witness = os.str();
  } else if (fc.decided && !fc.flat) {
    v.witness = fc.detail;
  }

  if (!fc.decided) {
    v.verdict = "withheld";
    v.error = "FlatnessUndecidable";
    v.witness = fc.detail;
  } else if (!v.flat || !v.omega_zero) {
    v.verdict = "not_etale";
  } else {
    v.verdict = v.fp_reported ? "etale" : "formally_etale_and_finite";
  }
  return v;
}

GaloisCheck galois_fp_check(FieldPtr K, std::size_t n, GroupPtr G, const EtaleConfig& cfg) {
  GaloisCheck g;
  GRing L = galois_extension(K, n, G);
  auto k = constant(G, G->whole(), FinAlgebra::ground(K), K->name());
  auto R = fixed_point(L, "FP(" + K->name() + "^" + std::to_string(n) + ")");
  g.extension = over_constant(k, R);
  g.normal_basis = normal_basis(L);

  // Map(G, K) -> L, δ_j -> r_j⁻¹·θ, is an equivariant isomorphism.
  auto C = coinduction_unit(k, 0);
  const GRing& S = C->fp->S;
  auto reps = G->right_coset_reps(G->whole(), 0);
  Matrix phi(K, n, S.dim());
  for (std::size_t j = 0; j < reps.size(); ++j) phi.set_column(j, L.apply(G->inv(reps[j]), g.normal_basis));
  if (is_equivariant(S, L, phi) && rank(phi) == n) {
    ModuleMap f = fp_map(*C, *R, phi);
    g.module_iso = check_module_map(C->M, R->M, f).empty() && is_isomorphism(C->M, R->M, f);
  }
  g.transfers_surjective = transfers_surjective(R->M);
  g.verdict = check_etale(g.extension, cfg);
  g.passed = g.module_iso && g.transfers_surjective && g.verdict.flat && g.verdict.omega_zero &&
             (g.verdict.verdict == "etale" || g.verdict.verdict == "formally_etale_and_finite");
  return g;
}

GRing galois_on_subgroup(FieldPtr K, std::size_t n, GroupPtr G, int H) {
  auto sub = G->subgroup_as_group(H);
  GRing L = galois_extension(K, n, sub);
  auto els = G->subgroup_elements(H);
  std::vector<Matrix> act(G->order());
  for (std::size_t i = 0; i < els.size(); ++i) act[els[i]] = L.act[i];
  GRing r{G, H, L.A, std::move(act)};
  r.validate();
  return r;
}

Classification classify_finite_etale(const TambaraPtr& l) {
  const MackeyModule& M = l->M;
  const FiniteGroup& G = *M.G;
  const FieldPtr& F = M.F;
  Classification out;
  if (M.domain != G.whole()) throw Error("WrongGroup", "classification needs a functor on the whole group");
  const FinAlgebra& A = l->ring[kE];
  EtaleCertificate ec = is_etale_classical(A);
  if (!ec.etale) {
    out.witness = "BottomNotEtale: classical Ω¹ of ℓ(G/e) has dimension " + std::to_string(ec.kahler_dim);
    out.witness_level = kE;
    return out;
  }
  auto idem = primitive_idempotents(A);
  if (!idem) throw Error("BottomNotSplit", "ℓ(G/e) is not a product of copies of " + F->name());

  // G-orbits of primitive idempotents and their stabilizers.
  const auto els = G.subgroup_elements(G.whole());
  std::vector<bool> seen(idem->size(), false);
  std::vector<std::size_t> orbit_rep;
  for (std::size_t i = 0; i < idem->size(); ++i) {
    if (seen[i]) continue;
    orbit_rep.push_back(i);
    Mask stab = 0;
    for (int g : els) {
      Vec x = M.conj(g, kE).apply((*idem)[i]);
      for (std::size_t j = 0; j < idem->size(); ++j)
        if ((*idem)[j] == x) seen[j] = true;
      if (x == (*idem)[i]) stab |= Mask{1} << g;
    }
    out.subgroups.push_back(G.find_subgroup(stab));
  }
  for (int H : out.subgroups) out.classes.push_back(G.conj_class(H));
  std::sort(out.classes.begin(), out.classes.end());

  // Each level must be the fixed points of the bottom via restriction.
  for (int K : M.subgroups()) {
    Matrix stack(F, 0, M.dim(kE));
    for (int g : G.subgroup_elements(K)) stack = vstack(stack, M.conj(g, kE) - Matrix::identity(F, M.dim(kE)));
    Subspace fixed = kernel_space(stack);
    const Matrix& r = M.res(K, kE);
    bool ok = is_injective(r) && rank(r) == fixed.dim();
    for (std::size_t c = 0; ok && c < r.cols(); ++c) ok = fixed.contains(r.column(c));
    if (!ok) {
      out.witness = "LevelMismatch at " + G.subgroup_label(K) + ": restriction to ℓ(G/e) is not an isomorphism onto the fixed points";
      out.witness_level = K;
      return out;
    }
  }

  // ψ : Π CoInd_{H_i} F -> ℓ, δ_j -> r_j⁻¹·ε_i at the bottom, extended by restriction.
  auto k = constant(M.G, G.whole(), FinAlgebra::ground(F));
  std::vector<TambaraPtr> factors;
  for (int H : out.subgroups) factors.push_back(coinduction_unit(k, H));
  auto P = product(factors);
  Matrix psiS(F, M.dim(kE), 0);
  for (std::size_t f = 0; f < factors.size(); ++f)
    for (int r : G.right_coset_reps(G.whole(), out.subgroups[f])) {
      Matrix col(F, M.dim(kE), 1);
      col.set_column(0, M.conj(G.inv(r), kE).apply((*idem)[orbit_rep[f]]));
      psiS = hstack(psiS, col);
    }
  ModuleMap psi;
  psi.level.resize(M.nsub());
  const Matrix psi_e = psiS * P->fp->embed[kE];
  for (int K : M.subgroups()) psi.level[K] = left_inverse(M.res(K, kE)) * psi_e * P->M.res(K, kE);
  bool iso = check_module_map(P->M, M, psi).empty() && is_isomorphism(P->M, M, psi) &&
             check_algebra_map(*P, *l, psi).empty();
  if (!iso) {
    out.witness = "IsoFailure: the comparison with the product of coinductions is not an isomorphism";
    return out;
  }
  out.etale = true;
  return out;
}

namespace {

int subgroup_of_order(const FiniteGroup& G, int order, int within = -1) {
  for (int H = 0; H < G.num_subgroups(); ++H)
    if (G.subgroup_order(H) == order && (within < 0 || G.contains(within, H))) return H;
  throw Error("Internal", "no subgroup of order " + std::to_string(order));
}

ClosureEntry closure_entry(const std::string& prop, const std::string& inst, const ExtensionPtr& E,
                           const EtaleConfig& cfg) {
  ClosureEntry c{prop, inst, false, ""};
  try {
    EtaleVerdict v = check_etale(E, cfg);
    c.passed = v.flat && v.omega_zero && (v.verdict == "etale" || v.verdict == "formally_etale_and_finite");
    c.detail = v.verdict + " (flat via " + v.flat_route + ")";
    if (!c.passed && !v.witness.empty()) c.detail += ": " + v.witness;
  } catch (const Error& e) {
    c.detail = e.what();
  }
  return c;
}

}  // namespace

std::vector<ClosureEntry> closure_properties_suite(const EtaleConfig& cfg) {
  std::vector<ClosureEntry> out;
  auto F2 = Field::make(2), F3 = Field::make(3);
  auto C2 = FiniteGroup::cyclic(2), C3 = FiniteGroup::cyclic(3), C4 = FiniteGroup::cyclic(4);
  auto S3 = FiniteGroup::symmetric(3);
  auto ground = [](const GroupPtr& G, int D, const FieldPtr& F) {
    return constant(G, D, FinAlgebra::ground(F), F->name());
  };
  auto galois = [&](const FieldPtr& K, std::size_t n, const GroupPtr& G) {
    auto k = ground(G, G->whole(), K);
    return over_constant(k, fixed_point(galois_extension(K, n, G), "FP(" + K->name() + "^" + std::to_string(n) + ")"));
  };

  // Composition: F -> CoInd_K F -> CoInd_K CoInd_H F, which is CoInd_H F.
  struct Chain {
    GroupPtr G;
    int K, H;
    FieldPtr F;
  };
  std::vector<Chain> chains;
  for (const auto& F : {F2, F3}) {
    chains.push_back({C4, subgroup_of_order(*C4, 2), 0, F});
    chains.push_back({S3, subgroup_of_order(*S3, 2), 0, F});
    chains.push_back({S3, subgroup_of_order(*S3, 3), 0, F});
  }
  for (const auto& ch : chains) {
    const FiniteGroup& G = *ch.G;
    auto k = ground(ch.G, G.whole(), ch.F);
    auto first = coinduction_unit_extension(k, ch.K);
    auto inner = coinduction_unit_extension(ground(ch.G, ch.K, ch.F), ch.H);
    auto second = coinduce_extension(inner, G.whole());
    std::string inst = G.name() + " " + G.subgroup_label(ch.H) + " ⊂ " + G.subgroup_label(ch.K) + " over " + ch.F->name();
    ClosureEntry c = closure_entry("composition", inst, composite_extension(first, second), cfg);
    if (c.passed) {
      Classification cl = classify_finite_etale(second->R);
      if (!cl.etale || cl.classes != std::vector<int>{G.conj_class(ch.H)}) {
        c.passed = false;
        c.detail += "; composite is not CoInd of " + G.subgroup_label(ch.H);
      } else {
        c.detail += "; classified as CoInd_" + G.subgroup_label(ch.H);
      }
    }
    out.push_back(c);
  }
  {
    auto gal = galois(F2, 2, C2);
    auto e = composite_extension(gal, coinduction_unit_extension(gal->R, 0));
    out.push_back(closure_entry("composition", "C2 FP(F2^2) then CoInd_e over F2", e, cfg));
  }

  // Products.
  {
    auto k = ground(S3, S3->whole(), F3);
    auto a = coinduction_unit_extension(k, subgroup_of_order(*S3, 2));
    auto b = coinduction_unit_extension(k, subgroup_of_order(*S3, 3));
    out.push_back(closure_entry("product", "S3 CoInd_C2 × CoInd_C3 over F3", product_extension({a, b}), cfg));
  }
  {
    auto gal = galois(F2, 2, C2);
    auto c = coinduction_unit_extension(gal->k, 0);
    out.push_back(closure_entry("product", "C2 FP(F2^2) × CoInd_e over F2", product_extension({gal, c}), cfg));
  }
  {
    auto gal = galois(F3, 2, C2);
    auto id = identity_extension(gal->k);
    out.push_back(closure_entry("product", "C2 FP(F3^2) × F3 over F3", product_extension({gal, id}), cfg));
  }

  // Base change along coinduction units.
  for (auto [K, n, G] : {std::make_tuple(F2, std::size_t{2}, C2), std::make_tuple(F3, std::size_t{2}, C2),
                         std::make_tuple(F2, std::size_t{3}, C3)}) {
    auto gal = galois(K, n, G);
    auto l = coinduction_unit_extension(gal->k, 0);
    out.push_back(closure_entry("base-change",
                                G->name() + " FP(" + K->name() + "^" + std::to_string(n) + ") along CoInd_e",
                                base_change_extension(gal, l), cfg));
  }
  {
    auto k = ground(C4, C4->whole(), F2);
    auto R = coinduction_unit_extension(k, subgroup_of_order(*C4, 2));
    auto l = coinduction_unit_extension(k, 0);
    out.push_back(closure_entry("base-change", "C4 CoInd_C2 along CoInd_e over F2", base_change_extension(R, l), cfg));
  }

  // Coinduction of étale H-extensions.
  struct Coind {
    GroupPtr G;
    int H;
    FieldPtr K;
    std::size_t n;
  };
  for (const auto& c : {Coind{C4, subgroup_of_order(*C4, 2), F2, 2}, Coind{S3, subgroup_of_order(*S3, 3), F2, 3},
                        Coind{S3, subgroup_of_order(*S3, 2), F3, 2}}) {
    auto kH = ground(c.G, c.H, c.K);
    auto e = over_constant(kH, fixed_point(galois_on_subgroup(c.K, c.n, c.G, c.H)));
    out.push_back(closure_entry("coinduction",
                                c.G->name() + " CoInd_" + c.G->subgroup_label(c.H) + " FP(" + c.K->name() + "^" +
                                    std::to_string(c.n) + ")",
                                coinduce_extension(e, c.G->whole()), cfg));
  }
  for (const auto& [G, H, F] : {std::make_tuple(C4, subgroup_of_order(*C4, 2), F2),
                                std::make_tuple(S3, subgroup_of_order(*S3, 3), F3)}) {
    auto inner = coinduction_unit_extension(ground(G, H, F), 0);
    out.push_back(closure_entry("coinduction", G->name() + " CoInd_" + G->subgroup_label(H) + " of CoInd_e over " + F->name(),
                                coinduce_extension(inner, G->whole()), cfg));
  }
  return out;
}

}  // namespace tambara
