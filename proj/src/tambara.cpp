#include "tambara/tambara.hpp"

#include <algorithm>

namespace tambara {

std::string pres_name(PresKind k) {
  switch (k) {
    case PresKind::FixedPoint: return "fixed-point";
    case PresKind::Coinduced: return "coinduced";
    case PresKind::Product: return "product";
    case PresKind::Explicit: return "explicit";
  }
  return "?";
}

Vec Tambara::norm(int K, int H, const Vec& x) const {
  if (K == H) return x;
  if (fp) {
    Vec s = fp->embed[H].apply(x);
    return fp->proj[K].apply(fp->S.norm(K, H, s));
  }
  if (explicit_norm) return explicit_norm(K, H, x);
  throw Error("UnsupportedRoute", "norms unavailable for " + label);
}

Vec Tambara::norm_along(int A, int B, int c, const Vec& x) const {
  const FiniteGroup& G = *M.G;
  int cB = G.conjugate(c, B);
  return M.conj(G.inv(c), cB).apply(norm(cB, A, x));
}

namespace {

FPModel fp_of(const GRing& S) {
  FPModel m{S, {}, {}};
  const int ns = S.G->num_subgroups();
  m.embed.resize(ns);
  m.proj.resize(ns);
  for (int H : S.G->subgroups_in(S.domain)) {
    m.embed[H] = S.fixed_basis(H);
    m.proj[H] = left_inverse(m.embed[H]);
  }
  return m;
}

// Builds levels, rings and structure maps from an FP model whose embed[H]
// identify the levels with S^H.
Tambara from_model(const FPModel& fp) {
  const GRing& S = fp.S;
  const FiniteGroup& G = *S.G;
  Tambara t;
  t.M = MackeyModule(S.G, S.field(), S.domain);
  t.ring.resize(G.num_subgroups());
  auto subs = t.M.subgroups();
  for (int H : subs) {
    t.M.dims[H] = fp.embed[H].cols();
    t.ring[H] = S.A.subalgebra(fp.embed[H]);
  }
  for (int K : subs)
    for (int H : subs) {
      if (!G.contains(K, H)) continue;
      t.M.res(K, H) = fp.proj[H] * fp.embed[K];
      Matrix tr(S.field(), S.dim(), fp.embed[H].cols());
      for (std::size_t j = 0; j < fp.embed[H].cols(); ++j)
        tr.set_column(j, S.transfer(K, H, fp.embed[H].column(j)));
      t.M.tr(K, H) = fp.proj[K] * tr;
    }
  for (int g : G.subgroup_elements(S.domain))
    for (int H : subs) t.M.conj(g, H) = fp.proj[G.conjugate(g, H)] * S.act[g] * fp.embed[H];
  t.fp = fp;
  return t;
}

}  // namespace

TambaraPtr fixed_point(const GRing& S, std::string label) {
  S.validate();
  Tambara t = from_model(fp_of(S));
  t.kind = PresKind::FixedPoint;
  t.gring = S;
  t.label = label.empty() ? "FP" : std::move(label);
  return std::make_shared<Tambara>(std::move(t));
}

TambaraPtr constant(GroupPtr G, int domain, const FinAlgebra& A, std::string label) {
  return fixed_point(GRing::trivial(std::move(G), domain, A),
                     label.empty() ? "constant" : std::move(label));
}

TambaraPtr coinduce(const TambaraPtr& T, int D, std::string label) {
  const FiniteGroup& G = *T->group();
  const int H = T->domain();
  Tambara t;
  t.M = coinduce_module(T->M, D);
  t.kind = PresKind::Coinduced;
  t.coind_from = H;
  t.parts = {T};
  t.label = label.empty() ? "CoInd_" + G.subgroup_label(H) + "(" + T->label + ")" : label;
  t.ring.resize(G.num_subgroups());
  auto subs = t.M.subgroups();
  std::vector<CoindLevel> lv(G.num_subgroups());
  for (int K : subs) {
    lv[K] = coind_level(T->M, D, K);
    std::vector<FinAlgebra> fs;
    for (int L : lv[K].inter) fs.push_back(T->ring[L]);
    t.ring[K] = FinAlgebra::product(fs);
  }
  if (T->fp) {
    // Model: Map_H(D, S') with level isomorphisms f -> (f(g_j))_j.
    const FPModel& inner = *T->fp;
    GRing Sco = GRing::coinduced(inner.S, D);
    FPModel base = fp_of(Sco);
    auto rreps = G.right_coset_reps(D, H);
    const std::size_t d = inner.S.dim();
    auto value_at = [&](const Vec& f, int x) {
      for (std::size_t i = 0; i < rreps.size(); ++i) {
        int h = G.mul(x, G.inv(rreps[i]));
        if (G.contains_elem(H, h)) {
          Vec blk(f.begin() + static_cast<std::ptrdiff_t>(i * d),
                  f.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
          return inner.S.apply(h, blk);
        }
      }
      throw Error("Internal", "coset lookup failed");
    };
    FPModel model{Sco, std::vector<Matrix>(G.num_subgroups()),
                  std::vector<Matrix>(G.num_subgroups())};
    for (int K : subs) {
      const Matrix& E = base.embed[K];
      Matrix phi(T->field(), t.M.dims[K], E.cols());
      for (std::size_t c = 0; c < E.cols(); ++c) {
        Vec f = E.column(c);
        for (std::size_t j = 0; j < lv[K].reps.size(); ++j) {
          Vec comp = inner.proj[lv[K].inter[j]].apply(value_at(f, lv[K].reps[j]));
          for (std::size_t r = 0; r < comp.size(); ++r) phi(lv[K].offset[j] + r, c) = comp[r];
        }
      }
      auto inv = inverse(phi);
      if (!inv) throw Error("Internal", "coinduction level map is not invertible");
      model.embed[K] = E * *inv;
      model.proj[K] = phi * base.proj[K];
    }
    // The double coset description must agree with FP(Map_H(D, S')).
    Tambara check = from_model(model);
    for (int K : subs) {
      if (!(check.ring[K] == t.ring[K]))
        throw Error("Internal", "coinduced ring structure disagrees with Map_H model");
      for (int L : subs)
        if (G.contains(K, L) &&
            (!(check.M.res(K, L) == t.M.res(K, L)) || !(check.M.tr(K, L) == t.M.tr(K, L))))
          throw Error("Internal", "coinduced structure maps disagree with Map_H model");
      for (int g : G.subgroup_elements(D))
        if (!(check.M.conj(g, K) == t.M.conj(g, K)))
          throw Error("Internal", "coinduced conjugations disagree with Map_H model");
    }
    t.fp = std::move(model);
  }
  return std::make_shared<Tambara>(std::move(t));
}

TambaraPtr coinduction_unit(const TambaraPtr& k, int H) {
  const FiniteGroup& G = *k->group();
  auto res = restrict_tambara(k, H);
  auto t = coinduce(res, k->domain(),
                    "CoInd_" + G.subgroup_label(H) + " Res_" + G.subgroup_label(H) + "(" +
                        k->label + ")");
  auto out = std::make_shared<Tambara>(*t);
  out->unit_base = k;
  return out;
}

TambaraPtr restrict_tambara(const TambaraPtr& X, int H) {
  const FiniteGroup& G = *X->group();
  std::string lab = "Res_" + G.subgroup_label(H) + "(" + X->label + ")";
  if (X->kind == PresKind::FixedPoint && X->gring) return fixed_point(X->gring->restrict(H), lab);
  if (X->fp) return fixed_point(X->fp->S.restrict(H), lab);
  Tambara t = *X;
  t.M = restrict_module(X->M, H);
  t.label = lab;
  t.unit_base = nullptr;
  return std::make_shared<Tambara>(std::move(t));
}

TambaraPtr product(const std::vector<TambaraPtr>& xs, std::string label) {
  if (xs.empty()) throw Error("ParseError", "empty product");
  Tambara t;
  std::vector<MackeyModule> ms;
  for (const auto& x : xs) {
    if (x->group() != xs.front()->group() || x->domain() != xs.front()->domain())
      throw Error("GroupMismatch", "product over different groups");
    ms.push_back(x->M);
  }
  t.M = direct_sum(ms);
  t.kind = PresKind::Product;
  t.parts = xs;
  if (label.empty()) {
    label = "";
    for (std::size_t i = 0; i < xs.size(); ++i) label += (i ? " x " : "") + xs[i]->label;
  }
  t.label = label;
  const FiniteGroup& G = *t.M.G;
  t.ring.resize(G.num_subgroups());
  for (int H : t.M.subgroups()) {
    std::vector<FinAlgebra> fs;
    for (const auto& x : xs) fs.push_back(x->ring[H]);
    t.ring[H] = FinAlgebra::product(fs);
  }
  bool all_fp = std::all_of(xs.begin(), xs.end(), [](const TambaraPtr& x) { return x->fp.has_value(); });
  if (all_fp) {
    std::vector<GRing> ss;
    for (const auto& x : xs) ss.push_back(x->fp->S);
    FPModel m{GRing::product(ss), std::vector<Matrix>(G.num_subgroups()),
              std::vector<Matrix>(G.num_subgroups())};
    for (int H : t.M.subgroups()) {
      std::vector<Matrix> es, ps;
      for (const auto& x : xs) {
        es.push_back(x->fp->embed[H]);
        ps.push_back(x->fp->proj[H]);
      }
      m.embed[H] = block_diagonal(t.M.F, es);
      m.proj[H] = block_diagonal(t.M.F, ps);
    }
    t.fp = std::move(m);
  } else {
    std::vector<TambaraPtr> keep = xs;
    t.explicit_norm = [keep](int K, int H, const Vec& x) {
      Vec out;
      std::size_t off = 0;
      for (const auto& p : keep) {
        std::size_t d = p->dim(H);
        Vec part(x.begin() + static_cast<std::ptrdiff_t>(off),
                 x.begin() + static_cast<std::ptrdiff_t>(off + d));
        Vec n = p->norm(K, H, part);
        out.insert(out.end(), n.begin(), n.end());
        off += d;
      }
      return out;
    };
  }
  return std::make_shared<Tambara>(std::move(t));
}

TambaraPtr fattened_fixture(GroupPtr C2) {
  if (C2->order() != 2) throw Error("WrongGroup", "the fattened fixture lives over C_2");
  auto F = Field::make(2);
  Tambara t;
  t.M = cp_module(C2, F, 2, 1, Matrix::identity(F, 1), Matrix::from_rows(F, 2, {{1, 0}}),
                  Matrix(F, 2, 1));
  t.kind = PresKind::Explicit;
  t.label = "fattened";
  t.ring.resize(2);
  t.ring[0] = FinAlgebra::ground(F);
  t.ring[1] = FinAlgebra::polynomial_quotient(F, {0, 0, 1});
  t.explicit_norm = [](int K, int H, const Vec& x) {
    if (K == H) return x;
    return Vec{x[0], 0};  // x² = x in F_2
  };
  return std::make_shared<Tambara>(std::move(t));
}

std::vector<Vec> test_elements(const FinAlgebra& A, std::size_t cap) {
  const std::uint32_t q = A.field()->order();
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    total *= q;
    if (total > cap) {
      small = false;
      break;
    }
  }
  std::vector<Vec> out;
  if (small) {
    for (std::uint64_t c = 0; c < total; ++c) out.push_back(decode_vector(c, q, A.dim()));
    return out;
  }
  const Field& F = *A.field();
  out.push_back(A.zero());
  out.push_back(A.one());
  for (std::size_t i = 0; i < A.dim(); ++i) out.push_back(unit_vector(A.dim(), i));
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i + 1; j < A.dim(); ++j)
      out.push_back(vadd(F, unit_vector(A.dim(), i), unit_vector(A.dim(), j)));
  return out;
}

std::vector<AxiomFailure> check_tambara_axioms(const Tambara& X) {
  std::vector<AxiomFailure> out;
  const FiniteGroup& G = *X.group();
  const Field& F = *X.field();
  auto subs = X.M.subgroups();
  for (int H : subs) {
    if (X.ring[H].dim() != X.dim(H)) {
      out.push_back({"ring-dimension", G.subgroup_label(H)});
      return out;
    }
    try {
      X.ring[H].validate();
    } catch (const Error& e) {
      out.push_back({"ring-" + e.code(), G.subgroup_label(H) + ": " + e.what()});
    }
  }
  for (int K : subs)
    for (int H : subs)
      if (G.contains(K, H) && !X.ring[K].is_ring_map_to(X.ring[H], X.M.res(K, H)))
        out.push_back({"res-ring-map", G.subgroup_label(H) + " ⊆ " + G.subgroup_label(K)});
  for (int g : G.subgroup_elements(X.domain()))
    for (int H : subs)
      if (!X.ring[H].is_ring_map_to(X.ring[G.conjugate(g, H)], X.M.conj(g, H)))
        out.push_back({"conj-ring-map", std::to_string(g) + " on " + G.subgroup_label(H)});
  // Frobenius reciprocity on basis pairs.
  for (int K : subs)
    for (int H : subs) {
      if (!G.contains(K, H) || K == H) continue;
      for (std::size_t i = 0; i < X.dim(H); ++i)
        for (std::size_t j = 0; j < X.dim(K); ++j) {
          Vec x = unit_vector(X.dim(H), i), y = unit_vector(X.dim(K), j);
          Vec lhs = X.M.tr(K, H).apply(X.mul(H, x, X.M.res(K, H).apply(y)));
          Vec rhs = X.mul(K, X.M.tr(K, H).apply(x), y);
          if (lhs != rhs)
            out.push_back({"frobenius-reciprocity",
                           G.subgroup_label(H) + " ⊆ " + G.subgroup_label(K) + " x=e" +
                               std::to_string(i) + " y=e" + std::to_string(j)});
        }
    }
  for (auto& f : check_mackey_axioms(X.M)) out.push_back(f);
  // Norms.
  try {
    for (int K : subs)
      for (int H : subs) {
        if (!G.contains(K, H)) continue;
        std::string pr = G.subgroup_label(H) + " ⊆ " + G.subgroup_label(K);
        if (X.norm(K, H, X.ring[H].one()) != X.ring[K].one()) out.push_back({"norm-unital", pr});
        auto els = test_elements(X.ring[H], 1024);
        std::vector<Vec> few = els.size() > 64 ? std::vector<Vec>(els.begin(), els.begin() + 64) : els;
        for (const auto& a : few)
          for (const auto& b : few)
            if (X.norm(K, H, X.mul(H, a, b)) != X.mul(K, X.norm(K, H, a), X.norm(K, H, b))) {
              out.push_back({"norm-multiplicative", pr + " a=" + vec_string(a) + " b=" + vec_string(b)});
              goto next_pair;
            }
        for (const auto& a : els) {
          for (int J : subs) {
            if (!G.contains(K, J)) continue;
            Vec lhs = X.M.res(K, J).apply(X.norm(K, H, a));
            Vec rhs = X.ring[J].one();
            for (const auto& dc : G.double_cosets(J, H, K)) {
              int x = dc.rep;
              int inner = G.intersect(G.conjugate(G.inv(x), J), H);
              Vec v = X.M.conj(x, inner).apply(X.M.res(H, inner).apply(a));
              rhs = X.mul(J, rhs, X.norm(J, dc.intersection, v));
            }
            if (lhs != rhs) {
              out.push_back({"norm-restriction-formula",
                             pr + " to " + G.subgroup_label(J) + " a=" + vec_string(a)});
              goto next_pair;
            }
          }
          for (int L : subs) {
            if (!G.contains(L, K)) continue;
            if (X.norm(L, K, X.norm(K, H, a)) != X.norm(L, H, a)) {
              out.push_back({"norm-functorial", pr + " ⊆ " + G.subgroup_label(L)});
              goto next_pair;
            }
          }
          for (int g : G.subgroup_elements(X.domain())) {
            int gK = G.conjugate(g, K), gH = G.conjugate(g, H);
            if (X.M.conj(g, K).apply(X.norm(K, H, a)) != X.norm(gK, gH, X.M.conj(g, H).apply(a))) {
              out.push_back({"norm-conj", pr + " g=" + std::to_string(g)});
              goto next_pair;
            }
          }
        }
        // Additivity for index-2 pairs: nm(a+b) = nm a + nm b + tr(a·σb).
        if (G.index(K, H) == 2) {
          int sigma = -1;
          for (int g : G.subgroup_elements(K))
            if (!G.contains_elem(H, g)) {
              sigma = g;
              break;
            }
          for (const auto& a : few)
            for (const auto& b : few) {
              Vec lhs = X.norm(K, H, vadd(F, a, b));
              Vec cross = X.M.tr(K, H).apply(X.mul(H, a, X.M.conj(sigma, H).apply(b)));
              Vec rhs = vadd(F, vadd(F, X.norm(K, H, a), X.norm(K, H, b)), cross);
              if (lhs != rhs) {
                out.push_back({"norm-additivity", pr + " a=" + vec_string(a) + " b=" + vec_string(b)});
                goto next_pair;
              }
            }
        }
      next_pair:;
      }
  } catch (const Error& e) {
    out.push_back({"norm-" + e.code(), e.what()});
  }
  if (X.fp) {
    const FPModel& m = *X.fp;
    for (int H : subs) {
      for (int h : G.subgroup_elements(H))
        if (!(m.S.act[h] * m.embed[H] == m.embed[H]))
          out.push_back({"fp-model-fixed", G.subgroup_label(H)});
      if (!(m.proj[H] * m.embed[H] == Matrix::identity(X.field(), X.dim(H))))
        out.push_back({"fp-model-proj", G.subgroup_label(H)});
      if (rank(m.embed[H]) != m.S.fixed_basis(H).cols())
        out.push_back({"fp-model-onto-fixed-points", G.subgroup_label(H)});
    }
  }
  return out;
}

std::vector<AxiomFailure> check_algebra_map(const Tambara& a, const Tambara& b, const ModuleMap& f) {
  auto out = check_module_map(a.M, b.M, f);
  if (!out.empty()) return out;
  const FiniteGroup& G = *a.group();
  auto subs = a.M.subgroups();
  for (int H : subs)
    if (!a.ring[H].is_ring_map_to(b.ring[H], f.level[H]))
      out.push_back({"map-ring", G.subgroup_label(H)});
  for (int K : subs)
    for (int H : subs) {
      if (!G.contains(K, H) || K == H) continue;
      for (const auto& x : test_elements(a.ring[H], 1024))
        if (f.level[K].apply(a.norm(K, H, x)) != b.norm(K, H, f.level[H].apply(x))) {
          out.push_back({"map-norm", G.subgroup_label(H) + " ⊆ " + G.subgroup_label(K) +
                                         " x=" + vec_string(x)});
          break;
        }
    }
  return out;
}

ModuleMap fp_map(const Tambara& a, const Tambara& b, const Matrix& phi) {
  ModuleMap m;
  m.level.resize(a.M.nsub());
  for (int H : a.M.subgroups()) m.level[H] = b.fp->proj[H] * phi * a.fp->embed[H];
  return m;
}

ModuleOver self_module(const Tambara& R) {
  ModuleOver m{R.M, std::vector<std::vector<Matrix>>(R.M.nsub())};
  for (int H : R.M.subgroups())
    for (std::size_t i = 0; i < R.dim(H); ++i)
      m.act[H].push_back(R.ring[H].mult_matrix(unit_vector(R.dim(H), i)));
  return m;
}

ModuleOver module_via(const Tambara& k, const Tambara& R, const ModuleMap& unit) {
  ModuleOver m{R.M, std::vector<std::vector<Matrix>>(R.M.nsub())};
  for (int H : R.M.subgroups())
    for (std::size_t i = 0; i < k.dim(H); ++i)
      m.act[H].push_back(R.ring[H].mult_matrix(unit.level[H].column(i)));
  return m;
}

}  // namespace tambara

namespace tambara {

std::string ext_kind_name(ExtKind k) {
  switch (k) {
    case ExtKind::Identity: return "identity";
    case ExtKind::CoindUnit: return "coinduction-unit";
    case ExtKind::Generic: return "generic";
    case ExtKind::Product: return "product";
    case ExtKind::BaseChange: return "base-change";
    case ExtKind::Composite: return "composite";
    case ExtKind::Coinduced: return "coinduced";
  }
  return "?";
}

ExtensionPtr make_extension(TambaraPtr k, TambaraPtr R, Matrix unit, ExtKind kind,
                            std::vector<ExtensionPtr> parts, std::string label) {
  if (!k->fp || !R->fp) throw Error("UnsupportedRoute", "extensions need fixed-point models");
  if (k->group() != R->group() || k->domain() != R->domain())
    throw Error("GroupMismatch", "base and algebra over different groups");
  if (!same_field(k->field(), R->field())) throw Error("FieldMismatch", "base and algebra fields");
  const GRing& B = k->fp->S;
  const GRing& S = R->fp->S;
  if (!B.A.is_ring_map_to(S.A, unit)) throw Error("NotAnAlgebra", "unit is not a ring map");
  if (!is_equivariant(B, S, unit)) throw Error("NotAnAlgebra", "unit is not equivariant");
  auto e = std::make_shared<Extension>();
  e->k = std::move(k);
  e->R = std::move(R);
  e->unit = std::move(unit);
  e->kind = kind;
  e->parts = std::move(parts);
  e->label = label.empty() ? e->R->label + " over " + e->k->label : std::move(label);
  return e;
}

ExtensionPtr identity_extension(const TambaraPtr& k) {
  return make_extension(k, k, Matrix::identity(k->field(), k->fp->S.dim()), ExtKind::Identity);
}

ExtensionPtr over_constant(const TambaraPtr& k, const TambaraPtr& R) {
  if (!k->fp || k->fp->S.dim() != 1) throw Error("UnsupportedRoute", "base is not a constant field");
  return make_extension(k, R, unit_map(R->fp->S.A));
}

ExtensionPtr coinduction_unit_extension(const TambaraPtr& k, int H) {
  auto R = coinduction_unit(k, H);
  const GRing& B = k->fp->S;
  const GRing& S = R->fp->S;
  const FiniteGroup& G = *k->group();
  auto reps = G.right_coset_reps(k->domain(), H);
  const std::size_t d = B.dim();
  Matrix u(k->field(), S.dim(), d);
  // b -> (r_i -> r_i · b)
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Vec v = B.apply(reps[i], unit_vector(d, c));
      for (std::size_t r = 0; r < d; ++r) u(i * d + r, c) = v[r];
    }
  return make_extension(k, R, std::move(u), ExtKind::CoindUnit);
}

ExtensionPtr product_extension(const std::vector<ExtensionPtr>& es) {
  if (es.empty()) throw Error("ParseError", "empty product");
  std::vector<TambaraPtr> rs;
  Matrix u(es.front()->k->field(), 0, es.front()->k->fp->S.dim());
  for (const auto& e : es) {
    if (e->k != es.front()->k) throw Error("GroupMismatch", "product over different bases");
    rs.push_back(e->R);
    u = vstack(u, e->unit);
  }
  return make_extension(es.front()->k, product(rs), std::move(u), ExtKind::Product, es);
}

ExtensionPtr composite_extension(const ExtensionPtr& a, const ExtensionPtr& b) {
  // Separately built but equal fixed-point models also compose.
  bool same = a->R == b->k || (a->R->fp && b->k->fp && a->R->fp->S.A == b->k->fp->S.A &&
                               a->R->fp->S.act == b->k->fp->S.act);
  if (!same) throw Error("GroupMismatch", "composite of non-composable extensions");
  return make_extension(a->k, b->R, b->unit * a->unit, ExtKind::Composite, {a, b},
                        b->R->label + " over " + a->k->label + " via " + a->R->label);
}

ExtensionPtr coinduce_extension(const ExtensionPtr& e, int D) {
  auto k = coinduce(e->k, D);
  auto R = coinduce(e->R, D);
  const FiniteGroup& G = *k->group();
  std::size_t m = G.right_coset_reps(D, e->k->domain()).size();
  std::vector<Matrix> blocks(m, e->unit);
  return make_extension(k, R, block_diagonal(k->field(), blocks), ExtKind::Coinduced, {e});
}

}  // namespace tambara
