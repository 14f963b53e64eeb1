#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tambara/mackey.hpp"

namespace tambara {

enum class PresKind { FixedPoint, Coinduced, Product, Explicit };
std::string pres_name(PresKind k);

struct Tambara;
using TambaraPtr = std::shared_ptr<const Tambara>;

// A G-ring S with isomorphisms from each level onto S^H: embed[H] maps level
// coordinates into S, proj[H] is a left inverse.
struct FPModel {
  GRing S;
  std::vector<Matrix> embed, proj;
};

// Tambara functor: a Mackey module whose levels are rings, with norms.
// Every functor carries the structural presentation it was built from.
struct Tambara {
  MackeyModule M;
  std::vector<FinAlgebra> ring;  // per subgroup id
  PresKind kind = PresKind::Explicit;
  std::string label;
  std::optional<GRing> gring;      // FixedPoint
  int coind_from = -1;             // Coinduced: the subgroup H
  std::vector<TambaraPtr> parts;   // Coinduced: {T}; Product: factors
  TambaraPtr unit_base;            // set for CoInd_H Res_H k (points to k)
  std::optional<FPModel> fp;
  std::function<Vec(int, int, const Vec&)> explicit_norm;  // Explicit fixtures only

  const GroupPtr& group() const { return M.G; }
  const FieldPtr& field() const { return M.F; }
  int domain() const { return M.domain; }
  std::size_t dim(int H) const { return M.dim(H); }

  Vec mul(int H, const Vec& a, const Vec& b) const { return ring.at(H).mul(a, b); }
  Vec norm(int K, int H, const Vec& x) const;
  // Norm along D/A -> D/B, xA -> xcB.
  Vec norm_along(int A, int B, int c, const Vec& x) const;
  Vec res_along(int A, int B, int c, const Vec& x) const { return M.res_along(A, B, c).apply(x); }
};

TambaraPtr fixed_point(const GRing& S, std::string label = "");
TambaraPtr constant(GroupPtr G, int domain, const FinAlgebra& A, std::string label = "");
TambaraPtr coinduce(const TambaraPtr& T, int D, std::string label = "");
// CoInd_H^D Res_H^D k with D the domain of k.
TambaraPtr coinduction_unit(const TambaraPtr& k, int H);
TambaraPtr restrict_tambara(const TambaraPtr& X, int H);
TambaraPtr product(const std::vector<TambaraPtr>& xs, std::string label = "");
// C_2 over F_2: top F_2[t]/t², bottom F_2, res(t) = 0, tr = 0, nm(x) = x².
TambaraPtr fattened_fixture(GroupPtr C2);

std::vector<AxiomFailure> check_tambara_axioms(const Tambara& X);

// Levelwise ring maps commuting with res, tr, conj and norms.
std::vector<AxiomFailure> check_algebra_map(const Tambara& src, const Tambara& dst,
                                            const ModuleMap& f);
// FP(φ) for an equivariant ring map φ: src.fp.S -> dst.fp.S.
ModuleMap fp_map(const Tambara& src, const Tambara& dst, const Matrix& phi);

// A Tambara functor as a module over itself or over a base via a unit map.
ModuleOver self_module(const Tambara& R);
ModuleOver module_via(const Tambara& k, const Tambara& R, const ModuleMap& unit);

// Elements used for exhaustive-or-bounded checks of nonlinear identities:
// every element if the level has at most `cap` elements, otherwise basis
// vectors, 0, 1 and pairwise sums.
std::vector<Vec> test_elements(const FinAlgebra& A, std::size_t cap = 4096);

}  // namespace tambara

namespace tambara {

// A k-algebra R presented through fixed-point models: `unit` is the
// equivariant ring map k.fp.S -> R.fp.S. `kind` records how it was built,
// which the étale checker uses to select flatness certificates.
enum class ExtKind { Identity, CoindUnit, Generic, Product, BaseChange, Composite, Coinduced };
std::string ext_kind_name(ExtKind k);

struct Extension;
using ExtensionPtr = std::shared_ptr<const Extension>;

struct Extension {
  TambaraPtr k, R;
  Matrix unit;
  ExtKind kind = ExtKind::Generic;
  std::vector<ExtensionPtr> parts;
  std::string label;

  ModuleMap unit_levels() const { return fp_map(*k, *R, unit); }
};

// Validates the unit map (equivariant ring map) before wrapping.
ExtensionPtr make_extension(TambaraPtr k, TambaraPtr R, Matrix unit, ExtKind kind = ExtKind::Generic,
                            std::vector<ExtensionPtr> parts = {}, std::string label = "");
ExtensionPtr identity_extension(const TambaraPtr& k);
// R over a constant field functor k (k.fp.S one-dimensional with trivial action).
ExtensionPtr over_constant(const TambaraPtr& k, const TambaraPtr& R);
ExtensionPtr coinduction_unit_extension(const TambaraPtr& k, int H);
ExtensionPtr product_extension(const std::vector<ExtensionPtr>& es);
// k -> R -> S where second.k is first.R.
ExtensionPtr composite_extension(const ExtensionPtr& first, const ExtensionPtr& second);
// CoInd_H^D of an extension of H-functors.
ExtensionPtr coinduce_extension(const ExtensionPtr& e, int D);

}  // namespace tambara
