#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tambara/tambara.hpp"

namespace tambara {

// Presentation of a box product. Level K is a quotient of the generator space
// ⊕_{L ⊆ K} M(L) ⊗ N(L) (all subgroups L of K, not classes); the pair
// (e_i, e_j) in summand L sits at offset[L] + i * dim N(L) + j.
struct BoxPresentation {
  struct Level {
    std::vector<int> summands;
    std::vector<std::size_t> offset;  // indexed by subgroup id, npos if absent
    std::size_t gens = 0;
    Quotient q;
  };
  MackeyModule left, right;
  MackeyModule module;
  std::vector<Level> levels;

  // Generator-space vector of a ⊗ b placed in summand L of level K.
  Vec generator(int K, int L, const Vec& a, const Vec& b) const;
  // Its class in module(K).
  Vec element(int K, int L, const Vec& a, const Vec& b) const;
};

// Extra relations: for a summand L, vectors in M(L) ⊗ N(L) to be killed.
using RelationHook = std::function<std::vector<Vec>(int L)>;

BoxPresentation box_presentation(const MackeyModule& M, const MackeyModule& N,
                                 const RelationHook& extra = nullptr);
MackeyModule box_modules(const MackeyModule& M, const MackeyModule& N);

// Throws NotAModule unless the action is unital, associative and compatible
// with res, tr, conj (both Frobenius identities).
void check_module_over(const Tambara& k, const ModuleOver& M);
Matrix action_of(const ModuleOver& M, int H, const Vec& x);
// A Mackey module over a constant field functor (every level one-dimensional).
ModuleOver scalar_module(const Tambara& k, const MackeyModule& M);

// M ⊠_k N: the absolute box modulo [(x·a) ⊗ b − a ⊗ (x·b)]_L. These
// relations are already closed under res, tr and conj.
BoxPresentation box_over_base(const Tambara& k, const ModuleOver& M, const ModuleOver& N);
// k acts on M ⊠_k N through the left factor.
ModuleOver box_module_over(const Tambara& k, const ModuleOver& M, const BoxPresentation& box);

// Closed form for C_p: bottom M(e)⊗N(e), top (M(T)⊗N(T) ⊕ (M(e)⊗N(e))_{C_p})
// modulo Frobenius relations. Independent of box_presentation.
MackeyModule mazur_box(const MackeyModule& M, const MackeyModule& N);
// The natural comparison box_presentation(M,N) -> mazur_box(M,N).
ModuleMap mazur_comparison(const BoxPresentation& box, const MackeyModule& mazur);

// Swap isomorphism M ⊠ N -> N ⊠ M.
ModuleMap box_swap(const BoxPresentation& mn, const BoxPresentation& nm);
// Induced map M ⊠ N -> M ⊠ N' for f : N -> N' (both presentations with the same M).
ModuleMap box_map_right(const BoxPresentation& src, const BoxPresentation& dst, const ModuleMap& f);
// f ⊠ g : M ⊠ N -> M' ⊠ N'.
ModuleMap box_map(const BoxPresentation& src, const BoxPresentation& dst, const ModuleMap& f, const ModuleMap& g);
// Unit law N -> k ⊠_k N sends n to [1 ⊗ n]; the inverse [x ⊗ n] -> x·n.
ModuleMap box_unit_counit(const Tambara& k, const ModuleOver& N, const BoxPresentation& box);

// Ψ : CoInd_H Res_H k ⊠_k M -> CoInd_H Res_H M, [f ⊗ m]_L -> tr_L(f·η_L(m)).
// `box` must be box_over_base(k, self-module of unit, M).
struct CoindResIso {
  MackeyModule target;
  ModuleMap psi;
  bool iso = false;
};
CoindResIso coind_res_box_iso(const Tambara& k, int H, const ModuleOver& M, const BoxPresentation& box,
                              const Tambara& unit);

// Box of two extensions of the same base, always realised as FP(S ⊗_B T)
// and validated against the module-level box by the canonical map
// Φ[x ⊗ y]_L = tr_L(ι₁x · ι₂y). `shape` names the closed form that applies:
// coinduction-unit, surjective-transfers, invertible-order, product, or
// validated (no closed form; accepted because Φ is an isomorphism).
struct AlgebraBox {
  std::string shape;
  TambaraPtr result;
  RelativeTensor tensor;
  Matrix left, right;  // S -> S⊗_B T and T -> S⊗_B T
  ExtensionPtr over_base;
  BoxPresentation module_box;
  ModuleMap phi;
};
AlgebraBox box_algebras(const Extension& R, const Extension& T);
std::string box_shape(const Extension& R, const Extension& T);
// ℓ -> R ⊠_k ℓ.
ExtensionPtr base_change_extension(const ExtensionPtr& R, const ExtensionPtr& l);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace tambara
