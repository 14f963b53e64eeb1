#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tambara/algebra.hpp"

namespace tambara {

// Mackey functor with finite-dimensional levels over the subgroups of a
// domain D ⊆ G. Levels are kept for every subgroup of D (not only class
// representatives) together with explicit conjugation maps, so that
// structure maps along arbitrary orbit maps are plain compositions.
//
// Conventions: res(K,H): M(K) -> M(H) and tr(K,H): M(H) -> M(K) for H ⊆ K;
// conj(g,H): M(H) -> M(gHg⁻¹) for g in D.
struct MackeyModule {
  GroupPtr G;
  FieldPtr F;
  int domain = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> res_, tr_, conj_;

  MackeyModule() = default;
  MackeyModule(GroupPtr g, FieldPtr f, int dom);

  int nsub() const { return G->num_subgroups(); }
  std::vector<int> subgroups() const { return G->subgroups_in(domain); }
  bool in_domain(int H) const { return G->contains(domain, H); }
  std::size_t dim(int H) const { return dims.at(H); }
  const Matrix& res(int K, int H) const { return res_.at(K * nsub() + H); }
  const Matrix& tr(int K, int H) const { return tr_.at(K * nsub() + H); }
  const Matrix& conj(int g, int H) const { return conj_.at(g * nsub() + H); }
  Matrix& res(int K, int H) { return res_.at(K * nsub() + H); }
  Matrix& tr(int K, int H) { return tr_.at(K * nsub() + H); }
  Matrix& conj(int g, int H) { return conj_.at(g * nsub() + H); }

  // Along the D-map D/A -> D/B, xA -> xcB (needs A ⊆ cBc⁻¹):
  // restriction M(B) -> M(A) and transfer M(A) -> M(B).
  Matrix res_along(int A, int B, int c) const;
  Matrix tr_along(int A, int B, int c) const;

  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // Allocates zero maps of the right shapes for all pairs.
  void allocate();
};

struct AxiomFailure {
  std::string axiom;
  std::string detail;
};

// Exhaustive check of the Mackey axioms as matrix identities. An empty result
// means all axioms hold.
std::vector<AxiomFailure> check_mackey_axioms(const MackeyModule& m);

bool check_cohomological(const MackeyModule& m);
bool transfers_surjective(const MackeyModule& m);
bool restrictions_injective(const MackeyModule& m);

// Levelwise linear maps f_H : M(H) -> N(H).
struct ModuleMap {
  std::vector<Matrix> level;
};
std::vector<AxiomFailure> check_module_map(const MackeyModule& src, const MackeyModule& dst,
                                           const ModuleMap& f);
bool is_isomorphism(const MackeyModule& src, const MackeyModule& dst, const ModuleMap& f);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

MackeyModule direct_sum(const std::vector<MackeyModule>& ms);
MackeyModule restrict_module(const MackeyModule& m, int H);
// CoInd from the domain of t to D via double cosets H\D/K.
MackeyModule coinduce_module(const MackeyModule& t, int D);
// Block layout of a coinduced level: reps g_j of H\D/K with L_j = H ∩ g_j K g_j⁻¹.
struct CoindLevel {
  std::vector<int> reps, inter;
  std::vector<std::size_t> offset;
};
CoindLevel coind_level(const MackeyModule& t, int D, int K);

// Modules over a cyclic group C_p=<σ> (σ the first generator), assembled from
// top/bottom data. sigma acts on the bottom level.
MackeyModule cp_module(GroupPtr G, FieldPtr F, std::size_t top, std::size_t bottom,
                       const Matrix& sigma, const Matrix& res, const Matrix& tr);
// D(C_p/C_p) = 0, D(C_p/e) = F.
MackeyModule special_module_D(GroupPtr G, FieldPtr F);

// Bottom level with its G-action (matrices indexed by group element).
struct Representation {
  std::size_t dim = 0;
  std::vector<Matrix> act;
};
Representation ev_bottom(const MackeyModule& m);

// Modules over a Green functor: act[H][i] is the action of basis element i of
// the base level k(H) on M(H).
struct ModuleOver {
  MackeyModule M;
  std::vector<std::vector<Matrix>> act;
};

// Other structure used by several modules.
std::string dims_string(const MackeyModule& m);

}  // namespace tambara

namespace tambara {

// Module maps A -> B as solutions of a linear system whose unknowns are the
// entries of every level matrix. Extra affine conditions f_H(x) = y can be
// imposed before solving.
class MapSystem {
 public:
  MapSystem(const MackeyModule& A, const MackeyModule& B);
  void require(int H, const Vec& x, const Vec& y);
  // left · f_H(x) = y
  void require(int H, const Matrix& left, const Vec& x, const Vec& y);
  std::optional<ModuleMap> solve() const;
  std::vector<ModuleMap> kernel() const;  // homogeneous solutions (module maps)
  std::size_t unknowns() const { return total_; }

 private:
  const MackeyModule& A_;
  const MackeyModule& B_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
  std::vector<Vec> rows_;
  Vec rhs_;
  ModuleMap unpack(const Vec& x) const;
};

// A submodule given by levelwise subspaces (assumed closed), with its inclusion.
struct Submodule {
  MackeyModule module;
  ModuleMap inclusion;
};
Submodule submodule(const MackeyModule& M, const std::vector<Subspace>& levels);

}  // namespace tambara
