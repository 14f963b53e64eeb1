#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tambara/box.hpp"

namespace tambara {

// Levelwise subspaces (in level coordinates) of a Tambara functor.
struct TambaraIdeal {
  TambaraPtr ambient;
  std::vector<Subspace> level;

  std::size_t dim(int H) const { return level.at(H).dim(); }
};

// Empty result means closed under ambient multiplication, res, tr, conj and
// norms of its own elements (checked on test elements).
std::vector<AxiomFailure> check_ideal(const TambaraIdeal& I);
TambaraIdeal kernel_ideal(const TambaraPtr& src, const ModuleMap& f);
// Smallest ideal containing the given generators (mult, res, tr, conj).
TambaraIdeal ideal_closure(const TambaraPtr& R, std::vector<std::vector<Vec>> gens);

enum class PowerStrategy { Auto, Span, Enum };
struct IdealPower {
  TambaraIdeal ideal;
  std::string strategy;  // "span", "enum", or "span (enum cap exceeded)"
  bool flagged = false;
};
constexpr std::uint64_t kEnumCap = 100000;
// I^{>1}: generated by I(H)² and norms into H from proper subgroups.
IdealPower ideal_power_gt1(const TambaraIdeal& I, PowerStrategy s = PowerStrategy::Auto);

struct Kahler {
  AlgebraBox box;
  Matrix mu;  // multiplication S ⊗_B S -> S
  TambaraIdeal I, I2;
  std::vector<Quotient> quot;  // Ω(H) as I(H)/I2(H) in I(H)-coordinates
  ModuleOver omega;            // over R, acting through the left factor
  std::string strategy;
  bool flagged = false;

  const MackeyModule& module() const { return omega.M; }
  bool is_zero() const { return omega.M.is_zero(); }
  // Class in Ω(H) of an element of I(H) given in P(H)-coordinates.
  Vec class_of(int H, const Vec& x) const;
};
Kahler genuine_kahler(const Extension& E, PowerStrategy s = PowerStrategy::Auto);

// Ω(G/e) against the classical module of differentials of the bottom rings:
// I(e) must equal ker(μ) and I^{>1}(e) must equal its square, and the
// dimension must match classical_kahler. Throws MismatchWitness otherwise.
struct BottomCheck {
  std::size_t genuine_dim = 0, classical_dim = 0;
  bool ok = false;
};
BottomCheck bottom_level_kahler_check(const Extension& E, const Kahler& om);

// Exhaustive enumeration of genuine k-derivations R -> M (M an R-module).
struct Derivation {
  std::vector<Matrix> d;  // per subgroup id
};
struct SearchCaps {
  std::uint64_t space = 10000000;  // candidate maps overall
  std::size_t keep = 64;           // how many hits to store
};
struct Enumeration {
  std::uint64_t count = 0;
  std::uint64_t space = 0;  // size of the naive search space
  std::vector<Derivation> found;
};
Enumeration enumerate_derivations(const Extension& E, const ModuleOver& M, SearchCaps caps = {});
// R-module maps Ω -> M.
Enumeration enumerate_homs(const ModuleOver& src, const ModuleOver& dst, SearchCaps caps = {});
// Dimension of the same spaces by linear algebra (all constraints are linear
// in the map once r is fixed).
std::size_t derivation_dim(const Extension& E, const ModuleOver& M);
std::size_t hom_dim(const ModuleOver& src, const ModuleOver& dst);

bool is_derivation(const Extension& E, const ModuleOver& M, const ModuleMap& d);
// The map d(r) = [ι₁r − ι₂r] into Ω, levelwise.
ModuleMap universal_derivation(const Extension& E, const Kahler& om);

struct SplitCheck {
  Kahler whole;
  std::vector<Kahler> parts;
  ModuleMap map;  // Ω_{R1×R2} -> ⊕ Ω_{Ri}
  MackeyModule sum;
  bool iso = false;
};
SplitCheck kahler_product_split(const ExtensionPtr& R1, const ExtensionPtr& R2);

struct BaseChangeCheck {
  Kahler lhs;  // Ω_{R⊠ℓ/ℓ}
  Kahler rhs_omega;
  BoxPresentation rhs;  // Ω_{R/k} ⊠_k ℓ
  ModuleMap map;        // rhs -> lhs
  bool iso = false;
};
// ℓ = CoInd_H Res_H k.
BaseChangeCheck kahler_base_change(const ExtensionPtr& R, int H);

}  // namespace tambara
