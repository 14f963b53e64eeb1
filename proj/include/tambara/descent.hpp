#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tambara/etale.hpp"

namespace tambara {

// A finite commutative Hopf algebra over F with a G-action by Hopf
// automorphisms. delta lands in S ⊗ S with basis e_i ⊗ e_j at i * dim + j.
struct HopfData {
  GRing S;
  Matrix delta, counit, antipode;  // S -> S⊗S, S -> F (1 x dim), S -> S
  std::string label;
};

std::vector<AxiomFailure> check_hopf(const HopfData& H);
// Equivariant algebra map f : A -> B commuting with Δ and ε.
bool is_hopf_map(const HopfData& A, const HopfData& B, const Matrix& f);

// Map(Γ, F) with g·δ_γ = δ_{α_g(γ)}; alpha[g] must be an automorphism of Γ
// for every g in G. An empty alpha means the trivial action.
HopfData constant_scheme(const GroupPtr& gamma, const GroupPtr& G, const FieldPtr& F,
                         std::vector<std::vector<int>> alpha = {}, std::string label = "");
// F[x]/(x^n - 1), Δx = x ⊗ x, with g acting by x -> x^{power[g]}; empty means trivial.
HopfData mu_scheme(int n, const GroupPtr& G, const FieldPtr& F, std::vector<int> power = {},
                   std::string label = "");
HopfData trivial_scheme(const GroupPtr& G, const FieldPtr& F);

// Cogroup object over the constant base: R = FP(S) and Δ : R -> R ⊠ R,
// where R ⊠ R is realised (and validated) as FP(S ⊗ S).
struct CogroupData {
  ExtensionPtr ext;
  AlgebraBox box;
  TambaraPtr triple;  // FP(S ⊗ S ⊗ S)
  ModuleMap delta, counit, antipode, mult;
  std::string route;  // invertible-order or classification
  EtaleVerdict verdict;
  std::vector<int> classes;  // classification route: conjugacy classes of the factors
};

std::vector<AxiomFailure> check_cogroup(const CogroupData& C);
// Throws UnsupportedRoute unless |G| is invertible in F or S is split with
// permuted idempotents.
CogroupData fp_cogroup(const HopfData& H, const EtaleConfig& cfg = {});
// Bottom level with the Weyl action; throws AxiomFailureDownstairs if the
// Hopf axioms fail there.
HopfData ev_cogroup(const CogroupData& C);

struct RoundTrip {
  std::string instance, route;
  bool ev_fp_identity = false;  // ev(FP(H)) has exactly the structure constants of H
  bool counit_iso = false;      // ev(FP H) -> H
  bool unit_iso = false;        // R -> FP(ev R)
  bool etale_preserved = false;
  bool passed = false;
  std::string detail;
};
RoundTrip roundtrip(const HopfData& H, const EtaleConfig& cfg = {});

struct HomCount {
  std::string source, target;
  std::uint64_t upstairs = 0, downstairs = 0;
  std::uint64_t space = 0;  // candidates enumerated upstairs
  bool skipped = false;
  std::string note;
};
// Hopf maps A -> B downstairs (via characters of A; B must be split) against
// cogroup maps FP(A) -> FP(B) upstairs (affine search over module maps).
HomCount count_homs(const HopfData& A, const HopfData& B, std::uint64_t cap = 1000000);

// Corpus of group schemes with G-action for the descent checks.
std::vector<HopfData> descent_corpus(const GroupPtr& G, const FieldPtr& F);

}  // namespace tambara
