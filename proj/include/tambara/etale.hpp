#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tambara/kahler.hpp"

namespace tambara {

// ---- modules over the constant functor for C_p in characteristic p ----

// Jordan block sizes of σ on M(C_p/e), largest first.
std::vector<std::size_t> jordan_partition(const MackeyModule& M);

struct DecompositionReport {
  std::vector<std::string> summands;  // "CoInd" or "F" in the order split off
  std::size_t coind = 0, constant = 0;
  MackeyModule remainder;
  ModuleMap comparison;  // (⊕ summands) ⊕ remainder -> M
  bool verified = false;
};
DecompositionReport decompose_module(const MackeyModule& M);

// (D ⊠ M)(C_p/C_p) -> M(C_p/C_p), class of x -> tr x, is injective.
bool d_test(const MackeyModule& M);
// dim M(e)_{C_p} / Res M(C_p/C_p), the closed formula for the top of D ⊠ M.
std::size_t d_formula_dim(const MackeyModule& M);
// The canonical cover ⊕ F ⊕ ⊕ CoInd -> M splits.
bool is_projective_cp(const MackeyModule& M);

// flat: restrictions injective and the D-test; free: the decomposition has no
// remainder; projective: the free cover splits. The theorem says they agree.
struct FlatStatus {
  bool flat = false, projective = false, free = false;
  bool agree = false;
  std::string witness;  // for non-free modules
  DecompositionReport decomposition;
};
FlatStatus flat_status(const MackeyModule& M);

// Seeded random F-module over C_p: σ a random conjugate of a random unipotent
// Jordan form, res into the fixed points, tr sampled uniformly from the
// solutions of the module axioms (rejected when there are none).
MackeyModule random_cp_module(GroupPtr G, FieldPtr F, std::mt19937_64& rng, std::size_t max_top = 3,
                              std::size_t max_bottom = 0);

// ---- étale extensions ----

struct EtaleConfig {
  bool assume_hbt = false;
  PowerStrategy strategy = PowerStrategy::Auto;
};

struct FlatCertificate {
  bool decided = false, flat = false;
  std::string route;   // identity, coinduction-unit, cp-structure, semisimple, free-presentation, product, ...
  std::string detail;  // witness when not flat
};
FlatCertificate certify_flat(const Extension& E);

struct BottomDetect {
  bool applicable = false;
  std::string hypothesis;  // "cohomological, |G| invertible" or "transfers surjective"
  bool bottom_etale = false;
};
// Throws HypothesesNotMet when strict and neither hypothesis holds (or
// flatness is not certified).
BottomDetect detect_bottom_level(const Extension& E, bool strict = true);

struct EtaleVerdict {
  bool finite = true, flat = false, fp_reported = false, omega_zero = false;
  std::string verdict;  // etale, formally_etale_and_finite, not_etale, withheld
  std::string error;    // FlatnessUndecidable when withheld
  std::string flat_route, omega_route, fp_basis;
  std::vector<std::size_t> dims, omega_dims;
  std::string witness;
  BottomDetect bottom;
  bool omega_flagged = false;
};
EtaleVerdict check_etale(const ExtensionPtr& E, const EtaleConfig& cfg = {});

struct GaloisCheck {
  ExtensionPtr extension;
  Vec normal_basis;
  bool module_iso = false, transfers_surjective = false;
  EtaleVerdict verdict;
  bool passed = false;  // formally étale with all certificates
};
GaloisCheck galois_fp_check(FieldPtr K, std::size_t n, GroupPtr G, const EtaleConfig& cfg = {});
// F_{q^n}/F_q as an H-object inside G (H cyclic of order n, acting by Frobenius).
GRing galois_on_subgroup(FieldPtr K, std::size_t n, GroupPtr G, int H);

struct Classification {
  bool etale = false;
  std::vector<int> subgroups;  // stabilizers of orbit representatives
  std::vector<int> classes;    // their conjugacy class indices, sorted
  std::string witness;         // BottomNotEtale or LevelMismatch
  int witness_level = -1;
};
// Throws BottomNotSplit when ℓ(G/e) is étale but not a product of copies of F.
Classification classify_finite_etale(const TambaraPtr& l);

struct ClosureEntry {
  std::string property, instance;
  bool passed = false;
  std::string detail;
};
std::vector<ClosureEntry> closure_properties_suite(const EtaleConfig& cfg);

}  // namespace tambara
