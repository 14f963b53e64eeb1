#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tambara/descent.hpp"

namespace tambara {

// Corpus suites shared by the CLI and the acceptance runner. Items are
// produced in a fixed order, so reports depend only on the options.
struct SuiteItem {
  std::string instance;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20240;
  bool assume_hbt = true;
  std::size_t samples = 200;      // random modules per prime (flat-free, d-formula)
  std::uint64_t hom_cap = 10000;  // descent Hom counts above this are dropped
};

struct SuiteReport {
  std::string name;
  SuiteOptions options;
  std::vector<SuiteItem> items;
  std::size_t skipped = 0;  // instances out of cap, not counted as items

  std::size_t passed() const;
  bool ok() const { return passed() == items.size(); }
  const SuiteItem* first_failure() const;
};

// flat-free, coind-etale, bottom-level, galois, classification, descent, closure.
const std::vector<std::string>& suite_names();
// Throws UnknownSuite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

// Further corpus checks used by the acceptance runner.
SuiteReport d_formula_suite(const SuiteOptions& opt = {});
SuiteReport universal_property_suite(const SuiteOptions& opt = {});
SuiteReport strategy_agreement_suite(const SuiteOptions& opt = {});

// The dual numbers F[x]/x² with trivial action, over the constant base.
ExtensionPtr dual_numbers_extension(const GroupPtr& G, const FieldPtr& F);
TambaraPtr constant_field(const GroupPtr& G, const FieldPtr& F);
// Fixtures for the C_p module corpus: F, CoInd, D and a few mixed sums.
std::vector<std::pair<std::string, MackeyModule>> cp_fixture_modules(const GroupPtr& G, const FieldPtr& F);

}  // namespace tambara
