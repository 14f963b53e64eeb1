#include "doctest.h"
#include "tambara/suites.hpp"

using namespace tambara;

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 7);
  CHECK_THROWS_WITH_AS(run_suite("nope"), doctest::Contains("UnknownSuite"), Error);
}

TEST_CASE("small suites are deterministic and pass") {
  SuiteOptions o;
  o.samples = 6;
  auto a = run_suite("flat-free", o);
  auto b = run_suite("flat-free", o);
  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].instance == b.items[i].instance);
    CHECK(a.items[i].detail == b.items[i].detail);
  }
  CHECK(a.ok());
  CHECK(a.items.size() == 3 * (8 + 6));
  auto g = run_suite("galois", o);
  CHECK(g.ok());
  CHECK(g.items.size() == 4);
  CHECK(d_formula_suite(o).ok());
}

TEST_CASE("classification suite rejects the non-examples") {
  auto r = run_suite("classification");
  CHECK(r.ok());
  int rejected = 0;
  for (const auto& i : r.items)
    if (i.detail.find("BottomNotEtale") != std::string::npos || i.detail.find("LevelMismatch") != std::string::npos)
      ++rejected;
  CHECK(rejected == 5);
}
