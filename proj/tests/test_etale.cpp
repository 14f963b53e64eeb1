#include "doctest.h"
#include "tambara/etale.hpp"

using namespace tambara;

namespace {

TambaraPtr ground(GroupPtr G, FieldPtr F) { return constant(G, G->whole(), FinAlgebra::ground(F), F->name()); }

MackeyModule constant_module(GroupPtr G, FieldPtr F) { return ground(G, F)->M; }
MackeyModule coind_module(GroupPtr G, FieldPtr F) { return coinduction_unit(ground(G, F), 0)->M; }

ExtensionPtr dual_numbers(GroupPtr G, FieldPtr F) {
  auto A = FinAlgebra::polynomial_quotient(F, {0, 0, 1});
  return over_constant(ground(G, F), fixed_point(GRing::trivial(G, G->whole(), A), "FP(F[x]/x²)"));
}

ExtensionPtr galois(FieldPtr K, std::size_t n, GroupPtr G) {
  return over_constant(ground(G, K), fixed_point(galois_extension(K, n, G)));
}

std::vector<MackeyModule> corpus(GroupPtr G, FieldPtr F) {
  auto f = constant_module(G, F), c = coind_module(G, F), d = special_module_D(G, F);
  return {f, c, d, direct_sum({f, d}), direct_sum({c, d}), direct_sum({c, f, f}), direct_sum({d, d, c})};
}

}  // namespace

TEST_CASE("Jordan partitions") {
  auto C2 = FiniteGroup::cyclic(2), C3 = FiniteGroup::cyclic(3);
  auto F2 = Field::make(2), F3 = Field::make(3);
  CHECK(jordan_partition(constant_module(C2, F2)) == std::vector<std::size_t>{1});
  CHECK(jordan_partition(coind_module(C2, F2)) == std::vector<std::size_t>{2});
  CHECK(jordan_partition(special_module_D(C2, F2)) == std::vector<std::size_t>{1});
  CHECK(jordan_partition(direct_sum({coind_module(C3, F3), special_module_D(C3, F3)})) ==
        std::vector<std::size_t>{3, 1});
  CHECK_THROWS_WITH_AS(jordan_partition(constant_module(C2, F3)), doctest::Contains("WrongCharacteristic"),
                       Error);
  CHECK_THROWS_WITH_AS(jordan_partition(constant_module(FiniteGroup::cyclic(4), F2)),
                       doctest::Contains("WrongGroup"), Error);
}

TEST_CASE("decomposition of fixtures") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2);
  auto f = constant_module(C2, F2), c = coind_module(C2, F2), d = special_module_D(C2, F2);

  auto r = decompose_module(direct_sum({c, f}));
  CHECK(r.verified);
  CHECK(r.coind == 1);
  CHECK(r.constant == 1);
  CHECK(r.remainder.is_zero());

  r = decompose_module(d);
  CHECK(r.verified);
  CHECK(r.summands.empty());
  CHECK(r.remainder.dims == d.dims);

  r = decompose_module(direct_sum({f, f, f}));
  CHECK(r.constant == 3);
  CHECK(r.remainder.is_zero());

  r = decompose_module(direct_sum({d, c, d, f}));
  CHECK(r.verified);
  CHECK(r.coind == 1);
  CHECK(r.constant == 1);
  CHECK(r.remainder.dim(0) == 2);
  CHECK(r.remainder.dim(1) == 0);
}

TEST_CASE("flat, projective and free on fixtures") {
  for (int p : {2, 3, 5}) {
    auto G = FiniteGroup::cyclic(p);
    auto F = Field::make(p);
    auto s = flat_status(constant_module(G, F));
    CHECK(s.free);
    CHECK(s.agree);
    s = flat_status(coind_module(G, F));
    CHECK(s.free);
    CHECK(s.agree);
    s = flat_status(special_module_D(G, F));
    CHECK_FALSE(s.flat);
    CHECK(s.agree);
    CHECK(s.witness.find("D-test") != std::string::npos);
    CHECK_FALSE(d_test(special_module_D(G, F)));
    CHECK(d_test(constant_module(G, F)));
    for (const auto& M : corpus(G, F)) {
      auto st = flat_status(M);
      CHECK(st.agree);
      CHECK(st.decomposition.verified);
    }
  }
  // a restriction witness: F at the top, zero bottom
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2);
  auto top_only = cp_module(C2, F2, 1, 0, Matrix(F2, 0, 0), Matrix(F2, 0, 1), Matrix(F2, 1, 0));
  auto s = flat_status(top_only);
  CHECK_FALSE(s.free);
  CHECK(s.agree);
  CHECK(s.witness.find("restriction") != std::string::npos);
}

TEST_CASE("D ⊠ M top level against the quotient formula") {
  for (int p : {2, 3, 5}) {
    auto G = FiniteGroup::cyclic(p);
    auto F = Field::make(p);
    auto D = special_module_D(G, F);
    std::mt19937_64 rng(17 + p);
    auto ms = corpus(G, F);
    for (int i = 0; i < 20; ++i) ms.push_back(random_cp_module(G, F, rng));
    for (const auto& M : ms) CHECK(mazur_box(D, M).dim(1) == d_formula_dim(M));
  }
}

TEST_CASE("random modules: the three statuses agree") {
  for (int p : {2, 3, 5}) {
    auto G = FiniteGroup::cyclic(p);
    auto F = Field::make(p);
    std::mt19937_64 rng(1000 + p);
    int flat = 0, nonflat = 0;
    for (int i = 0; i < 40; ++i) {
      auto M = random_cp_module(G, F, rng);
      CHECK(check_mackey_axioms(M).empty());
      std::size_t sum = 0;
      for (auto a : jordan_partition(M)) sum += a;
      CHECK(sum == M.dim(0));
      auto s = flat_status(M);
      CHECK(s.agree);
      CHECK(s.decomposition.verified);
      if (s.flat) {
        CHECK(restrictions_injective(M));
        ++flat;
      } else {
        CHECK_FALSE(s.witness.empty());
        ++nonflat;
      }
    }
    CHECK(flat > 0);
    CHECK(nonflat > 0);
  }
}

TEST_CASE("random modules are reproducible") {
  auto G = FiniteGroup::cyclic(3);
  auto F = Field::make(3);
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 5; ++i) {
    auto x = random_cp_module(G, F, a), y = random_cp_module(G, F, b);
    CHECK(x.dims == y.dims);
    CHECK(x.tr(1, 0) == y.tr(1, 0));
  }
}

TEST_CASE("etale checker on basic extensions") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2);
  auto k = ground(C2, F2);
  auto v = check_etale(identity_extension(k));
  CHECK(v.verdict == "etale");
  for (int H : {0, 1}) {
    v = check_etale(coinduction_unit_extension(k, H));
    CHECK(v.verdict == "etale");
    CHECK(v.omega_zero);
    CHECK(v.flat_route == "coinduction-unit");
  }
  v = check_etale(dual_numbers(C2, F2));
  CHECK(v.verdict == "not_etale");
  CHECK(v.flat);
  CHECK(v.omega_dims[0] == 2);
  CHECK(v.witness.find("Ω(G/e)") != std::string::npos);

  // Generic extensions report finite presentation only under the flag.
  auto gal = galois(F2, 2, C2);
  v = check_etale(gal);
  CHECK(v.verdict == "formally_etale_and_finite");
  CHECK(v.flat_route == "cp-structure");
  EtaleConfig hbt;
  hbt.assume_hbt = true;
  v = check_etale(gal, hbt);
  CHECK(v.verdict == "etale");
}

TEST_CASE("flatness withheld outside the supported routes") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2);
  auto gal = galois(F2, 2, C2);
  // A generic extension over a base that is not a constant field.
  auto dual = FinAlgebra::polynomial_quotient(F2, {0, 0, 1});
  const GRing& L = gal->R->fp->S;
  RelativeTensor rt;
  GRing S = relative_tensor_gring(L, GRing::trivial(C2, 1, FinAlgebra::ground(F2)), unit_map(L.A),
                                  GRing::trivial(C2, 1, dual), unit_map(dual), &rt);
  auto E = make_extension(gal->R, fixed_point(S), rt.left);
  auto v = check_etale(E);
  CHECK(v.verdict == "withheld");
  CHECK(v.error == "FlatnessUndecidable");
  CHECK_FALSE(v.omega_zero);
}

TEST_CASE("bottom-level detection") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2), F3 = Field::make(3);
  auto d = detect_bottom_level(*galois(F3, 2, C2));
  CHECK(d.hypothesis == "cohomological, |G| invertible");
  CHECK(d.bottom_etale);
  d = detect_bottom_level(*galois(F2, 2, C2));
  CHECK(d.hypothesis == "transfers surjective");
  CHECK(d.bottom_etale);
  auto dual = dual_numbers(C2, F2);
  d = detect_bottom_level(*dual, false);
  CHECK_FALSE(d.applicable);
  CHECK_FALSE(d.bottom_etale);
  CHECK_THROWS_WITH_AS(detect_bottom_level(*dual), doctest::Contains("HypothesesNotMet"), Error);
}

TEST_CASE("Galois extensions") {
  EtaleConfig hbt;
  hbt.assume_hbt = true;
  struct Case {
    int p;
    std::size_t n;
  };
  for (auto c : {Case{2, 2}, Case{3, 2}, Case{2, 3}, Case{5, 2}}) {
    auto g = galois_fp_check(Field::make(c.p), c.n, FiniteGroup::cyclic(static_cast<int>(c.n)), hbt);
    CHECK(g.module_iso);
    CHECK(g.transfers_surjective);
    CHECK(g.passed);
    CHECK(g.verdict.verdict == "etale");
  }
  auto triv = galois_fp_check(Field::make(2), 1, FiniteGroup::trivial(), hbt);
  CHECK(triv.passed);
  CHECK(triv.verdict.verdict == "etale");
}

TEST_CASE("classification of finite étale algebras") {
  auto C4 = FiniteGroup::cyclic(4);
  auto F2 = Field::make(2);
  auto k = ground(C4, F2);
  int c2 = 1;  // subgroups of C4: e, C2, C4
  REQUIRE(C4->subgroup_order(c2) == 2);
  auto l = product({coinduction_unit(k, c2), k});
  auto cl = classify_finite_etale(l);
  CHECK(cl.etale);
  CHECK(cl.classes == std::vector<int>{C4->conj_class(c2), C4->conj_class(C4->whole())});
  cl = classify_finite_etale(k);
  CHECK(cl.etale);
  CHECK(cl.subgroups == std::vector<int>{C4->whole()});

  auto C2 = FiniteGroup::cyclic(2);
  cl = classify_finite_etale(fattened_fixture(C2));
  CHECK_FALSE(cl.etale);
  CHECK(cl.witness_level == C2->whole());
  CHECK(cl.witness.find("LevelMismatch") != std::string::npos);
  cl = classify_finite_etale(dual_numbers(C2, F2)->R);
  CHECK_FALSE(cl.etale);
  CHECK(cl.witness.find("BottomNotEtale") != std::string::npos);
  CHECK_THROWS_WITH_AS(classify_finite_etale(galois(F2, 2, C2)->R), doctest::Contains("BottomNotSplit"), Error);
}

TEST_CASE("classification round trip on S3") {
  auto S3 = FiniteGroup::symmetric(3);
  auto F3 = Field::make(3);
  auto k = ground(S3, F3);
  auto reps = S3->class_reps_in(S3->whole());
  for (int a : reps)
    for (int b : reps) {
      auto cl = classify_finite_etale(product({coinduction_unit(k, a), coinduction_unit(k, b)}));
      std::vector<int> want{S3->conj_class(a), S3->conj_class(b)};
      std::sort(want.begin(), want.end());
      CHECK(cl.etale);
      CHECK(cl.classes == want);
    }
}

TEST_CASE("closure properties") {
  EtaleConfig hbt;
  hbt.assume_hbt = true;
  auto entries = closure_properties_suite(hbt);
  CHECK(entries.size() >= 12);
  for (const auto& e : entries) {
    INFO(e.property << " " << e.instance << ": " << e.detail);
    CHECK(e.passed);
  }
}
