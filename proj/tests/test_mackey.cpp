#include "doctest.h"
#include "tambara/tambara.hpp"

using namespace tambara;

namespace {

FieldPtr F2() { return Field::make(2); }

bool passes(const Tambara& t) {
  auto f = check_tambara_axioms(t);
  for (const auto& x : f) MESSAGE(t.label << ": " << x.axiom << " " << x.detail);
  return f.empty();
}

}  // namespace

TEST_CASE("constant functors") {
  auto C2 = FiniteGroup::cyclic(2);
  auto k = constant(C2, 1, FinAlgebra::ground(F2()));
  CHECK(passes(*k));
  CHECK(k->M.tr(1, 0).is_zero());
  CHECK(check_cohomological(k->M));
  auto C3 = FiniteGroup::cyclic(3);
  auto k3 = constant(C3, 1, FinAlgebra::polynomial_quotient(Field::make(3), {0, 0, 1}));
  CHECK(passes(*k3));
  // nm(1 + x) = (1 + x)^3 = 1 in F_3[x]/x²
  CHECK(k3->norm(1, 0, {1, 1}) == Vec{1, 0});
  CHECK(k3->norm(1, 0, {2, 0}) == Vec{2, 0});
  auto triv = constant(FiniteGroup::trivial(), 0, FinAlgebra::ground(F2()));
  CHECK(triv->dim(0) == 1);
}

TEST_CASE("FP(F4) over C2") {
  auto C2 = FiniteGroup::cyclic(2);
  auto L = galois_extension(F2(), 2, C2);
  auto R = fixed_point(L);
  CHECK(passes(*R));
  CHECK(R->dim(1) == 1);
  CHECK(R->dim(0) == 2);
  CHECK(R->M.tr(1, 0).apply({0, 1}) == Vec{1});
  CHECK(R->norm(1, 0, {0, 1}) == Vec{1});
  CHECK(transfers_surjective(R->M));
}

TEST_CASE("corrupted transfer fails Frobenius reciprocity") {
  auto C2 = FiniteGroup::cyclic(2);
  auto f4 = FinAlgebra::polynomial_quotient(F2(), {1, 1, 1});
  auto k = constant(C2, 1, f4);
  Tambara bad = *k;
  // tr(x) = x² is F_2-linear but not F_4-linear
  bad.M.tr(1, 0) = f4.frobenius();
  auto fails = check_tambara_axioms(bad);
  REQUIRE_FALSE(fails.empty());
  CHECK(fails.front().axiom == "frobenius-reciprocity");
}

TEST_CASE("coinduction from the trivial subgroup of C2") {
  auto C2 = FiniteGroup::cyclic(2);
  auto k = constant(C2, 1, FinAlgebra::ground(F2()));
  auto c = coinduction_unit(k, 0);
  CHECK(passes(*c));
  CHECK(c->dim(0) == 2);
  CHECK(c->dim(1) == 1);
  CHECK(check_cohomological(c->M));
  CHECK(transfers_surjective(c->M));
  // bottom = F_2 × F_2 with swap, tr(a,b) = a+b, nm(a,b) = ab on the diagonal
  CHECK(c->M.conj(1, 0) == Matrix::from_rows(F2(), 2, {{0, 1}, {1, 0}}));
  CHECK(c->M.tr(1, 0).apply({1, 0}) == Vec{1});
  CHECK(c->norm(1, 0, {1, 0}) == Vec{0});
  CHECK(c->norm(1, 0, {1, 1}) == Vec{1});
}

TEST_CASE("coinductions over the corpus satisfy all axioms") {
  for (auto G : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                 FiniteGroup::symmetric(3)}) {
    for (auto F : {F2(), Field::make(3)}) {
      auto k = constant(G, G->whole(), FinAlgebra::ground(F));
      for (int H : G->class_reps_in(G->whole())) {
        auto c = coinduction_unit(k, H);
        CHECK(passes(*c));
        // level dimension at G/K is |H\G/K|... for the trivial ring: number of double cosets
        for (int K : c->M.subgroups())
          CHECK(c->dim(K) == G->double_cosets(H, K).size());
      }
    }
  }
}

TEST_CASE("S3 coinduction from a transposition subgroup") {
  auto S3 = FiniteGroup::symmetric(3);
  int t = S3->find_subgroup(0b11);
  auto k = constant(S3, S3->whole(), FinAlgebra::ground(F2()));
  auto c = coinduction_unit(k, t);
  CHECK(coind_level(restrict_tambara(k, t)->M, S3->whole(), t).reps.size() == 2);
  CHECK(c->dim(t) == 2);
}

TEST_CASE("transitivity of coinduction") {
  auto C4 = FiniteGroup::cyclic(4);
  auto k = constant(C4, C4->whole(), FinAlgebra::ground(F2()));
  int c2 = 1;  // subgroup of order 2
  REQUIRE(C4->subgroup_order(c2) == 2);
  auto inner = coinduce(restrict_tambara(k, 0), c2);
  auto twice = coinduce(inner, C4->whole());
  auto once = coinduction_unit(k, 0);
  for (int K : once->M.subgroups()) CHECK(once->dim(K) == twice->dim(K));
  CHECK(passes(*twice));
}

TEST_CASE("restriction of a coinduction") {
  auto S3 = FiniteGroup::symmetric(3);
  int t = S3->find_subgroup(0b11);
  auto k = constant(S3, S3->whole(), FinAlgebra::ground(F2()));
  auto c = coinduction_unit(k, t);
  auto r = restrict_tambara(c, t);
  // Res_H CoInd_H k ≅ ∏_{H\G/H} CoInd^H_{H∩gHg⁻¹} k
  std::vector<TambaraPtr> fs;
  auto kH = restrict_tambara(k, t);
  for (const auto& dc : S3->double_cosets(t, t)) fs.push_back(coinduce(restrict_tambara(kH, dc.intersection), t));
  auto p = product(fs);
  for (int K : r->M.subgroups()) CHECK(r->dim(K) == p->dim(K));
  CHECK(passes(*r));
}

TEST_CASE("products") {
  auto C2 = FiniteGroup::cyclic(2);
  auto k = constant(C2, 1, FinAlgebra::ground(F2()));
  auto kk = product({k, k});
  CHECK(kk->dim(0) == 2);
  CHECK(kk->dim(1) == 2);
  CHECK(passes(*kk));
  auto L = fixed_point(galois_extension(F2(), 2, C2));
  auto pl = product({L, k});
  CHECK(passes(*pl));
}

TEST_CASE("special module D and the fattened fixture") {
  auto C2 = FiniteGroup::cyclic(2);
  auto D = special_module_D(C2, F2());
  CHECK(D.dim(1) == 0);
  CHECK(D.dim(0) == 1);
  CHECK(check_mackey_axioms(D).empty());
  CHECK(check_cohomological(D));
  auto fat = fattened_fixture(C2);
  CHECK(passes(*fat));
}
