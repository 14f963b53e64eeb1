#include "doctest.h"
#include "tambara/kahler.hpp"

using namespace tambara;

namespace {

struct Base {
  GroupPtr G;
  FieldPtr F;
  TambaraPtr k;
};

Base constant_base(GroupPtr G, int p) {
  auto F = Field::make(p);
  return {G, F, constant(G, G->whole(), FinAlgebra::ground(F), "F")};
}

ExtensionPtr dual_numbers(const Base& b) {
  auto A = FinAlgebra::polynomial_quotient(b.F, {0, 0, 1});
  return over_constant(b.k, fixed_point(GRing::trivial(b.G, b.G->whole(), A), "FP(F[x]/x²)"));
}

ExtensionPtr galois(const Base& b) { return over_constant(b.k, fixed_point(galois_extension(b.F, 2, b.G), "FP(F4)")); }

std::uint64_t qpow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= q;
  return r;
}

}  // namespace

TEST_CASE("kernel ideals") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  auto I = kernel_ideal(b.k, ModuleMap{{Matrix::identity(b.F, 1), Matrix::identity(b.F, 1)}});
  CHECK(I.dim(0) == 0);
  CHECK(I.dim(1) == 0);
  auto om = genuine_kahler(*coinduction_unit_extension(b.k, 0));
  CHECK(om.I.dim(0) == 2);
  CHECK(check_ideal(om.I).empty());
  CHECK(check_ideal(om.I2).empty());
}

TEST_CASE("I^{>1} of small ideals") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  TambaraIdeal zero{b.k, {Subspace(b.F, 1), Subspace(b.F, 1)}};
  auto z = ideal_power_gt1(zero);
  CHECK(z.ideal.dim(0) == 0);
  CHECK(z.ideal.dim(1) == 0);
  TambaraIdeal whole{b.k, {Subspace::whole(b.F, 1), Subspace::whole(b.F, 1)}};
  auto w = ideal_power_gt1(whole);
  CHECK(w.strategy == "enum");
  CHECK(w.ideal.dim(0) == 1);
  CHECK(w.ideal.dim(1) == 1);
  // the coinduction unit: I^{>1} = I
  auto om = genuine_kahler(*coinduction_unit_extension(b.k, 0));
  for (int H : {0, 1}) CHECK(om.I2.level[H] == om.I.level[H]);
  CHECK(om.is_zero());
}

TEST_CASE("span and enum strategies agree") {
  std::vector<ExtensionPtr> es;
  auto b2 = constant_base(FiniteGroup::cyclic(2), 2);
  auto b3 = constant_base(FiniteGroup::cyclic(3), 3);
  es.push_back(coinduction_unit_extension(b2.k, 0));
  es.push_back(galois(b2));
  es.push_back(dual_numbers(b2));
  es.push_back(coinduction_unit_extension(b3.k, 0));
  es.push_back(dual_numbers(b3));
  for (const auto& e : es) {
    auto s = genuine_kahler(*e, PowerStrategy::Span);
    auto n = genuine_kahler(*e, PowerStrategy::Enum);
    CAPTURE(e->label);
    for (int H : e->R->M.subgroups()) CHECK(s.I2.level[H] == n.I2.level[H]);
  }
}

TEST_CASE("coinduction units have vanishing differentials") {
  std::vector<Base> bases{constant_base(FiniteGroup::cyclic(2), 2), constant_base(FiniteGroup::cyclic(3), 3),
                          constant_base(FiniteGroup::cyclic(4), 2), constant_base(FiniteGroup::symmetric(3), 2),
                          constant_base(FiniteGroup::symmetric(3), 3), constant_base(FiniteGroup::cyclic(3), 2)};
  for (const auto& b : bases)
    for (int H = 0; H < b.G->num_subgroups(); ++H) {
      auto e = coinduction_unit_extension(b.k, H);
      auto om = genuine_kahler(*e);
      CAPTURE(e->label);
      CAPTURE(b.G->order());
      CHECK(om.is_zero());
      CHECK(bottom_level_kahler_check(*e, om).ok);
    }
}

TEST_CASE("Galois and dual-number differentials") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  auto om = genuine_kahler(*galois(b));
  CHECK(om.is_zero());
  CHECK(bottom_level_kahler_check(*galois(b), om).genuine_dim == 0);
  auto d = dual_numbers(b);
  auto od = genuine_kahler(*d);
  auto bc = bottom_level_kahler_check(*d, od);
  CHECK(bc.ok);
  CHECK(bc.genuine_dim == 2);
  CHECK(classical_kahler(FinAlgebra::polynomial_quotient(b.F, {0, 0, 1})).dim == 2);
  CHECK_FALSE(od.is_zero());
  auto id = genuine_kahler(*identity_extension(b.k));
  CHECK(id.is_zero());
}

TEST_CASE("derivations match homs out of the differentials") {
  std::vector<ExtensionPtr> es;
  auto b2 = constant_base(FiniteGroup::cyclic(2), 2);
  auto b3 = constant_base(FiniteGroup::cyclic(3), 3);
  es.push_back(identity_extension(b2.k));
  es.push_back(galois(b2));
  es.push_back(dual_numbers(b2));
  es.push_back(coinduction_unit_extension(b2.k, 0));
  es.push_back(dual_numbers(b3));
  for (const auto& e : es) {
    CAPTURE(e->label);
    auto om = genuine_kahler(*e);
    auto M = self_module(*e->R);
    auto ders = enumerate_derivations(*e, M);
    auto homs = enumerate_homs(om.omega, M);
    CHECK(ders.count == homs.count);
    CHECK(ders.count == qpow(e->k->field()->order(), derivation_dim(*e, M)));
    CHECK(homs.count == qpow(e->k->field()->order(), hom_dim(om.omega, M)));
    CHECK(is_derivation(*e, om.omega, universal_derivation(*e, om)));
    // and into Ω itself
    auto d2 = enumerate_derivations(*e, om.omega);
    auto h2 = enumerate_homs(om.omega, om.omega);
    CHECK(d2.count == h2.count);
  }
  CHECK(enumerate_derivations(*identity_extension(b2.k), self_module(*b2.k)).count == 1);
  CHECK(enumerate_derivations(*galois(b2), self_module(*galois(b2)->R)).count == 1);
}

TEST_CASE("search cap") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  auto d = dual_numbers(b);
  SearchCaps caps;
  caps.space = 10;
  CHECK_THROWS_WITH_AS(enumerate_derivations(*d, self_module(*d->R), caps), doctest::Contains("SearchCapExceeded"),
                       Error);
}

TEST_CASE("differentials of a product split") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  auto s1 = kahler_product_split(galois(b), dual_numbers(b));
  CHECK(s1.iso);
  CHECK(s1.parts[0].is_zero());
  CHECK(s1.parts[1].module().dim(0) == 2);
  auto s2 = kahler_product_split(dual_numbers(b), identity_extension(b.k));
  CHECK(s2.iso);
  CHECK(s2.parts[1].is_zero());
  auto s3 = kahler_product_split(coinduction_unit_extension(b.k, 0), coinduction_unit_extension(b.k, 0));
  CHECK(s3.iso);
  CHECK(s3.whole.is_zero());
}

TEST_CASE("differentials commute with flat base change") {
  auto b = constant_base(FiniteGroup::cyclic(2), 2);
  auto c = kahler_base_change(dual_numbers(b), 0);
  CHECK(c.iso);
  CHECK(c.lhs.module().dim(0) == 4);
  CHECK(c.rhs.module.dim(0) == 4);
  auto c2 = kahler_base_change(identity_extension(b.k), 0);
  CHECK(c2.iso);
  CHECK(c2.lhs.is_zero());
  auto c3 = kahler_base_change(coinduction_unit_extension(b.k, 0), 0);
  CHECK(c3.iso);
  CHECK(c3.lhs.is_zero());
  auto b3 = constant_base(FiniteGroup::symmetric(3), 3);
  auto c4 = kahler_base_change(dual_numbers(b3), 1);
  CHECK(c4.iso);
}
