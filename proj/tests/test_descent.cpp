#include "doctest.h"
#include "tambara/descent.hpp"

using namespace tambara;

TEST_CASE("Hopf data of the corpus") {
  for (int p : {2, 3, 5})
    for (int n : {2, 3}) {
      auto G = FiniteGroup::cyclic(n);
      for (const auto& h : descent_corpus(G, Field::make(p))) {
        INFO(h.label);
        CHECK(check_hopf(h).empty());
      }
    }
  // translation is not an action by group automorphisms
  auto C2 = FiniteGroup::cyclic(2);
  CHECK_THROWS_WITH_AS(constant_scheme(C2, C2, Field::make(2), {{0, 1}, {1, 0}}),
                       doctest::Contains("NotAnAutomorphism"), Error);
  // μ_3 over F_2 is F_2 × F_4: étale but not split
  auto mu3 = mu_scheme(3, C2, Field::make(2), {1, 2});
  CHECK(check_hopf(mu3).empty());
  CHECK(is_etale_classical(mu3.S.A).etale);
  CHECK_FALSE(primitive_idempotents(mu3.S.A).has_value());
  CHECK_THROWS_WITH_AS(fp_cogroup(mu3), doctest::Contains("UnsupportedRoute"), Error);
}

TEST_CASE("ev of the trivial and constant schemes") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F3 = Field::make(3);
  auto C = fp_cogroup(trivial_scheme(C2, F3));
  CHECK(check_cogroup(C).empty());
  auto h = ev_cogroup(C);
  CHECK(h.S.dim() == 1);
  auto z2 = constant_scheme(FiniteGroup::cyclic(2), C2, F3);
  auto e = ev_cogroup(fp_cogroup(z2));
  CHECK(e.S.A == z2.S.A);
  CHECK(e.delta == z2.delta);
  CHECK(e.antipode == z2.antipode);
}

TEST_CASE("descent round trips") {
  EtaleConfig hbt;
  hbt.assume_hbt = true;
  struct Case {
    int n, p;
    const char* route;
  };
  for (auto c : {Case{2, 3, "invertible-order"}, Case{2, 5, "invertible-order"}, Case{2, 2, "classification"},
                 Case{3, 2, "invertible-order"}, Case{3, 3, "classification"}}) {
    auto G = FiniteGroup::cyclic(c.n);
    for (const auto& h : descent_corpus(G, Field::make(c.p))) {
      auto r = roundtrip(h, hbt);
      INFO(h.label << " over C" << c.n << ": " << r.detail);
      CHECK(r.passed);
      CHECK(r.route == c.route);
    }
  }
}

TEST_CASE("modular round trip recovers coinduced factors") {
  auto C2 = FiniteGroup::cyclic(2);
  auto F2 = Field::make(2);
  auto corpus = descent_corpus(C2, F2);
  // Map(V4) with the swap: points 0 and a+b fixed, {a, b} a free orbit
  const auto& v4 = corpus.back();
  auto C = fp_cogroup(v4);
  CHECK(C.route == "classification");
  std::vector<int> want{C2->conj_class(0), C2->conj_class(1), C2->conj_class(1)};
  std::sort(want.begin(), want.end());
  CHECK(C.classes == want);
}

TEST_CASE("Hom counts upstairs and downstairs") {
  auto C2 = FiniteGroup::cyclic(2);
  for (int p : {2, 3}) {
    auto corpus = descent_corpus(C2, Field::make(p));
    for (const auto& a : corpus)
      for (const auto& b : corpus) {
        auto hc = count_homs(a, b);
        INFO(a.label << " -> " << b.label << " " << hc.note);
        CHECK_FALSE(hc.skipped);
        CHECK(hc.upstairs == hc.downstairs);
        CHECK(hc.downstairs >= 1);
      }
  }
}

TEST_CASE("Hom counts against equivariant group homomorphisms") {
  // Hopf maps Map(Γ) -> Map(Γ') are homomorphisms Γ' -> Γ; count those directly.
  auto C2 = FiniteGroup::cyclic(2);
  auto F3 = Field::make(3);
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  struct Obj {
    GroupPtr g;
    std::vector<int> swap;  // action of the nontrivial element
  };
  std::vector<Obj> objs{{FiniteGroup::cyclic(2), {0, 1}},
                        {FiniteGroup::cyclic(3), {0, 2, 1}},
                        {FiniteGroup::from_table(t, "V4"), {0, 2, 1, 3}}};
  auto hopf = [&](const Obj& o) {
    std::vector<int> id(o.g->order());
    for (int i = 0; i < o.g->order(); ++i) id[i] = i;
    return constant_scheme(o.g, C2, F3, {id, o.swap});
  };
  for (const auto& a : objs)
    for (const auto& b : objs) {
      const int na = a.g->order(), nb = b.g->order();
      std::uint64_t want = 0, total = 1;
      for (int i = 0; i < nb; ++i) total *= na;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> f(nb);
        std::uint64_t c = code;
        for (int i = 0; i < nb; ++i, c /= na) f[i] = static_cast<int>(c % na);
        bool ok = true;
        for (int x = 0; x < nb && ok; ++x) {
          ok = f[b.swap[x]] == a.swap[f[x]];
          for (int y = 0; y < nb && ok; ++y) ok = f[b.g->mul(x, y)] == a.g->mul(f[x], f[y]);
        }
        if (ok) ++want;
      }
      auto hc = count_homs(hopf(a), hopf(b));
      CHECK(hc.downstairs == want);
      CHECK(hc.upstairs == want);
    }
}
