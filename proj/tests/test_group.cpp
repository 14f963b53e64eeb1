#include <bit>
#include "doctest.h"
#include "tambara/group.hpp"
#include "tambara/field.hpp"

using namespace tambara;

TEST_CASE("trivial and small cyclic groups") {
  auto e = FiniteGroup::from_table({{0}});
  CHECK(e->order() == 1);
  CHECK(e->num_subgroups() == 1);
  auto c4 = FiniteGroup::cyclic(4);
  CHECK(c4->num_subgroups() == 3);
  CHECK(c4->num_classes() == 3);
  CHECK(FiniteGroup::cyclic(2)->num_subgroups() == 2);
}

TEST_CASE("permutation generators") {
  auto t = FiniteGroup::from_permutations(3, {{1, 0, 2}});
  CHECK(t->order() == 2);
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(s3->order() == 6);
  // element numbering is lexicographic on image lists
  CHECK(s3->permutations()[0] == std::vector<int>{0, 1, 2});
  CHECK(s3->permutations()[1] == std::vector<int>{0, 2, 1});
  CHECK(s3->permutations()[5] == std::vector<int>{2, 1, 0});
}

// Oracle: subgroups of S_3 by brute force over all subsets closed under multiplication.
TEST_CASE("S3 lattice against subset brute force") {
  auto s3 = FiniteGroup::symmetric(3);
  int count = 0;
  for (Mask m = 1; m < (Mask{1} << 6); ++m) {
    if (!(m & 1)) continue;
    bool closed = true;
    for (int a = 0; a < 6 && closed; ++a)
      for (int b = 0; b < 6 && closed; ++b)
        if ((m >> a & 1) && (m >> b & 1) && !(m >> s3->mul(a, b) & 1)) closed = false;
    if (closed) {
      ++count;
      CHECK(s3->find_subgroup(m) >= 0);
    }
  }
  CHECK(count == 6);
  CHECK(s3->num_subgroups() == 6);
  CHECK(s3->num_classes() == 4);
}

TEST_CASE("index multiplicativity and double coset sizes") {
  for (auto G : {FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::cyclic(6)}) {
    for (int H = 0; H < G->num_subgroups(); ++H)
      for (int K = 0; K < G->num_subgroups(); ++K)
        if (G->contains(K, H)) CHECK(G->index(G->whole(), H) == G->index(K, H) * G->index(G->whole(), K));
    for (int H = 0; H < G->num_subgroups(); ++H)
      for (int K = 0; K < G->num_subgroups(); ++K) {
        int total = 0;
        for (const auto& dc : G->double_cosets(H, K)) {
          int sz = std::popcount(dc.elements);
          total += sz;
          CHECK(sz == G->subgroup_order(H) * G->subgroup_order(K) / G->subgroup_order(dc.intersection));
        }
        CHECK(total == G->order());
      }
  }
}

TEST_CASE("double cosets in S3") {
  auto s3 = FiniteGroup::symmetric(3);
  int G = s3->whole();
  CHECK(s3->double_cosets(G, G).size() == 1);
  CHECK(s3->double_cosets(G, G)[0].rep == 0);
  CHECK(s3->double_cosets(0, 0).size() == 6);
  int t = s3->find_subgroup(0b11);  // {id, (1 2)} has ids 0 and 1
  REQUIRE(t >= 0);
  auto dcs = s3->double_cosets(t, t);
  REQUIRE(dcs.size() == 2);
  CHECK(dcs[0].intersection == t);
  CHECK(dcs[1].intersection == 0);
}

TEST_CASE("Weyl groups") {
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3->weyl_group(s3->whole())->order() == 1);
  auto w = s3->weyl_group(0);
  CHECK(w->order() == 6);
  CHECK(w->same_table(*s3));
  CHECK(s3->weyl_group(s3->find_subgroup(0b11))->order() == 1);
}

TEST_CASE("group validation errors") {
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), doctest::Contains("NoInverse"), Error);
  CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}), Error);
  // x*y defined so that associativity fails: a Latin square with identity that is not a group
  std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                     {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table(t), doctest::Contains("NonAssociative"), Error);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table(std::vector<std::vector<int>>(3, {0, 1, 2}), "", 2),
                       doctest::Contains("CapExceeded"), Error);
}
