#include "doctest.h"
#include "tambara/linalg.hpp"

using namespace tambara;

TEST_CASE("prime field arithmetic") {
  auto f = Field::make(5);
  CHECK(f->add(3, 4) == 2);
  CHECK(f->mul(3, 4) == 2);
  CHECK(f->inv(2) == 3);
  CHECK(f->neg(0) == 0);
  CHECK(f->from_int(-1) == 4);
  CHECK_THROWS_AS(Field::make(6), Error);
}

TEST_CASE("F4 has modulus x^2+x+1 and omega^2 = omega+1") {
  auto f = Field::make(2, 2);
  CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  Elem w = 2;
  CHECK(f->mul(w, w) == f->add(w, 1));
  CHECK(f->mul(w, f->mul(w, w)) == 1);
}

// Oracle: field axioms on every element pair/triple of F_9 and F_8.
TEST_CASE("extension field axioms exhaustively") {
  for (auto [p, k] : {std::pair{3u, 2u}, std::pair{2u, 3u}}) {
    auto f = Field::make(p, k);
    const Elem q = f->order();
    for (Elem a = 0; a < q; ++a) {
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
      CHECK(f->add(a, f->neg(a)) == 0);
      for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c) {
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
          CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
        }
      CHECK(f->pow(a, q) == a);
    }
  }
}

TEST_CASE("rank, kernel, solve, inverse, determinant over F_3") {
  auto f = Field::make(3);
  Matrix m = Matrix::from_rows(f, 3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}});
  // rows 1 and 2 are dependent mod 3: (2,1) = 2*(1,2)
  CHECK(rank(m) == 2);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(vzero(m.apply(k[0])));
  CHECK(determinant(m) == 0);
  CHECK_FALSE(inverse(m).has_value());
  Matrix a = Matrix::from_rows(f, 2, {{1, 1}, {0, 2}});
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(*inv * a == Matrix::identity(f, 2));
  CHECK(determinant(a) == 2);
  auto x = solve(a, {2, 1});
  REQUIRE(x.has_value());
  CHECK(a.apply(*x) == Vec{2, 1});
  CHECK_FALSE(solve(m, {1, 0, 0}).has_value());
}

TEST_CASE("subspaces and quotients") {
  auto f = Field::make(2);
  Subspace s(f, 3);
  CHECK(s.add({1, 1, 0}));
  CHECK(s.add({0, 1, 1}));
  CHECK_FALSE(s.add({1, 0, 1}));
  CHECK(s.dim() == 2);
  CHECK(s.contains(Vec{1, 0, 1}));
  Quotient q(s);
  CHECK(q.dim() == 1);
  CHECK(q.project({1, 0, 1}) == Vec{0});
  Subspace t = Subspace::spanned_by(f, 3, {{1, 0, 0}, {0, 1, 1}});
  CHECK(s.intersect(t).dim() == 1);
  Matrix e = Matrix::from_columns(f, 3, {{1, 1, 0}, {0, 1, 1}});
  CHECK(left_inverse(e) * e == Matrix::identity(f, 2));
}
