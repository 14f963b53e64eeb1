#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tambara/group.hpp"
#include "tambara/linalg.hpp"

namespace tambara {

// Finite-dimensional commutative unital algebra over a finite field, given by
// structure constants e_i e_j = sum_k c_ijk e_k.
class FinAlgebra {
 public:
  static constexpr std::size_t kMaxDim = 4096;

  FinAlgebra() = default;
  // `products` has dim*dim entries, entry i*dim+j is e_i e_j.
  FinAlgebra(FieldPtr f, std::size_t dim, std::vector<Vec> products, Vec one);

  static FinAlgebra split(FieldPtr f, std::size_t n);
  static FinAlgebra ground(FieldPtr f) { return split(std::move(f), 1); }
  // F[x]/(m) with m monic, coefficients low to high (m.back() == 1).
  static FinAlgebra polynomial_quotient(FieldPtr f, const Vec& modulus);
  static FinAlgebra product(const std::vector<FinAlgebra>& factors);
  // Basis e_i ⊗ f_j at index i * b.dim() + j.
  static FinAlgebra tensor(const FinAlgebra& a, const FinAlgebra& b);

  const FieldPtr& field() const noexcept { return f_; }
  std::size_t dim() const noexcept { return n_; }
  const Vec& one() const noexcept { return one_; }
  Vec zero() const { return Vec(n_, 0); }
  const Vec& basis_product(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  const std::vector<Vec>& products() const noexcept { return table_; }

  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(Vec a, std::uint64_t e) const;
  // Matrix of x -> a x.
  Matrix mult_matrix(const Vec& a) const;
  Elem trace(const Vec& a) const;
  Matrix trace_form() const;
  bool is_unit(const Vec& a) const;

  // Throws NonCommutative / NonAssociative / NoIdentity.
  void validate() const;

  // Subalgebra spanned by the columns of `basis` (closed under products, contains 1).
  FinAlgebra subalgebra(const Matrix& basis) const;
  // Quotient by an ideal; q describes the projection.
  FinAlgebra quotient(const Quotient& q) const;
  // Ideal generated by the given elements.
  Subspace ideal_generated(const std::vector<Vec>& gens) const;
  bool is_ideal(const Subspace& s) const;
  // Frobenius x -> x^q as an F-linear map.
  Matrix frobenius() const;
  bool is_ring_map_to(const FinAlgebra& target, const Matrix& m) const;

  bool operator==(const FinAlgebra& o) const {
    return n_ == o.n_ && same_field(f_, o.f_) && table_ == o.table_ && one_ == o.one_;
  }

 private:
  FieldPtr f_;
  std::size_t n_ = 0;
  std::vector<Vec> table_;
  Vec one_;
};

// A ⊗_B C for ring maps u: B -> A, v: B -> C, as a quotient of A ⊗_F C.
struct RelativeTensor {
  FinAlgebra full;    // A ⊗_F C
  Quotient quotient;  // by the ideal (u(b) ⊗ 1 - 1 ⊗ v(b))
  FinAlgebra algebra;
  Matrix left, right;  // A -> A⊗_B C and C -> A⊗_B C
};
RelativeTensor relative_tensor(const FinAlgebra& a, const FinAlgebra& b, const Matrix& u,
                               const FinAlgebra& c, const Matrix& v);

struct ClassicalKahler {
  std::size_t dim = 0;  // over the ground field
  std::size_t ideal_dim = 0;
  std::size_t square_dim = 0;
  std::vector<Vec> generators;  // classes of da for a basis element a, lifted into I
  std::vector<std::size_t> nonzero_generators;  // basis indices a with da != 0
  // Matrices of the action of basis element e_i of A on Ω (coordinates in the quotient basis).
  std::vector<Matrix> action;
};
// Ω¹_{A/B} for the ring map u: B -> A (pass B = ground field, u = unit for the absolute case).
ClassicalKahler classical_kahler(const FinAlgebra& a, const FinAlgebra& b, const Matrix& u);
ClassicalKahler classical_kahler(const FinAlgebra& a);
// Independent route: Ω = (⊕ A·de_i) / (Leibniz relations, d1).
std::size_t kahler_dim_by_generators(const FinAlgebra& a);
Matrix unit_map(const FinAlgebra& a);  // F -> A

struct EtaleCertificate {
  bool etale = false;
  Elem trace_determinant = 0;
  std::size_t kahler_dim = 0;
  std::vector<std::size_t> witness;  // basis indices with nonzero Kähler class
};
EtaleCertificate is_etale_classical(const FinAlgebra& a);
bool is_field(const FinAlgebra& a);
// Orthogonal primitive idempotents of a split étale algebra (nullopt if A is
// not a product of copies of F).
std::optional<std::vector<Vec>> primitive_idempotents(const FinAlgebra& a);

// Finite commutative algebra with an action of the subgroup `domain` of G by
// algebra automorphisms. act[g] is defined for g in the domain.
struct GRing {
  GroupPtr G;
  int domain = 0;
  FinAlgebra A;
  std::vector<Matrix> act;

  const FieldPtr& field() const { return A.field(); }
  std::size_t dim() const { return A.dim(); }
  Vec apply(int g, const Vec& x) const { return act.at(g).apply(x); }
  void validate() const;
  // Basis of S^H as columns.
  Matrix fixed_basis(int H) const;
  // Sum / product over the translates g·x for g in K/H.
  Vec transfer(int K, int H, const Vec& x) const;
  Vec norm(int K, int H, const Vec& x) const;
  GRing restrict(int H) const;

  static GRing trivial(GroupPtr G, int domain, FinAlgebra A);
  // Map_H(D, S) for an H-ring S and D ⊇ H. Basis: blocks indexed by the right
  // coset representatives r_i of H\D, block i holds f(r_i).
  static GRing coinduced(const GRing& s, int target_domain);
  static GRing product(const std::vector<GRing>& rs);
};

// Diagonal action on A ⊗_B C.
GRing relative_tensor_gring(const GRing& a, const GRing& b, const Matrix& u, const GRing& c,
                            const Matrix& v, RelativeTensor* out = nullptr);
bool is_equivariant(const GRing& src, const GRing& dst, const Matrix& m);

// F_{q^n} = K[y]/(g) with g the first monic irreducible of degree n (base-q
// order of its lower coefficients), with the cyclic generator of G acting by
// Frobenius.
Vec first_irreducible(FieldPtr K, std::size_t n);
GRing galois_extension(FieldPtr K, std::size_t n, GroupPtr G);
// First element (in base-q counting order) whose orbit is a basis.
Vec normal_basis(const GRing& L);

std::string vec_string(const Vec& v);

}  // namespace tambara
