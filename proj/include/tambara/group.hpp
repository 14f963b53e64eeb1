#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace tambara {

using Mask = std::uint64_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct DoubleCoset {
  int rep;           // minimal element id in the double coset
  Mask elements;
  int intersection;  // subgroup id of J ∩ rep·L·rep⁻¹ for the decomposition J\A/L
};

// Finite group of order <= 64 given by its multiplication table, identity 0.
// The subgroup lattice is computed on first use. Subgroups are numbered by
// (order, sorted element list), so the trivial subgroup is 0 and the whole
// group is the last id.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultCap = 64;

  static GroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name = "",
                             std::size_t cap = kDefaultCap);
  // Permutations are image lists on {0..degree-1}; (gh)(i) = g(h(i)).
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                    std::string name = "", std::size_t cap = kDefaultCap);
  static GroupPtr cyclic(int n);
  static GroupPtr symmetric(int n);
  static GroupPtr trivial() { return cyclic(1); }

  int order() const noexcept { return n_; }
  int mul(int a, int b) const noexcept { return table_[a * n_ + b]; }
  int inv(int a) const noexcept { return inv_[a]; }
  int conj_elem(int g, int x) const noexcept { return mul(mul(g, x), inv(g)); }
  int elem_order(int a) const;
  int power(int a, int e) const;
  const std::string& name() const noexcept { return name_; }
  // Permutation images when built from generators; empty otherwise.
  const std::vector<std::vector<int>>& permutations() const noexcept { return perms_; }
  bool is_cyclic() const;
  // Minimal-id element of order |G|, or -1.
  int cyclic_generator() const;
  bool same_table(const FiniteGroup& o) const { return table_ == o.table_; }
  const std::vector<int>& table() const noexcept { return table_; }

  // Lattice.
  int num_subgroups() const;
  Mask subgroup(int id) const;
  int find_subgroup(Mask m) const;  // -1 if m is not a subgroup
  int whole() const { return num_subgroups() - 1; }
  int subgroup_order(int id) const;
  std::vector<int> elements(Mask m) const;
  std::vector<int> subgroup_elements(int id) const { return elements(subgroup(id)); }
  bool contains(int K, int H) const { return (subgroup(H) & ~subgroup(K)) == 0; }
  bool contains_elem(int K, int g) const { return (subgroup(K) >> g) & 1U; }
  int index(int K, int H) const { return subgroup_order(K) / subgroup_order(H); }
  int conjugate(int g, int H) const;  // id of g H g⁻¹
  int intersect(int A, int B) const;
  int conj_class(int H) const;
  int num_classes() const;
  int class_rep(int c) const;
  const std::vector<int>& class_members(int c) const;
  // Subgroup ids contained in `dom`, in id order.
  std::vector<int> subgroups_in(int dom) const;
  // Class representatives (within the whole group) of the conjugation action of
  // `dom` on its own subgroups: minimal ids.
  std::vector<int> class_reps_in(int dom) const;
  bool conjugate_in(int dom, int A, int B) const;  // A, B conjugate by an element of dom
  Mask normalizer(int H, int dom = -1) const;
  // J\A/L with J, L ⊆ A (A defaults to the whole group).
  std::vector<DoubleCoset> double_cosets(int J, int L, int A = -1) const;
  // Minimal representatives x of the left cosets xH in K.
  std::vector<int> left_coset_reps(int K, int H) const;
  // Minimal representatives x of the right cosets Hx in K.
  std::vector<int> right_coset_reps(int K, int H) const;
  GroupPtr weyl_group(int H) const;
  // The subgroup as a group on its elements in increasing ambient id order.
  GroupPtr subgroup_as_group(int H) const;
  std::string subgroup_label(int H) const;

 private:
  FiniteGroup() = default;
  void validate_and_finish(std::size_t cap);
  void build_lattice() const;
  Mask closure(Mask gens) const;

  int n_ = 0;
  std::string name_;
  std::vector<int> table_, inv_;
  std::vector<std::vector<int>> perms_;

  struct Lattice {
    std::vector<Mask> subs;
    std::vector<int> orders;
    std::vector<int> conj;  // conj[g * nsub + H]
    std::vector<int> cls;
    std::vector<std::vector<int>> classes;
  };
  mutable std::once_flag once_;
  mutable Lattice lat_;
};

}  // namespace tambara
