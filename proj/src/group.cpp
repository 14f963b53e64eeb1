#include "tambara/group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "tambara/field.hpp"

namespace tambara {

namespace {

Mask bit(int i) { return Mask{1} << i; }

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::string name,
                                 std::size_t cap) {
  const std::size_t n = table.size();
  if (n == 0) throw Error("NoIdentity", "empty multiplication table");
  if (n > cap || n > 64) throw Error("CapExceeded", "group of order " + std::to_string(n));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = static_cast<int>(n);
  g->name_ = std::move(name);
  g->table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw Error("ParseError", "multiplication table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error("ParseError", "table entry out of range");
      g->table_[i * n + j] = v;
    }
  }
  g->validate_and_finish(cap);
  return g;
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                        std::string name, std::size_t cap) {
  if (degree <= 0) throw Error("ParseError", "permutation degree must be positive");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) throw Error("ParseError", "permutation length");
    std::vector<int> s(p);
    std::sort(s.begin(), s.end());
    for (int i = 0; i < degree; ++i)
      if (s[i] != i) throw Error("ParseError", "generator is not a permutation");
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  auto compose = [degree](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = a[b[i]];
    return r;
  };
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        auto y = compose(s, x);
        if (seen.insert(y).second) {
          if (seen.size() > cap || seen.size() > 64)
            throw Error("CapExceeded", "generated group exceeds " + std::to_string(cap));
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> elems(seen.begin(), seen.end());
  std::map<std::vector<int>, int> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<int>(i);
  const std::size_t n = elems.size();
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = static_cast<int>(n);
  g->name_ = std::move(name);
  g->table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g->table_[i * n + j] = idx[compose(elems[i], elems[j])];
  g->perms_ = std::move(elems);
  g->validate_and_finish(cap);
  return g;
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n <= 0) throw Error("ParseError", "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return from_table(t, n == 1 ? "e" : "C" + std::to_string(n));
}

GroupPtr FiniteGroup::symmetric(int n) {
  if (n <= 0) throw Error("ParseError", "symmetric group degree must be positive");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens = {t, c};
  }
  return from_permutations(n, gens, "S" + std::to_string(n));
}

void FiniteGroup::validate_and_finish(std::size_t cap) {
  const int n = n_;
  if (static_cast<std::size_t>(n) > cap) throw Error("CapExceeded", "group order");
  for (int i = 0; i < n; ++i)
    if (mul(0, i) != i || mul(i, 0) != i)
      throw Error("NoIdentity", "element 0 is not a two-sided identity");
  inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (mul(i, j) == 0 && mul(j, i) == 0) {
        inv_[i] = j;
        break;
      }
    if (inv_[i] < 0) throw Error("NoInverse", "element " + std::to_string(i) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error("NonAssociative", "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                            std::to_string(c) + ")");
  if (name_.empty()) name_ = "G" + std::to_string(n);
}

int FiniteGroup::elem_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::power(int a, int e) const {
  e %= elem_order(a);
  if (e < 0) e += elem_order(a);
  int r = 0;
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool FiniteGroup::is_cyclic() const { return cyclic_generator() >= 0; }

int FiniteGroup::cyclic_generator() const {
  for (int a = 0; a < n_; ++a)
    if (elem_order(a) == n_) return a;
  return -1;
}

Mask FiniteGroup::closure(Mask gens) const {
  std::vector<int> els{0};
  Mask have = bit(0);
  auto gl = elements(gens);
  for (std::size_t i = 0; i < els.size(); ++i)
    for (int s : gl) {
      int y = mul(els[i], s);
      if (!(have & bit(y))) {
        have |= bit(y);
        els.push_back(y);
      }
    }
  return have;
}

std::vector<int> FiniteGroup::elements(Mask m) const {
  std::vector<int> r;
  while (m) {
    r.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return r;
}

void FiniteGroup::build_lattice() const {
  std::call_once(once_, [this] {
    std::set<Mask> subs{bit(0)};
    for (int g = 0; g < n_; ++g) subs.insert(closure(bit(g)));
    std::vector<Mask> cyc(subs.begin(), subs.end());
    // Every subgroup is a join of cyclic subgroups; close under joins.
    std::vector<Mask> todo(subs.begin(), subs.end());
    while (!todo.empty()) {
      std::vector<Mask> next;
      for (Mask a : todo)
        for (Mask c : cyc) {
          if ((c & ~a) == 0) continue;
          Mask j = closure(a | c);
          if (subs.insert(j).second) next.push_back(j);
        }
      todo = std::move(next);
    }
    std::vector<Mask> v(subs.begin(), subs.end());
    std::sort(v.begin(), v.end(), [this](Mask a, Mask b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      if (pa != pb) return pa < pb;
      return elements(a) < elements(b);
    });
    lat_.subs = v;
    const int ns = static_cast<int>(v.size());
    lat_.orders.resize(ns);
    std::map<Mask, int> id;
    for (int i = 0; i < ns; ++i) {
      lat_.orders[i] = std::popcount(v[i]);
      id[v[i]] = i;
    }
    lat_.conj.assign(static_cast<std::size_t>(n_) * ns, -1);
    for (int g = 0; g < n_; ++g)
      for (int h = 0; h < ns; ++h) {
        Mask m = 0;
        for (int x : elements(v[h])) m |= bit(conj_elem(g, x));
        lat_.conj[g * ns + h] = id.at(m);
      }
    lat_.cls.assign(ns, -1);
    for (int h = 0; h < ns; ++h) {
      if (lat_.cls[h] >= 0) continue;
      int c = static_cast<int>(lat_.classes.size());
      std::set<int> mem;
      for (int g = 0; g < n_; ++g) mem.insert(lat_.conj[g * ns + h]);
      for (int m : mem) lat_.cls[m] = c;
      lat_.classes.emplace_back(mem.begin(), mem.end());
    }
  });
}

int FiniteGroup::num_subgroups() const {
  build_lattice();
  return static_cast<int>(lat_.subs.size());
}

Mask FiniteGroup::subgroup(int id) const {
  build_lattice();
  return lat_.subs.at(id);
}

int FiniteGroup::find_subgroup(Mask m) const {
  build_lattice();
  auto it = std::find(lat_.subs.begin(), lat_.subs.end(), m);
  return it == lat_.subs.end() ? -1 : static_cast<int>(it - lat_.subs.begin());
}

int FiniteGroup::subgroup_order(int id) const {
  build_lattice();
  return lat_.orders.at(id);
}

int FiniteGroup::conjugate(int g, int H) const {
  build_lattice();
  return lat_.conj[g * num_subgroups() + H];
}

int FiniteGroup::intersect(int A, int B) const { return find_subgroup(subgroup(A) & subgroup(B)); }

int FiniteGroup::conj_class(int H) const {
  build_lattice();
  return lat_.cls.at(H);
}

int FiniteGroup::num_classes() const {
  build_lattice();
  return static_cast<int>(lat_.classes.size());
}

int FiniteGroup::class_rep(int c) const {
  build_lattice();
  return lat_.classes.at(c).front();
}

const std::vector<int>& FiniteGroup::class_members(int c) const {
  build_lattice();
  return lat_.classes.at(c);
}

std::vector<int> FiniteGroup::subgroups_in(int dom) const {
  std::vector<int> r;
  for (int h = 0; h < num_subgroups(); ++h)
    if (contains(dom, h)) r.push_back(h);
  return r;
}

bool FiniteGroup::conjugate_in(int dom, int A, int B) const {
  for (int g : subgroup_elements(dom))
    if (conjugate(g, A) == B) return true;
  return false;
}

std::vector<int> FiniteGroup::class_reps_in(int dom) const {
  std::vector<int> reps;
  for (int h : subgroups_in(dom)) {
    bool seen = false;
    for (int r : reps)
      if (conjugate_in(dom, r, h)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(h);
  }
  return reps;
}

Mask FiniteGroup::normalizer(int H, int dom) const {
  if (dom < 0) dom = whole();
  Mask m = 0;
  for (int g : subgroup_elements(dom))
    if (conjugate(g, H) == H) m |= bit(g);
  return m;
}

std::vector<DoubleCoset> FiniteGroup::double_cosets(int J, int L, int A) const {
  if (A < 0) A = whole();
  std::vector<DoubleCoset> r;
  Mask covered = 0;
  auto js = subgroup_elements(J), ls = subgroup_elements(L);
  for (int a : subgroup_elements(A)) {
    if (covered & bit(a)) continue;
    Mask m = 0;
    for (int j : js)
      for (int l : ls) m |= bit(mul(mul(j, a), l));
    covered |= m;
    r.push_back({a, m, intersect(J, conjugate(a, L))});
  }
  return r;
}

std::vector<int> FiniteGroup::left_coset_reps(int K, int H) const {
  std::vector<int> r;
  Mask covered = 0;
  auto hs = subgroup_elements(H);
  for (int x : subgroup_elements(K)) {
    if (covered & bit(x)) continue;
    r.push_back(x);
    for (int h : hs) covered |= bit(mul(x, h));
  }
  return r;
}

std::vector<int> FiniteGroup::right_coset_reps(int K, int H) const {
  std::vector<int> r;
  Mask covered = 0;
  auto hs = subgroup_elements(H);
  for (int x : subgroup_elements(K)) {
    if (covered & bit(x)) continue;
    r.push_back(x);
    for (int h : hs) covered |= bit(mul(h, x));
  }
  return r;
}

GroupPtr FiniteGroup::weyl_group(int H) const {
  Mask nm = normalizer(H);
  int N = find_subgroup(nm);
  auto reps = left_coset_reps(N, H);
  auto hs = subgroup_elements(H);
  auto coset_of = [&](int x) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (int h : hs)
        if (mul(reps[i], h) == x) return static_cast<int>(i);
    throw Error("Internal", "coset lookup failed");
  };
  std::vector<std::vector<int>> t(reps.size(), std::vector<int>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) t[i][j] = coset_of(mul(reps[i], reps[j]));
  return from_table(t, "W(" + subgroup_label(H) + ")");
}

GroupPtr FiniteGroup::subgroup_as_group(int H) const {
  auto els = subgroup_elements(H);
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < els.size(); ++i) pos[els[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(els.size(), std::vector<int>(els.size()));
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = 0; j < els.size(); ++j) t[i][j] = pos[mul(els[i], els[j])];
  return from_table(t, subgroup_label(H));
}

std::string FiniteGroup::subgroup_label(int H) const {
  if (H == 0) return "e";
  if (H == whole()) return name_;
  std::string s = "<";
  auto els = subgroup_elements(H);
  for (std::size_t i = 0; i < els.size(); ++i) s += (i ? "," : "") + std::to_string(els[i]);
  return s + ">";
}

}  // namespace tambara
