// Task runner: reads a JSON spec document, runs its tasks and prints a report.
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tambara/suites.hpp"

using namespace tambara;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSpecSchema = "tambara-spec/1";
constexpr const char* kReportSchema = "tambara-report/1";

struct Config {
  std::uint64_t seed = 20240;
  bool assume_hbt = false;
  std::size_t cap_dim = 4096;
  std::uint64_t cap_enum = 1000000;
  std::string format = "json";
};

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error("ParseError", (path.empty() ? "/" : path) + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& need(const json& o, const char* key, const std::string& path) {
  if (!o.is_object()) bad(path, "expected an object");
  auto it = o.find(key);
  if (it == o.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long long>();
}

std::size_t as_size(const json& j, const std::string& path) {
  long long v = as_int(j, path);
  if (v < 0) bad(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

// The single key of a tagged definition {"kind": {...}}.
std::pair<std::string, const json*> tag(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) bad(path, "expected an object with exactly one constructor key");
  return {j.begin().key(), &j.begin().value()};
}

Elem as_elem(const json& j, const Field& F, const std::string& path) {
  long long v = as_int(j, path);
  if (F.degree() == 1) return F.from_int(v);
  if (v < 0 || v >= F.order()) bad(path, "element out of range for " + F.name());
  return static_cast<Elem>(v);
}

Vec as_vec(const json& j, const Field& F, const std::string& path, std::optional<std::size_t> len = {}) {
  as_array(j, path);
  if (len && j.size() != *len) bad(path, "expected a vector of length " + std::to_string(*len));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_elem(j[i], F, child(path, i)));
  return v;
}

// Rows of a matrix; an empty array is a matrix with no rows.
Matrix as_matrix(const json& j, const FieldPtr& F, const std::string& path, std::optional<std::size_t> rows = {},
                 std::optional<std::size_t> cols = {}) {
  as_array(j, path);
  if (rows && j.size() != *rows) bad(path, "expected " + std::to_string(*rows) + " rows");
  std::size_t c = cols ? *cols : (j.empty() ? 0 : as_array(j[0], child(path, 0)).size());
  std::vector<Vec> rs;
  for (std::size_t i = 0; i < j.size(); ++i) rs.push_back(as_vec(j[i], *F, child(path, i), c));
  return Matrix::from_rows(F, c, rs);
}

// ---- the spec document ----

class Spec {
 public:
  Spec(json doc, Config cfg) : doc_(std::move(doc)), cfg_(std::move(cfg)) {
    if (!doc_.is_object()) bad("", "the spec document must be an object");
    if (doc_.contains("schema") && doc_["schema"] != kSpecSchema)
      bad("/schema", "unsupported schema version, expected " + std::string(kSpecSchema));
    static const std::set<std::string> sections{"schema",     "config",  "groups", "fields",
                                                "algebras",   "grings",  "functors", "extensions",
                                                "modules",    "hopf",    "tasks",  "description"};
    for (auto it = doc_.begin(); it != doc_.end(); ++it)
      if (!sections.count(it.key())) bad("/" + it.key(), "unknown section");
  }

  const Config& config() const { return cfg_; }
  const json& tasks() const {
    static const json empty = json::array();
    if (!doc_.contains("tasks")) return empty;
    return as_array(doc_["tasks"], "/tasks");
  }

  GroupPtr group(const json& ref, const std::string& path) {
    return resolve<GroupPtr>(groups_, "groups", ref, path, [&](const json& d, const std::string& p) {
      return build_group(d, p);
    });
  }
  FieldPtr field(const json& ref, const std::string& path) {
    return resolve<FieldPtr>(fields_, "fields", ref, path, [&](const json& d, const std::string& p) {
      return build_field(d, p);
    });
  }
  FinAlgebra algebra(const json& ref, const std::string& path) {
    return resolve<FinAlgebra>(algebras_, "algebras", ref, path, [&](const json& d, const std::string& p) {
      return cap(build_algebra(d, p), p);
    });
  }
  GRing gring(const json& ref, const std::string& path) {
    return resolve<GRing>(grings_, "grings", ref, path, [&](const json& d, const std::string& p) {
      auto S = build_gring(d, p);
      cap(S.A, p);
      return S;
    });
  }
  TambaraPtr functor(const json& ref, const std::string& path) {
    return resolve<TambaraPtr>(functors_, "functors", ref, path, [&](const json& d, const std::string& p) {
      auto T = build_functor(d, p);
      if (T->fp) cap(T->fp->S.A, p);
      return T;
    });
  }
  ExtensionPtr extension(const json& ref, const std::string& path) {
    return resolve<ExtensionPtr>(extensions_, "extensions", ref, path, [&](const json& d, const std::string& p) {
      auto E = build_extension(d, p);
      if (E->R->fp) cap(E->R->fp->S.A, p);
      return E;
    });
  }
  MackeyModule module(const json& ref, const std::string& path) {
    return resolve<MackeyModule>(modules_, "modules", ref, path, [&](const json& d, const std::string& p) {
      return build_module(d, p);
    });
  }
  HopfData hopf(const json& ref, const std::string& path) {
    return resolve<HopfData>(hopf_, "hopf", ref, path, [&](const json& d, const std::string& p) {
      return build_hopf(d, p);
    });
  }

  int subgroup(const GroupPtr& G, const json& ref, const std::string& path) {
    if (ref.is_number_integer()) {
      long long id = ref.get<long long>();
      if (id < 0 || id >= G->num_subgroups()) bad(path, "subgroup id out of range");
      return static_cast<int>(id);
    }
    if (ref.is_string()) {
      std::string s = ref.get<std::string>();
      if (s == "e") return 0;
      if (s == "whole" || s == G->name()) return G->whole();
      for (int H = 0; H < G->num_subgroups(); ++H)
        if (G->subgroup_label(H) == s) return H;
      bad(path, "unknown subgroup '" + s + "'");
    }
    if (ref.is_object() && ref.contains("order")) {
      long long n = as_int(ref["order"], child(path, "order"));
      for (int H = 0; H < G->num_subgroups(); ++H)
        if (G->subgroup_order(H) == n) return H;
      bad(path, "no subgroup of order " + std::to_string(n));
    }
    if (ref.is_object() && ref.contains("elements")) {
      Mask m = 0;
      const auto& els = as_array(ref["elements"], child(path, "elements"));
      for (std::size_t i = 0; i < els.size(); ++i) {
        long long g = as_int(els[i], child(child(path, "elements"), i));
        if (g < 0 || g >= G->order()) bad(child(child(path, "elements"), i), "element out of range");
        m |= Mask{1} << g;
      }
      int H = G->find_subgroup(m);
      if (H < 0) bad(path, "the elements do not form a subgroup");
      return H;
    }
    bad(path, "expected a subgroup id, label, {\"order\": n} or {\"elements\": [...]}");
  }

 private:
  template <class T, class Build>
  T resolve(std::map<std::string, T>& cache, const char* section, const json& ref, const std::string& path,
            Build build) {
    if (!ref.is_string()) {
      // inline definitions are shared by their text, so equal ones name the same object
      const std::string key = "#" + ref.dump();
      if (auto it = cache.find(key); it != cache.end()) return it->second;
      T v = build(ref, path);
      cache.emplace(key, v);
      return v;
    }
    const std::string name = ref.get<std::string>();
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    if (doc_.contains(section) && doc_[section].contains(name)) {
      const std::string key = std::string(section) + "/" + name;
      if (active_.count(key)) bad(path, "cyclic reference to '" + name + "'");
      active_.insert(key);
      struct Leave {
        std::set<std::string>& s;
        std::string k;
        ~Leave() { s.erase(k); }
      } leave{active_, key};
      std::string p = "/" + key;
      T v = build(doc_[section][name], p);
      if constexpr (std::is_same_v<T, TambaraPtr>) {
        if (v->label.empty()) {
          auto t = std::make_shared<Tambara>(*v);
          t->label = name;
          v = t;
        }
      }
      cache.emplace(name, v);
      return v;
    }
    if (auto b = builtin<T>(name)) {
      cache.emplace(name, *b);
      return *b;
    }
    bad(path, std::string("unknown ") + section + " entry '" + name + "'");
  }

  template <class T>
  std::optional<T> builtin(const std::string& name) {
    if constexpr (std::is_same_v<T, GroupPtr>) {
      if (name == "e") return FiniteGroup::trivial();
      if (name.size() > 1 && (name[0] == 'C' || name[0] == 'S') &&
          name.find_first_not_of("0123456789", 1) == std::string::npos) {
        int n = std::stoi(name.substr(1));
        if (name[0] == 'C' && n >= 1 && n <= 64) return FiniteGroup::cyclic(n);
        if (name[0] == 'S' && n >= 1 && n <= 4) return FiniteGroup::symmetric(n);
      }
    }
    if constexpr (std::is_same_v<T, FieldPtr>) {
      if (name.size() > 1 && name[0] == 'F' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        long long q = std::stoll(name.substr(1));
        for (std::uint32_t p = 2; p <= q; ++p) {
          if (q % p) continue;
          long long r = q;
          std::uint32_t k = 0;
          while (r % p == 0) r /= p, ++k;
          if (r == 1) return Field::make(p, k);
          break;
        }
      }
    }
    return std::nullopt;
  }

  FinAlgebra cap(FinAlgebra A, const std::string& path) const {
    if (A.dim() > cfg_.cap_dim)
      throw Error("CapExceeded", path + ": algebra of dimension " + std::to_string(A.dim()) + " exceeds --cap-dim " +
                                     std::to_string(cfg_.cap_dim));
    return A;
  }

  GroupPtr build_group(const json& d, const std::string& p) {
    auto [k, v] = tag(d, p);
    const std::string q = child(p, k);
    if (k == "cyclic") return FiniteGroup::cyclic(static_cast<int>(as_size(*v, q)));
    if (k == "symmetric") return FiniteGroup::symmetric(static_cast<int>(as_size(*v, q)));
    if (k == "table") {
      std::vector<std::vector<int>> t;
      for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) {
        std::vector<int> row;
        for (std::size_t j = 0; j < as_array((*v)[i], child(q, i)).size(); ++j)
          row.push_back(static_cast<int>(as_int((*v)[i][j], child(child(q, i), j))));
        t.push_back(row);
      }
      return FiniteGroup::from_table(t);
    }
    if (k == "permutations") {
      std::size_t deg = as_size(need(*v, "degree", q), child(q, "degree"));
      const auto& gs = as_array(need(*v, "generators", q), child(q, "generators"));
      std::vector<std::vector<int>> gens;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        std::vector<int> g;
        for (std::size_t j = 0; j < as_array(gs[i], child(child(q, "generators"), i)).size(); ++j)
          g.push_back(static_cast<int>(as_int(gs[i][j], child(child(child(q, "generators"), i), j))));
        gens.push_back(g);
      }
      return FiniteGroup::from_permutations(static_cast<int>(deg), gens);
    }
    bad(p, "unknown group constructor '" + k + "'");
  }

  FieldPtr build_field(const json& d, const std::string& p) {
    auto pr = as_size(need(d, "p", p), child(p, "p"));
    std::size_t k = d.contains("k") ? as_size(d["k"], child(p, "k")) : 1;
    return Field::make(static_cast<std::uint32_t>(pr), static_cast<std::uint32_t>(k));
  }

  FinAlgebra build_algebra(const json& d, const std::string& p) {
    if (d.is_object() && d.size() == 1) {
      auto [k, v] = tag(d, p);
      const std::string q = child(p, k);
      if (k == "product") {
        std::vector<FinAlgebra> fs;
        for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) fs.push_back(algebra((*v)[i], child(q, i)));
        if (fs.empty()) bad(q, "empty product");
        return FinAlgebra::product(fs);
      }
      if (k == "tensor") {
        if (!v->is_array() || v->size() != 2) bad(q, "expected two algebras");
        return FinAlgebra::tensor(algebra((*v)[0], child(q, 0)), algebra((*v)[1], child(q, 1)));
      }
      bad(p, "unknown algebra constructor '" + k + "'");
    }
    auto F = field(need(d, "field", p), child(p, "field"));
    if (d.contains("split")) return FinAlgebra::split(F, as_size(d["split"], child(p, "split")));
    if (d.contains("polynomial")) return FinAlgebra::polynomial_quotient(F, as_vec(d["polynomial"], *F, child(p, "polynomial")));
    if (d.contains("products")) {
      std::size_t n = as_size(need(d, "dim", p), child(p, "dim"));
      if (n > cfg_.cap_dim) throw Error("CapExceeded", p + ": dimension exceeds --cap-dim");
      const auto& pr = as_array(d["products"], child(p, "products"));
      if (pr.size() != n * n) bad(child(p, "products"), "expected dim*dim product vectors");
      std::vector<Vec> t;
      for (std::size_t i = 0; i < pr.size(); ++i) t.push_back(as_vec(pr[i], *F, child(child(p, "products"), i), n));
      FinAlgebra A(F, n, t, as_vec(need(d, "one", p), *F, child(p, "one"), n));
      A.validate();
      return A;
    }
    bad(p, "an algebra needs 'split', 'polynomial' or 'products'");
  }

  GRing build_gring(const json& d, const std::string& p) {
    if (d.is_object() && d.size() == 1) {
      auto [k, v] = tag(d, p);
      const std::string q = child(p, k);
      if (k == "galois") {
        auto G = group(need(*v, "group", q), child(q, "group"));
        return galois_extension(field(need(*v, "field", q), child(q, "field")),
                                as_size(need(*v, "degree", q), child(q, "degree")), G);
      }
      if (k == "product") {
        std::vector<GRing> rs;
        for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) rs.push_back(gring((*v)[i], child(q, i)));
        if (rs.empty()) bad(q, "empty product");
        return GRing::product(rs);
      }
      if (k == "coinduced") {
        GRing s = gring(need(*v, "gring", q), child(q, "gring"));
        return GRing::coinduced(s, subgroup(s.G, need(*v, "to", q), child(q, "to")));
      }
      bad(p, "unknown G-ring constructor '" + k + "'");
    }
    auto G = group(need(d, "group", p), child(p, "group"));
    FinAlgebra A = algebra(need(d, "algebra", p), child(p, "algebra"));
    int dom = d.contains("domain") ? subgroup(G, d["domain"], child(p, "domain")) : G->whole();
    const json& act = need(d, "action", p);
    if (act == "trivial") return GRing::trivial(G, dom, A);
    const std::string q = child(p, "action");
    as_array(act, q);
    if (static_cast<int>(act.size()) != G->order()) bad(q, "expected one matrix per group element");
    GRing S{G, dom, A, {}};
    for (int g = 0; g < G->order(); ++g) {
      if (act[g].is_null()) {
        if (G->contains_elem(dom, g)) bad(child(q, g), "missing action of a domain element");
        S.act.push_back(Matrix::identity(A.field(), A.dim()));
      } else {
        S.act.push_back(as_matrix(act[g], A.field(), child(q, g), A.dim(), A.dim()));
      }
    }
    S.validate();
    return S;
  }

  TambaraPtr build_functor(const json& d, const std::string& p) {
    auto [k, v] = tag(d, p);
    const std::string q = child(p, k);
    if (k == "constant") {
      auto G = group(need(*v, "group", q), child(q, "group"));
      if (v->contains("algebra")) return constant(G, G->whole(), algebra((*v)["algebra"], child(q, "algebra")));
      auto F = field(need(*v, "field", q), child(q, "field"));
      return constant_field(G, F);
    }
    if (k == "fixed_point") return fixed_point(gring(*v, q));
    if (k == "coinduction_unit") {
      auto base = functor(need(*v, "base", q), child(q, "base"));
      return coinduction_unit(base, subgroup(base->group(), need(*v, "subgroup", q), child(q, "subgroup")));
    }
    if (k == "coinduce") {
      auto T = functor(need(*v, "functor", q), child(q, "functor"));
      return coinduce(T, subgroup(T->group(), need(*v, "to", q), child(q, "to")));
    }
    if (k == "restrict") {
      auto T = functor(need(*v, "functor", q), child(q, "functor"));
      return restrict_tambara(T, subgroup(T->group(), need(*v, "subgroup", q), child(q, "subgroup")));
    }
    if (k == "product") {
      std::vector<TambaraPtr> xs;
      for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) xs.push_back(functor((*v)[i], child(q, i)));
      if (xs.empty()) bad(q, "empty product");
      return product(xs);
    }
    if (k == "fattened") return fattened_fixture(group(*v, q));
    if (k == "extension") return extension(*v, q)->R;
    bad(p, "unknown functor constructor '" + k + "'");
  }

  ExtensionPtr build_extension(const json& d, const std::string& p) {
    auto [k, v] = tag(d, p);
    const std::string q = child(p, k);
    if (k == "identity") return identity_extension(functor(*v, q));
    if (k == "coinduction_unit") {
      auto base = functor(need(*v, "base", q), child(q, "base"));
      return coinduction_unit_extension(base, subgroup(base->group(), need(*v, "subgroup", q), child(q, "subgroup")));
    }
    if (k == "over_constant")
      return over_constant(functor(need(*v, "base", q), child(q, "base")),
                           functor(need(*v, "algebra", q), child(q, "algebra")));
    if (k == "galois") {
      auto G = group(need(*v, "group", q), child(q, "group"));
      auto F = field(need(*v, "field", q), child(q, "field"));
      auto n = as_size(need(*v, "degree", q), child(q, "degree"));
      return over_constant(constant_field(G, F), fixed_point(galois_extension(F, n, G)));
    }
    if (k == "dual_numbers")
      return dual_numbers_extension(group(need(*v, "group", q), child(q, "group")),
                                    field(need(*v, "field", q), child(q, "field")));
    if (k == "product") {
      std::vector<ExtensionPtr> es;
      for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) es.push_back(extension((*v)[i], child(q, i)));
      return product_extension(es);
    }
    if (k == "composite") {
      if (!v->is_array() || v->size() != 2) bad(q, "expected two extensions");
      return composite_extension(extension((*v)[0], child(q, 0)), extension((*v)[1], child(q, 1)));
    }
    if (k == "base_change")
      return base_change_extension(extension(need(*v, "extension", q), child(q, "extension")),
                                   extension(need(*v, "along", q), child(q, "along")));
    if (k == "coinduce") {
      auto e = extension(need(*v, "extension", q), child(q, "extension"));
      return coinduce_extension(e, subgroup(e->k->group(), need(*v, "to", q), child(q, "to")));
    }
    if (k == "unit") {
      auto base = functor(need(*v, "base", q), child(q, "base"));
      auto R = functor(need(*v, "algebra", q), child(q, "algebra"));
      if (!base->fp || !R->fp) bad(q, "both functors need fixed-point models");
      Matrix u = as_matrix(need(*v, "matrix", q), base->field(), child(q, "matrix"), R->fp->S.dim(),
                           base->fp->S.dim());
      return make_extension(base, R, u);
    }
    bad(p, "unknown extension constructor '" + k + "'");
  }

  MackeyModule build_module(const json& d, const std::string& p) {
    auto [k, v] = tag(d, p);
    const std::string q = child(p, k);
    if (k == "functor") return functor(*v, q)->M;
    if (k == "D")
      return special_module_D(group(need(*v, "group", q), child(q, "group")),
                              field(need(*v, "field", q), child(q, "field")));
    if (k == "sum") {
      std::vector<MackeyModule> ms;
      for (std::size_t i = 0; i < as_array(*v, q).size(); ++i) ms.push_back(module((*v)[i], child(q, i)));
      if (ms.empty()) bad(q, "empty sum");
      return direct_sum(ms);
    }
    if (k == "cp") {
      auto G = group(need(*v, "group", q), child(q, "group"));
      auto F = field(need(*v, "field", q), child(q, "field"));
      auto top = as_size(need(*v, "top", q), child(q, "top"));
      auto bottom = as_size(need(*v, "bottom", q), child(q, "bottom"));
      auto sigma = as_matrix(need(*v, "sigma", q), F, child(q, "sigma"), bottom, bottom);
      auto res = as_matrix(need(*v, "res", q), F, child(q, "res"), bottom, top);
      auto tr = as_matrix(need(*v, "tr", q), F, child(q, "tr"), top, bottom);
      auto M = cp_module(G, F, top, bottom, sigma, res, tr);
      auto fails = check_mackey_axioms(M);
      if (!fails.empty()) bad(q, "not a Mackey functor: " + fails.front().axiom + " " + fails.front().detail);
      return M;
    }
    if (k == "random") {
      // the index-th module of the seeded stream for C_p
      auto pr = as_size(need(*v, "p", q), child(q, "p"));
      auto idx = as_size(need(*v, "index", q), child(q, "index"));
      auto G = FiniteGroup::cyclic(static_cast<int>(pr));
      auto F = Field::make(static_cast<std::uint32_t>(pr));
      std::mt19937_64 rng(cfg_.seed + pr);
      MackeyModule M;
      for (std::size_t i = 0; i <= idx; ++i) M = random_cp_module(G, F, rng);
      return M;
    }
    bad(p, "unknown module constructor '" + k + "'");
  }

  HopfData build_hopf(const json& d, const std::string& p) {
    auto [k, v] = tag(d, p);
    const std::string q = child(p, k);
    if (k == "trivial")
      return trivial_scheme(group(need(*v, "group", q), child(q, "group")),
                            field(need(*v, "field", q), child(q, "field")));
    if (k == "constant") {
      auto gamma = group(need(*v, "gamma", q), child(q, "gamma"));
      auto G = group(need(*v, "group", q), child(q, "group"));
      auto F = field(need(*v, "field", q), child(q, "field"));
      std::vector<std::vector<int>> alpha;
      if (v->contains("action")) {
        const std::string a = child(q, "action");
        const auto& act = as_array((*v)["action"], a);
        if (static_cast<int>(act.size()) != G->order()) bad(a, "expected one automorphism per group element");
        for (std::size_t g = 0; g < act.size(); ++g) {
          std::vector<int> img;
          for (std::size_t i = 0; i < as_array(act[g], child(a, g)).size(); ++i)
            img.push_back(static_cast<int>(as_int(act[g][i], child(child(a, g), i))));
          if (static_cast<int>(img.size()) != gamma->order()) bad(child(a, g), "expected an image per element");
          alpha.push_back(img);
        }
      }
      return constant_scheme(gamma, G, F, alpha);
    }
    if (k == "mu") {
      auto G = group(need(*v, "group", q), child(q, "group"));
      auto F = field(need(*v, "field", q), child(q, "field"));
      std::vector<int> power;
      if (v->contains("power"))
        for (std::size_t i = 0; i < as_array((*v)["power"], child(q, "power")).size(); ++i)
          power.push_back(static_cast<int>(as_int((*v)["power"][i], child(child(q, "power"), i))));
      return mu_scheme(static_cast<int>(as_size(need(*v, "n", q), child(q, "n"))), G, F, power);
    }
    if (k == "explicit") {
      GRing S = gring(need(*v, "gring", q), child(q, "gring"));
      const auto n = S.dim();
      HopfData H{S,
                 as_matrix(need(*v, "delta", q), S.field(), child(q, "delta"), n * n, n),
                 as_matrix(need(*v, "counit", q), S.field(), child(q, "counit"), 1, n),
                 as_matrix(need(*v, "antipode", q), S.field(), child(q, "antipode"), n, n),
                 v->contains("label") ? as_string((*v)["label"], child(q, "label")) : "explicit"};
      return H;
    }
    bad(p, "unknown Hopf constructor '" + k + "'");
  }

  json doc_;
  Config cfg_;
  std::set<std::string> active_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::string, FieldPtr> fields_;
  std::map<std::string, FinAlgebra> algebras_;
  std::map<std::string, GRing> grings_;
  std::map<std::string, TambaraPtr> functors_;
  std::map<std::string, ExtensionPtr> extensions_;
  std::map<std::string, MackeyModule> modules_;
  std::map<std::string, HopfData> hopf_;
};

// ---- serialization ----

json dims_json(const MackeyModule& M) {
  json out = json::array();
  for (int H : M.subgroups()) out.push_back(M.dim(H));
  return out;
}

json failures_json(const std::vector<AxiomFailure>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back({{"axiom", f.axiom}, {"detail", f.detail}});
  return out;
}

json verdict_json(const EtaleVerdict& v) {
  return {{"verdict", v.verdict},
          {"finite", v.finite},
          {"flat", v.flat},
          {"fp_reported", v.fp_reported},
          {"omega_zero", v.omega_zero},
          {"error", v.error.empty() ? json(nullptr) : json(v.error)},
          {"dims", v.dims},
          {"omega_dims", v.omega_dims},
          {"certificates",
           {{"flat_route", v.flat_route},
            {"omega_route", v.omega_route},
            {"fp_basis", v.fp_basis},
            {"omega_flagged", v.omega_flagged},
            {"bottom_level",
             {{"applicable", v.bottom.applicable},
              {"hypothesis", v.bottom.hypothesis},
              {"bottom_etale", v.bottom.bottom_etale}}}}},
          {"witness", v.witness}};
}

json suite_json(const SuiteReport& r) {
  json items = json::array();
  for (const auto& i : r.items) items.push_back({{"instance", i.instance}, {"passed", i.passed}, {"detail", i.detail}});
  const SuiteItem* f = r.first_failure();
  return {{"suite", r.name},
          {"total", r.items.size()},
          {"passed", r.passed()},
          {"failed", r.items.size() - r.passed()},
          {"skipped", r.skipped},
          {"first_failure", f ? json{{"instance", f->instance}, {"detail", f->detail}} : json(nullptr)},
          {"items", items}};
}

// ---- tasks ----

enum class Status { Pass, Fail, Withheld, Error };
const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Withheld: return "withheld";
    case Status::Error: return "error";
  }
  return "error";
}

struct TaskResult {
  Status status = Status::Pass;
  json result = json::object();
  std::string summary;
};

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"group-info",   "build",          "check-axioms",     "box",
                                              "kahler",       "etale-check",    "etale-classify",   "module-decompose",
                                              "galois-check", "descent-roundtrip", "theorem-suite"};
  return names;
}

EtaleConfig etale_config(const Config& c) {
  EtaleConfig e;
  e.assume_hbt = c.assume_hbt;
  return e;
}

PowerStrategy strategy_of(const json& t, const std::string& path) {
  if (!t.contains("strategy")) return PowerStrategy::Auto;
  std::string s = as_string(t["strategy"], child(path, "strategy"));
  if (s == "auto") return PowerStrategy::Auto;
  if (s == "span") return PowerStrategy::Span;
  if (s == "enum") return PowerStrategy::Enum;
  bad(child(path, "strategy"), "expected auto, span or enum");
}

TaskResult task_group_info(Spec& spec, const json& t, const std::string& p) {
  auto G = spec.group(need(t, "group", p), child(p, "group"));
  json subs = json::array();
  for (int H = 0; H < G->num_subgroups(); ++H)
    subs.push_back({{"id", H},
                    {"label", G->subgroup_label(H)},
                    {"order", G->subgroup_order(H)},
                    {"class", G->conj_class(H)},
                    {"weyl_order", G->weyl_group(H)->order()}});
  TaskResult r;
  r.result = {{"name", G->name()},
              {"order", G->order()},
              {"cyclic", G->is_cyclic()},
              {"subgroups", subs},
              {"classes", G->num_classes()}};
  r.summary = G->name() + ": order " + std::to_string(G->order()) + ", " + std::to_string(G->num_subgroups()) +
              " subgroups, " + std::to_string(G->num_classes()) + " classes";
  return r;
}

TaskResult task_build(Spec& spec, const json& t, const std::string& p) {
  TaskResult r;
  TambaraPtr T;
  if (t.contains("extension")) {
    auto E = spec.extension(t["extension"], child(p, "extension"));
    T = E->R;
    r.result["extension_kind"] = ext_kind_name(E->kind);
    r.result["base"] = E->k->label;
  } else {
    T = spec.functor(need(t, "functor", p), child(p, "functor"));
  }
  auto fails = check_tambara_axioms(*T);
  r.result["label"] = T->label;
  r.result["presentation"] = pres_name(T->kind);
  r.result["dims"] = dims_json(T->M);
  r.result["axioms_ok"] = fails.empty();
  r.status = fails.empty() ? Status::Pass : Status::Fail;
  r.summary = T->label + " dims " + dims_string(T->M) + (fails.empty() ? "" : ", axioms fail");
  return r;
}

TaskResult task_check_axioms(Spec& spec, const json& t, const std::string& p) {
  TaskResult r;
  std::vector<AxiomFailure> fails;
  std::string what;
  if (t.contains("functor")) {
    fails = check_tambara_axioms(*spec.functor(t["functor"], child(p, "functor")));
    what = "Tambara";
  } else if (t.contains("module")) {
    fails = check_mackey_axioms(spec.module(t["module"], child(p, "module")));
    what = "Mackey";
  } else if (t.contains("hopf")) {
    fails = check_hopf(spec.hopf(t["hopf"], child(p, "hopf")));
    what = "Hopf";
  } else if (t.contains("cogroup")) {
    auto C = fp_cogroup(spec.hopf(t["cogroup"], child(p, "cogroup")), etale_config(spec.config()));
    fails = check_cogroup(C);
    what = "cogroup";
  } else {
    bad(p, "check-axioms needs 'functor', 'module', 'hopf' or 'cogroup'");
  }
  r.result = {{"structure", what}, {"ok", fails.empty()}, {"failures", failures_json(fails)}};
  r.status = fails.empty() ? Status::Pass : Status::Fail;
  r.summary = what + " axioms " + (fails.empty() ? "hold" : "fail: " + fails.front().axiom);
  return r;
}

TaskResult task_box(Spec& spec, const json& t, const std::string& p) {
  TaskResult r;
  if (t.contains("extensions")) {
    const std::string q = child(p, "extensions");
    if (!t["extensions"].is_array() || t["extensions"].size() != 2) bad(q, "expected two extensions");
    auto R = spec.extension(t["extensions"][0], child(q, 0));
    auto T = spec.extension(t["extensions"][1], child(q, 1));
    auto b = box_algebras(*R, *T);
    r.result = {{"shape", b.shape}, {"dims", dims_json(b.result->M)}, {"validated", true}};
    r.summary = "algebra box (" + b.shape + ") dims " + dims_string(b.result->M);
    return r;
  }
  auto M = spec.module(need(t, "left", p), child(p, "left"));
  auto N = spec.module(need(t, "right", p), child(p, "right"));
  auto box = box_presentation(M, N);
  r.result["dims"] = dims_json(box.module);
  std::string extra;
  const FiniteGroup& G = *M.G;
  if (G.order() > 1 && G.num_subgroups() == 2 && M.F->characteristic() == static_cast<std::uint32_t>(G.order()) &&
      M.F->degree() == 1) {
    auto mz = mazur_box(M, N);
    bool iso = is_isomorphism(box.module, mz, mazur_comparison(box, mz));
    r.result["closed_form_dims"] = dims_json(mz);
    r.result["closed_form_iso"] = iso;
    if (!iso) r.status = Status::Fail;
    extra = iso ? ", matches the closed form" : ", closed form mismatch";
  }
  r.summary = "box dims " + dims_string(box.module) + extra;
  return r;
}

TaskResult task_kahler(Spec& spec, const json& t, const std::string& p) {
  auto E = spec.extension(need(t, "extension", p), child(p, "extension"));
  auto om = genuine_kahler(*E, strategy_of(t, p));
  TaskResult r;
  r.result = {{"omega_dims", dims_json(om.module())},
              {"ideal_dims", json::array()},
              {"square_dims", json::array()},
              {"box_shape", om.box.shape},
              {"strategy", om.strategy},
              {"flagged", om.flagged}};
  for (int H : om.module().subgroups()) {
    r.result["ideal_dims"].push_back(om.I.dim(H));
    r.result["square_dims"].push_back(om.I2.dim(H));
  }
  auto bc = bottom_level_kahler_check(*E, om);
  r.result["bottom_level"] = {{"genuine", bc.genuine_dim}, {"classical", bc.classical_dim}, {"ok", bc.ok}};
  if (!bc.ok) r.status = Status::Fail;
  if (t.value("enumerate", false)) {
    SearchCaps caps;
    caps.space = spec.config().cap_enum;
    auto M = self_module(*E->R);
    auto d = enumerate_derivations(*E, M, caps);
    auto h = enumerate_homs(om.omega, M, caps);
    r.result["derivations"] = d.count;
    r.result["homs_from_omega"] = h.count;
    if (d.count != h.count) r.status = Status::Fail;
  }
  r.summary = "Ω dims " + dims_string(om.module()) + " (" + om.strategy + ")";
  return r;
}

TaskResult task_etale_check(Spec& spec, const json& t, const std::string& p) {
  auto E = spec.extension(need(t, "extension", p), child(p, "extension"));
  auto v = check_etale(E, etale_config(spec.config()));
  TaskResult r;
  r.result = verdict_json(v);
  if (t.contains("expect")) {
    std::string want = as_string(t["expect"], child(p, "expect"));
    r.result["expect"] = want;
    r.status = v.verdict == want ? Status::Pass : Status::Fail;
  } else if (v.verdict == "withheld") {
    r.status = Status::Withheld;
  } else {
    r.status = (v.verdict == "etale" || v.verdict == "formally_etale_and_finite") ? Status::Pass : Status::Fail;
  }
  r.summary = "verdict " + v.verdict + (v.witness.empty() ? "" : " (" + v.witness + ")");
  return r;
}

TaskResult task_etale_classify(Spec& spec, const json& t, const std::string& p) {
  auto T = spec.functor(need(t, "functor", p), child(p, "functor"));
  auto cl = classify_finite_etale(T);
  const FiniteGroup& G = *T->group();
  TaskResult r;
  json factors = json::array();
  for (int H : cl.subgroups) factors.push_back({{"subgroup", H}, {"label", G.subgroup_label(H)}, {"class", G.conj_class(H)}});
  r.result = {{"etale", cl.etale},
              {"factors", factors},
              {"classes", cl.classes},
              {"witness", cl.witness},
              {"witness_level", cl.witness_level < 0 ? json(nullptr) : json(cl.witness_level)}};
  bool want = t.contains("expect_etale") ? t["expect_etale"].get<bool>() : true;
  r.status = cl.etale == want ? Status::Pass : Status::Fail;
  if (cl.etale && t.contains("expect_classes")) {
    std::vector<int> ex;
    for (std::size_t i = 0; i < as_array(t["expect_classes"], child(p, "expect_classes")).size(); ++i)
      ex.push_back(static_cast<int>(as_int(t["expect_classes"][i], child(child(p, "expect_classes"), i))));
    std::sort(ex.begin(), ex.end());
    if (ex != cl.classes) r.status = Status::Fail;
  }
  std::string cls;
  for (int c : cl.classes) cls += " " + std::to_string(c);
  r.summary = cl.etale ? "étale, factor classes" + cls : "not étale: " + cl.witness;
  return r;
}

TaskResult task_module_decompose(Spec& spec, const json& t, const std::string& p) {
  auto M = spec.module(need(t, "module", p), child(p, "module"));
  auto s = flat_status(M);
  const auto& d = s.decomposition;
  TaskResult r;
  r.result = {{"dims", dims_json(M)},
              {"jordan", jordan_partition(M)},
              {"summands", d.summands},
              {"coind", d.coind},
              {"constant", d.constant},
              {"remainder_dims", dims_json(d.remainder)},
              {"remainder_zero", d.remainder.is_zero()},
              {"verified", d.verified},
              {"flat", s.flat},
              {"projective", s.projective},
              {"free", s.free},
              {"agree", s.agree},
              {"witness", s.witness},
              {"d_formula", d_formula_dim(M)}};
  r.status = (d.verified && s.agree) ? Status::Pass : Status::Fail;
  r.summary = std::to_string(d.coind) + " CoInd + " + std::to_string(d.constant) + " F, remainder " +
              dims_string(d.remainder) + ", flat=" + (s.flat ? "true" : "false");
  return r;
}

TaskResult task_galois(Spec& spec, const json& t, const std::string& p) {
  auto K = spec.field(need(t, "field", p), child(p, "field"));
  auto G = spec.group(need(t, "group", p), child(p, "group"));
  auto n = as_size(need(t, "degree", p), child(p, "degree"));
  auto g = galois_fp_check(K, n, G, etale_config(spec.config()));
  TaskResult r;
  r.result = {{"passed", g.passed},
              {"normal_basis", g.normal_basis},
              {"module_iso", g.module_iso},
              {"transfers_surjective", g.transfers_surjective},
              {"verdict", verdict_json(g.verdict)}};
  r.status = g.passed ? Status::Pass : Status::Fail;
  r.summary = "Galois " + K->name() + " degree " + std::to_string(n) + ": " + g.verdict.verdict;
  return r;
}

TaskResult task_descent(Spec& spec, const json& t, const std::string& p) {
  std::vector<HopfData> hs;
  if (t.contains("hopf")) {
    const std::string q = child(p, "hopf");
    for (std::size_t i = 0; i < as_array(t["hopf"], q).size(); ++i) hs.push_back(spec.hopf(t["hopf"][i], child(q, i)));
  } else {
    hs = descent_corpus(spec.group(need(t, "group", p), child(p, "group")),
                        spec.field(need(t, "field", p), child(p, "field")));
  }
  TaskResult r;
  json trips = json::array();
  bool ok = true;
  for (const auto& h : hs) {
    auto rt = roundtrip(h, etale_config(spec.config()));
    ok = ok && rt.passed;
    trips.push_back({{"instance", rt.instance},
                     {"route", rt.route},
                     {"ev_fp_identity", rt.ev_fp_identity},
                     {"counit_iso", rt.counit_iso},
                     {"unit_iso", rt.unit_iso},
                     {"etale_preserved", rt.etale_preserved},
                     {"passed", rt.passed},
                     {"detail", rt.detail}});
  }
  r.result["roundtrips"] = trips;
  if (t.value("homs", true)) {
    json homs = json::array();
    for (const auto& a : hs)
      for (const auto& b : hs) {
        auto hc = count_homs(a, b, spec.config().cap_enum);
        if (!hc.skipped) ok = ok && hc.upstairs == hc.downstairs;
        homs.push_back({{"source", hc.source},
                        {"target", hc.target},
                        {"upstairs", hc.upstairs},
                        {"downstairs", hc.downstairs},
                        {"skipped", hc.skipped},
                        {"note", hc.note}});
      }
    r.result["hom_counts"] = homs;
  }
  r.status = ok ? Status::Pass : Status::Fail;
  r.summary = std::to_string(hs.size()) + " schemes, " + (ok ? "all round trips and Hom counts agree" : "failures");
  return r;
}

TaskResult task_suite(Spec& spec, const json& t, const std::string& p) {
  SuiteOptions o;
  o.seed = spec.config().seed;
  o.assume_hbt = spec.config().assume_hbt;
  if (t.contains("samples")) o.samples = as_size(t["samples"], child(p, "samples"));
  auto rep = run_suite(as_string(need(t, "suite", p), child(p, "suite")), o);
  TaskResult r;
  r.result = suite_json(rep);
  r.status = rep.ok() ? Status::Pass : Status::Fail;
  r.summary = rep.name + ": " + std::to_string(rep.passed()) + "/" + std::to_string(rep.items.size()) + " passed";
  if (const auto* f = rep.first_failure()) r.summary += "; first failure " + f->instance;
  return r;
}

json run_task(Spec& spec, const json& t, std::size_t i, Status& st, std::string& line) {
  const std::string p = child("/tasks", i);
  json out;
  std::string name;
  try {
    name = as_string(need(t, "task", p), child(p, "task"));
    out["task"] = name;
    if (t.contains("id")) out["id"] = t["id"];
    if (std::find(task_names().begin(), task_names().end(), name) == task_names().end())
      bad(child(p, "task"), "unknown task '" + name + "'");
    TaskResult r;
    if (name == "group-info") r = task_group_info(spec, t, p);
    else if (name == "build") r = task_build(spec, t, p);
    else if (name == "check-axioms") r = task_check_axioms(spec, t, p);
    else if (name == "box") r = task_box(spec, t, p);
    else if (name == "kahler") r = task_kahler(spec, t, p);
    else if (name == "etale-check") r = task_etale_check(spec, t, p);
    else if (name == "etale-classify") r = task_etale_classify(spec, t, p);
    else if (name == "module-decompose") r = task_module_decompose(spec, t, p);
    else if (name == "galois-check") r = task_galois(spec, t, p);
    else if (name == "descent-roundtrip") r = task_descent(spec, t, p);
    else r = task_suite(spec, t, p);
    st = r.status;
    out["status"] = status_name(st);
    out["result"] = r.result;
    line = r.summary;
  } catch (const Error& e) {
    // bugs surfaced by internal cross-checks count as mathematical failures
    const bool math = e.code() == "MismatchWitness" || e.code() == "AxiomFailureDownstairs" || e.code() == "Internal";
    st = math ? Status::Fail : Status::Error;
    out["status"] = status_name(st);
    out["error"] = {{"code", e.code()}, {"message", e.what()}};
    line = e.what();
  }
  if (!out.contains("task")) out["task"] = nullptr;
  return out;
}

int exit_code(const std::vector<Status>& ss) {
  int code = 0;
  for (Status s : ss) {
    if (s == Status::Error || s == Status::Withheld) return 2;
    if (s == Status::Fail) code = 1;
  }
  return code;
}

json report_header(const Config& c) {
  return {{"schema", kReportSchema},
          {"seed", c.seed},
          {"config", {{"assume_hbt", c.assume_hbt}, {"cap_dim", c.cap_dim}, {"cap_enum", c.cap_enum}}}};
}

void print(const json& report, const std::vector<std::string>& lines, const Config& c) {
  if (c.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::cout << "seed " << c.seed << (c.assume_hbt ? ", assume_hbt" : "") << "\n";
  const auto& ts = report["tasks"];
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string label = ts[i]["task"].is_string() ? ts[i]["task"].get<std::string>() : "?";
    if (ts[i].contains("id")) label += " " + ts[i]["id"].dump();
    std::cout << "[" << ts[i]["status"].get<std::string>() << "] " << label << ": " << lines[i] << "\n";
  }
  const auto& s = report["summary"];
  std::cout << s["passed"] << "/" << s["total"] << " passed, exit " << report["exit_code"] << "\n";
}

int run_tasks(Spec& spec, const json& tasks) {
  const Config& c = spec.config();
  json report = report_header(c);
  report["tasks"] = json::array();
  std::vector<Status> ss;
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Status st = Status::Error;
    std::string line;
    report["tasks"].push_back(run_task(spec, tasks[i], i, st, line));
    ss.push_back(st);
    lines.push_back(line);
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  for (Status s : ss) ++counts[static_cast<int>(s)];
  int code = exit_code(ss);
  report["summary"] = {{"total", ss.size()},
                       {"passed", counts[0]},
                       {"failed", counts[1]},
                       {"withheld", counts[2]},
                       {"errors", counts[3]}};
  report["exit_code"] = code;
  print(report, lines, c);
  return code;
}

json load(const std::string& file) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) throw Error("ParseError", "cannot open '" + file + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // the message carries line and column
    throw Error("ParseError", file + ": " + e.what());
  }
}

// Config from the document, overridden by explicit flags.
Config merge(const json& doc, const Config& flags, const std::set<std::string>& given) {
  Config c;
  if (doc.is_object() && doc.contains("config")) {
    const json& j = doc["config"];
    const std::string p = "/config";
    if (!j.is_object()) bad(p, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string k = it.key(), q = child(p, k);
      if (k == "seed") c.seed = static_cast<std::uint64_t>(as_size(*it, q));
      else if (k == "assume_hbt") {
        if (!it->is_boolean()) bad(q, "expected a boolean");
        c.assume_hbt = it->get<bool>();
      } else if (k == "cap_dim") c.cap_dim = as_size(*it, q);
      else if (k == "cap_enum") c.cap_enum = as_size(*it, q);
      else if (k == "format") c.format = as_string(*it, q);
      else bad(q, "unknown config key");
    }
  }
  if (given.count("seed")) c.seed = flags.seed;
  if (given.count("assume-hbt")) c.assume_hbt = flags.assume_hbt;
  if (given.count("cap-dim")) c.cap_dim = flags.cap_dim;
  if (given.count("cap-enum")) c.cap_enum = flags.cap_enum;
  if (given.count("format")) c.format = flags.format;
  if (c.format != "json" && c.format != "text") bad("/config/format", "expected json or text");
  if (c.cap_dim == 0 || c.cap_enum == 0) bad("/config", "caps must be positive");
  return c;
}

int report_error(const Error& e, const Config& c) {
  if (c.format == "json") {
    json r = report_header(c);
    r["tasks"] = json::array();
    r["error"] = {{"code", e.code()}, {"message", e.what()}};
    r["summary"] = {{"total", 0}, {"passed", 0}, {"failed", 0}, {"withheld", 0}, {"errors", 1}};
    r["exit_code"] = 2;
    std::cout << r.dump(2) << "\n";
  }
  std::cerr << e.what() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tambara functor task runner"};
  app.require_subcommand(1);
  Config flags;
  app.add_option("--format", flags.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", flags.seed, "seed for randomized corpora");
  app.add_flag("--assume-hbt", flags.assume_hbt, "report finite presentation under the Hilbert basis hypothesis");
  app.add_option("--cap-dim", flags.cap_dim, "largest algebra dimension accepted")->check(CLI::PositiveNumber);
  app.add_option("--cap-enum", flags.cap_enum, "largest exhaustive search")->check(CLI::PositiveNumber);

  std::string file, target, expect, suite;
  std::size_t samples = 0;

  auto* run = app.add_subcommand("run", "run every task of a spec document");
  run->add_option("spec", file, "spec document ('-' for stdin)")->required();

  auto* etale = app.add_subcommand("etale", "étale checks on one object of a spec document");
  etale->require_subcommand(1);
  auto* check = etale->add_subcommand("check", "check_etale on an extension");
  check->add_option("spec", file)->required();
  check->add_option("--extension", target, "extension name")->required();
  check->add_option("--expect", expect, "expected verdict");
  auto* classify = etale->add_subcommand("classify", "classify a finite étale functor");
  classify->add_option("spec", file)->required();
  classify->add_option("--functor", target, "functor name")->required();

  auto* modular = app.add_subcommand("module", "module computations");
  modular->require_subcommand(1);
  auto* decompose = modular->add_subcommand("decompose", "decompose a C_p-module");
  decompose->add_option("spec", file)->required();
  decompose->add_option("--module", target, "module name")->required();

  auto* suite_cmd = app.add_subcommand("suite", "run a theorem suite");
  suite_cmd->add_option("name", suite, "suite name")->required();
  suite_cmd->add_option("--samples", samples, "random modules per prime");

  for (auto* s : {run, etale, check, classify, modular, decompose, suite_cmd}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::set<std::string> given;
  for (const char* n : {"format", "seed", "assume-hbt", "cap-dim", "cap-enum"})
    if (app.count(std::string("--") + n)) given.insert(n);

  Config cfg = flags;
  try {
    json doc = suite_cmd->parsed() ? json::object() : load(file);
    cfg = merge(doc, flags, given);
    json tasks;
    if (suite_cmd->parsed()) {
      json t = {{"task", "theorem-suite"}, {"suite", suite}};
      if (samples) t["samples"] = samples;
      tasks = json::array({t});
    } else if (check->parsed()) {
      json t = {{"task", "etale-check"}, {"extension", target}};
      if (!expect.empty()) t["expect"] = expect;
      tasks = json::array({t});
    } else if (classify->parsed()) {
      tasks = json::array({{{"task", "etale-classify"}, {"functor", target}}});
    } else if (decompose->parsed()) {
      tasks = json::array({{{"task", "module-decompose"}, {"module", target}}});
    }
    if (!tasks.is_null()) doc.erase("tasks");
    Spec spec(doc, cfg);
    return run_tasks(spec, tasks.is_null() ? spec.tasks() : tasks);
  } catch (const Error& e) {
    return report_error(e, cfg);
  }
}
