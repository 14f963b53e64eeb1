#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tambara {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Finite field F_{p^k}. Elements are encoded as integers 0..q-1 whose base-p
// digits are the coefficients of a polynomial in the generator x, reduced by
// the lexicographically first monic primitive polynomial of degree k.
class Field {
 public:
  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t k = 1);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  // Coefficients c_0..c_k of the defining polynomial (c_k = 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  std::string name() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t n) const noexcept;

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_table_[a];
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  bool operator==(const Field& o) const noexcept { return p_ == o.p_ && k_ == o.k_; }

 private:
  Field(std::uint32_t p, std::uint32_t k);
  Elem add_digits(Elem a, Elem b) const noexcept;

  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_, log_, add_table_, neg_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || (*a == *b); }

}  // namespace tambara
