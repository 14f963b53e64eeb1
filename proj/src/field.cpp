#include "tambara/field.hpp"

#include <map>
#include <mutex>

namespace tambara {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Multiply the polynomial (digits of a) by x modulo the monic modulus.
std::vector<std::uint32_t> times_x(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t k = mod.size() - 1;
  std::vector<std::uint32_t> r(k, 0);
  const std::uint32_t top = a[k - 1];
  for (std::size_t i = k - 1; i > 0; --i) r[i] = a[i - 1];
  r[0] = 0;
  for (std::size_t i = 0; i < k; ++i) r[i] = (r[i] + (p - (top * mod[i]) % p)) % p;
  return r;
}

std::uint32_t encode(const std::vector<std::uint32_t>& digits, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
  return v;
}

}  // namespace

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw Error("InvalidField", "characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw Error("InvalidField", "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > (1u << 16)) throw Error("CapExceeded", "field order exceeds 2^16");
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<const Field>(new Field(p, k));
  cache.emplace(std::make_pair(p, k), f);
  return f;
}

Field::Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), q_(1) {
  for (std::uint32_t i = 0; i < k; ++i) q_ *= p;
  if (k == 1) {
    modulus_ = {0, 1};
    return;
  }
  // Search monic polynomials of degree k in lexicographic order of their lower
  // coefficients for one in which x has multiplicative order q - 1.
  std::vector<std::uint32_t> low(k, 0);
  const std::uint32_t count = q_;
  for (std::uint32_t code = 0; code < count; ++code) {
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      low[i] = c % p;
      c /= p;
    }
    if (low[0] == 0) continue;
    std::vector<std::uint32_t> mod(low);
    mod.push_back(1);
    std::vector<std::uint32_t> cur(k, 0);
    cur[0] = 1;
    std::vector<Elem> exps;
    exps.reserve(q_ - 1);
    bool ok = true;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      std::uint32_t v = encode(cur, p);
      if (e > 0 && v == 1) {
        ok = false;
        break;
      }
      exps.push_back(v);
      cur = times_x(cur, mod, p);
    }
    if (!ok || encode(cur, p) != 1) continue;
    modulus_ = mod;
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      exp_[e] = exps[e];
      exp_[e + q_ - 1] = exps[e];
      log_[exps[e]] = e;
    }
    break;
  }
  neg_table_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    Elem r = 0, scale = 1, x = a;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((p_ - x % p_) % p_) * scale;
      x /= p_;
      scale *= p_;
    }
    neg_table_[a] = r;
  }
  if (q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(a, b);
  }
}

Elem Field::add_digits(Elem a, Elem b) const noexcept {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem Field::from_int(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error("DivisionByZero", "inverse of zero in " + name());
  if (k_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::string Field::name() const {
  return k_ == 1 ? "F" + std::to_string(p_) : "F" + std::to_string(q_);
}

}  // namespace tambara
