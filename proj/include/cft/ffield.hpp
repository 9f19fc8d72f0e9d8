#pragma once

// Exact arithmetic in F_q and its extensions.
//
// Every field is built over its prime field F_p as F_p[t]/(modulus) with the
// lexicographically least monic irreducible modulus of the requested degree.
// Elements are encoded as integers sum c_i p^i of their coefficient vectors,
// so prime subfield elements keep the same encoding in every extension.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cft/error.hpp"
#include "cft/ntheory.hpp"

namespace cft {

using elem_t = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = 1u << 20;
inline constexpr std::uint64_t kTableFieldSize = 1u << 16;
inline constexpr std::uint64_t kExhaustiveFieldSize = 1u << 12;

namespace detail {

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
using PPoly = std::vector<std::uint32_t>;

inline void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly pmod(PPoly a, const PPoly& f, std::uint32_t p) {
  ptrim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t inv_lead = nt::inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    ptrim(a);
  }
  return a;
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return pmod(std::move(r), f, p);
}

inline PPoly ppowmod(PPoly a, std::uint64_t e, const PPoly& f, std::uint32_t p) {
  PPoly r{1};
  a = pmod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, a, f, p);
    a = pmulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

inline PPoly pgcd(PPoly a, PPoly b, std::uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline PPoly psub(PPoly a, const PPoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  ptrim(a);
  return a;
}

// Rabin's irreducibility test for a monic f of degree r over F_p.
inline bool prime_poly_irreducible(const PPoly& f, std::uint32_t p) {
  const std::size_t r = f.size() - 1;
  if (r == 1) return true;
  const PPoly x{0, 1};
  std::vector<PPoly> frob(r + 1);  // frob[k] = x^{p^k} mod f
  frob[0] = pmod(x, f, p);
  for (std::size_t k = 1; k <= r; ++k) frob[k] = ppowmod(frob[k - 1], p, f, p);
  if (!psub(frob[r], frob[0], p).empty()) return false;
  for (auto l : nt::prime_divisors(r)) {
    PPoly g = pgcd(f, psub(frob[r / l], frob[0], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class FiniteField {
  struct Data {
    std::uint32_t p = 0;
    std::uint32_t degree = 0;
    std::uint32_t size = 0;
    detail::PPoly modulus;            // monic, degree+1 coefficients
    std::vector<std::uint32_t> ppow;  // p^i for i <= degree
    std::vector<elem_t> exp_table;    // only for size <= kTableFieldSize
    std::vector<std::uint32_t> log_table;
    elem_t generator = 1;
    std::vector<std::uint64_t> order_primes;  // prime divisors of size-1
  };
  std::shared_ptr<const Data> d_;

  explicit FiniteField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static std::shared_ptr<const Data> build(std::uint32_t p, std::uint32_t degree) {
    if (!nt::is_prime(p)) throw domain_error("FiniteField: characteristic must be prime");
    if (degree == 0) throw domain_error("FiniteField: degree must be positive");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < degree; ++i) {
      size *= p;
      if (size > kMaxFieldSize) throw size_error("FiniteField: field size exceeds 2^20");
    }
    auto d = std::make_shared<Data>();
    d->p = p;
    d->degree = degree;
    d->size = static_cast<std::uint32_t>(size);
    d->ppow.resize(degree + 1);
    d->ppow[0] = 1;
    for (std::uint32_t i = 1; i <= degree; ++i) d->ppow[i] = d->ppow[i - 1] * p;
    if (degree == 1) {
      d->modulus = {0, 1};
    } else {
      // Enumerate monic polynomials by the encoding of their lower coefficients.
      for (std::uint64_t idx = 0; idx < size; ++idx) {
        detail::PPoly f(degree + 1);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < degree; ++i) {
          f[i] = static_cast<std::uint32_t>(t % p);
          t /= p;
        }
        f[degree] = 1;
        if (f[0] == 0) continue;
        if (detail::prime_poly_irreducible(f, p)) {
          d->modulus = std::move(f);
          break;
        }
      }
    }
    d->order_primes = nt::prime_divisors(size - 1);
    FiniteField tmp(d);
    // Smallest primitive element in encoding order.
    for (elem_t g = 1; g < size; ++g) {
      bool primitive = true;
      for (auto l : d->order_primes)
        if (tmp.slow_pow(g, (size - 1) / l) == 1) { primitive = false; break; }
      if (size == 2 || primitive) { d->generator = g; break; }
    }
    if (size <= kTableFieldSize) {
      d->exp_table.resize(size - 1);
      d->log_table.assign(size, 0);
      elem_t x = 1;
      for (std::uint32_t i = 0; i + 1 < size; ++i) {
        d->exp_table[i] = x;
        d->log_table[x] = i;
        x = tmp.slow_mul(x, d->generator);
      }
      if (x != 1) throw std::logic_error("FiniteField: generator check failed");
    }
    return d;
  }

  elem_t slow_mul(elem_t a, elem_t b) const {
    const auto p = d_->p;
    if (d_->degree == 1) return static_cast<elem_t>(std::uint64_t(a) * b % p);
    detail::PPoly da = digits(a), db = digits(b);
    detail::ptrim(da);
    detail::ptrim(db);
    return encode(detail::pmulmod(da, db, d_->modulus, p));
  }
  elem_t slow_pow(elem_t a, std::uint64_t e) const {
    elem_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

 public:
  FiniteField() = default;

  /// GF(p^degree), cached so repeated construction returns the same instance.
  static FiniteField make(std::uint32_t p, std::uint32_t degree = 1) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Data>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return FiniteField(it->second);
    auto d = build(p, degree);
    cache.emplace(key, d);
    return FiniteField(d);
  }

  /// GF(q) for a prime power q.
  static FiniteField of_order(std::uint64_t q) {
    auto f = nt::factor(q);
    if (f.size() != 1) throw domain_error("FiniteField: order must be a prime power");
    return make(static_cast<std::uint32_t>(f[0].first), f[0].second);
  }

  bool valid() const { return d_ != nullptr; }
  std::uint32_t characteristic() const { return d_->p; }
  std::uint32_t degree() const { return d_->degree; }
  std::uint32_t size() const { return d_->size; }
  const detail::PPoly& modulus() const { return d_->modulus; }
  elem_t generator() const { return d_->generator; }
  bool has_tables() const { return !d_->exp_table.empty(); }

  friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.d_ == b.d_; }
  friend bool operator!=(const FiniteField& a, const FiniteField& b) { return a.d_ != b.d_; }

  std::string name() const { return "GF(" + std::to_string(d_->size) + ")"; }

  detail::PPoly digits(elem_t a) const {
    detail::PPoly out(d_->degree);
    for (std::uint32_t i = 0; i < d_->degree; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    return out;
  }
  elem_t encode(const detail::PPoly& c) const {
    elem_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * d_->p + c[i];
    return v;
  }

  elem_t zero() const { return 0; }
  elem_t one() const { return 1; }

  /// Image of an integer in the prime subfield.
  elem_t from_int(std::int64_t v) const { return static_cast<elem_t>(nt::mod(v, d_->p)); }

  elem_t add(elem_t a, elem_t b) const {
    const auto p = d_->p;
    if (d_->degree == 1) {
      elem_t s = a + b;
      return s >= p ? s - p : s;
    }
    elem_t r = 0;
    for (std::uint32_t i = 0; i < d_->degree; ++i) {
      const elem_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      elem_t s = da + db;
      if (s >= p) s -= p;
      r += s * d_->ppow[i];
    }
    return r;
  }
  elem_t neg(elem_t a) const {
    const auto p = d_->p;
    if (d_->degree == 1) return a == 0 ? 0 : p - a;
    elem_t r = 0;
    for (std::uint32_t i = 0; i < d_->degree; ++i) {
      const elem_t da = a % p;
      a /= p;
      r += (da == 0 ? 0 : p - da) * d_->ppow[i];
    }
    return r;
  }
  elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }
  elem_t mul(elem_t a, elem_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
      std::uint64_t s = std::uint64_t(d_->log_table[a]) + d_->log_table[b];
      const std::uint32_t m = d_->size - 1;
      if (s >= m) s -= m;
      return d_->exp_table[s];
    }
    return slow_mul(a, b);
  }
  elem_t pow(elem_t a, std::int64_t e) const {
    if (e < 0) return pow(inv(a), -e);
    if (a == 0) return e == 0 ? 1 : 0;
    if (has_tables()) {
      const std::uint64_t m = d_->size - 1;
      return d_->exp_table[(std::uint64_t(d_->log_table[a]) * (std::uint64_t(e) % m)) % m];
    }
    return slow_pow(a, static_cast<std::uint64_t>(e));
  }
  elem_t inv(elem_t a) const {
    if (a == 0) throw domain_error("FiniteField: inverse of zero");
    if (has_tables()) {
      const std::uint32_t m = d_->size - 1;
      const std::uint32_t l = d_->log_table[a];
      return d_->exp_table[l == 0 ? 0 : m - l];
    }
    return slow_pow(a, d_->size - 2);
  }
  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }

  /// a^(p^times): the absolute Frobenius iterated.
  elem_t frobenius(elem_t a, std::uint32_t times = 1) const {
    for (std::uint32_t i = 0; i < times % d_->degree; ++i) a = pow(a, d_->p);
    return a;
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(elem_t a) const {
    if (a == 0) throw domain_error("FiniteField: order of zero");
    std::uint64_t m = d_->size - 1;
    for (auto l : d_->order_primes)
      while (m % l == 0 && pow(a, static_cast<std::int64_t>(m / l)) == 1) m /= l;
    return m;
  }

  /// Discrete logarithm to the base of generator(); tables or baby-step giant-step.
  std::uint64_t log(elem_t a) const {
    if (a == 0) throw domain_error("FiniteField: log of zero");
    if (has_tables()) return d_->log_table[a];
    const std::uint64_t m = d_->size - 1;
    std::uint64_t step = 1;
    while (step * step < m) ++step;
    std::unordered_map<elem_t, std::uint64_t> baby;
    elem_t x = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(x, j);
      x = mul(x, d_->generator);
    }
    const elem_t giant = inv(pow(d_->generator, static_cast<std::int64_t>(step)));
    elem_t y = a;
    for (std::uint64_t i = 0; i <= step; ++i) {
      auto it = baby.find(y);
      if (it != baby.end()) return (i * step + it->second) % m;
      y = mul(y, giant);
    }
    throw std::logic_error("FiniteField: discrete log not found");
  }
};

/// A field element paired with its field.
struct FieldElem {
  FiniteField field;
  elem_t value = 0;

  FieldElem() = default;
  FieldElem(FiniteField f, elem_t v) : field(std::move(f)), value(v) {}

  static FieldElem from_int(const FiniteField& f, std::int64_t v) { return {f, f.from_int(v)}; }
  static FieldElem from_digits(const FiniteField& f, const std::vector<std::uint32_t>& c) {
    if (c.size() > f.degree()) throw domain_error("FieldElem: too many coefficients");
    for (auto x : c)
      if (x >= f.characteristic()) throw domain_error("FieldElem: coefficient out of range");
    return {f, f.encode(c)};
  }

  bool is_zero() const { return value == 0; }
  bool is_one() const { return value == 1; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field == b.field && a.value == b.value;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.value < b.value; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field, a.field.add(a.value, b.value)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field, a.field.sub(a.value, b.value)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field, a.field.mul(a.value, b.value)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field, a.field.div(a.value, b.value)};
  }
  FieldElem operator-() const { return {field, field.neg(value)}; }
  FieldElem inv() const { return {field, field.inv(value)}; }
  FieldElem pow(std::int64_t e) const { return {field, field.pow(value, e)}; }

  /// "GF(9):[1,2]" -- coefficients in base-p digits, low to high.
  std::string to_string() const {
    std::ostringstream os;
    os << field.name() << ":[";
    auto d = field.digits(value);
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << "]";
    return os.str();
  }

 private:
  static void check(const FieldElem& a, const FieldElem& b) {
    if (a.field != b.field) throw domain_error("FieldElem: operands from different fields");
  }
};

/// The group mu_n of n-th roots of unity with a fixed generator of exact order n.
struct MuN {
  FiniteField field;
  std::uint32_t n = 1;
  elem_t generator = 1;

  static MuN make(const FiniteField& f, std::uint32_t n) {
    if (n == 0 || (f.size() - 1) % n != 0)
      throw domain_error("MuN: n must divide q-1 of the field " + f.name());
    return {f, n, f.pow(f.generator(), (f.size() - 1) / n)};
  }
  FieldElem gen() const { return {field, generator}; }
  FieldElem power(std::int64_t k) const { return {field, field.pow(generator, nt::mod(k, n))}; }
};

/// Smallest extension degree e such that n divides q^e - 1 (capped).
inline std::uint32_t embedding_degree(std::uint64_t q, std::uint32_t n, std::uint32_t cap = 12) {
  if (std::gcd<std::uint64_t, std::uint64_t>(q, n) != 1)
    throw domain_error("embedding_degree: n must be coprime to q");
  std::uint64_t qe = q % n;
  for (std::uint32_t e = 1; e <= cap; ++e) {
    if (qe % n == 1 % n) return e;
    qe = qe * (q % n) % n;
  }
  throw size_error("embedding_degree: exceeds cap " + std::to_string(cap));
}

namespace detail {

// Least root of the modulus of `small` inside `big`: fixes an embedding small -> big.
inline elem_t subfield_root(const FiniteField& small, const FiniteField& big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
    throw domain_error(small.name() + " is not a subfield of " + big.name());
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, elem_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(small.size(), big.size());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const auto& m = small.modulus();
  for (elem_t t = 0; t < big.size(); ++t) {
    elem_t acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, t), m[i]);
    if (acc == 0) return cache[key] = t;
  }
  throw std::logic_error("subfield_root: no root found");
}

}  // namespace detail

/// Embed an element of a subfield into an extension field.
inline FieldElem embed(const FieldElem& a, const FiniteField& big) {
  if (a.field == big) return a;
  const auto& small = a.field;
  if (small.degree() == 1) {
    if (small.characteristic() != big.characteristic())
      throw domain_error(small.name() + " is not a subfield of " + big.name());
    return {big, a.value};
  }
  const elem_t theta = detail::subfield_root(small, big);
  auto d = small.digits(a.value);
  elem_t acc = 0;
  for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, theta), d[i]);
  return {big, acc};
}

/// Inverse of embed(): the element of `small` whose image is b, or a domain error.
inline FieldElem project(const FieldElem& b, const FiniteField& small) {
  const auto& big = b.field;
  if (small == big) return b;
  const std::uint32_t p = big.characteristic();
  if (small.degree() == 1) {
    if (small.characteristic() != p || b.value >= p)
      throw domain_error("project: element does not lie in " + small.name());
    return {small, b.value};
  }
  // Solve sum c_i theta^i = b over F_p by Gaussian elimination.
  const elem_t theta = detail::subfield_root(small, big);
  const std::uint32_t rs = small.degree(), rb = big.degree();
  std::vector<std::vector<std::int64_t>> a(rb, std::vector<std::int64_t>(rs + 1, 0));
  elem_t pw = 1;
  for (std::uint32_t j = 0; j < rs; ++j) {
    auto dg = big.digits(pw);
    for (std::uint32_t i = 0; i < rb; ++i) a[i][j] = dg[i];
    pw = big.mul(pw, theta);
  }
  auto db = big.digits(b.value);
  for (std::uint32_t i = 0; i < rb; ++i) a[i][rs] = db[i];
  std::uint32_t row = 0;
  std::vector<int> pivcol;
  for (std::uint32_t c = 0; c < rs && row < rb; ++c) {
    std::uint32_t piv = row;
    while (piv < rb && a[piv][c] == 0) ++piv;
    if (piv == rb) continue;
    std::swap(a[piv], a[row]);
    const std::int64_t iv = nt::inv_mod(a[row][c], p);
    for (auto& x : a[row]) x = x * iv % p;
    for (std::uint32_t r = 0; r < rb; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::uint32_t k = 0; k <= rs; ++k) a[r][k] = nt::mod(a[r][k] - f * a[row][k], p);
    }
    pivcol.push_back(static_cast<int>(c));
    ++row;
  }
  for (std::uint32_t r = row; r < rb; ++r)
    if (a[r][rs] != 0) throw domain_error("project: element does not lie in " + small.name());
  std::vector<std::uint32_t> coef(rs, 0);
  for (std::uint32_t r = 0; r < row; ++r) coef[pivcol[r]] = static_cast<std::uint32_t>(a[r][rs]);
  return {small, small.encode(coef)};
}

/// Norm from a's field down to the subfield `base`: a^(1 + q + ... + q^(r-1)).
inline FieldElem ff_norm(const FieldElem& a, const FiniteField& base) {
  const auto& big = a.field;
  if (big.characteristic() != base.characteristic() || big.degree() % base.degree() != 0)
    throw domain_error("ff_norm: " + base.name() + " is not a subfield of " + big.name());
  const std::uint64_t e = (std::uint64_t(big.size()) - 1) / (std::uint64_t(base.size()) - 1);
  return project({big, big.pow(a.value, static_cast<std::int64_t>(e))}, base);
}

/// Smallest b (in encoding order) with b^n = a, if any.
inline std::optional<FieldElem> ff_nth_root(const FieldElem& a, std::uint32_t n) {
  if (a.is_zero()) throw domain_error("ff_nth_root: zero has no distinguished root");
  if (n == 0) throw domain_error("ff_nth_root: n must be positive");
  const auto& f = a.field;
  if (f.size() <= kExhaustiveFieldSize) {
    for (elem_t b = 1; b < f.size(); ++b)
      if (f.pow(b, n) == a.value) return FieldElem{f, b};
    return std::nullopt;
  }
  const std::uint64_t m = f.size() - 1;
  const std::uint64_t k = f.log(a.value);
  const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(n, m);
  if (k % g != 0) return std::nullopt;
  const std::uint64_t mg = m / g;
  const std::uint64_t j0 =
      mg == 1 ? 0
              : static_cast<std::uint64_t>((k / g) % mg *
                                           nt::inv_mod(static_cast<std::int64_t>((n / g) % mg),
                                                       static_cast<std::int64_t>(mg)) % mg);
  elem_t best = 0;
  for (std::uint64_t t = 0; t < g; ++t) {
    const elem_t b = f.pow(f.generator(), static_cast<std::int64_t>(j0 + t * mg));
    if (best == 0 || b < best) best = b;
  }
  return FieldElem{f, best};
}

/// Discrete log of z in mu_n with respect to the fixed generator.
inline std::uint32_t mu_dlog(const FieldElem& z, const MuN& mu) {
  if (z.field != mu.field) throw domain_error("mu_dlog: element from a different field");
  const auto& f = mu.field;
  if (z.is_zero() || f.pow(z.value, mu.n) != 1)
    throw domain_error("mu_dlog: element is not an n-th root of unity");
  if (mu.n <= kExhaustiveFieldSize) {
    elem_t x = 1;
    for (std::uint32_t k = 0; k < mu.n; ++k) {
      if (x == z.value) return k;
      x = f.mul(x, mu.generator);
    }
    throw std::logic_error("mu_dlog: not found");
  }
  // Baby-step giant-step inside the cyclic subgroup of order n.
  std::uint32_t step = 1;
  while (std::uint64_t(step) * step < mu.n) ++step;
  std::unordered_map<elem_t, std::uint32_t> baby;
  elem_t x = 1;
  for (std::uint32_t j = 0; j < step; ++j) {
    baby.emplace(x, j);
    x = f.mul(x, mu.generator);
  }
  const elem_t giant = f.inv(f.pow(mu.generator, step));
  elem_t y = z.value;
  for (std::uint32_t i = 0; i <= step; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * step + it->second) % mu.n;
    y = f.mul(y, giant);
  }
  throw std::logic_error("mu_dlog: not found");
}

}  // namespace cft
