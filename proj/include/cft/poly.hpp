#pragma once

// Univariate polynomials over a finite field, with factorization.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cft/error.hpp"
#include "cft/ffield.hpp"

namespace cft {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FiniteField f) : f_(std::move(f)) {}
  Poly(FiniteField f, std::vector<elem_t> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const FiniteField& f, elem_t c) { return Poly(f, {c}); }
  static Poly x(const FiniteField& f) { return Poly(f, {0, 1}); }
  /// x - a
  static Poly linear(const FiniteField& f, elem_t a) { return Poly(f, {f.neg(a), 1}); }
  static Poly monomial(const FiniteField& f, elem_t c, std::size_t deg) {
    std::vector<elem_t> v(deg + 1, 0);
    v[deg] = c;
    return Poly(f, std::move(v));
  }

  const FiniteField& field() const { return f_; }
  const std::vector<elem_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  elem_t lead() const { return c_.empty() ? 0 : c_.back(); }
  elem_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Poly monic() const {
    if (is_zero()) return *this;
    const elem_t il = f_.inv(lead());
    return scale(il);
  }
  Poly scale(elem_t s) const {
    if (s == 0) return Poly(f_);
    std::vector<elem_t> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.mul(c_[i], s);
    return Poly(f_, std::move(v));
  }

  elem_t eval(elem_t a) const {
    elem_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, a), c_[i]);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Place order: degree first, then coefficients from the top down.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const auto& f = a.f_.valid() ? a.f_ : b.f_;
    std::vector<elem_t> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }
  Poly operator-() const {
    std::vector<elem_t> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.neg(c_[i]);
    return Poly(f_, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    const auto& f = a.f_.valid() ? a.f_ : b.f_;
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<elem_t> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = f.add(v[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(v));
  }

  /// Quotient and remainder; b must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw domain_error("Poly: division by zero polynomial");
    const auto& f = b.f_;
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<elem_t> r = a.c_;
    std::vector<elem_t> q(a.c_.size() - b.c_.size() + 1, 0);
    const elem_t il = f.inv(b.lead());
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const elem_t c = f.mul(r[k + db], il);
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t i = 0; i <= db; ++i) r[k + i] = f.sub(r[k + i], f.mul(c, b.c_[i]));
    }
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly pow(std::uint64_t e) const {
    Poly r = constant(f_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  Poly powmod(std::uint64_t e, const Poly& m) const {
    Poly r = constant(f_, 1) % m, b = *this % m;
    while (e) {
      if (e & 1) r = (r * b) % m;
      e >>= 1;
      if (e) b = (b * b) % m;
    }
    return r;
  }
  Poly derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<elem_t> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = f_.mul(c_[i], f_.from_int(static_cast<std::int64_t>(i % f_.characteristic())));
    return Poly(f_, std::move(v));
  }

  /// Monic gcd (zero if both are zero).
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }
  /// Extended gcd: (g, s, t) with s*a + t*b = g monic.
  static std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    const auto& f = a.f_.valid() ? a.f_ : b.f_;
    Poly r0 = a, r1 = b, s0 = constant(f, 1), s1(f), t0(f), t1 = constant(f, 1);
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const elem_t il = f.inv(r0.lead());
    return {r0.scale(il), s0.scale(il), t0.scale(il)};
  }
  /// Inverse of a modulo m, or a domain error when not coprime.
  static Poly invmod(const Poly& a, const Poly& m) {
    auto [g, s, t] = xgcd(a % m, m);
    if (!g.is_one()) throw domain_error("Poly: not invertible modulo m");
    return s % m;
  }

  /// Multiplicity of the irreducible pi in *this (nonzero).
  int valuation(const Poly& pi) const {
    if (is_zero()) throw domain_error("Poly: valuation of zero");
    int v = 0;
    Poly a = *this;
    for (;;) {
      auto [q, r] = divmod(a, pi);
      if (!r.is_zero()) return v;
      a = std::move(q);
      ++v;
    }
  }

  /// Plain text in variable x with coefficients as integers (prime field) or [c0,c1,..].
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const elem_t c = c_[i];
      if (c == 0) continue;
      std::string cs = coeff_text(f_, c);
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += cs;
      } else {
        if (c != 1) out += cs + "*";
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  static std::string coeff_text(const FiniteField& f, elem_t c) {
    if (f.degree() == 1) return std::to_string(c);
    auto d = f.digits(c);
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  FiniteField f_;
  std::vector<elem_t> c_;
};

/// Irreducible factorization: leading coefficient and monic factors with exponents, in place order.
struct Factorization {
  elem_t unit = 1;
  std::vector<std::pair<Poly, int>> factors;
};

namespace detail {

inline constexpr std::uint64_t kFactorSeed = 0x9e3779b97f4a7c15ULL;

// p-th root of a polynomial whose derivative vanishes.
inline Poly poly_pth_root(const Poly& a) {
  const auto& f = a.field();
  const std::uint32_t p = f.characteristic();
  std::vector<elem_t> v(a.coeffs().size() / p + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); i += p)
    v[i / p] = f.frobenius(a.coeffs()[i], f.degree() - 1);  // a^(p^(r-1)) is the p-th root
  return Poly(f, std::move(v));
}

// Square-free decomposition of a monic polynomial: list of (square-free factor, multiplicity).
inline std::vector<std::pair<Poly, int>> squarefree(const Poly& a) {
  std::vector<std::pair<Poly, int>> out;
  if (a.degree() <= 0) return out;
  const auto& f = a.field();
  const std::uint32_t p = f.characteristic();
  Poly d = a.derivative();
  if (d.is_zero()) {
    for (auto& [g, e] : squarefree(poly_pth_root(a))) out.emplace_back(g, e * static_cast<int>(p));
    return out;
  }
  Poly c = Poly::gcd(a, d);
  Poly w = a / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = Poly::gcd(w, c);
    Poly z = w / y;
    if (!z.is_one()) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    for (auto& [g, e] : squarefree(poly_pth_root(c))) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

// x^(q^k) mod a, iterated.
inline std::vector<std::pair<Poly, int>> distinct_degree(const Poly& a) {
  std::vector<std::pair<Poly, int>> out;
  const auto& f = a.field();
  Poly rest = a;
  Poly h = Poly::x(f) % rest;
  const Poly x = Poly::x(f);
  for (int k = 1; 2 * k <= rest.degree(); ++k) {
    h = h.powmod(f.size(), rest);
    Poly g = Poly::gcd(rest, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, k);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

inline void equal_degree(const Poly& a, int k, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (a.degree() == k) {
    out.push_back(a);
    return;
  }
  const auto& f = a.field();
  const std::uint64_t q = f.size();
  std::uniform_int_distribution<elem_t> coef(0, f.size() - 1);
  for (;;) {
    std::vector<elem_t> rc(a.degree());
    for (auto& c : rc) c = coef(rng);
    Poly r(f, rc);
    if (r.degree() <= 0) continue;
    Poly t(f);
    if (f.characteristic() == 2) {
      // Trace map r + r^2 + ... + r^(2^(m-1)) with q^k = 2^m.
      const std::uint64_t m = std::uint64_t(f.degree()) * k;
      Poly s = r % a;
      t = s;
      for (std::uint64_t i = 1; i < m; ++i) {
        s = (s * s) % a;
        t = t + s;
      }
    } else {
      std::uint64_t e = 1;
      for (int i = 0; i < k; ++i) e *= q;
      t = r.powmod((e - 1) / 2, a) - Poly::constant(f, 1);
    }
    Poly g = Poly::gcd(a, t);
    if (g.degree() > 0 && g.degree() < a.degree()) {
      equal_degree(g, k, rng, out);
      equal_degree(a / g, k, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Irreducible factorization, deterministic for a fixed seed.
inline Factorization factor(const Poly& a, std::uint64_t seed = detail::kFactorSeed) {
  if (a.is_zero()) throw domain_error("factor: zero polynomial");
  Factorization res;
  res.unit = a.lead();
  if (a.degree() == 0) return res;
  std::mt19937_64 rng(seed);
  std::map<Poly, int> acc;
  for (auto& [sf, e] : detail::squarefree(a.monic())) {
    for (auto& [g, k] : detail::distinct_degree(sf)) {
      std::vector<Poly> parts;
      detail::equal_degree(g, k, rng, parts);
      for (auto& pp : parts) acc[pp] += e;
    }
  }
  for (auto& kv : acc) res.factors.emplace_back(kv.first, kv.second);
  return res;
}

/// Rabin test over F_q.
inline bool is_irreducible(const Poly& a) {
  const int n = a.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const auto& f = a.field();
  const Poly m = a.monic();
  const Poly x = Poly::x(f);
  std::vector<Poly> frob(n + 1, Poly(f));
  frob[0] = x % m;
  for (int k = 1; k <= n; ++k) frob[k] = frob[k - 1].powmod(f.size(), m);
  if (!(frob[n] - frob[0]).is_zero()) return false;
  for (auto l : nt::prime_divisors(static_cast<std::uint64_t>(n)))
    if (!Poly::gcd(m, frob[n / l] - frob[0]).is_one()) return false;
  return true;
}

/// Monic polynomial of degree d with lower coefficients given by the base-q digits of idx.
inline Poly monic_from_index(const FiniteField& f, int d, std::uint64_t idx) {
  std::vector<elem_t> v(d + 1);
  for (int i = 0; i < d; ++i) {
    v[i] = static_cast<elem_t>(idx % f.size());
    idx /= f.size();
  }
  v[d] = 1;
  return Poly(f, std::move(v));
}

/// Number of monic polynomials of degree d, or a size error beyond 2^24.
inline std::uint64_t monic_count(const FiniteField& f, int d) {
  std::uint64_t c = 1;
  for (int i = 0; i < d; ++i) {
    c *= f.size();
    if (c > (1u << 24)) throw size_error("too many polynomials of degree " + std::to_string(d));
  }
  return c;
}

/// All monic irreducibles of degree d, in place order. Cached.
inline const std::vector<Poly>& irreducibles(const FiniteField& f, int d) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::vector<Poly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f.size(), d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Poly> out;
  const std::uint64_t cnt = monic_count(f, d);
  for (std::uint64_t idx = 0; idx < cnt; ++idx) {
    Poly m = monic_from_index(f, d, idx);
    if (d > 1 && m.coeff(0) == 0) continue;
    if (is_irreducible(m)) out.push_back(std::move(m));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

namespace detail {

// Some root of an irreducible polynomial over its field, inside the extension of degree deg.
inline FieldElem irreducible_root(const Poly& pi, const FiniteField& K) {
  const auto& f = pi.field();
  if (pi.degree() == 1) return embed(FieldElem{f, f.neg(f.div(pi.coeff(0), pi.lead()))}, K);
  std::vector<elem_t> c;
  for (auto v : pi.coeffs()) c.push_back(embed(FieldElem{f, v}, K).value);
  for (auto& [g, e] : factor(Poly(K, c)).factors)
    if (g.degree() == 1) return {K, K.neg(g.coeff(0))};
  throw std::logic_error("irreducible_root: no root in extension");
}

}  // namespace detail

}  // namespace cft
