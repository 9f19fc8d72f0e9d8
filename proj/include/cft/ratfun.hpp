#pragma once

// The rational function field F_q(x): places, divisors, functions, residues and evaluation.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cft/abgroup.hpp"
#include "cft/divisor.hpp"
#include "cft/error.hpp"
#include "cft/ffield.hpp"
#include "cft/poly.hpp"

namespace cft {

/// A place of F_q(x): a monic irreducible polynomial, or the infinite place.
class RatPlace {
 public:
  RatPlace() = default;

  static RatPlace finite(const Poly& pi) {
    if (!pi.is_monic() || !is_irreducible(pi))
      throw domain_error("RatPlace: " + pi.to_string() + " is not monic irreducible");
    return RatPlace(pi.field(), pi, false);
  }
  /// Skips the irreducibility test; for polynomials known to be monic irreducible.
  static RatPlace trusted(const Poly& pi) { return RatPlace(pi.field(), pi, false); }
  static RatPlace infinity(const FiniteField& f) { return RatPlace(f, Poly(f), true); }

  bool is_infinite() const { return inf_; }
  const Poly& poly() const { return pi_; }
  const FiniteField& field() const { return f_; }
  int degree() const { return inf_ ? 1 : pi_.degree(); }
  /// N(p) = q^deg(p).
  std::uint64_t norm() const { return nt::pow_u64(f_.size(), static_cast<unsigned>(degree())); }

  friend bool operator==(const RatPlace& a, const RatPlace& b) { return a.inf_ == b.inf_ && a.pi_ == b.pi_; }
  friend bool operator!=(const RatPlace& a, const RatPlace& b) { return !(a == b); }
  /// Degree, then coefficients from the top; infinity after all finite places.
  friend bool operator<(const RatPlace& a, const RatPlace& b) {
    if (a.inf_ != b.inf_) return b.inf_;
    return a.pi_ < b.pi_;
  }

  std::string to_string() const { return inf_ ? "inf" : "(" + pi_.to_string() + ")"; }

 private:
  RatPlace(FiniteField f, Poly pi, bool inf) : f_(std::move(f)), pi_(std::move(pi)), inf_(inf) {}
  FiniteField f_;
  Poly pi_;
  bool inf_ = false;
};

using RatDivisor = Divisor<RatPlace>;

/// Nonzero element of F_q(x) as a reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Poly& num) : RatFunc(num, Poly::constant(num.field(), 1)) {}
  RatFunc(const Poly& num, const Poly& den) {
    if (num.is_zero()) throw domain_error("RatFunc: zero function");
    if (den.is_zero()) throw domain_error("RatFunc: zero denominator");
    Poly g = Poly::gcd(num, den);
    Poly n = num / g, d = den / g;
    const elem_t l = d.lead();
    const auto& f = num.field();
    num_ = n.scale(f.inv(l));
    den_ = d.monic();
  }
  static RatFunc constant(const FiniteField& f, elem_t c) { return RatFunc(Poly::constant(f, c)); }
  static RatFunc x(const FiniteField& f) { return RatFunc(Poly::x(f)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FiniteField& field() const { return num_.field(); }
  bool is_constant() const { return num_.degree() == 0 && den_.degree() == 0; }
  /// Leading coefficient ratio: the constant c with f = c * monic / monic.
  elem_t lead() const { return num_.lead(); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc inv() const { return RatFunc(den_, num_); }
  RatFunc pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    return RatFunc(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// "(x^2+1)/(x+4) over GF(5)"
  std::string to_string() const {
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ") over " + field().name();
  }

 private:
  Poly num_, den_;
};

/// ord_p(f).
inline std::int64_t ord(const RatFunc& f, const RatPlace& p) {
  if (p.is_infinite()) return f.den().degree() - f.num().degree();
  return f.num().valuation(p.poly()) - f.den().valuation(p.poly());
}

/// div(f): zeros minus poles, including the infinite place.
inline RatDivisor principal_divisor(const RatFunc& f) {
  RatDivisor d;
  for (auto& [g, e] : factor(f.num()).factors) d.add(RatPlace::trusted(g), e);
  for (auto& [g, e] : factor(f.den()).factors) d.add(RatPlace::trusted(g), -e);
  d.add(RatPlace::infinity(f.field()), f.den().degree() - f.num().degree());
  return d;
}

/// Places of degree <= B: finite places in order, then infinity.
inline std::vector<RatPlace> rat_places_up_to_degree(const FiniteField& f, int B) {
  std::vector<RatPlace> out;
  for (int d = 1; d <= B; ++d)
    for (auto& pi : irreducibles(f, d)) out.push_back(RatPlace::trusted(pi));
  out.push_back(RatPlace::infinity(f));
  return out;
}

/// Residue ring of a place: F_q[x]/(pi), or F_q (as constants) at infinity.
class ResidueField {
 public:
  explicit ResidueField(const RatPlace& p)
      : place_(p), mod_(p.is_infinite() ? Poly::x(p.field()) : p.poly()) {}

  const RatPlace& place() const { return place_; }
  const FiniteField& base() const { return place_.field(); }
  std::uint64_t size() const { return place_.norm(); }

  Poly reduce(const Poly& a) const { return a % mod_; }
  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % mod_; }
  Poly inv(const Poly& a) const { return Poly::invmod(a, mod_); }
  Poly pow(const Poly& a, std::uint64_t e) const { return a.powmod(e, mod_); }
  Poly one() const { return Poly::constant(base(), 1); }

  /// Norm down to F_q: the product of the Frobenius conjugates.
  elem_t norm(const Poly& a) const {
    Poly acc = reduce(a), conj = acc;
    for (int i = 1; i < place_.degree(); ++i) {
      conj = pow(conj, base().size());
      acc = mul(acc, conj);
    }
    if (acc.degree() > 0) throw std::logic_error("ResidueField: norm left the base field");
    return acc.coeff(0);
  }

 private:
  RatPlace place_;
  Poly mod_;
};

/// Residue at p of the unit f * t^(-ord_p f), t = pi or 1/x.
inline Poly unit_residue(const RatFunc& f, const RatPlace& p) {
  const auto& F = f.field();
  if (p.is_infinite()) return Poly::constant(F, F.div(f.num().lead(), f.den().lead()));
  Poly num = f.num(), den = f.den();
  while ((num % p.poly()).is_zero()) num = num / p.poly();
  while ((den % p.poly()).is_zero()) den = den / p.poly();
  ResidueField k(p);
  return k.mul(k.reduce(num), k.inv(den));
}

/// Class of a residue in F_p^x/(F_p^x)^n, identified by u^((N(p)-1)/gcd(n, N(p)-1)).
struct ResidueClass {
  RatPlace place;
  std::uint32_t n = 1;
  Poly representative;
  Poly character;

  bool is_trivial() const { return character.is_one(); }
  friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
    return a.place == b.place && a.n == b.n && a.character == b.character;
  }
};

inline ResidueClass make_residue_class(const RatPlace& p, std::uint32_t n, const Poly& u) {
  ResidueField k(p);
  const std::uint64_t m = p.norm() - 1;
  const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(n, m);
  return {p, n, k.reduce(u), k.pow(u, m / g)};
}

/// f_{n,p} in F_p^x/(F_p^x)^n; the class of 1 when ord_p f is not divisible by n.
/// The optional aux must satisfy ord_p(aux) = ord_p(f)/n; the class does not depend on it.
inline ResidueClass residue_mod_nth_powers(const RatFunc& f, const RatPlace& p, std::uint32_t n,
                                           const std::optional<RatFunc>& aux = std::nullopt) {
  if (n == 0 || std::gcd<std::uint64_t, std::uint64_t>(n, f.field().size()) != 1)
    throw domain_error("residue_mod_nth_powers: n must be coprime to q");
  const std::int64_t v = ord(f, p);
  if (v % n != 0) return make_residue_class(p, n, Poly::constant(f.field(), 1));
  if (!aux) return make_residue_class(p, n, unit_residue(f, p));
  if (ord(*aux, p) * n != v) throw domain_error("residue_mod_nth_powers: auxiliary function has wrong order");
  return make_residue_class(p, n, unit_residue(f / aux->pow(n), p));
}

/// f(D) = prod_p N(f_p)^{ord_p D}; f must be a unit at every place of supp(D).
inline FieldElem evaluate(const RatFunc& f, const RatDivisor& D) {
  const auto& F = f.field();
  elem_t acc = 1;
  for (auto& [p, k] : D.terms()) {
    if (ord(f, p) != 0)
      throw precondition_error("evaluate: function and divisor share the place " + p.to_string());
    elem_t v = p.is_infinite() ? F.div(f.num().lead(), f.den().lead()) : ResidueField(p).norm(unit_residue(f, p));
    acc = F.mul(acc, F.pow(v, k));
  }
  return {F, acc};
}

namespace detail {

inline bool place_forbidden(const RatPlace& p, const std::set<RatPlace>& a, const std::set<RatPlace>& b) {
  return a.count(p) || b.count(p);
}

// Least finite place of degree d outside both sets.
inline std::optional<RatPlace> least_place_outside(const FiniteField& f, int d, const std::set<RatPlace>& a,
                                                   const std::set<RatPlace>& b) {
  for (auto& pi : irreducibles(f, d)) {
    RatPlace p = RatPlace::trusted(pi);
    if (!place_forbidden(p, a, b)) return p;
  }
  return std::nullopt;
}

}  // namespace detail

/// Multiplies f by an n-th power so that it becomes a unit at every place of avoid.
/// Auxiliary places: infinity when it is not avoided, else least monic irreducibles outside avoid and supp(f).
inline RatFunc coprime_shift(const RatFunc& f, std::uint32_t n, const std::set<RatPlace>& avoid) {
  const auto& F = f.field();
  std::set<RatPlace> supp;
  for (auto& p : principal_divisor(f).support()) supp.insert(p);
  const bool inf_free = !avoid.count(RatPlace::infinity(F));
  RatFunc g = f;
  for (auto& p : avoid) {
    if (!supp.count(p)) continue;
    const std::int64_t v = ord(f, p);
    if (v % n != 0)
      throw precondition_error("coprime_shift: order at " + p.to_string() + " is not divisible by n");
    RatFunc h;  // ord_p(h) = 1, unit at every other avoided place
    if (!p.is_infinite()) {
      if (inf_free) {
        h = RatFunc(p.poly());
      } else {
        std::optional<RatPlace> a;
        for (int d = 1; d <= p.degree() && !a; ++d)
          if (p.degree() % d == 0) a = detail::least_place_outside(F, d, avoid, supp);
        if (a) {
          h = RatFunc(p.poly(), a->poly().pow(static_cast<std::uint64_t>(p.degree() / a->degree())));
        } else {
          // h = pi * b / c with deg c = deg pi + deg b.
          for (int e = 1;; ++e) {
            auto b = detail::least_place_outside(F, e, avoid, supp);
            auto c = detail::least_place_outside(F, p.degree() + e, avoid, supp);
            if (!b || !c) continue;
            h = RatFunc(p.poly() * b->poly(), c->poly());
            break;
          }
        }
      }
    } else {
      // h = b / a with deg a = deg b + 1 has a simple zero at infinity.
      for (int e = 0;; ++e) {
        std::optional<RatPlace> b;
        if (e > 0) {
          b = detail::least_place_outside(F, e, avoid, supp);
          if (!b) continue;
        }
        auto a = detail::least_place_outside(F, e + 1, avoid, supp);
        if (!a) continue;
        h = RatFunc(b ? b->poly() : Poly::constant(F, 1), a->poly());
        break;
      }
    }
    g = g / h.pow(v);
  }
  return g;
}

/// Drops from D the places of avoid, which must carry multiplicities divisible by n.
inline RatDivisor coprime_shift(const RatDivisor& D, std::uint32_t n, const std::set<RatPlace>& avoid) {
  RatDivisor out;
  for (auto& [p, k] : D.terms()) {
    if (!avoid.count(p)) {
      out.add(p, k);
      continue;
    }
    if (k % n != 0) throw precondition_error("coprime_shift: multiplicity at " + p.to_string() + " is not divisible by n");
  }
  return out;
}

/// f lies in F_{n,S}: ord_p(f) divisible by n at every place outside S.
inline bool selmer_contains(const RatFunc& f, std::uint32_t n, const std::set<RatPlace>& S) {
  const RatDivisor d = principal_divisor(f);
  for (auto& [p, k] : d.terms())
    if (!S.count(p) && k % static_cast<std::int64_t>(n) != 0) return false;
  return true;
}

/// The same polynomial over an extension field.
inline Poly embed_poly(const Poly& a, const FiniteField& K) {
  std::vector<elem_t> c;
  for (auto v : a.coeffs()) c.push_back(embed(FieldElem{a.field(), v}, K).value);
  return Poly(K, std::move(c));
}

inline RatFunc embed_func(const RatFunc& f, const FiniteField& K) {
  return RatFunc(embed_poly(f.num(), K), embed_poly(f.den(), K));
}

/// Coefficients raised to the power q^times, q the size of `base`.
inline Poly frobenius_coeffs(const Poly& a, const FiniteField& base, std::int64_t times) {
  const auto& K = a.field();
  const std::int64_t r = K.degree(), t = nt::mod(times * base.degree(), r);
  std::vector<elem_t> c;
  for (auto v : a.coeffs()) c.push_back(K.frobenius(v, static_cast<std::uint32_t>(t)));
  return Poly(K, std::move(c));
}

inline RatFunc frobenius_coeffs(const RatFunc& f, const FiniteField& base, std::int64_t times) {
  return RatFunc(frobenius_coeffs(f.num(), base, times), frobenius_coeffs(f.den(), base, times));
}

/// a(alpha) with the coefficients embedded into the field of alpha.
inline FieldElem eval_poly(const Poly& a, const FieldElem& alpha) {
  const auto& K = alpha.field;
  FieldElem acc{K, 0};
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * alpha + embed(FieldElem{a.field(), c[i]}, K);
  return acc;
}

/// Con(p) in K(x) for a place p of F_q(x): the places above p, each with multiplicity one.
inline RatDivisor conorm(const RatPlace& p, const FiniteField& K) {
  RatDivisor D;
  if (p.is_infinite()) {
    D.add(RatPlace::infinity(K), 1);
    return D;
  }
  for (auto& [g, e] : factor(embed_poly(p.poly(), K)).factors) D.add(RatPlace::trusted(g.monic()), e);
  return D;
}

/// N(P) for a place P of K(x) over F_q(x), base the field F_q: f * p with f the residue degree.
inline RatDivisor norm_place(const RatPlace& P, const FiniteField& base) {
  const auto& K = P.field();
  const std::int64_t d = K.degree() / base.degree();
  RatDivisor D;
  if (P.is_infinite()) {
    D.add(RatPlace::infinity(base), d);
    return D;
  }
  Poly prod = Poly::constant(K, 1);
  for (std::int64_t i = 0; i < d; ++i) prod = prod * frobenius_coeffs(P.poly(), base, i);
  std::vector<elem_t> c;
  for (auto v : prod.coeffs()) c.push_back(project(FieldElem{K, v}, base).value);
  for (auto& [g, e] : factor(Poly(base, std::move(c))).factors) D.add(RatPlace::trusted(g.monic()), e);
  return D;
}

inline RatDivisor norm_divisor(const RatDivisor& D, const FiniteField& base) {
  RatDivisor N;
  for (auto& [P, k] : D.terms()) N = N + k * norm_place(P, base);
  return N;
}

/// A finite set of places or the complement of one.
struct PlaceSet {
  std::set<RatPlace> places;
  bool cofinite = false;

  static PlaceSet finite(std::set<RatPlace> s) { return {std::move(s), false}; }
  bool contains(const RatPlace& p) const { return cofinite != (places.count(p) > 0); }
  PlaceSet complement() const { return {places, !cofinite}; }

  /// "{(x), inf}" or "~{(x)}" for a complement.
  std::string to_string() const {
    std::string s = cofinite ? "~{" : "{";
    bool first = true;
    for (auto& p : places) {
      s += (first ? "" : ", ") + p.to_string();
      first = false;
    }
    return s + "}";
  }
};

/// Independent generators of F_{n,S}/(F^x)^n with their orders.
class SelmerBasis {
 public:
  SelmerBasis() = default;
  SelmerBasis(const FiniteField& F, std::uint32_t n, const std::set<RatPlace>& S) : F_(F), n_(n), S_(S) {
    if (n == 0 || std::gcd<std::uint64_t, std::uint64_t>(n, F.size()) != 1)
      throw domain_error("selmer_basis: n must be coprime to q");
    const std::int64_t N = n;
    const_order_ = std::gcd<std::int64_t, std::int64_t>(N, F.size() - 1);
    if (const_order_ > 1) {
      gens_.push_back(RatFunc::constant(F, F.generator()));
      orders_.push_back(const_order_);
    }
    for (auto& p : S)
      if (p.is_infinite()) inf_in_S_ = true;
      else finite_.push_back(p);
    const std::size_t s = finite_.size();
    if (s == 0) return;
    if (inf_in_S_) {
      V_ = W_ = IntMatrix::identity(s);
      head_order_ = N;
    } else {
      IntMatrix row(1, s);
      for (std::size_t i = 0; i < s; ++i) row(0, i) = finite_[i].degree();
      auto snf = smith_mod(row, N);
      V_ = snf.V;
      W_ = snf.W;
      // Kernel of e -> sum e_i deg_i mod n: y_0 in (n/d')Z, other coordinates free.
      head_order_ = std::gcd<std::int64_t, std::int64_t>(row_gcd(row), N);
    }
    for (std::size_t j = 0; j < s; ++j) {
      const std::int64_t ordj = (j == 0 && !inf_in_S_) ? head_order_ : N;
      const std::int64_t scale = (j == 0 && !inf_in_S_) ? N / head_order_ : 1;
      if (ordj <= 1) continue;
      std::vector<std::int64_t> e(s);
      for (std::size_t i = 0; i < s; ++i) e[i] = symmetric(V_(i, j) * scale, N);
      gens_.push_back(from_exponents(e));
      orders_.push_back(ordj);
      columns_.push_back(j);
    }
  }

  std::uint32_t n() const { return n_; }
  const std::set<RatPlace>& places() const { return S_; }
  const std::vector<RatFunc>& generators() const { return gens_; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : orders_) o *= static_cast<std::uint64_t>(d);
    return o;
  }
  FinAbGroup group() const { return FinAbGroup::from_orders(orders_); }

  /// Coordinates of the class of f with respect to generators(); domain error if f is not in F_{n,S}.
  std::vector<std::int64_t> coordinates(const RatFunc& f) const {
    if (!selmer_contains(f, n_, S_)) throw domain_error("SelmerBasis: function is not in F_{n,S}");
    const std::int64_t N = n_;
    std::vector<std::int64_t> c;
    if (const_order_ > 1) c.push_back(static_cast<std::int64_t>(F_.log(f.lead())) % const_order_);
    const std::size_t s = finite_.size();
    std::vector<std::int64_t> e(s);
    for (std::size_t i = 0; i < s; ++i) e[i] = nt::mod(ord(f, finite_[i]), N);
    for (std::size_t t = 0; t < columns_.size(); ++t) {
      const std::size_t j = columns_[t];
      std::int64_t y = 0;
      for (std::size_t i = 0; i < s; ++i) y = nt::mod(y + W_(j, i) * e[i], N);
      if (j == 0 && !inf_in_S_) {
        const std::int64_t step = N / head_order_;
        if (y % step != 0) throw std::logic_error("SelmerBasis: degree condition violated");
        y = (y / step) % head_order_;
      }
      c.push_back(y);
    }
    return c;
  }

  /// prod g_i^{c_i}.
  RatFunc element(const std::vector<std::int64_t>& c) const {
    RatFunc r = RatFunc::constant(F_, 1);
    for (std::size_t i = 0; i < gens_.size(); ++i) r = r * gens_[i].pow(nt::mod(c[i], orders_[i]));
    return r;
  }

  /// All coordinate vectors, lexicographically.
  std::vector<std::vector<std::int64_t>> elements() const {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(orders_.size(), 0);
    for (std::uint64_t c = 0; c < order(); ++c) {
      out.push_back(x);
      for (std::size_t i = orders_.size(); i-- > 0;) {
        if (++x[i] < orders_[i]) break;
        x[i] = 0;
      }
    }
    return out;
  }

 private:
  static std::int64_t row_gcd(const IntMatrix& row) {
    std::int64_t g = 0;
    for (auto v : row.a) g = std::gcd(g, v);
    return g;
  }
  static std::int64_t symmetric(std::int64_t v, std::int64_t n) {
    v = nt::mod(v, n);
    return 2 * v > n ? v - n : v;
  }
  RatFunc from_exponents(const std::vector<std::int64_t>& e) const {
    Poly num = Poly::constant(F_, 1), den = Poly::constant(F_, 1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) num = num * finite_[i].poly().pow(static_cast<std::uint64_t>(e[i]));
      if (e[i] < 0) den = den * finite_[i].poly().pow(static_cast<std::uint64_t>(-e[i]));
    }
    return RatFunc(num, den);
  }

  FiniteField F_;
  std::uint32_t n_ = 1;
  std::set<RatPlace> S_;
  std::vector<RatPlace> finite_;
  bool inf_in_S_ = false;
  std::int64_t const_order_ = 1;
  std::int64_t head_order_ = 1;
  IntMatrix V_, W_;
  std::vector<std::size_t> columns_;
  std::vector<RatFunc> gens_;
  std::vector<std::int64_t> orders_;
};

inline SelmerBasis selmer_basis(const FiniteField& F, std::uint32_t n, const std::set<RatPlace>& S) {
  return SelmerBasis(F, n, S);
}

}  // namespace cft
