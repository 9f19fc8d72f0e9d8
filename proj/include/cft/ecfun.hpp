#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cft/divisor.hpp"
#include "cft/error.hpp"
#include "cft/ffield.hpp"
#include "cft/ntheory.hpp"
#include "cft/poly.hpp"

namespace cft {

namespace detail {

inline std::string field_label(const FiniteField& f) {
  if (f.degree() == 1) return "GF(" + std::to_string(f.characteristic()) + ")";
  return "GF(" + std::to_string(f.characteristic()) + "^" + std::to_string(f.degree()) + ")";
}

}  // namespace detail

/// Affine point (x, y) over some extension of the curve field, or the point at infinity O.
struct ECPoint {
  bool inf = true;
  FieldElem x, y;

  ECPoint() = default;
  ECPoint(FieldElem x_, FieldElem y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {
    if (x.field != y.field) throw precondition_error("ECPoint: coordinates over different fields");
  }
  static ECPoint infinity() { return {}; }

  bool is_infinity() const { return inf; }
  const FiniteField& field() const { return x.field; }

  friend bool operator==(const ECPoint& a, const ECPoint& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const ECPoint& a, const ECPoint& b) { return !(a == b); }
  friend bool operator<(const ECPoint& a, const ECPoint& b) {
    if (a.inf || b.inf) return a.inf && !b.inf;
    return std::make_pair(a.x.value, a.y.value) < std::make_pair(b.x.value, b.y.value);
  }

  /// "(3,4)@GF(7)", "([1,2],[0,3])@GF(7^2)" or "O".
  std::string to_string() const {
    if (inf) return "O";
    return "(" + Poly::coeff_text(x.field, x.value) + "," + Poly::coeff_text(y.field, y.value) +
           ")@" + detail::field_label(x.field);
  }
};

/// Short Weierstrass curve y^2 = x^3 + a x + b over F_q, characteristic > 3.
class Curve {
 public:
  Curve() = default;
  Curve(FieldElem a, FieldElem b) : a_(std::move(a)), b_(std::move(b)) {
    validate();
    const std::int64_t q = field().size();
    trace_ = q + 1 - static_cast<std::int64_t>(count_by_character());
  }
  static Curve make(const FiniteField& f, std::int64_t a, std::int64_t b) {
    return Curve(FieldElem::from_int(f, a), FieldElem::from_int(f, b));
  }

  const FiniteField& field() const { return a_.field; }
  const FieldElem& a() const { return a_; }
  const FieldElem& b() const { return b_; }
  std::uint64_t q() const { return field().size(); }
  std::int64_t trace() const { return trace_; }

  /// #E(F_{q^r}) = q^r + 1 - s_r with s_r = t s_{r-1} - q s_{r-2}.
  std::uint64_t order(std::uint32_t r = 1) const {
    if (r == 0) throw domain_error("Curve::order: r must be positive");
    const __int128 q = static_cast<__int128>(this->q());
    __int128 s0 = 2, s1 = trace_, qr = q;
    for (std::uint32_t i = 1; i < r; ++i) {
      const __int128 s2 = trace_ * s1 - q * s0;
      s0 = s1;
      s1 = s2;
      qr *= q;
      if (qr > (static_cast<__int128>(1) << 62)) throw size_error("Curve::order: overflow");
    }
    return static_cast<std::uint64_t>(qr + 1 - s1);
  }

  FiniteField extension(std::uint32_t k) const {
    return FiniteField::make(field().characteristic(), field().degree() * k);
  }

  /// The same curve over F_{q^k}.
  Curve base_change(std::uint32_t k) const {
    if (k == 1) return *this;
    const FiniteField big = extension(k);
    Curve c;
    c.a_ = embed(a_, big);
    c.b_ = embed(b_, big);
    std::int64_t s0 = 2, s1 = trace_;
    for (std::uint32_t i = 1; i < k; ++i) {
      const std::int64_t s2 = trace_ * s1 - static_cast<std::int64_t>(q()) * s0;
      s0 = s1;
      s1 = s2;
    }
    c.trace_ = s1;
    return c;
  }

  /// x^3 + a x + b with the coefficients embedded into x's field.
  FieldElem rhs(const FieldElem& x) const {
    return x * x * x + embed(a_, x.field) * x + embed(b_, x.field);
  }
  bool contains(const ECPoint& P) const {
    if (P.inf) return true;
    return P.y * P.y == rhs(P.x);
  }

  /// "y^2=x^3+a*x+b over GF(q)"
  std::string to_string() const {
    return "y^2=x^3+" + Poly::coeff_text(field(), a_.value) + "*x+" +
           Poly::coeff_text(field(), b_.value) + " over " + field().name();
  }

  friend bool operator==(const Curve& c, const Curve& d) { return c.a_ == d.a_ && c.b_ == d.b_; }
  friend bool operator!=(const Curve& c, const Curve& d) { return !(c == d); }

 private:
  void validate() const {
    if (a_.field != b_.field) throw precondition_error("Curve: coefficients over different fields");
    if (field().characteristic() <= 3) throw domain_error("Curve: characteristic must exceed 3");
    const FieldElem disc =
        FieldElem::from_int(field(), 4) * a_ * a_ * a_ + FieldElem::from_int(field(), 27) * b_ * b_;
    if (disc.is_zero()) throw domain_error("Curve: singular, 4a^3 + 27b^2 = 0");
  }
  // Euler-criterion count over F_q.
  std::uint64_t count_by_character() const {
    const auto& f = field();
    const std::int64_t half = (static_cast<std::int64_t>(f.size()) - 1) / 2;
    std::uint64_t n = 1;
    for (elem_t x = 0; x < f.size(); ++x) {
      const elem_t v = rhs({f, x}).value;
      if (v == 0) n += 1;
      else if (f.pow(v, half) == 1) n += 2;
    }
    return n;
  }

  FieldElem a_, b_;
  std::int64_t trace_ = 0;
};

inline ECPoint ec_neg(const ECPoint& P) {
  if (P.inf) return P;
  return {P.x, -P.y};
}

inline ECPoint ec_add(const Curve& C, const ECPoint& P, const ECPoint& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.field() != Q.field()) throw precondition_error("ec_add: points over different fields");
  FieldElem lambda;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y.is_zero()) return ECPoint::infinity();
    const auto& f = P.field();
    lambda = (FieldElem::from_int(f, 3) * P.x * P.x + embed(C.a(), f)) /
             (FieldElem::from_int(f, 2) * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  const FieldElem x3 = lambda * lambda - P.x - Q.x;
  return {x3, lambda * (P.x - x3) - P.y};
}

inline ECPoint ec_mul(const Curve& C, ECPoint P, std::int64_t k) {
  if (k < 0) {
    P = ec_neg(P);
    k = -k;
  }
  ECPoint R = ECPoint::infinity();
  while (k) {
    if (k & 1) R = ec_add(C, R, P);
    P = ec_add(C, P, P);
    k >>= 1;
  }
  return R;
}

/// q-power Frobenius applied `times` times.
inline ECPoint ec_frobenius(const Curve& C, const ECPoint& P, std::uint32_t times = 1) {
  if (P.inf) return P;
  const std::uint32_t t = C.field().degree() * times;
  const auto& f = P.field();
  return {{f, f.frobenius(P.x.value, t)}, {f, f.frobenius(P.y.value, t)}};
}

/// Move a point to an extension field of its field of definition.
inline ECPoint lift(const ECPoint& P, const FiniteField& K) {
  if (P.inf) return P;
  return {embed(P.x, K), embed(P.y, K)};
}

/// Exact order of a point, using the group order of its field.
inline std::uint64_t ec_order(const Curve& C, const ECPoint& P) {
  if (P.inf) return 1;
  std::uint64_t m = C.order(P.field().degree() / C.field().degree());
  for (auto l : nt::prime_divisors(m))
    while (m % l == 0 && ec_mul(C, P, static_cast<std::int64_t>(m / l)).inf) m /= l;
  return m;
}

/// All points of E(K) in encoding order, O first.
inline std::vector<ECPoint> rational_points(const Curve& C, const FiniteField& K) {
  if (K.size() > kMaxFieldSize) throw size_error("rational_points: field too large");
  std::vector<elem_t> root(K.size(), K.size());
  for (elem_t y = 0; y < K.size(); ++y) {
    const elem_t s = K.mul(y, y);
    if (root[s] == K.size()) root[s] = y;
  }
  std::vector<ECPoint> out{ECPoint::infinity()};
  for (elem_t x = 0; x < K.size(); ++x) {
    const FieldElem X{K, x};
    const elem_t v = C.rhs(X).value;
    const elem_t s = root[v];
    if (s == K.size()) continue;
    if (s == 0) {
      out.emplace_back(X, FieldElem{K, 0});
      continue;
    }
    const elem_t t = K.neg(s);
    out.emplace_back(X, FieldElem{K, std::min(s, t)});
    out.emplace_back(X, FieldElem{K, std::max(s, t)});
  }
  return out;
}

/// #E(F_{q^r}) by enumeration.
inline std::uint64_t count_points_enumerate(const Curve& C, std::uint32_t r = 1) {
  return rational_points(C, C.extension(r)).size();
}

/// Closed point: Frobenius orbit, represented by its least point over the minimal field F_{q^d}.
class ECPlace {
 public:
  ECPlace() = default;
  static ECPlace infinity() { return {}; }

  static ECPlace of(const Curve& C, const ECPoint& P) {
    if (P.inf) return {};
    std::vector<ECPoint> orbit{P};
    for (ECPoint Q = ec_frobenius(C, P); Q != P; Q = ec_frobenius(C, Q)) orbit.push_back(Q);
    const auto d = static_cast<std::uint32_t>(orbit.size());
    const FiniteField Kd = C.extension(d);
    ECPlace pl;
    pl.degree_ = d;
    bool first = true;
    for (auto& Q : orbit) {
      ECPoint R{project(Q.x, Kd), project(Q.y, Kd)};
      if (first || R < pl.rep_) pl.rep_ = R;
      first = false;
    }
    return pl;
  }

  bool is_infinite() const { return rep_.inf; }
  const ECPoint& point() const { return rep_; }
  std::int64_t degree() const { return degree_; }
  std::string to_string() const { return rep_.to_string(); }

  friend bool operator<(const ECPlace& a, const ECPlace& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.rep_ < b.rep_;
  }
  friend bool operator==(const ECPlace& a, const ECPlace& b) {
    return a.degree_ == b.degree_ && a.rep_ == b.rep_;
  }
  friend bool operator!=(const ECPlace& a, const ECPlace& b) { return !(a == b); }

 private:
  ECPoint rep_;
  std::uint32_t degree_ = 1;
};

using ECDivisor = Divisor<ECPlace>;

/// All places of degree <= d_max, O first, in place order.
inline std::vector<ECPlace> places_up_to_degree(const Curve& C, std::uint32_t d_max) {
  std::uint64_t qd = 1;
  for (std::uint32_t i = 0; i < d_max; ++i) {
    qd *= C.q();
    if (qd > kMaxFieldSize) throw size_error("places_up_to_degree: q^d exceeds 2^20");
  }
  std::vector<ECPlace> out{ECPlace::infinity()};
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    const FiniteField K = C.extension(d);
    for (auto& P : rational_points(C, K)) {
      if (P.inf) continue;
      std::uint32_t size = 1;
      bool least = true;
      for (ECPoint Q = ec_frobenius(C, P); Q != P; Q = ec_frobenius(C, Q)) {
        ++size;
        if (Q < P) least = false;
      }
      if (size == d && least) out.push_back(ECPlace::of(C, P));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Divisor (P) for a single point.
inline ECDivisor point_divisor(const Curve& C, const ECPoint& P, std::int64_t k = 1) {
  return ECDivisor(ECPlace::of(C, P), k);
}

/// Sum in E(F_q) of the points of a divisor, each place contributing its full orbit.
inline ECPoint divisor_sum(const Curve& C, const ECDivisor& D) {
  ECPoint S = ECPoint::infinity();
  for (auto& [pl, k] : D.terms()) {
    if (pl.is_infinite()) continue;
    ECPoint T = pl.point();
    ECPoint orbit_sum = T;
    for (std::int64_t i = 1; i < pl.degree(); ++i) {
      T = ec_frobenius(C, T);
      orbit_sum = ec_add(C, orbit_sum, T);
    }
    if (!orbit_sum.inf) orbit_sum = {project(orbit_sum.x, C.field()), project(orbit_sum.y, C.field())};
    S = ec_add(C, S, ec_mul(C, orbit_sum, k));
  }
  return S;
}

/// Divisor of degree 0 summing to O.
inline bool is_principal(const Curve& C, const ECDivisor& D) {
  return D.degree() == 0 && divisor_sum(C, D).inf;
}

/// Vertical line x - c or chord y - lambda*x - mu with coefficients in the curve field.
struct Line {
  bool vertical = true;
  FieldElem lambda, mu;

  static Line vert(const FieldElem& c) { return {true, FieldElem(c.field, 0), c}; }
  static Line chord(const FieldElem& l, const FieldElem& m) { return {false, l, m}; }

  int pole_order() const { return vertical ? 2 : 3; }
  const FiniteField& field() const { return mu.field; }

  FieldElem value(const ECPoint& P) const {
    if (P.inf) throw precondition_error("Line::value: lines have a pole at O");
    const auto& K = P.field();
    if (vertical) return P.x - embed(mu, K);
    return P.y - embed(lambda, K) * P.x - embed(mu, K);
  }
  Line conjugate(std::uint32_t times) const {
    const auto& f = field();
    return {vertical, {f, f.frobenius(lambda.value, times)}, {f, f.frobenius(mu.value, times)}};
  }

  std::string to_string() const {
    if (vertical) return "(x-" + Poly::coeff_text(field(), mu.value) + ")";
    return "(y-" + Poly::coeff_text(field(), lambda.value) + "*x-" +
           Poly::coeff_text(field(), mu.value) + ")";
  }

  friend bool operator<(const Line& a, const Line& b) {
    return std::make_tuple(!a.vertical, a.lambda.value, a.mu.value) <
           std::make_tuple(!b.vertical, b.lambda.value, b.mu.value);
  }
  friend bool operator==(const Line& a, const Line& b) {
    return a.vertical == b.vertical && a.lambda == b.lambda && a.mu == b.mu;
  }
};

/// div of a single line: zeros from the square test (vertical) or the cubic (chord), poles at O.
inline ECDivisor line_divisor(const Curve& C, const Line& l) {
  const auto& F = C.field();
  if (l.field() != F) throw precondition_error("line_divisor: line not over the curve field");
  ECDivisor D(ECPlace::infinity(), -l.pole_order());
  if (l.vertical) {
    const FieldElem v = C.rhs(l.mu);
    if (v.is_zero()) {
      D.add(ECPlace::of(C, {l.mu, v}), 2);
    } else if (auto s = ff_nth_root(v, 2)) {
      D.add(ECPlace::of(C, {l.mu, *s}), 1);
      D.add(ECPlace::of(C, {l.mu, -*s}), 1);
    } else {
      const FiniteField K2 = C.extension(2);
      auto s2 = ff_nth_root(embed(v, K2), 2);
      D.add(ECPlace::of(C, {embed(l.mu, K2), *s2}), 1);
    }
    return D;
  }
  const FieldElem& lam = l.lambda;
  const FieldElem& mu = l.mu;
  const FieldElem two = FieldElem::from_int(F, 2);
  const Poly cubic(F, {(C.b() - mu * mu).value, (C.a() - two * lam * mu).value,
                       (-(lam * lam)).value, 1});
  for (auto& [pi, e] : factor(cubic).factors) {
    const FiniteField K = C.extension(static_cast<std::uint32_t>(pi.degree()));
    const FieldElem x0 = detail::irreducible_root(pi, K);
    D.add(ECPlace::of(C, {x0, embed(lam, K) * x0 + embed(mu, K)}), e);
  }
  return D;
}

/// Function on the curve as a constant times a product of line powers.
class MillerFunc {
 public:
  MillerFunc() = default;
  explicit MillerFunc(FieldElem c) : c_(std::move(c)) {
    if (c_.is_zero()) throw domain_error("MillerFunc: zero constant");
  }
  static MillerFunc constant(const FieldElem& c) { return MillerFunc(c); }
  static MillerFunc one(const FiniteField& f) { return MillerFunc(FieldElem(f, 1)); }
  static MillerFunc line(const Line& l, std::int64_t e = 1) {
    MillerFunc m = one(l.field());
    m.mul_line(l, e);
    return m;
  }

  const FiniteField& field() const { return c_.field; }
  const FieldElem& constant() const { return c_; }
  const std::map<Line, std::int64_t>& factors() const { return f_; }
  bool is_constant() const { return f_.empty(); }

  /// Total pole order at O; zero means the function is regular and nonzero at O.
  std::int64_t pole_order() const {
    std::int64_t s = 0;
    for (auto& [l, e] : f_) s += e * l.pole_order();
    return s;
  }
  bool is_balanced() const { return pole_order() == 0; }

  void mul_line(const Line& l, std::int64_t e) {
    if (e == 0) return;
    auto [it, ins] = f_.emplace(l, e);
    if (!ins) {
      it->second += e;
      if (it->second == 0) f_.erase(it);
    }
  }

  friend MillerFunc operator*(MillerFunc a, const MillerFunc& b) {
    a.c_ = a.c_ * b.c_;
    for (auto& [l, e] : b.f_) a.mul_line(l, e);
    return a;
  }
  MillerFunc inv() const {
    MillerFunc r(c_.inv());
    for (auto& [l, e] : f_) r.f_.emplace(l, -e);
    return r;
  }
  friend MillerFunc operator/(const MillerFunc& a, const MillerFunc& b) { return a * b.inv(); }
  MillerFunc pow(std::int64_t k) const {
    if (k == 0) return one(field());
    MillerFunc r(c_.pow(k));
    for (auto& [l, e] : f_) r.f_.emplace(l, e * k);
    return r;
  }
  friend bool operator==(const MillerFunc& a, const MillerFunc& b) {
    return a.c_ == b.c_ && a.f_ == b.f_;
  }

  /// Coefficients raised to p^times.
  MillerFunc conjugate(std::uint32_t times) const {
    MillerFunc r(FieldElem(field(), field().frobenius(c_.value, times)));
    for (auto& [l, e] : f_) r.mul_line(l.conjugate(times), e);
    return r;
  }

  /// Value at a point; every factor must be nonzero there, and the function balanced at O.
  FieldElem value_at(const ECPoint& P) const {
    if (P.inf) {
      if (!is_balanced())
        throw precondition_error("MillerFunc::value_at: function has a zero or pole at O");
      return c_;
    }
    const auto& K = P.field();
    FieldElem v = embed(c_, K);
    for (auto& [l, e] : f_) {
      const FieldElem w = l.value(P);
      if (w.is_zero())
        throw precondition_error("MillerFunc::value_at: factor " + l.to_string() +
                                 " vanishes at " + P.to_string());
      v = v * w.pow(e);
    }
    return v;
  }

  /// "3*(x-2)^2*(y-1*x-4)^-1"
  std::string to_string() const {
    std::string s = Poly::coeff_text(field(), c_.value);
    for (auto& [l, e] : f_) s += "*" + l.to_string() + (e == 1 ? "" : "^" + std::to_string(e));
    return s;
  }

 private:
  FieldElem c_;
  std::map<Line, std::int64_t> f_;
};

/// Sum of the factor divisors.
inline ECDivisor function_divisor(const Curve& C, const MillerFunc& f) {
  ECDivisor D;
  for (auto& [l, e] : f.factors()) D = D + e * line_divisor(C, l);
  return D;
}

/// Places where some factor has a zero, plus O unless the function is balanced.
inline std::set<ECPlace> factor_support(const Curve& C, const MillerFunc& f) {
  std::set<ECPlace> s;
  for (auto& [l, e] : f.factors()) {
    const ECDivisor D = line_divisor(C, l);
    for (auto& [pl, k] : D.terms())
      if (!pl.is_infinite()) s.insert(pl);
  }
  if (!f.is_balanced()) s.insert(ECPlace::infinity());
  return s;
}

/// Line through A and B (tangent when A = B, vertical when A = -B); A, B affine and rational.
inline Line line_through(const Curve& C, const ECPoint& A, const ECPoint& B) {
  const auto& F = C.field();
  if (A.inf || B.inf) throw precondition_error("line_through: points must be affine");
  if ((A.field() != F) || (B.field() != F))
    throw precondition_error("line_through: points must be rational over the curve field");
  if (A.x == B.x && (A.y != B.y || A.y.is_zero())) return Line::vert(A.x);
  const FieldElem lambda = A.x == B.x ? (FieldElem::from_int(F, 3) * A.x * A.x + C.a()) /
                                            (FieldElem::from_int(F, 2) * A.y)
                                      : (B.y - A.y) / (B.x - A.x);
  return Line::chord(lambda, A.y - lambda * A.x);
}

/// l_{A,B} / v_{A+B}, with divisor (A) + (B) - (A+B) - (O).
inline MillerFunc line_ratio(const Curve& C, const ECPoint& A, const ECPoint& B) {
  if (A.inf || B.inf) return MillerFunc::one(C.field());
  const Line l = line_through(C, A, B);
  MillerFunc r = MillerFunc::line(l);
  if (!l.vertical) r.mul_line(Line::vert(ec_add(C, A, B).x), -1);
  return r;
}

/// f_{n,P} with divisor n(P) - (nP) - (n-1)(O), by double-and-add.
inline MillerFunc miller_function(const Curve& C, std::int64_t n, const ECPoint& P) {
  if (n < 1) throw domain_error("miller_function: n must be positive");
  MillerFunc f = MillerFunc::one(C.field());
  if (!P.inf && P.field() != C.field())
    throw precondition_error("miller_function: P must be rational over the curve field");
  int top = 62;
  while (!((n >> top) & 1)) --top;
  ECPoint T = P;
  for (int i = top - 1; i >= 0; --i) {
    f = f * f * line_ratio(C, T, T);
    T = ec_add(C, T, T);
    if ((n >> i) & 1) {
      f = f * line_ratio(C, T, P);
      T = ec_add(C, T, P);
    }
  }
  return f;
}

/// The divisor n(P) - (nP) - (n-1)(O) that miller_function is built to have.
inline ECDivisor miller_divisor(const Curve& C, std::int64_t n, const ECPoint& P) {
  ECDivisor D = point_divisor(C, P, n);
  D = D - point_divisor(C, ec_mul(C, P, n));
  D.add(ECPlace::infinity(), -(n - 1));
  return D;
}

/// f(D) = prod over places of N(f(P))^{ord_P D}, in the curve field.
inline FieldElem ec_evaluate(const Curve& C, const MillerFunc& f, const ECDivisor& D) {
  const auto& F = C.field();
  if (f.field() != F) throw precondition_error("ec_evaluate: function not over the curve field");
  FieldElem acc(F, 1);
  for (auto& [pl, k] : D.terms()) {
    FieldElem v;
    try {
      v = f.value_at(pl.point());
    } catch (const precondition_error&) {
      throw precondition_error("ec_evaluate: support overlap at place " + pl.to_string());
    }
    acc = acc * ff_norm(v, F).pow(k);
  }
  return acc;
}

namespace detail {

// First affine point over K (x ascending, smaller y first) where every function is regular and nonzero.
template <class Pred>
inline std::optional<ECPoint> first_point(const Curve& C, const FiniteField& K, Pred ok) {
  for (elem_t x = 0; x < K.size(); ++x) {
    const FieldElem X{K, x};
    const FieldElem v = C.rhs(X);
    std::vector<ECPoint> cand;
    if (v.is_zero()) {
      cand.emplace_back(X, v);
    } else if (auto s = ff_nth_root(v, 2)) {
      const FieldElem t = -*s;
      cand.emplace_back(X, *s < t ? *s : t);
      cand.emplace_back(X, *s < t ? t : *s);
    }
    for (auto& P : cand)
      if (ok(P)) return P;
  }
  return std::nullopt;
}

inline bool regular_at(const std::vector<const MillerFunc*>& fs, const ECPoint& P) {
  for (auto* f : fs)
    for (auto& [l, e] : f->factors())
      if (l.value(P).is_zero()) return false;
  return true;
}

// A function with divisor D, which must be principal with all finite places of degree 1.
inline MillerFunc function_with_divisor(const Curve& C, const ECDivisor& D) {
  if (D.degree() != 0) throw domain_error("function_with_divisor: divisor has nonzero degree");
  MillerFunc F = MillerFunc::one(C.field());
  ECPoint T = ECPoint::infinity();
  for (auto& [pl, k] : D.terms()) {
    if (pl.is_infinite()) continue;
    if (pl.degree() != 1)
      throw domain_error("function_with_divisor: only places of degree 1 are supported, got " +
                         pl.to_string());
    ECPoint P = pl.point();
    std::int64_t m = k;
    if (m < 0) {
      F.mul_line(Line::vert(P.x), m);
      P = ec_neg(P);
      m = -m;
    }
    const ECPoint mP = ec_mul(C, P, m);
    F = F * miller_function(C, m, P) * line_ratio(C, T, mP);
    T = ec_add(C, T, mP);
  }
  if (!T.inf) throw domain_error("function_with_divisor: divisor is not principal");
  return F;
}

}  // namespace detail

/// All h over the curve field with h^n = g, one per n-th root of unity in the field.
inline std::vector<MillerFunc> nth_root_function(const Curve& C, const MillerFunc& g, std::uint32_t n) {
  if (n == 0) throw domain_error("nth_root_function: n must be positive");
  const auto& F = C.field();
  const ECDivisor D = function_divisor(C, g);
  ECDivisor Dn;
  for (auto& [pl, k] : D.terms()) {
    if (k % static_cast<std::int64_t>(n) != 0)
      throw domain_error("nth_root_function: div(g) not divisible by n at " + pl.to_string());
    Dn.add(pl, k / static_cast<std::int64_t>(n));
  }
  const MillerFunc h1 = detail::function_with_divisor(C, Dn);
  const MillerFunc ratio = g / h1.pow(n);

  // ratio is constant; read it off at a point where all factors are regular.
  std::optional<FieldElem> c;
  const std::vector<const MillerFunc*> fs{&g, &h1};
  for (std::uint32_t k = 1; !c; ++k) {
    const FiniteField K = C.extension(k);
    if (K.size() > kMaxFieldSize) throw size_error("nth_root_function: no regular point found");
    auto R = detail::first_point(C, K, [&](const ECPoint& P) { return detail::regular_at(fs, P); });
    if (R) c = project(ratio.value_at(*R), F);
  }
  auto root = ff_nth_root(*c, n);
  if (!root) {
    std::uint32_t k = 2;
    for (; k <= 12; ++k) {
      std::uint64_t size = 1;
      for (std::uint32_t i = 0; i < k; ++i) size *= F.size();
      if (size > kMaxFieldSize) break;
      if (ff_nth_root(embed(*c, C.extension(k)), n)) break;
    }
    throw extension_degree_error("nth_root_function: constant " + c->to_string() +
                                     " has no n-th root in " + F.name() + "; needs GF(" +
                                     std::to_string(F.size()) + "^" + std::to_string(k) + ")",
                                 k);
  }
  const MillerFunc h = h1 * MillerFunc::constant(*root);
  std::vector<FieldElem> zetas;
  for (elem_t z = 1; z < F.size(); ++z)
    if (F.pow(z, n) == 1) zetas.emplace_back(F, z);
  std::vector<MillerFunc> out;
  for (auto& z : zetas) out.push_back(h * MillerFunc::constant(z));
  return out;
}

/// Tate pairing f_{n,P}(D)^((q^k-1)/n) over the embedding field F_{q^k}, D ~ (Q) - (O).
/// D = (Q+R) - (R) for the first suitable rational R; if none exists, R is a place of degree j
/// coprime to n, D is the orbit sum (equivalent to j((Q) - (O))) and the value is raised to 1/j.
inline FieldElem tate_pairing(const Curve& C, const ECPoint& P, const ECPoint& Q, std::uint32_t n) {
  const std::uint32_t k = embedding_degree(C.q(), n);
  const Curve Ck = C.base_change(k);
  const FiniteField& K = Ck.field();
  const ECPoint Pk = lift(P, K), Qk = lift(Q, K);
  if (!Ck.contains(Pk) || !Ck.contains(Qk)) throw precondition_error("tate_pairing: point not on curve");
  if (!ec_mul(Ck, Pk, n).inf) throw domain_error("tate_pairing: P is not n-torsion");
  const FieldElem one(K, 1);
  if (Pk.inf || Qk.inf) return one;
  const MillerFunc f = miller_function(Ck, n, Pk);
  const std::vector<const MillerFunc*> fs{&f};
  const auto e = static_cast<std::int64_t>((std::uint64_t(K.size()) - 1) / n);
  for (std::uint32_t j = 1; j <= 12; ++j) {
    if (std::gcd(j, n) != 1) continue;
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < j; ++i) size *= K.size();
    if (size > kMaxFieldSize) break;
    const FiniteField L = Ck.extension(j);
    const ECPoint QL = lift(Qk, L);
    auto R = detail::first_point(Ck, L, [&](const ECPoint& X) {
      const ECPoint S = ec_add(Ck, QL, X);
      if (S.inf || !detail::regular_at(fs, X) || !detail::regular_at(fs, S)) return false;
      return ECPlace::of(Ck, X).degree() == j;
    });
    if (!R) continue;
    const ECDivisor D = point_divisor(Ck, ec_add(Ck, QL, *R)) - point_divisor(Ck, *R);
    const FieldElem v = ec_evaluate(Ck, f, D).pow(e);
    if (j == 1) return v;
    return v.pow(nt::inv_mod(j, n));
  }
  throw precondition_error("tate_pairing: no auxiliary place avoids supp(f)");
}

/// Tate pairing against an arbitrary divisor coprime to f_{n,P}; needs n | q - 1.
inline FieldElem tate_pairing_divisor(const Curve& C, const ECPoint& P, const ECDivisor& D,
                                      std::uint32_t n) {
  if ((C.q() - 1) % n != 0) throw domain_error("tate_pairing_divisor: n must divide q - 1");
  if (!ec_mul(C, P, n).inf) throw domain_error("tate_pairing_divisor: P is not n-torsion");
  if (P.inf) return FieldElem(C.field(), 1);
  const MillerFunc f = miller_function(C, n, P);
  return ec_evaluate(C, f, D).pow(static_cast<std::int64_t>((C.q() - 1) / n));
}

/// E(F_q)[n].
inline std::vector<ECPoint> n_torsion(const Curve& C, std::uint32_t n) {
  std::vector<ECPoint> out;
  for (auto& P : rational_points(C, C.field()))
    if (ec_mul(C, P, n).inf) out.push_back(P);
  return out;
}

/// Least representative of each coset of nE(F_q) in E(F_q).
inline std::vector<ECPoint> quotient_reps(const Curve& C, std::uint32_t n) {
  const auto pts = rational_points(C, C.field());
  std::set<ECPoint> nE;
  for (auto& P : pts) nE.insert(ec_mul(C, P, n));
  std::set<ECPoint> covered;
  std::vector<ECPoint> reps;
  for (auto& P : pts) {
    if (covered.count(P)) continue;
    reps.push_back(P);
    for (auto& T : nE) covered.insert(ec_add(C, P, T));
  }
  return reps;
}

/// First curve in (p, a, b) order with n | gcd(#E(F_p), p - 1), optionally with E[n] of rank 2.
inline Curve find_pairing_curve(std::uint32_t n, bool full_torsion = false, std::uint32_t p_max = 400) {
  for (std::uint32_t p = 5; p <= p_max; ++p) {
    if (!nt::is_prime(p) || (p - 1) % n != 0) continue;
    const FiniteField F = FiniteField::make(p);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        if ((4ull * a * a * a + 27ull * b * b) % p == 0) continue;
        const Curve C = Curve::make(F, a, b);
        if (C.order() % n != 0) continue;
        if (full_torsion && n_torsion(C, n).size() != std::uint64_t(n) * n) continue;
        return C;
      }
  }
  throw domain_error("find_pairing_curve: no curve found below p_max");
}

/// Random balanced function: `lines` random factors with exponents in [-2, 2], plus a balancing pair.
/// With rational_support, every line passes through rational points only.
inline MillerFunc random_balanced_function(const Curve& C, std::mt19937_64& rng, int lines = 3,
                                           bool rational_support = false) {
  const auto& F = C.field();
  std::vector<ECPoint> pts;
  if (rational_support) {
    for (auto& P : rational_points(C, F))
      if (!P.inf) pts.push_back(P);
    if (pts.empty()) throw domain_error("random_balanced_function: no affine rational points");
  }
  std::uniform_int_distribution<elem_t> coef(0, F.size() - 1), nz(1, F.size() - 1);
  std::uniform_int_distribution<std::size_t> pick(0, pts.empty() ? 0 : pts.size() - 1);
  std::uniform_int_distribution<int> expo(-2, 2), kind(0, 1);
  auto vert = [&] { return rational_support ? Line::vert(pts[pick(rng)].x) : Line::vert({F, coef(rng)}); };
  auto chord = [&] {
    if (!rational_support) return Line::chord({F, coef(rng)}, {F, coef(rng)});
    for (int t = 0; t < 1000; ++t) {
      const Line l = line_through(C, pts[pick(rng)], pts[pick(rng)]);
      if (!l.vertical) return l;
    }
    throw domain_error("random_balanced_function: no chord through rational points");
  };
  MillerFunc f = MillerFunc::constant(FieldElem(F, nz(rng)));
  for (int i = 0; i < lines; ++i) {
    int e = expo(rng);
    if (e == 0) e = 1;
    if (kind(rng)) f.mul_line(vert(), e);
    else f.mul_line(chord(), e);
  }
  const std::int64_t s = f.pole_order();
  if (s != 0) {
    f.mul_line(vert(), s);
    f.mul_line(chord(), -s);
  }
  return f;
}

}  // namespace cft
