#pragma once

// Cyclic Kummer extensions E' = F'(y), y^n = f, of a constant extension F' = F * F_{q^d'} that are abelian
// over F: the h-function h = sigma^{-1}(y)^q / y and the comparison of h(Con D) with the Frobenius side,
// over F_q(x) and over an elliptic function field.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cft/check.hpp"
#include "cft/ecfun.hpp"
#include "cft/ratfun.hpp"
#include "cft/sample.hpp"

namespace cft {

namespace detail {

inline std::vector<FieldElem> roots_of_unity(const FiniteField& K, std::uint32_t n) {
  std::vector<FieldElem> z;
  for (elem_t v = 1; v < K.size(); ++v)
    if (K.pow(v, n) == 1) z.emplace_back(K, v);
  return z;
}

// Smallest t with an n-th root of c in the degree-t extension, for error reporting.
inline unsigned root_extension_degree(const FieldElem& c, std::uint32_t n) {
  const auto& K = c.field;
  for (unsigned t = 2; t <= 12; ++t) {
    if (nt::pow_u64(K.size(), t) > kMaxFieldSize) break;
    if (ff_nth_root(embed(c, FiniteField::make(K.characteristic(), K.degree() * t)), n)) return t;
  }
  return 0;
}

inline std::uint64_t q_power(const FiniteField& base, std::uint32_t e) { return nt::pow_u64(base.size(), e); }

}  // namespace detail

/// All h in K(x) with h^n = G, one per n-th root of unity in K.
inline std::vector<RatFunc> nth_roots(const RatFunc& G, std::uint32_t n) {
  const auto& K = G.field();
  const auto N = static_cast<std::int64_t>(n);
  Poly num = Poly::constant(K, 1), den = Poly::constant(K, 1);
  auto take = [&](const Poly& a, Poly& out) {
    for (auto& [g, e] : factor(a).factors) {
      if (e % N != 0) throw domain_error("nth_roots: " + G.to_string() + " is not an n-th power up to constants");
      out = out * g.pow(static_cast<std::uint64_t>(e / N));
    }
  };
  take(G.num(), num);
  take(G.den(), den);
  const FieldElem c{K, G.lead()};
  auto r = ff_nth_root(c, n);
  if (!r) {
    const unsigned t = detail::root_extension_degree(c, n);
    throw extension_degree_error("nth_roots: constant " + c.to_string() + " has no n-th root in " + K.name(), t);
  }
  std::vector<RatFunc> out;
  for (auto& z : detail::roots_of_unity(K, n)) out.push_back(RatFunc(num.scale((*r * z).value), den));
  return out;
}

/// Values at one place: the Frobenius side for each sigma choice, h(Con p) for each candidate, and a
/// negative control h_0 * c(Con p) for a fixed nonconstant c.
struct ExtPlaceValues {
  std::vector<FieldElem> sigma, cand;
  FieldElem control;
};

/// Both sides of the lemma on a list of divisors, and the verdict on their matching.
struct ExtMatching {
  std::vector<std::vector<FieldElem>> sigma_side;  // [sigma choice][sample]: tau_D(y)/y from Frobenius
  std::vector<std::vector<FieldElem>> h_side;      // [h candidate][sample]: h(Con D)
  std::vector<FieldElem> control;                  // [sample]: negative control
  std::vector<std::int64_t> degrees;
  std::vector<std::string> labels;

  /// Appends the divisor sum k_i p_i given the values at each p_i.
  template <class Place>
  void add(const std::vector<std::pair<Place, std::int64_t>>& D, const std::vector<const ExtPlaceValues*>& vals) {
    if (D.empty()) return;
    const auto& first = *vals[0];
    if (sigma_side.empty()) {
      sigma_side.assign(first.sigma.size(), {});
      h_side.assign(first.cand.size(), {});
    }
    auto combine = [&](auto&& get) {
      FieldElem acc = get(first).pow(0);
      for (std::size_t i = 0; i < D.size(); ++i) acc = acc * get(*vals[i]).pow(D[i].second);
      return acc;
    };
    for (std::size_t a = 0; a < sigma_side.size(); ++a)
      sigma_side[a].push_back(combine([&](const ExtPlaceValues& v) { return v.sigma[a]; }));
    for (std::size_t c = 0; c < h_side.size(); ++c)
      h_side[c].push_back(combine([&](const ExtPlaceValues& v) { return v.cand[c]; }));
    control.push_back(combine([](const ExtPlaceValues& v) { return v.control; }));
    std::int64_t deg = 0;
    std::string label = "[";
    for (std::size_t i = 0; i < D.size(); ++i) {
      deg += D[i].second * D[i].first.degree();
      label += (i ? ", " : "") + D[i].first.to_string() + ":" + std::to_string(D[i].second);
    }
    degrees.push_back(deg);
    labels.push_back(label + "]");
  }
};

inline CheckReport ext_matching_report(const ExtMatching& m, const std::string& what) {
  CheckReport r;
  r.check = "lemma:ext";
  r.fact("extension", what);
  r.fact("sigma_choices", std::to_string(m.sigma_side.size()));
  r.fact("h_candidates", std::to_string(m.h_side.size()));
  r.samples = m.degrees.size();
  if (r.samples == 0) return r;
  std::size_t deg0 = 0;
  for (std::size_t i = 0; i < m.degrees.size(); ++i) {
    if (m.degrees[i] != 0) continue;
    ++deg0;
    for (auto& c : m.h_side)
      r.expect(c[i] == m.h_side[0][i], "degree-0 sample " + m.labels[i] + " depends on the candidate");
  }
  r.fact("degree_zero_samples", std::to_string(deg0));
  std::set<std::size_t> used;
  for (std::size_t s = 0; s < m.sigma_side.size(); ++s) {
    std::vector<std::size_t> match;
    for (std::size_t c = 0; c < m.h_side.size(); ++c)
      if (m.h_side[c] == m.sigma_side[s]) match.push_back(c);
    if (match.size() != 1) {
      r.fail("sigma choice " + std::to_string(s) + " matches " + std::to_string(match.size()) + " candidates");
      continue;
    }
    if (!used.insert(match[0]).second) r.fail("candidate " + std::to_string(match[0]) + " matched twice");
    r.witnesses.push_back("sigma " + std::to_string(s) + " <-> h " + std::to_string(match[0]));
  }
  r.expect(m.sigma_side.size() == m.h_side.size(), "sigma choices and candidates differ in number");
  r.expect(!m.sigma_side.empty(), "no sigma choices");
  std::size_t control_hits = 0;
  for (auto& s : m.sigma_side) control_hits += s == m.control;
  r.fact("negative_control_matches", std::to_string(control_hits));
  if (m.degrees.size() > 1) r.expect(control_hits == 0, "negative control matched a sigma choice");
  return r;
}

namespace detail {

// Random small combinations of the given places; every other one is corrected to degree 0.
template <class Place>
inline void sample_divisors(const std::vector<Place>& places, const std::vector<ExtPlaceValues>& vals,
                            std::size_t samples, std::uint64_t seed, ExtMatching& out) {
  if (places.empty()) return;
  sample::Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, places.size() - 1);
  std::uniform_int_distribution<int> mult(-2, 2), terms(1, 3);
  std::optional<std::size_t> unit;
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].degree() == 1) {
      unit = i;
      break;
    }
  for (std::size_t s = 0; s < samples; ++s) {
    std::map<std::size_t, std::int64_t> D;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
      int k = mult(rng);
      D[pick(rng)] += k == 0 ? 1 : k;
    }
    if (s % 2 == 1 && unit) {
      std::int64_t deg = 0;
      for (auto& [i, k] : D) deg += k * places[i].degree();
      D[*unit] -= deg;
    }
    std::vector<std::pair<Place, std::int64_t>> terms_out;
    std::vector<const ExtPlaceValues*> v;
    for (auto& [i, k] : D)
      if (k != 0) {
        terms_out.emplace_back(places[i], k);
        v.push_back(&vals[i]);
      }
    if (terms_out.empty()) {
      terms_out.emplace_back(places[0], 0);
      v.push_back(&vals[0]);
    }
    out.add(terms_out, v);
  }
}

// zeta in mu_n(K') with zeta^(q^d) * W = 1, W in an extension of K'.
inline std::optional<FieldElem> solve_zeta(const std::vector<FieldElem>& mu, const FieldElem& W, std::uint64_t qd) {
  for (auto& z : mu)
    if ((embed(z, W.field).pow(static_cast<std::int64_t>(qd % (W.field.size() - 1))) * W).is_one()) return z;
  return std::nullopt;
}

}  // namespace detail

/// E' = F'(y), y^n = f, with F' = F_{q^d'}(x) over F = F_q(x).
struct ConstKummerExt {
  FiniteField base, ext;
  std::uint32_t dprime = 1, n = 1;
  RatFunc f;

  /// phi^j applied to the coefficients, phi the q-Frobenius of F'.
  RatFunc phi(const RatFunc& g, std::int64_t j) const { return frobenius_coeffs(g, base, j); }

  /// f = prod_{j < d'} phi^j(u)^(q^(d'-1-j)), so that phi(f)/f^q = u^(1 - q^d') is an n-th power.
  static ConstKummerExt from_u(const FiniteField& base, std::uint32_t dprime, std::uint32_t n, const RatFunc& u) {
    ConstKummerExt e{base, u.field(), dprime, n, RatFunc::constant(u.field(), 1)};
    if (e.ext.degree() != base.degree() * dprime) throw domain_error("ConstKummerExt: u must lie over F_{q^d'}");
    if ((e.ext.size() - 1) % n != 0) throw domain_error("ConstKummerExt: n must divide q^d' - 1");
    for (std::uint32_t j = 0; j < dprime; ++j)
      e.f = e.f * e.phi(u, j).pow(static_cast<std::int64_t>(detail::q_power(base, dprime - 1 - j)));
    return e;
  }

  std::string to_string() const {
    return "y^" + std::to_string(n) + " = " + f.to_string() + " over " + base.name() + "(x) * " + ext.name();
  }

  /// The n choices g with sigma(y) = y^q g: roots of phi(f) f^-q.
  std::vector<RatFunc> sigma_choices() const {
    return nth_roots(phi(f, 1) / f.pow(static_cast<std::int64_t>(base.size())), n);
  }
};

/// All h with h^n = phi^{-1}(f)^q / f; f is first multiplied by an n-th power to be a unit above avoid.
inline std::vector<RatFunc> h_function(ConstKummerExt& e, const RatDivisor& avoid = {}) {
  std::set<RatPlace> up;
  for (auto& p : avoid.support())
    for (auto& P : conorm(p, e.ext).support()) up.insert(P);
  e.f = coprime_shift(e.f, e.n, up);
  return nth_roots(e.phi(e.f, -1).pow(static_cast<std::int64_t>(e.base.size())) / e.f, e.n);
}

/// n div(h) = q div(phi^{-1} f) - div f for every candidate.
inline CheckReport h_divisor_check(const ConstKummerExt& e, const std::vector<RatFunc>& hs) {
  CheckReport r;
  r.check = "lemma:ext";
  const RatDivisor target = static_cast<std::int64_t>(e.base.size()) * principal_divisor(e.phi(e.f, -1)) - principal_divisor(e.f);
  for (auto& h : hs) {
    ++r.samples;
    r.expect(static_cast<std::int64_t>(e.n) * principal_divisor(h) == target, "divisor mismatch for " + h.to_string());
  }
  r.expect(hs.size() == e.n, "expected n candidates");
  return r;
}

namespace detail {

// g evaluated at a root alpha of a place (or at infinity when alpha is absent); nullopt at a zero or pole.
inline std::optional<FieldElem> rat_value(const RatFunc& g, const std::optional<FieldElem>& alpha, const FiniteField& K) {
  if (!alpha) {
    if (g.num().degree() != g.den().degree()) return std::nullopt;
    return embed(FieldElem{g.field(), g.field().div(g.num().lead(), g.den().lead())}, K);
  }
  const FieldElem a = eval_poly(g.num(), *alpha), b = eval_poly(g.den(), *alpha);
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  return a / b;
}

// The lemma's data for one extension over F_q(x): sigma choices, candidates, mu_n and the control function.
struct Genus0Side {
  ConstKummerExt e;
  std::vector<RatFunc> sig, hs;
  std::vector<FieldElem> mu;
  RatFunc control;

  // The control is the least place of F outside avoid, as a function on F'.
  explicit Genus0Side(ConstKummerExt ext, const std::set<RatPlace>& avoid = {}) : e(std::move(ext)) {
    sig = e.sigma_choices();
    hs = h_function(e);
    mu = roots_of_unity(e.ext, e.n);
    for (int d = 1; control.num().is_zero(); ++d)
      for (auto& pi : irreducibles(e.base, d))
        if (!avoid.count(RatPlace::trusted(pi))) {
          control = RatFunc(embed_poly(pi, e.ext));
          break;
        }
  }

  // nullopt when p meets the support of f, a candidate or the control.
  std::optional<ExtPlaceValues> at(const RatPlace& p) const {
    const RatDivisor con = conorm(p, e.ext);
    for (auto& P : con.support())
      if (ord(e.f, P) != 0) return std::nullopt;
    const std::uint32_t d = static_cast<std::uint32_t>(p.degree());
    const std::uint32_t L = std::lcm(d, e.dprime);
    if (q_power(e.base, L) > kMaxFieldSize) return std::nullopt;
    const FiniteField KL = FiniteField::make(e.base.characteristic(), e.base.degree() * L);
    std::optional<FieldElem> alpha;
    if (!p.is_infinite()) alpha = irreducible_root(p.poly(), KL);
    ExtPlaceValues v;
    for (auto& g : sig) {
      // sigma^d(y) = y^(q^d) W(alpha) with W = prod_j phi^j(g)^(q^(d-1-j)); the Frobenius of p fixes y up to zeta.
      FieldElem W{KL, 1};
      for (std::uint32_t j = 0; j < d; ++j) {
        auto w = rat_value(e.phi(g, j), alpha, KL);
        if (!w) return std::nullopt;
        W = W * w->pow(static_cast<std::int64_t>(q_power(e.base, d - 1 - j) % (KL.size() - 1)));
      }
      auto z = solve_zeta(mu, W, q_power(e.base, d));
      if (!z) throw std::logic_error("lemma_ext_check: no root of unity solves the Frobenius congruence at " + p.to_string());
      v.sigma.push_back(*z);
    }
    try {
      for (auto& h : hs) v.cand.push_back(evaluate(h, con));
      v.control = v.cand[0] * evaluate(control, con);
    } catch (const precondition_error&) {
      return std::nullopt;
    }
    return v;
  }
};

}  // namespace detail

/// Frobenius side against h(Con D) over F_q(x) on the given divisors, for every sigma choice and candidate.
/// Each place of each divisor must be coprime to f; otherwise a precondition error names it.
inline CheckReport lemma_ext_check(ConstKummerExt e, const std::vector<RatDivisor>& Ds) {
  std::set<RatPlace> used;
  for (auto& D : Ds)
    for (auto& [p, k] : D.terms()) used.insert(p);
  const detail::Genus0Side side(std::move(e), used);
  ExtMatching m;
  std::map<RatPlace, ExtPlaceValues> cache;
  for (auto& D : Ds) {
    std::vector<std::pair<RatPlace, std::int64_t>> terms;
    std::vector<const ExtPlaceValues*> vals;
    for (auto& [p, k] : D.terms()) {
      auto it = cache.find(p);
      if (it == cache.end()) {
        auto v = side.at(p);
        if (!v) throw precondition_error("lemma_ext_check: " + p.to_string() + " meets the support of f or h");
        it = cache.emplace(p, *v).first;
      }
      terms.emplace_back(p, k);
      vals.push_back(&it->second);
    }
    m.add(terms, vals);
  }
  CheckReport r = ext_matching_report(m, side.e.to_string());
  const CheckReport div = h_divisor_check(side.e, side.hs);
  for (auto& f : div.failures) r.fail(f);
  return r;
}

/// The same on random divisors built from places of degree <= B coprime to f.
inline CheckReport lemma_ext_check(ConstKummerExt e, int B, std::size_t samples, std::uint64_t seed) {
  const detail::Genus0Side side(std::move(e));
  std::vector<RatPlace> places;
  std::vector<ExtPlaceValues> vals;
  for (auto& p : rat_places_up_to_degree(side.e.base, B))
    if (auto v = side.at(p)) {
      places.push_back(p);
      vals.push_back(std::move(*v));
    }
  ExtMatching m;
  detail::sample_divisors(places, vals, samples, seed, m);
  CheckReport r = ext_matching_report(m, side.e.to_string());
  r.fact("places", std::to_string(places.size()));
  const CheckReport div = h_divisor_check(side.e, side.hs);
  for (auto& f : div.failures) r.fail(f);
  return r;
}

/// E' = F'(y), y^n = f, F' the function field of the curve over F_{q^d'}.
struct CurveConstKummerExt {
  Curve C;  // over F_q
  Curve Cd;  // over F_{q^d'}
  std::uint32_t dprime = 1, n = 1;
  MillerFunc f;

  MillerFunc phi(const MillerFunc& g, std::int64_t j) const {
    const std::int64_t r = Cd.field().degree();
    return g.conjugate(static_cast<std::uint32_t>(nt::mod(j * C.field().degree(), r)));
  }

  static CurveConstKummerExt from_u(const Curve& C, std::uint32_t dprime, std::uint32_t n, const MillerFunc& u) {
    CurveConstKummerExt e{C, C.base_change(dprime), dprime, n, MillerFunc::one(C.extension(dprime))};
    if (u.field() != e.Cd.field()) throw domain_error("CurveConstKummerExt: u must lie over F_{q^d'}");
    if ((e.Cd.field().size() - 1) % n != 0) throw domain_error("CurveConstKummerExt: n must divide q^d' - 1");
    for (std::uint32_t j = 0; j < dprime; ++j)
      e.f = e.f * e.phi(u, j).pow(static_cast<std::int64_t>(detail::q_power(C.field(), dprime - 1 - j)));
    return e;
  }

  std::string to_string() const {
    return "y^" + std::to_string(n) + " = " + f.to_string() + " on " + C.to_string() + " * " + Cd.field().name();
  }

  std::vector<MillerFunc> sigma_choices() const {
    return nth_root_function(Cd, phi(f, 1) / f.pow(static_cast<std::int64_t>(C.q())), n);
  }
  std::vector<MillerFunc> h_candidates() const {
    return nth_root_function(Cd, phi(f, -1).pow(static_cast<std::int64_t>(C.q())) / f, n);
  }
};

/// u = the chord over F_{q^d'} through the first two points of E(F_{q^d'}) not defined over F_q.
inline MillerFunc chord_u(const Curve& C, std::uint32_t dprime) {
  const Curve Cd = C.base_change(dprime);
  const FiniteField& F = C.field();
  std::vector<ECPoint> pts;
  for (auto& P : rational_points(Cd, Cd.field())) {
    if (P.inf) continue;
    bool sub = true;
    try {
      project(P.x, F);
      project(P.y, F);
    } catch (const domain_error&) {
      sub = false;
    }
    if (sub) continue;
    bool fresh = true;
    for (auto& Q : pts) fresh = fresh && Q.x != P.x;
    if (fresh) pts.push_back(P);
    if (pts.size() == 2) break;
  }
  if (pts.size() < 2) throw domain_error("chord_u: not enough points over " + Cd.field().name());
  return MillerFunc::line(line_through(Cd, pts[0], pts[1]));
}

/// The curve version: W from the sigma choice at a point of the place, h(Con p) by evaluation on the
/// base-changed curve, on random divisors from places of degree <= B.
inline CheckReport lemma_ext_check(const CurveConstKummerExt& e, std::uint32_t B, std::size_t samples,
                                   std::uint64_t seed) {
  const auto sig = e.sigma_choices();
  const auto hs = e.h_candidates();
  const auto mu = detail::roots_of_unity(e.Cd.field(), e.n);
  const std::set<ECPlace> bad = factor_support(e.Cd, e.f);
  const MillerFunc control = MillerFunc::line(Line::vert(FieldElem{e.Cd.field(), 1}));
  std::vector<ECPlace> places;
  std::vector<ExtPlaceValues> vals;
  for (auto& p : places_up_to_degree(e.C, B)) {
    if (p.is_infinite()) continue;
    const std::uint32_t d = static_cast<std::uint32_t>(p.degree());
    const std::uint32_t L = std::lcm(d, e.dprime);
    if (detail::q_power(e.C.field(), L) > kMaxFieldSize) continue;
    const FiniteField KL = e.C.extension(L);
    const ECPoint P = lift(p.point(), KL);
    ECDivisor con;
    for (std::uint32_t i = 0; i < std::gcd(d, e.dprime); ++i) con.add(ECPlace::of(e.Cd, ec_frobenius(e.C, P, i)), 1);
    bool coprime = true;
    for (auto& Q : con.support()) coprime = coprime && !bad.count(Q);
    if (!coprime) continue;
    ExtPlaceValues v;
    try {
      for (auto& g : sig) {
        FieldElem W{KL, 1};
        for (std::uint32_t j = 0; j < d; ++j)
          W = W * e.phi(g, j).value_at(P).pow(
                      static_cast<std::int64_t>(detail::q_power(e.C.field(), d - 1 - j) % (KL.size() - 1)));
        auto z = detail::solve_zeta(mu, W, detail::q_power(e.C.field(), d));
        if (!z) throw std::logic_error("lemma_ext_check: no root of unity solves the Frobenius congruence at " + p.to_string());
        v.sigma.push_back(*z);
      }
      for (auto& h : hs) v.cand.push_back(ec_evaluate(e.Cd, h, con));
      v.control = v.cand[0] * ec_evaluate(e.Cd, control, con);
    } catch (const precondition_error&) {
      continue;
    }
    places.push_back(p);
    vals.push_back(std::move(v));
  }
  ExtMatching m;
  detail::sample_divisors(places, vals, samples, seed, m);
  CheckReport r = ext_matching_report(m, e.to_string());
  r.fact("places", std::to_string(places.size()));
  // n div(h) = q phi^{-1}(div f) - div f.
  const ECDivisor target = static_cast<std::int64_t>(e.C.q()) * function_divisor(e.Cd, e.phi(e.f, -1)) - function_divisor(e.Cd, e.f);
  for (auto& h : hs)
    r.expect(static_cast<std::int64_t>(e.n) * function_divisor(e.Cd, h) == target, "divisor mismatch for " + h.to_string());
  return r;
}

}  // namespace cft
