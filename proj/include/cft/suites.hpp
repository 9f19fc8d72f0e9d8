#pragma once

// Verification suites over the function-field and curve layers: Weil reciprocity, the Tate pairing table,
// and agreement of the two ray class group constructions.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cft/check.hpp"
#include "cft/ecfun.hpp"
#include "cft/ratfun.hpp"
#include "cft/rayclass.hpp"
#include "cft/sample.hpp"

namespace cft {

namespace detail {

template <class Place>
inline bool disjoint(const std::vector<Place>& a, const std::vector<Place>& b) {
  const std::set<Place> s(a.begin(), a.end());
  for (auto& p : b)
    if (s.count(p)) return false;
  return true;
}

// Exponent k with g^k = z by walking the powers; independent of mu_dlog.
inline std::int64_t brute_log(const FieldElem& g, const FieldElem& z, std::uint32_t n) {
  FieldElem x = g.pow(0);
  for (std::uint32_t k = 0; k < n; ++k, x = x * g)
    if (x == z) return k;
  return -1;
}

}  // namespace detail

/// evaluate(f, div g) = evaluate(g, div f) on random pairs with disjoint supports over F_q(x).
inline CheckReport weil_check(const FiniteField& F, std::size_t samples, std::uint64_t seed, int max_deg = 4) {
  CheckReport r;
  r.check = "thm:weilrec";
  r.fact("field", F.name());
  sample::Rng rng(seed);
  while (r.samples < samples) {
    const RatFunc f = sample::random_function(F, max_deg, rng);
    const RatFunc g = sample::random_function(F, max_deg, rng);
    const RatDivisor df = principal_divisor(f), dg = principal_divisor(g);
    if (!detail::disjoint(df.support(), dg.support())) continue;
    ++r.samples;
    const FieldElem a = evaluate(f, dg), b = evaluate(g, df);
    if (a != b) r.fail("f=" + f.to_string() + " g=" + g.to_string() + ": " + a.to_string() + " != " + b.to_string());
  }
  return r;
}

/// The same identity for Miller functions on an elliptic curve.
inline CheckReport ec_weil_check(const Curve& C, std::size_t samples, std::uint64_t seed, int lines = 3) {
  CheckReport r;
  r.check = "thm:weilrec";
  r.fact("curve", C.to_string());
  sample::Rng rng(seed);
  std::size_t tries = 0;
  while (r.samples < samples && tries++ < 100 * samples + 100) {
    const MillerFunc f = random_balanced_function(C, rng, lines);
    const MillerFunc g = random_balanced_function(C, rng, lines);
    // Evaluation is factor by factor, so the factor supports must be disjoint, not only the divisors.
    const std::set<ECPlace> sf = factor_support(C, f), sg = factor_support(C, g);
    if (!detail::disjoint(std::vector<ECPlace>(sf.begin(), sf.end()), std::vector<ECPlace>(sg.begin(), sg.end())))
      continue;
    const ECDivisor df = function_divisor(C, f), dg = function_divisor(C, g);
    ++r.samples;
    const FieldElem a = ec_evaluate(C, f, dg), b = ec_evaluate(C, g, df);
    if (a != b) r.fail("f=" + f.to_string() + " g=" + g.to_string() + ": " + a.to_string() + " != " + b.to_string());
  }
  r.expect(r.samples == samples, "too few disjoint pairs");
  return r;
}

/// Tate pairing on E(F_q)[n] x E(F_q)/nE(F_q): values in mu_n, bilinearity in both arguments,
/// non-degeneracy from a table of exponents found by walking powers of a fixed generator.
inline CheckReport tate_check(const Curve& C, std::uint32_t n, std::size_t shifts, std::uint64_t seed) {
  CheckReport r;
  r.check = "ec:tate";
  r.fact("curve", C.to_string());
  r.fact("n", std::to_string(n));
  const auto T = n_torsion(C, n);
  const auto Q = quotient_reps(C, n);
  r.fact("torsion", std::to_string(T.size()));
  r.fact("quotient", std::to_string(Q.size()));
  if (T.size() != Q.size()) r.fail("#E[n] != #E/nE");
  const std::uint32_t k = embedding_degree(C.q(), n);
  const FiniteField K = C.extension(k);
  FieldElem g{K, 1};
  for (elem_t v = 2; v < K.size(); ++v) {
    const FieldElem z{K, v};
    bool prim = z.pow(n).is_one();
    for (std::uint32_t d = 1; d < n && prim; ++d) prim = !z.pow(d).is_one();
    if (prim) {
      g = z;
      break;
    }
  }
  std::vector<std::vector<std::int64_t>> tab(T.size(), std::vector<std::int64_t>(Q.size()));
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j) {
      ++r.samples;
      const FieldElem t = tate_pairing(C, T[i], Q[j], n);
      if (!t.pow(n).is_one()) r.fail("t^n != 1 at " + T[i].to_string() + ", " + Q[j].to_string());
      tab[i][j] = detail::brute_log(g, t, n);
      // Bilinearity: t(aP, Q) = t(P, Q)^a = t(P, aQ).
      for (std::uint32_t a = 2; a < n; ++a) {
        const FieldElem ta = t.pow(a);
        if (tate_pairing(C, ec_mul(C, T[i], a), Q[j], n) != ta) r.fail("left linearity fails at a=" + std::to_string(a));
        if (tate_pairing(C, T[i], ec_mul(C, Q[j], a), n) != ta) r.fail("right linearity fails at a=" + std::to_string(a));
      }
    }
  // Additivity in each slot through the group law.
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t i2 = 0; i2 < T.size(); ++i2)
      for (std::size_t j = 0; j < Q.size(); ++j) {
        const FieldElem lhs = tate_pairing(C, ec_add(C, T[i], T[i2]), Q[j], n);
        if (lhs != tate_pairing(C, T[i], Q[j], n) * tate_pairing(C, T[i2], Q[j], n))
          r.fail("additivity in P fails at " + T[i].to_string() + " + " + T[i2].to_string());
      }
  std::size_t lk = 0, rk = 0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < Q.size(); ++j) zero = zero && tab[i][j] == 0;
    lk += zero;
  }
  for (std::size_t j = 0; j < Q.size(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < T.size(); ++i) zero = zero && tab[i][j] == 0;
    rk += zero;
  }
  r.fact("left_kernel", std::to_string(lk));
  r.fact("right_kernel", std::to_string(rk));
  r.expect(lk == 1 && rk == 1, "pairing is degenerate");
  // Invariance of the divisor version under D -> D + div(h).
  if ((C.q() - 1) % n == 0) {
    sample::Rng rng(seed);
    for (std::size_t s = 0; s < shifts; ++s) {
      const ECPoint& P = T[s % T.size()];
      if (P.inf) continue;
      const MillerFunc f = miller_function(C, n, P);
      const std::set<ECPlace> bad = factor_support(C, f);
      const MillerFunc h = random_balanced_function(C, rng, 2);
      const ECDivisor dh = function_divisor(C, h);
      bool clash = false;
      for (auto& pl : factor_support(C, h)) clash = clash || bad.count(pl);
      const ECPoint& Qp = Q[s % Q.size()];
      std::optional<ECPoint> R;
      for (auto& X : rational_points(C, C.field())) {
        const ECPoint S = ec_add(C, Qp, X);
        if (X.inf || S.inf || bad.count(ECPlace::of(C, X)) || bad.count(ECPlace::of(C, S))) continue;
        R = X;
        break;
      }
      if (clash || !R) continue;
      ++r.samples;
      const ECDivisor D = point_divisor(C, ec_add(C, Qp, *R)) - point_divisor(C, *R);
      if (tate_pairing_divisor(C, P, D, n) != tate_pairing_divisor(C, P, D + dh, n))
        r.fail("value changes under a principal shift at " + P.to_string());
    }
  }
  return r;
}

/// Generators-and-relations ray class group against the unit-group description, and the same group
/// after doubling every multiplicity of m.
inline CheckReport rayclass_oracle_check(const FiniteField& F, const RatDivisor& m, std::uint32_t n) {
  CheckReport r;
  r.check = "eq:rayclass";
  r.fact("modulus", m.to_string());
  r.fact("n", std::to_string(n));
  const FinAbGroup G = ray_class_group(F, m, n).group();
  r.fact("group", G.to_string());
  ++r.samples;
  bool applicable = true;
  for (auto& p : m.support()) applicable = applicable && !p.is_infinite();
  if (applicable) {
    const FinAbGroup H = ray_class_structural(F, m, n);
    r.fact("structural", H.to_string());
    r.expect(G == H, "invariant factors differ: " + G.to_string() + " vs " + H.to_string());
  }
  r.fact("structural_applicable", applicable ? "true" : "false");
  RatDivisor m2;
  for (auto& [p, k] : m.terms()) m2.add(p, 2 * k);
  const FinAbGroup G2 = ray_class_group(F, m2, n).group();
  r.fact("doubled", G2.to_string());
  r.expect(G2 == G, "group depends on multiplicities: " + G.to_string() + " vs " + G2.to_string());
  return r;
}

}  // namespace cft
