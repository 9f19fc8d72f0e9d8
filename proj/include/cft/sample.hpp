#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "cft/ratfun.hpp"

namespace cft::sample {

using Rng = std::mt19937_64;

/// Uniform polynomial of exact degree deg.
inline Poly random_poly(const FiniteField& F, int deg, Rng& rng) {
  std::uniform_int_distribution<elem_t> c(0, F.size() - 1), nz(1, F.size() - 1);
  std::vector<elem_t> v(deg + 1);
  for (int i = 0; i < deg; ++i) v[i] = c(rng);
  v[deg] = nz(rng);
  return Poly(F, std::move(v));
}

inline Poly random_monic(const FiniteField& F, int deg, Rng& rng) { return random_poly(F, deg, rng).monic(); }

/// c * A / B with deg A, deg B in [0, max_deg].
inline RatFunc random_function(const FiniteField& F, int max_deg, Rng& rng) {
  std::uniform_int_distribution<int> d(0, max_deg);
  return RatFunc(random_poly(F, d(rng), rng), random_monic(F, d(rng), rng));
}

inline RatFunc random_nth_power(const FiniteField& F, std::uint32_t n, int max_deg, Rng& rng) {
  return random_function(F, max_deg, rng).pow(n);
}

/// Random divisor on places of degree <= B outside avoid, multiplicities in [-max_mult, max_mult].
inline RatDivisor random_divisor(const FiniteField& F, int B, int terms, int max_mult, Rng& rng,
                                 const std::set<RatPlace>& avoid = {}) {
  std::vector<RatPlace> pool;
  for (auto& p : rat_places_up_to_degree(F, B))
    if (!avoid.count(p)) pool.push_back(p);
  RatDivisor D;
  if (pool.empty()) return D;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> mult(-max_mult, max_mult);
  for (int i = 0; i < terms; ++i) D.add(pool[pick(rng)], mult(rng));
  return D;
}

/// Random element of D_{n,S}: multiplicities at places of S are multiples of n.
inline RatDivisor random_dns(const FiniteField& F, std::uint32_t n, const PlaceSet& S, int B, Rng& rng,
                             int terms = 3) {
  RatDivisor D = random_divisor(F, B, terms, 3, rng), out;
  std::uniform_int_distribution<int> k(-1, 1);
  for (auto& [p, m] : D.terms()) out.add(p, S.contains(p) ? static_cast<std::int64_t>(n) * k(rng) : m);
  if (!S.cofinite)
    for (auto& p : S.places) out.add(p, static_cast<std::int64_t>(n) * k(rng));
  return out;
}

/// Random element of the Selmer group: a basis element times an n-th power.
inline RatFunc random_selmer(const SelmerBasis& sb, const FiniteField& F, int max_deg, Rng& rng) {
  std::vector<std::int64_t> c;
  for (auto o : sb.orders()) c.push_back(std::uniform_int_distribution<std::int64_t>(0, o - 1)(rng));
  return sb.element(c) * random_nth_power(F, sb.n(), max_deg, rng);
}

/// Random g with ord_p(g) divisible by n at every place of the finite set S, i.e. g in F_{n, complement S}.
inline RatFunc random_cofinite_selmer(const FiniteField& F, std::uint32_t n, const std::set<RatPlace>& S,
                                      int max_deg, Rng& rng) {
  RatFunc g = random_function(F, max_deg, rng);
  const auto N = static_cast<std::int64_t>(n);
  for (auto& p : S) {
    if (p.is_infinite()) continue;
    const std::int64_t r = nt::mod(ord(g, p), N);
    if (r) g = g / RatFunc(p.poly()).pow(r);
  }
  if (S.count(RatPlace::infinity(F))) {
    const std::int64_t r = nt::mod(ord(g, RatPlace::infinity(F)), N);
    if (r) {
      for (;;) {
        Poly a = random_monic(F, static_cast<int>(r), rng);
        bool coprime = true;
        for (auto& p : S)
          if (!p.is_infinite() && (a % p.poly()).is_zero()) coprime = false;
        if (coprime) {
          g = g * RatFunc(a);
          break;
        }
      }
    }
  }
  return g;
}

/// Random g = A/B with g = 1 mod m: A, B = 1 mod the finite part and deg(A - B) <= deg B - ord_inf(m).
inline RatFunc random_one_mod(const FiniteField& F, const RatDivisor& m, int extra_deg, Rng& rng) {
  Poly M = Poly::constant(F, 1);
  std::int64_t e = 0;
  for (auto& [p, k] : m.terms()) {
    if (p.is_infinite()) e = k;
    else M = M * p.poly().pow(static_cast<std::uint64_t>(k));
  }
  const Poly one = Poly::constant(F, 1);
  std::uniform_int_distribution<int> d(0, extra_deg);
  for (;;) {
    const int dt = static_cast<int>(e) + d(rng);
    const Poly B = one + M * random_poly(F, dt, rng);
    const int d3 = dt - static_cast<int>(e);
    const Poly t3 = d3 >= 0 ? random_poly(F, std::uniform_int_distribution<int>(0, d3)(rng), rng) : Poly(F);
    const Poly A = B + M * t3;
    if (A.is_zero() || B.is_zero()) continue;
    return RatFunc(A, B);
  }
}

}  // namespace cft::sample
