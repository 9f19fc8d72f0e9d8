#pragma once

// Ray class groups Cl_m(F)/nCl_m(F) of F_q(x), presented by places of bounded degree.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cft/abgroup.hpp"
#include "cft/error.hpp"
#include "cft/poly.hpp"
#include "cft/ratfun.hpp"

namespace cft {

inline constexpr int kMaxDegreeBound = 6;
inline constexpr std::uint64_t kRelationCap = 40000;

namespace detail {

/// Finite part of a modulus as a polynomial, and the multiplicity at infinity.
struct ModulusParts {
  Poly M;
  std::int64_t e_inf = 0;
};

inline ModulusParts split_modulus(const FiniteField& F, const RatDivisor& m) {
  if (!m.is_effective()) throw domain_error("modulus must be effective");
  ModulusParts out{Poly::constant(F, 1), 0};
  for (auto& [p, k] : m.terms()) {
    if (p.is_infinite()) out.e_inf = k;
    else out.M = out.M * p.poly().pow(static_cast<std::uint64_t>(k));
  }
  return out;
}

// Bucket key: two monic polynomials coprime to M share a key iff their ratio
// times a suitable constant is congruent to 1 modulo m.
inline std::vector<elem_t> ray_key(const Poly& a, const ModulusParts& mp) {
  std::vector<elem_t> key;
  Poly r = a % mp.M;
  if (mp.e_inf > 0) {
    key.push_back(static_cast<elem_t>(a.degree()));
    for (std::int64_t i = 1; i < mp.e_inf; ++i) {
      const std::int64_t idx = a.degree() - i;
      key.push_back(idx >= 0 ? a.coeff(static_cast<std::size_t>(idx)) : 0);
    }
  } else if (!r.is_zero()) {
    r = r.monic();
  }
  const std::size_t dm = static_cast<std::size_t>(std::max(mp.M.degree(), 0));
  for (std::size_t i = 0; i < dm; ++i) key.push_back(r.coeff(i));
  return key;
}

}  // namespace detail

/// Cl_m(F)/nCl_m(F) with generator places and the divisor-to-element map.
class RayClassData {
 public:
  RatDivisor modulus;
  std::uint32_t n = 1;
  int bound = 1;
  std::vector<RatPlace> generators;
  ModQuotient quotient;
  std::size_t relation_count = 0;
  int relation_degree = 0;

  const FinAbGroup& group() const { return quotient.group; }

  /// Class of D in the group; D must be coprime to the modulus.
  FinAbGroup::Elem map(const RatDivisor& D) const {
    std::vector<std::int64_t> v(generators.size(), 0);
    for (auto& [p, k] : D.terms()) {
      if (modulus.contains(p)) throw precondition_error("ray class map: place " + p.to_string() + " divides the modulus");
      auto it = index_.find(p);
      if (it != index_.end()) {
        v[it->second] += k;
        continue;
      }
      auto rep = place_vector(p);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * rep[i];
    }
    return quotient.map(v);
  }

  /// Class of the t-th invariant generator as a divisor on the generator places.
  RatDivisor representative(std::size_t t) const {
    auto r = quotient.representative(t);
    RatDivisor D;
    for (std::size_t i = 0; i < generators.size(); ++i) D.add(generators[i], nt::mod(r[i], n));
    return D;
  }

  std::size_t generator_index(const RatPlace& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw domain_error("ray class: not a generator place");
    return it->second;
  }

 private:
  friend RayClassData build_ray_class(const RatDivisor&, std::uint32_t, int, const FiniteField&);

  // A place of large degree is equivalent to a smooth polynomial of its bucket, shifted by infinity.
  std::vector<std::int64_t> place_vector(const RatPlace& p) const {
    if (p.is_infinite()) throw std::logic_error("ray class: infinity must be a generator");
    auto it = buckets_.find(detail::ray_key(p.poly(), parts_));
    if (it == buckets_.end())
      throw size_error("ray class map: no smooth representative for " + p.to_string() + "; raise the degree bound");
    std::vector<std::int64_t> v = it->second.first;
    if (inf_index_ != SIZE_MAX) v[inf_index_] += p.degree() - it->second.second;
    return v;
  }

  detail::ModulusParts parts_;
  std::map<RatPlace, std::size_t> index_;
  std::size_t inf_index_ = SIZE_MAX;
  std::map<std::vector<elem_t>, std::pair<std::vector<std::int64_t>, int>> buckets_;
};

namespace detail {

// Number of monic polynomials of each degree <= R that factor over the given degrees.
inline std::vector<std::uint64_t> smooth_counts(const std::vector<int>& degs, int R) {
  std::vector<std::uint64_t> c(R + 1, 0);
  c[0] = 1;
  for (int d : degs)
    for (int t = d; t <= R; ++t) c[t] = std::min<std::uint64_t>(c[t] + c[t - d], UINT64_MAX / 4);
  return c;
}

}  // namespace detail

inline RayClassData build_ray_class(const RatDivisor& m, std::uint32_t n, int B, const FiniteField& F) {
  RayClassData rc;
  rc.modulus = m;
  rc.n = n;
  rc.bound = B;
  rc.parts_ = detail::split_modulus(F, m);
  const auto& mp = rc.parts_;
  std::vector<std::size_t> finite_idx;
  std::vector<int> degs;
  for (auto& p : rat_places_up_to_degree(F, B)) {
    if (m.contains(p)) continue;
    rc.index_[p] = rc.generators.size();
    if (p.is_infinite()) rc.inf_index_ = rc.generators.size();
    else finite_idx.push_back(rc.generators.size()), degs.push_back(p.degree());
    rc.generators.push_back(p);
  }
  const std::size_t k = rc.generators.size();
  // Relation degree: enough to see every bucket a few times, capped by the enumeration budget.
  int R = 2 * B + std::max(mp.M.degree(), 0) + static_cast<int>(mp.e_inf);
  auto counts = detail::smooth_counts(degs, R);
  std::uint64_t total = 0;
  int usable = 0;
  for (int d = 0; d <= R; ++d) {
    if (total + counts[d] > kRelationCap) break;
    total += counts[d];
    usable = d;
  }
  R = usable;
  rc.relation_degree = R;

  ModLattice lattice(k, n);
  std::vector<std::int64_t> expv(k, 0);
  // Depth-first enumeration of smooth monic polynomials with their factorization.
  std::function<void(std::size_t, const Poly&, int)> dfs = [&](std::size_t start, const Poly& a, int deg) {
    auto key = detail::ray_key(a, mp);
    auto [it, fresh] = rc.buckets_.emplace(key, std::make_pair(expv, deg));
    if (!fresh) {
      std::vector<std::int64_t> rel(k);
      for (std::size_t i = 0; i < k; ++i) rel[i] = expv[i] - it->second.first[i];
      if (rc.inf_index_ != SIZE_MAX) rel[rc.inf_index_] = it->second.second - deg;
      lattice.insert(std::move(rel));
      ++rc.relation_count;
    }
    for (std::size_t j = start; j < finite_idx.size(); ++j) {
      if (deg + degs[j] > R) continue;
      ++expv[finite_idx[j]];
      dfs(j, a * rc.generators[finite_idx[j]].poly(), deg + degs[j]);
      --expv[finite_idx[j]];
    }
  };
  dfs(0, Poly::constant(F, 1), 0);
  rc.quotient = quotient_mod(lattice.matrix(), n);
  return rc;
}

/// Cl_m(F)/nCl_m(F) by generators and relations. Starting at B (default 1) the bound grows
/// until the presentation agrees with the one at B+1; failure past kMaxDegreeBound is an error.
inline RayClassData ray_class_group(const FiniteField& F, const RatDivisor& m, std::uint32_t n, int B = 1) {
  if (n == 0 || std::gcd<std::uint64_t, std::uint64_t>(n, F.size()) != 1)
    throw domain_error("ray_class_group: n must be coprime to q");
  if (B < 1) throw domain_error("ray_class_group: degree bound must be positive");
  RayClassData cur = build_ray_class(m, n, B, F);
  for (int b = B; b < kMaxDegreeBound; ++b) {
    RayClassData next = build_ray_class(m, n, b + 1, F);
    if (next.group() == cur.group()) return cur;
    cur = std::move(next);
  }
  throw size_error("ray_class_group: insufficient degree bound");
}

/// Independent description Cl_m ~ Z (+) (F_q[x]/M)^x / F_q^x, reduced mod n, by unit enumeration.
class RayClassStructural {
 public:
  RayClassStructural(const FiniteField& F, const RatDivisor& m, std::uint32_t n) : F_(F), n_(n) {
    auto mp = detail::split_modulus(F, m);
    if (mp.e_inf > 0) throw domain_error("ray_class_structural: oracle inapplicable when infinity divides the modulus");
    M_ = mp.M;
    const int dm = M_.degree();
    if (dm == 0) {
      group_ = FinAbGroup::from_orders({static_cast<std::int64_t>(n)});
      return;
    }
    const std::uint64_t count = monic_count(F, dm);  // q^dm residues
    if (count > (1u << 16)) throw size_error("ray_class_structural: residue ring too large");
    // Units of F_q[x]/M.
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly r = from_index(idx, dm);
      if (r.is_zero() || !Poly::gcd(r, M_).is_one()) continue;
      units_.push_back(idx);
    }
    // K = F_q^x * U^n.
    for (auto u : units_) {
      Poly un = from_index(u, dm).powmod(n, M_);
      for (elem_t c = 1; c < F.size(); ++c) K_.insert(to_index(un.scale(c)));
    }
    // Invariant factors of U/K from the counts #G[l^j].
    const std::uint64_t kk = K_.size();
    std::vector<std::int64_t> orders{static_cast<std::int64_t>(n)};
    for (auto [l, e] : nt::factor(n)) {
      std::vector<unsigned> rk(e + 2, 0);
      std::uint64_t d = 1;
      std::uint64_t prev = 1;
      for (unsigned j = 1; j <= e; ++j) {
        d *= l;
        std::uint64_t c = 0;
        for (auto u : units_)
          if (K_.count(to_index(from_index(u, dm).powmod(d, M_)))) ++c;
        c /= kk;
        unsigned r = 0;
        for (std::uint64_t t = c / prev; t > 1; t /= l) ++r;
        rk[j] = r;
        prev = c;
      }
      for (unsigned j = 1; j <= e; ++j)
        for (unsigned t = 0; t < rk[j] - rk[j + 1]; ++t) orders.push_back(static_cast<std::int64_t>(nt::pow_u64(l, j)));
    }
    group_ = FinAbGroup::from_orders(orders);
  }

  const FinAbGroup& group() const { return group_; }
  std::size_t unit_count() const { return units_.size(); }

  /// D is trivial in Cl_m/nCl_m iff deg D = 0 mod n and its finite part lies in F_q^x U^n.
  bool is_trivial(const RatDivisor& D) const {
    if (nt::mod(D.degree(), n_) != 0) return false;
    Poly acc = Poly::constant(F_, 1) % M_;
    for (auto& [p, k] : D.terms()) {
      if (p.is_infinite()) continue;
      Poly r = p.poly() % M_;
      if (k < 0) r = Poly::invmod(r, M_);
      acc = (acc * r.powmod(static_cast<std::uint64_t>(k < 0 ? -k : k), M_)) % M_;
    }
    if (M_.degree() <= 0) return true;
    return K_.count(to_index(acc)) > 0;
  }

 private:
  Poly from_index(std::uint64_t idx, int d) const {
    std::vector<elem_t> v(d);
    for (int i = 0; i < d; ++i) v[i] = static_cast<elem_t>(idx % F_.size()), idx /= F_.size();
    return Poly(F_, v);
  }
  std::uint64_t to_index(const Poly& r) const {
    std::uint64_t idx = 0;
    for (int i = M_.degree() - 1; i >= 0; --i) idx = idx * F_.size() + r.coeff(static_cast<std::size_t>(i));
    return idx;
  }

  FiniteField F_;
  std::uint32_t n_;
  Poly M_;
  std::vector<std::uint64_t> units_;
  std::unordered_set<std::uint64_t> K_;
  FinAbGroup group_;
};

inline FinAbGroup ray_class_structural(const FiniteField& F, const RatDivisor& m, std::uint32_t n) {
  return RayClassStructural(F, m, n).group();
}

}  // namespace cft
