#pragma once

// Artin maps of Kummer-times-constant extensions of F_q(x) and the checks built on them.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cft/check.hpp"
#include "cft/pairings.hpp"
#include "cft/ratfun.hpp"
#include "cft/rayclass.hpp"
#include "cft/sample.hpp"

namespace cft {

/// y_i^{n_i} = f_i.
struct KummerGen {
  RatFunc f;
  std::uint32_t n = 1;
};

/// E = F(y_1, ..., y_k) * F_{q^r}, abelian over F = F_q(x) with modulus m.
class AbelianExtDesc {
 public:
  /// An empty modulus stands for the ramified places (the tame conductor support).
  static AbelianExtDesc make(const FiniteField& F, std::vector<KummerGen> gens, std::uint32_t r = 1,
                             std::optional<RatDivisor> modulus = std::nullopt) {
    if (r == 0) throw domain_error("AbelianExtDesc: constant degree must be positive");
    AbelianExtDesc e;
    e.F_ = F;
    e.r_ = r;
    RatDivisor ram;
    for (auto& g : gens) {
      if (g.f.field() != F) throw domain_error("AbelianExtDesc: generator " + g.f.to_string() + " not over " + F.name());
      if (g.n == 0 || (F.size() - 1) % g.n != 0)
        throw domain_error("AbelianExtDesc: n = " + std::to_string(g.n) + " must divide q-1");
      const RatDivisor dv = principal_divisor(g.f);
      for (auto& [p, k] : dv.terms())
        if (k % static_cast<std::int64_t>(g.n) != 0 && !ram.contains(p)) ram.add(p, 1);
    }
    e.gens_ = std::move(gens);
    e.m_ = modulus ? *modulus : ram;
    for (auto& [p, k] : ram.terms())
      if (!e.m_.contains(p)) throw domain_error("AbelianExtDesc: ramified at " + p.to_string() + " outside the modulus");
    return e;
  }

  const FiniteField& field() const { return F_; }
  const std::vector<KummerGen>& kummer() const { return gens_; }
  std::uint32_t r() const { return r_; }
  const RatDivisor& modulus() const { return m_; }

  /// Coordinates Z/n_1 x ... x Z/n_k x Z/r.
  ProductGroup group() const {
    ProductGroup G;
    for (auto& g : gens_) G.orders.push_back(g.n);
    G.orders.push_back(r_);
    return G;
  }

  /// "kummer: n=4, f=(x+3) ; const: r=2 ; over GF(5)(x)"
  std::string to_string() const {
    std::string s;
    for (auto& g : gens_) {
      std::string f = "(" + g.f.num().to_string() + ")";
      if (!g.f.den().is_one()) f += "/(" + g.f.den().to_string() + ")";
      s += "kummer: n=" + std::to_string(g.n) + ", f=" + f + " ; ";
    }
    if (r_ != 1 || gens_.empty()) s += "const: r=" + std::to_string(r_) + " ; ";
    return s + "over " + F_.name() + "(x)";
  }

 private:
  FiniteField F_;
  std::vector<KummerGen> gens_;
  std::uint32_t r_ = 1;
  RatDivisor m_;
};

/// sigma(y_i) = zeta_i y_i on the Kummer generators, Frobenius power j on the constants.
struct GaloisElem {
  std::vector<FieldElem> zeta;
  std::uint32_t j = 0;
  std::uint32_t r = 1;

  static GaloisElem identity(const AbelianExtDesc& e) {
    GaloisElem g;
    for (std::size_t i = 0; i < e.kummer().size(); ++i) g.zeta.emplace_back(e.field(), 1);
    g.r = e.r();
    return g;
  }
  bool is_identity() const {
    for (auto& z : zeta)
      if (!z.is_one()) return false;
    return j == 0;
  }
  friend GaloisElem operator*(GaloisElem a, const GaloisElem& b) {
    for (std::size_t i = 0; i < a.zeta.size(); ++i) a.zeta[i] = a.zeta[i] * b.zeta[i];
    a.j = (a.j + b.j) % a.r;
    return a;
  }
  GaloisElem pow(std::int64_t k) const {
    GaloisElem g = *this;
    for (auto& z : g.zeta) z = z.pow(k);
    g.j = static_cast<std::uint32_t>(nt::mod(k * static_cast<std::int64_t>(j), r));
    return g;
  }
  friend bool operator==(const GaloisElem& a, const GaloisElem& b) { return a.zeta == b.zeta && a.j == b.j; }
  friend bool operator!=(const GaloisElem& a, const GaloisElem& b) { return !(a == b); }

  /// Discrete logs of the zeta_i followed by j.
  ProductGroup::Elem coords(const AbelianExtDesc& e) const {
    ProductGroup::Elem c;
    for (std::size_t i = 0; i < zeta.size(); ++i) c.push_back(mu_dlog(zeta[i], MuN::make(e.field(), e.kummer()[i].n)));
    c.push_back(j);
    return c;
  }

  /// "(3; 1)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < zeta.size(); ++i) s += (i ? "," : "") + Poly::coeff_text(zeta[i].field, zeta[i].value);
    return s + "; " + std::to_string(j) + ")";
  }
};

namespace detail {

inline void check_unramified(const AbelianExtDesc& e, const RatPlace& p) {
  if (e.modulus().contains(p)) throw precondition_error("Artin map: place " + p.to_string() + " divides the modulus");
  for (auto& g : e.kummer())
    if (ord(g.f, p) % static_cast<std::int64_t>(g.n) != 0)
      throw precondition_error("Artin map: place " + p.to_string() + " is ramified");
}

}  // namespace detail

/// Frobenius at an unramified place: zeta_i = N(residue of f_i)^((q-1)/n_i), j = deg p mod r.
inline GaloisElem frobenius_at_place(const AbelianExtDesc& e, const RatPlace& p) {
  detail::check_unramified(e, p);
  GaloisElem g;
  for (auto& k : e.kummer()) g.zeta.push_back(phi_np(k.f, p, k.n));
  g.r = e.r();
  g.j = static_cast<std::uint32_t>(p.degree() % e.r());
  return g;
}

/// The Kummer coordinates as Y^(N(p)-1) for a root Y of Y^n = residue, computed in an extension of the
/// residue field F_{q^d}; nullopt when that extension exceeds the field size limit.
inline std::optional<GaloisElem> frobenius_at_place_residue(const AbelianExtDesc& e, const RatPlace& p) {
  detail::check_unramified(e, p);
  const auto& F = e.field();
  const std::uint32_t d = static_cast<std::uint32_t>(p.degree());
  GaloisElem g;
  g.r = e.r();
  g.j = d % e.r();
  if (nt::pow_u64(F.size(), d) > kMaxFieldSize) return std::nullopt;
  const FiniteField Kd = FiniteField::make(F.characteristic(), F.degree() * d);
  const FieldElem alpha = p.is_infinite() ? FieldElem{Kd, 0} : detail::irreducible_root(p.poly(), Kd);
  for (auto& k : e.kummer()) {
    const FieldElem u = eval_poly(unit_residue(k.f, p), alpha);
    std::optional<FieldElem> zeta;
    for (std::uint32_t t = 1; t <= k.n && !zeta; ++t) {
      if (nt::pow_u64(F.size(), d * t) > kMaxFieldSize) return std::nullopt;
      const FiniteField K = FiniteField::make(F.characteristic(), Kd.degree() * t);
      if (auto Y = ff_nth_root(embed(u, K), k.n)) {
        const FieldElem Yq = FieldElem{K, K.frobenius(Y->value, Kd.degree())};
        zeta = project(Yq / *Y, F);
      }
    }
    if (!zeta) return std::nullopt;
    g.zeta.push_back(*zeta);
  }
  return g;
}

/// A(D) = prod_p Frob_p^{ord_p D}.
inline GaloisElem artin_map(const AbelianExtDesc& e, const RatDivisor& D) {
  GaloisElem g = GaloisElem::identity(e);
  for (auto& [p, k] : D.terms()) g = g * frobenius_at_place(e, p).pow(k);
  return g;
}

/// [E:F] = r * #<f_i^{n/n_i}> in F'^x/(F'^x)^n over F' = F_{q^r}(x), n = lcm n_i.
inline std::uint64_t galois_order(const AbelianExtDesc& e) {
  const auto& F = e.field();
  std::int64_t n = 1;
  for (auto& g : e.kummer()) n = std::lcm(n, static_cast<std::int64_t>(g.n));
  const FiniteField K = FiniteField::make(F.characteristic(), F.degree() * e.r());
  // Coordinates: dlog of the leading constant mod n, then valuations mod n at the irreducibles over K.
  std::map<Poly, std::size_t> index;
  std::vector<std::map<std::size_t, std::int64_t>> vals;
  std::vector<std::int64_t> consts;
  for (auto& g : e.kummer()) {
    const RatFunc f = embed_func(g.f, K).pow(n / g.n);
    std::map<std::size_t, std::int64_t> v;
    const RatDivisor dv = principal_divisor(f);
    for (auto& [pl, k] : dv.terms()) {
      if (pl.is_infinite()) continue;
      auto it = index.emplace(pl.poly(), index.size()).first;
      v[it->second] = nt::mod(k, n);
    }
    vals.push_back(v);
    consts.push_back(nt::mod(static_cast<std::int64_t>(K.log(f.lead())), n));
  }
  ProductGroup G{std::vector<std::int64_t>(index.size() + 1, n)};
  std::vector<ProductGroup::Elem> gens;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    ProductGroup::Elem x = G.zero();
    x[0] = consts[i];
    for (auto& [j, k] : vals[i]) x[j + 1] = k;
    gens.push_back(x);
  }
  return e.r() * G.subgroup_order(gens);
}

/// Places of degree <= B whose Frobenius elements generate the Galois group.
struct SurjectivityWitness {
  std::vector<RatPlace> places;
  std::uint64_t generated = 1;
  std::uint64_t degree = 1;  // [E:F]
  bool complete() const { return generated == degree; }
};

inline SurjectivityWitness surjectivity_witness(const AbelianExtDesc& e, int B) {
  SurjectivityWitness w;
  w.degree = galois_order(e);
  const ProductGroup G = e.group();
  std::vector<ProductGroup::Elem> imgs;
  for (auto& p : rat_places_up_to_degree(e.field(), B)) {
    if (w.complete()) break;
    try {
      detail::check_unramified(e, p);
    } catch (const precondition_error&) {
      continue;
    }
    imgs.push_back(frobenius_at_place(e, p).coords(e));
    const auto o = G.subgroup_order(imgs);
    if (o > w.generated) {
      w.generated = o;
      w.places.push_back(p);
    } else {
      imgs.pop_back();
    }
  }
  return w;
}

inline CheckReport surjectivity_check(const AbelianExtDesc& e, int B) {
  CheckReport r;
  r.check = "thm:artinsurjective";
  r.fact("extension", e.to_string());
  const auto w = surjectivity_witness(e, B);
  r.samples = 1;
  r.fact("degree", std::to_string(w.degree));
  r.fact("generated", std::to_string(w.generated));
  for (auto& p : w.places) r.witnesses.push_back(p.to_string());
  r.expect(w.complete(), "places of degree <= " + std::to_string(B) + " generate only " +
                             std::to_string(w.generated) + " of " + std::to_string(w.degree));
  return r;
}

/// Frobenius agrees along both computation paths on every unramified place of degree <= B.
inline CheckReport frobenius_paths_check(const AbelianExtDesc& e, int B) {
  CheckReport r;
  r.check = "def:modulus";
  for (auto& p : rat_places_up_to_degree(e.field(), B)) {
    try {
      detail::check_unramified(e, p);
    } catch (const precondition_error&) {
      continue;
    }
    auto alt = frobenius_at_place_residue(e, p);
    if (!alt) continue;
    ++r.samples;
    r.expect(*alt == frobenius_at_place(e, p), "paths differ at " + p.to_string());
  }
  return r;
}

/// The exponent-n Kummer extension from the Selmer basis of S = supp m.
inline AbelianExtDesc max_kummer_extension(const FiniteField& F, std::uint32_t n, const RatDivisor& m) {
  std::set<RatPlace> S;
  for (auto& p : m.support()) S.insert(p);
  std::vector<KummerGen> gens;
  const SelmerBasis sb = selmer_basis(F, n, S);
  for (auto& f : sb.generators()) gens.push_back({f, n});
  return AbelianExtDesc::make(F, std::move(gens), 1, m);
}

/// ker A = nCl_m on Cl_m/nCl_m exhaustively, A constant on classes for random divisors, and
/// [E:F] = #Cl_m/nCl_m.
inline CheckReport max_kummer_kernel_check(const FiniteField& F, std::uint32_t n, const RatDivisor& m,
                                           std::size_t samples, std::uint64_t seed) {
  CheckReport r;
  r.check = "thm:kummer2";
  const AbelianExtDesc e = max_kummer_extension(F, n, m);
  const RayClassData rc = ray_class_group(F, m, n);
  const FinAbGroup& cl = rc.group();
  const std::uint64_t deg = galois_order(e);
  r.fact("extension", e.to_string());
  r.fact("degree", std::to_string(deg));
  r.fact("rayclass_order", std::to_string(cl.order()));
  r.expect(deg == cl.order(), "[E:F] = " + std::to_string(deg) + " but #Cl_m/nCl_m = " + std::to_string(cl.order()));
  auto divisor_of = [&](const FinAbGroup::Elem& c) {
    RatDivisor D;
    for (std::size_t t = 0; t < c.size(); ++t) D = D + c[t] * rc.representative(t);
    return D;
  };
  std::size_t kernel = 0;
  for (auto& c : cl.elements()) {
    const bool id = artin_map(e, divisor_of(c)).is_identity();
    if (id) ++kernel;
    r.expect(id == cl.is_zero(c), "class " + elem_label(c) + (id ? " is in the kernel" : " is not in the kernel"));
    ++r.samples;
  }
  r.fact("kernel_size", std::to_string(kernel));
  sample::Rng rng(seed);
  std::set<RatPlace> avoid;
  for (auto& p : m.support()) avoid.insert(p);
  for (std::size_t i = 0; i < samples; ++i) {
    const RatDivisor D = sample::random_divisor(F, 3, 3, 3, rng, avoid);
    try {
      r.expect(artin_map(e, D) == artin_map(e, divisor_of(rc.map(D))), "A not constant on the class of " + D.to_string());
      ++r.samples;
    } catch (const size_error&) {
      continue;
    }
  }
  return r;
}

/// A(div g) = 1 for g = 1 mod m; negative controls g coprime to m must hit a non-identity image.
inline CheckReport modulus_check(const AbelianExtDesc& e, const RatDivisor& m, std::size_t samples,
                                 std::uint64_t seed) {
  CheckReport r;
  r.check = "thm:artinkernel";
  r.fact("extension", e.to_string());
  r.fact("modulus", m.to_string());
  for (auto& p : e.modulus().support())
    if (!m.contains(p)) throw domain_error("modulus_check: extension ramified outside " + m.to_string());
  const auto& F = e.field();
  sample::Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const RatFunc g = sample::random_one_mod(F, m, 3, rng);
    ++r.samples;
    const GaloisElem a = artin_map(e, principal_divisor(g));
    r.expect(a.is_identity(), "A(div " + g.to_string() + ") = " + a.to_string());
  }
  std::set<RatPlace> avoid;
  for (auto& p : m.support()) avoid.insert(p);
  std::size_t nonid = 0, controls = 0;
  for (std::size_t i = 0; i < std::max<std::size_t>(samples, 20); ++i) {
    RatFunc g = sample::random_function(F, 3, rng);
    bool coprime = true;
    for (auto& p : principal_divisor(g).support()) coprime = coprime && !avoid.count(p);
    if (!coprime) continue;
    ++controls;
    if (!artin_map(e, principal_divisor(g)).is_identity()) {
      if (nonid++ == 0) r.witnesses.push_back("negative control " + g.to_string());
    }
  }
  r.fact("negative_controls", std::to_string(controls));
  r.fact("negative_nonidentity", std::to_string(nonid));
  const bool trivial = galois_order(e) == 1;
  r.expect(trivial || nonid > 0, "no negative control produced a non-identity image");
  return r;
}

/// Galois compatibility along a constant extension F' = F_{q^d}(x): A_{E|F}(N D') = A_{E'|F'}(D')|_E with
/// E' = EF'; also the norm containments for F'|F: A_{F'|F}(N D') = 1 and d D = N(Con D) lies in im N.
inline CheckReport norm_compat_check(const AbelianExtDesc& e, std::uint32_t d, std::size_t samples,
                                     std::uint64_t seed) {
  CheckReport r;
  r.check = "thm:artinfunktor";
  if (e.r() != 1) throw domain_error("norm_compat_check: the extension must be Kummer over F (r = 1)");
  const auto& F = e.field();
  const FiniteField K = FiniteField::make(F.characteristic(), F.degree() * d);
  std::vector<KummerGen> gens;
  for (auto& g : e.kummer()) gens.push_back({embed_func(g.f, K), g.n});
  RatDivisor mK;
  for (auto& p : e.modulus().support()) mK = mK + conorm(p, K);
  const AbelianExtDesc eK = AbelianExtDesc::make(K, gens, 1, mK);
  r.fact("extension", e.to_string());
  r.fact("constant_degree", std::to_string(d));
  const AbelianExtDesc constK = AbelianExtDesc::make(F, {}, d);
  sample::Rng rng(seed);
  std::set<RatPlace> avoidK;
  for (auto& p : mK.support()) avoidK.insert(p);
  for (std::size_t i = 0; i < samples; ++i) {
    const RatDivisor Dp = sample::random_divisor(K, 2, 3, 2, rng, avoidK);
    const RatDivisor N = norm_divisor(Dp, F);
    ++r.samples;
    // im N is killed by the Artin map of F'|F itself.
    r.expect(artin_map(constK, N).is_identity(), "A_{F'|F}(N(" + Dp.to_string() + ")) is not the identity");
    const GaloisElem lhs = artin_map(e, N), up = artin_map(eK, Dp);
    GaloisElem rhs = lhs;
    for (std::size_t k = 0; k < rhs.zeta.size(); ++k) rhs.zeta[k] = project(up.zeta[k], F);
    r.expect(lhs == rhs, "A(N D') != A'(D')|E for D' = " + Dp.to_string());
  }
  std::set<RatPlace> avoid;
  for (auto& p : e.modulus().support()) avoid.insert(p);
  for (std::size_t i = 0; i < samples; ++i) {
    const RatDivisor D = sample::random_divisor(F, 2, 3, 2, rng, avoid);
    RatDivisor C;
    for (auto& [p, k] : D.terms()) C = C + k * conorm(p, K);
    r.expect(norm_divisor(C, F) == static_cast<std::int64_t>(d) * D, "N(Con D) != d D for D = " + D.to_string());
    ++r.samples;
  }
  return r;
}

/// kappa(f, g) = prod zeta_i^{a_i} for f = prod f_i^{a_i} mod n-th powers.
inline FieldElem kummer_pairing(const SelmerBasis& sb, const RatFunc& f, const GaloisElem& g) {
  const auto a = sb.coordinates(f);
  if (a.size() != g.zeta.size()) throw domain_error("kummer_pairing: Galois element has the wrong shape");
  FieldElem acc = MuN::make(f.field(), sb.n()).power(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc * g.zeta[i].pow(a[i]);
  return acc;
}

/// t_{n,m}(f, c) = kappa(f, A(c)), asserted equal to tau_{n,S} on the same representatives.
inline FieldElem t_nm(const FiniteField& F, std::uint32_t n, const RatDivisor& m, const RatFunc& f,
                      const RatDivisor& c) {
  const AbelianExtDesc e = max_kummer_extension(F, n, m);
  std::set<RatPlace> S;
  for (auto& p : m.support()) S.insert(p);
  const SelmerBasis sb = selmer_basis(F, n, S);
  const FieldElem v = kummer_pairing(sb, f, artin_map(e, c));
  const FieldElem t = tau_ns(f, c, n, PlaceSet::finite(S));
  if (v != t) throw std::logic_error("t_nm: kummer pairing " + v.to_string() + " differs from tau " + t.to_string());
  return v;
}

}  // namespace cft
