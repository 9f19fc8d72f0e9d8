#pragma once

// Command layer behind the cft_cli executable: run configuration, compute commands and verification
// suites, each producing a report::Report.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cft/artin.hpp"
#include "cft/lemma_ext.hpp"
#include "cft/pairings.hpp"
#include "cft/report.hpp"
#include "cft/suites.hpp"
#include "cft/text.hpp"

namespace cft::cli {

using report::Json;
using report::Report;

/// Exit codes.
inline constexpr int kPass = 0, kCheckFailure = 1, kUsageError = 2;

/// Thrown for invalid configurations; maps to exit code 2.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& compute_kinds() {
  static const std::vector<std::string> k{"pair-tau", "pair-tate", "pair-ate", "classgroup", "selmer"};
  return k;
}
inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"weil",         "adjoint",      "nondeg",      "reciprocity", "kummer-kernel",
                                          "lemma-ext",    "surjectivity", "norm-compat", "tate",        "rayclass",
                                          "all"};
  return s;
}

struct RunConfig {
  std::uint64_t seed = 1;
  std::string field = "GF(5)";
  std::optional<std::string> curve;
  std::uint32_t n = 4;
  std::string modulus = "[(x):1, (x-1):1]";
  std::optional<std::string> places;  // S as "{(x), inf}"
  std::optional<std::string> function, divisor, point, point2, ext;
  std::uint32_t dprime = 2;  // constant-extension degree for lemma-ext, pair-ate and norm-compat
  int degree_bound = 3;
  std::optional<std::size_t> samples;  // per-suite defaults when absent
  std::string out;
  std::string format = "json";

  static constexpr int kMaxDegreeBound = 6;

  FiniteField F() const {
    try {
      return text::parse_field(field);
    } catch (const std::exception& e) {
      throw usage_error(std::string("--field: ") + e.what());
    }
  }
  RatDivisor m() const {
    try {
      return text::parse_divisor(modulus, F());
    } catch (const std::exception& e) {
      throw usage_error(std::string("--modulus: ") + e.what());
    }
  }
  std::optional<std::set<RatPlace>> S() const {
    if (!places) return std::nullopt;
    try {
      return text::parse_place_set(*places, F());
    } catch (const std::exception& e) {
      throw usage_error(std::string("--places: ") + e.what());
    }
  }
  std::optional<Curve> C() const {
    if (!curve) return std::nullopt;
    try {
      return text::parse_curve(*curve);
    } catch (const std::exception& e) {
      throw usage_error(std::string("--curve: ") + e.what());
    }
  }
  std::size_t samples_or(std::size_t d) const { return samples ? *samples : d; }

  void validate() const {
    const FiniteField f = F();
    if (n == 0) throw usage_error("--n must be positive");
    if (std::gcd<std::uint64_t, std::uint64_t>(n, f.size()) != 1) throw usage_error("--n must be coprime to q");
    if (degree_bound < 1 || degree_bound > kMaxDegreeBound)
      throw usage_error("--degree-bound must lie in [1, " + std::to_string(kMaxDegreeBound) + "]");
    if (dprime == 0 || dprime > 6) throw usage_error("--dprime must lie in [1, 6]");
    if (format != "json" && format != "text") throw usage_error("--format must be json or text");
    (void)m();
    (void)S();
    (void)C();
  }

  Json echo() const {
    Json j;
    j["seed"] = seed;
    j["field"] = field;
    if (curve) j["curve"] = *curve;
    j["n"] = n;
    j["modulus"] = modulus;
    if (places) j["places"] = *places;
    if (function) j["function"] = *function;
    if (divisor) j["divisor"] = *divisor;
    if (point) j["point"] = *point;
    if (point2) j["point2"] = *point2;
    if (ext) j["ext"] = *ext;
    j["dprime"] = dprime;
    j["degree-bound"] = degree_bound;
    if (samples) j["samples"] = *samples;
    return j;
  }

  /// Flat key-value JSON document with the flag names as keys; unknown keys are rejected.
  void merge_json(const Json& j) {
    if (!j.is_object()) throw usage_error("config: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      try {
        if (k == "seed") seed = v.get<std::uint64_t>();
        else if (k == "field") field = v.is_number() ? std::to_string(v.get<int>()) : v.get<std::string>();
        else if (k == "curve") curve = v.get<std::string>();
        else if (k == "n") n = v.get<std::uint32_t>();
        else if (k == "modulus") modulus = v.get<std::string>();
        else if (k == "places") places = v.get<std::string>();
        else if (k == "function") function = v.get<std::string>();
        else if (k == "divisor") divisor = v.get<std::string>();
        else if (k == "point") point = v.get<std::string>();
        else if (k == "point2") point2 = v.get<std::string>();
        else if (k == "ext") ext = v.get<std::string>();
        else if (k == "dprime") dprime = v.get<std::uint32_t>();
        else if (k == "degree-bound") degree_bound = v.get<int>();
        else if (k == "samples") samples = v.get<std::size_t>();
        else if (k == "out") out = v.get<std::string>();
        else if (k == "format") format = v.get<std::string>();
        else if (k == "suite" || k == "command" || k == "kind") continue;
        else throw usage_error("config: unknown key \"" + k + "\"");
      } catch (const nlohmann::json::exception& e) {
        throw usage_error("config: bad value for \"" + k + "\": " + e.what());
      }
    }
  }
};

namespace detail {

inline std::set<RatPlace> default_S(const FiniteField& F) {
  return {RatPlace::finite(Poly::x(F)), RatPlace::infinity(F)};
}

// First nonsingular y^2 = x^3 + a x + b over F in (a, b) order starting at (1, 1).
inline std::optional<Curve> default_curve(const FiniteField& F) {
  if (F.characteristic() <= 3) return std::nullopt;
  for (elem_t a = 1; a < F.size(); ++a)
    for (elem_t b = 1; b < F.size(); ++b) {
      try {
        return Curve(FieldElem{F, a}, FieldElem{F, b});
      } catch (const domain_error&) {
      }
    }
  return std::nullopt;
}

// x - beta for the least beta of F_{q^d'} outside F_q.
inline RatFunc default_u(const FiniteField& F, const FiniteField& K) {
  for (elem_t v = 0; v < K.size(); ++v) {
    const FieldElem b{K, v};
    try {
      project(b, F);
    } catch (const domain_error&) {
      return RatFunc(Poly::x(K) - Poly::constant(K, v));
    }
  }
  return RatFunc(Poly::x(K));
}

inline ConstKummerExt genus0_ext(const RunConfig& c) {
  const FiniteField F = c.F();
  const FiniteField K = FiniteField::make(F.characteristic(), F.degree() * c.dprime);
  const RatFunc u = c.function ? text::parse_ratfunc(*c.function, K) : default_u(F, K);
  return ConstKummerExt::from_u(F, c.dprime, c.n, u);
}

inline AbelianExtDesc ext_or_max(const RunConfig& c) {
  if (c.ext) return text::parse_ext(*c.ext, c.m());
  return max_kummer_extension(c.F(), c.n, c.m());
}

inline CheckReport skipped(const std::string& check) {
  CheckReport r;
  r.check = check;
  r.fact("skipped", "zero samples requested");
  return r;
}

}  // namespace detail

/// Runs one suite and appends its checks.
inline void run_suite(const std::string& suite, const RunConfig& c, std::vector<CheckReport>& out) {
  const FiniteField F = c.F();
  const std::uint32_t n = c.n;
  const int B = c.degree_bound;
  const std::uint64_t seed = c.seed;
  const bool none = c.samples && *c.samples == 0;
  if (suite == "weil") {
    if (none) return out.push_back(detail::skipped("thm:weilrec"));
    out.push_back(weil_check(F, c.samples_or(500), seed));
    const auto C = c.C() ? c.C() : detail::default_curve(F);
    if (C) out.push_back(ec_weil_check(*C, c.samples ? *c.samples / 5 + 1 : 100, seed + 1));
  } else if (suite == "adjoint") {
    if (none) return out.push_back(detail::skipped("thm:theoremadjoint1"));
    const auto S = c.S() ? *c.S() : detail::default_S(F);
    for (int sq = 1; sq <= 3; ++sq) out.push_back(adjointness_check(sq, F, n, S, c.samples_or(200), seed + sq));
    out.push_back(kernel_containment_check(F, n, S, c.samples_or(100), 20, seed + 4));
  } else if (suite == "nondeg") {
    if (none) return out.push_back(detail::skipped("thm:theoremadjoint2"));
    std::vector<std::set<RatPlace>> Ss;
    if (c.S()) Ss.push_back(*c.S());
    else Ss = {{}, {RatPlace::finite(Poly::x(F))}, {RatPlace::finite(Poly::x(F)), RatPlace::finite(Poly::linear(F, 1))}};
    for (auto& S : Ss) {
      auto res = nondegeneracy_check(tau_bar_table(F, n, S));
      res.report.fact("S", PlaceSet{S, false}.to_string());
      out.push_back(res.report);
      out.push_back(exactness_check(F, n, S, seed));
      out.push_back(five_lemma_check(F, n, S, seed));
    }
    out.push_back(cardinality_check(F, n, c.m()));
  } else if (suite == "reciprocity") {
    if (none) return out.push_back(detail::skipped("thm:artinkernel"));
    out.push_back(modulus_check(detail::ext_or_max(c), c.m(), c.samples_or(100), seed));
  } else if (suite == "kummer-kernel") {
    if (none) return out.push_back(detail::skipped("thm:kummer2"));
    out.push_back(max_kummer_kernel_check(F, n, c.m(), c.samples_or(100), seed));
  } else if (suite == "lemma-ext") {
    if (none) return out.push_back(detail::skipped("lemma:ext"));
    out.push_back(lemma_ext_check(detail::genus0_ext(c), B, c.samples_or(40), seed));
    const auto C = c.C() ? c.C() : detail::default_curve(F);
    if (C && (nt::pow_u64(C->q(), c.dprime) - 1) % n == 0)
      out.push_back(lemma_ext_check(CurveConstKummerExt::from_u(*C, c.dprime, n, chord_u(*C, c.dprime)),
                                    static_cast<std::uint32_t>(std::min(B, 2)), c.samples_or(40), seed + 1));
  } else if (suite == "surjectivity") {
    if (none) return out.push_back(detail::skipped("thm:artinsurjective"));
    std::vector<AbelianExtDesc> exts;
    if (c.ext) exts.push_back(detail::ext_or_max(c));
    else {
      exts.push_back(max_kummer_extension(F, n, c.m()));
      exts.push_back(AbelianExtDesc::make(F, {}, 3));
      exts.push_back(AbelianExtDesc::make(F, {{RatFunc(Poly::linear(F, 2)), n}}, 2));
    }
    for (auto& e : exts) {
      out.push_back(surjectivity_check(e, B));
      out.push_back(frobenius_paths_check(e, std::min(B, 2)));
    }
  } else if (suite == "norm-compat") {
    if (none) return out.push_back(detail::skipped("thm:artinfunktor"));
    out.push_back(norm_compat_check(detail::ext_or_max(c), c.dprime, c.samples_or(50), seed));
  } else if (suite == "tate") {
    if (none) return out.push_back(detail::skipped("ec:tate"));
    const Curve C = c.C() ? *c.C() : find_pairing_curve(n);
    out.push_back(tate_check(C, n, c.samples_or(20), seed));
  } else if (suite == "rayclass") {
    if (none) return out.push_back(detail::skipped("eq:rayclass"));
    out.push_back(rayclass_oracle_check(F, c.m(), n));
  } else if (suite == "all") {
    for (auto& s : verify_suites())
      if (s != "all") run_suite(s, c, out);
  } else {
    throw usage_error("unknown suite \"" + suite + "\"");
  }
}

inline Report cmd_verify(const std::string& suite, const RunConfig& c) {
  c.validate();
  Report r;
  r.command = "verify";
  r.kind = suite;
  r.config = c.echo();
  run_suite(suite, c, r.checks);
  return r;
}

inline Report cmd_compute(const std::string& kind, const RunConfig& c) {
  c.validate();
  Report r;
  r.command = "compute";
  r.kind = kind;
  r.config = c.echo();
  const FiniteField F = c.F();
  const std::uint32_t n = c.n;
  Json res;
  if (kind == "pair-tau") {
    const RatFunc f = text::parse_ratfunc(c.function.value_or("(2)"), F);
    const RatDivisor D = text::parse_divisor(c.divisor.value_or("[(x-2):1]"), F);
    const std::set<RatPlace> S = c.S().value_or(std::set<RatPlace>{});
    const MuN mu = MuN::make(F, n);
    const FieldElem v = tau_ns(f, D, n, PlaceSet{S, false});
    res["function"] = f.to_string();
    res["divisor"] = D.to_string();
    res["S"] = PlaceSet{S, false}.to_string();
    res["value"] = v.to_string();
    res["generator"] = mu.gen().to_string();
    res["dlog"] = mu_dlog(v, mu);
  } else if (kind == "pair-tate") {
    const Curve C = c.C() ? *c.C() : find_pairing_curve(n);
    const auto T = n_torsion(C, n);
    const auto Q = quotient_reps(C, n);
    // Defaults: the first pair with a nontrivial value.
    ECPoint P = T[0], R = Q[0];
    for (auto& X : T)
      for (auto& Y : Q)
        if (P == T[0] && R == Q[0] && !tate_pairing(C, X, Y, n).is_one()) P = X, R = Y;
    if (c.point) P = text::parse_point(*c.point, C);
    if (c.point2) R = text::parse_point(*c.point2, C);
    const FieldElem v = tate_pairing(C, P, R, n);
    const MuN mu = MuN::make(v.field, n);
    res["curve"] = C.to_string();
    res["P"] = P.to_string();
    res["Q"] = R.to_string();
    res["value"] = v.to_string();
    res["generator"] = mu.gen().to_string();
    res["dlog"] = mu_dlog(v, mu);
  } else if (kind == "pair-ate") {
    ConstKummerExt e = detail::genus0_ext(c);
    const RatDivisor D = text::parse_divisor(c.divisor.value_or("[(x):1]"), F);
    RatDivisor con;
    for (auto& [p, k] : D.terms()) con = con + k * conorm(p, e.ext);
    const auto hs = h_function(e);
    const MuN mu = MuN::make(e.ext, n);
    res["extension"] = e.to_string();
    res["divisor"] = D.to_string();
    Json cands = Json::array();
    for (auto& h : hs) {
      Json cj;
      cj["h"] = h.to_string();
      const FieldElem v = evaluate(h, con);
      cj["value"] = v.to_string();
      if (v.pow(n).is_one()) cj["dlog"] = mu_dlog(v, mu);
      cands.push_back(cj);
    }
    res["candidates"] = cands;
  } else if (kind == "classgroup") {
    const RatDivisor m = c.m();
    const RayClassData rc = ray_class_group(F, m, n, 1);
    res["modulus"] = m.to_string();
    res["invariants"] = rc.group().invariants();
    res["order"] = rc.group().order();
    Json gens = Json::array();
    for (auto& p : rc.generators) gens.push_back(p.to_string());
    res["generators"] = gens;
  } else if (kind == "selmer") {
    const std::set<RatPlace> S = c.S().value_or(std::set<RatPlace>{});
    const SelmerBasis sb = selmer_basis(F, n, S);
    res["S"] = PlaceSet{S, false}.to_string();
    Json gens = Json::array();
    for (std::size_t i = 0; i < sb.generators().size(); ++i)
      gens.push_back({{"function", sb.generators()[i].to_string()}, {"order", sb.orders()[i]}});
    res["generators"] = gens;
    std::int64_t order = 1;
    for (auto o : sb.orders()) order *= o;
    res["order"] = order;
  } else {
    throw usage_error("unknown compute kind \"" + kind + "\"");
  }
  r.result = res;
  return r;
}

}  // namespace cft::cli
