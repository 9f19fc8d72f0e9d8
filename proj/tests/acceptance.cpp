// One pass/fail line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cft/cft.hpp"

using namespace cft;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void take(const CheckReport& r, const std::string& label) {
    if (!r.pass) {
      pass = false;
      detail += " [" + label + ": " + (r.failures.empty() ? "fail" : r.failures[0]) + "]";
    }
  }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail += " [" + why + "]";
    }
  }
};

std::string fact(const CheckReport& r, const std::string& key) {
  for (auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const FiniteField F5 = FiniteField::make(5);

RatDivisor dv(const char* s, const FiniteField& F = F5) { return text::parse_divisor(s, F); }
RatPlace pl(const char* s, const FiniteField& F = F5) { return text::parse_place(s, F); }

Outcome weil() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = weil_check(F5, 500, 1);
  const auto C = find_pairing_curve(4);
  const auto e = ec_weil_check(C, 100, 2);
  const double s = seconds_since(t0);
  o.take(r, "F_5(x)");
  o.take(e, C.to_string());
  o.require(r.samples == 500 && e.samples == 100, "sample counts");
  o.require(s < 10.0, "runtime " + std::to_string(s) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "500 pairs over GF(5)(x), 100 on %s, %.2f s", C.to_string().c_str(), s);
  o.detail = buf + o.detail;
  return o;
}

Outcome adjoint() {
  Outcome o;
  std::size_t total = 0;
  for (std::uint32_t q : {5u, 9u, 13u}) {
    const FiniteField F = FiniteField::of_order(q);
    for (std::uint32_t n : {2u, 4u}) {
      const std::set<RatPlace> S{pl("(x)", F), pl("inf", F)};
      for (int sq = 1; sq <= 3; ++sq) {
        const auto r = adjointness_check(sq, F, n, S, 200, q * 10 + sq);
        o.take(r, F.name() + " n=" + std::to_string(n) + " square " + std::to_string(sq));
        total += r.samples;
      }
    }
  }
  o.detail = "3 squares x q in {5,9,13} x n in {2,4}, 200 samples each (" + std::to_string(total) + ")" + o.detail;
  return o;
}

Outcome kernels() {
  Outcome o;
  for (std::uint32_t q : {5u, 9u}) {
    const FiniteField F = FiniteField::of_order(q);
    const std::set<RatPlace> S{pl("(x)", F), pl("(x+1)", F)};
    const auto r = kernel_containment_check(F, 4, S, 100, 20, q);
    o.take(r, F.name());
    o.require(r.samples == 200, "sample count");
  }
  o.detail = "100 left + 100 right samples x 20 partners, q in {5,9}" + o.detail;
  return o;
}

Outcome nondeg() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::string sizes;
  for (const auto& S : {std::set<RatPlace>{}, std::set<RatPlace>{pl("(x)")}, std::set<RatPlace>{pl("(x)"), pl("(x-1)")}}) {
    const auto T = tau_bar_table(F5, 4, S);
    const auto res = nondegeneracy_check(T);
    o.require(T.bilinearity_failures == 0, "bilinearity");
    o.require(res.left_kernel.size() == 1 && res.right_kernel.size() == 1, "nontrivial kernel for S = " + PlaceSet::finite(S).to_string());
    o.require(res.crit1_consistent, "cardinality criterion");
    sizes += (sizes.empty() ? "" : ", ") + std::to_string(T.entries.size()) + "x" + std::to_string(T.entries[0].size());
  }
  const auto big = tau_bar_table(F5, 4, {pl("(x)"), pl("(x-1)")});
  o.require(big.entries.size() == 16 && big.entries[0].size() == 16, "flagship table is not 16x16");
  const double s = seconds_since(t0);
  o.require(s < 5.0, "runtime " + std::to_string(s) + " s");
  o.detail = "q=5 n=4, tables " + sizes + ", trivial kernels" + o.detail;
  return o;
}

Outcome cardinality() {
  Outcome o;
  struct Case {
    std::uint32_t q, n;
    const char* m;
  };
  const std::vector<Case> cases{{5, 4, "[(x):1, (x-1):1]"}, {5, 2, "[]"},           {5, 4, "[(x^2+2):1]"},
                                {7, 3, "[(x):1, inf:1]"},   {7, 6, "[(x):2, (x+1):1]"}, {13, 4, "[(x):1, (x-1):1, inf:1]"},
                                {9, 4, "[(x):1]"},          {11, 5, "[(x):1, (x+2):1]"}};
  std::string flagship;
  for (auto& c : cases) {
    const FiniteField F = FiniteField::of_order(c.q);
    const auto r = cardinality_check(F, c.n, dv(c.m, F));
    o.take(r, F.name() + " n=" + std::to_string(c.n) + " m=" + c.m);
    if (c.q == 5 && c.n == 4 && std::string(c.m) == "[(x):1, (x-1):1]")
      flagship = fact(r, "selmer_order") + " = " + fact(r, "rayclass_order");
  }
  o.require(flagship == "16 = 16", "flagship gives " + flagship);
  o.detail = std::to_string(cases.size()) + " configurations, flagship " + flagship + o.detail;
  return o;
}

Outcome reciprocity() {
  Outcome o;
  struct Case {
    std::uint32_t q, n;
    const char* m;
  };
  std::size_t nonid = 0;
  for (auto& c : std::vector<Case>{{5, 4, "[(x):1, (x-1):1]"}, {7, 3, "[(x):1, inf:1]"}, {9, 4, "[(x):1, (x+1):1]"}}) {
    const FiniteField F = FiniteField::of_order(c.q);
    const RatDivisor m = dv(c.m, F);
    const auto r = modulus_check(max_kummer_extension(F, c.n, m), m, 100, c.q);
    o.take(r, F.name());
    const std::size_t k = std::stoul(fact(r, "negative_nonidentity"));
    o.require(k >= 1, "no non-identity negative control for " + F.name());
    nonid += k;
  }
  o.detail = "3 configurations x 100 g = 1 mod m, " + std::to_string(nonid) + " non-identity negative controls" + o.detail;
  return o;
}

Outcome kummer_kernel() {
  Outcome o;
  struct Case {
    std::uint32_t q, n;
    const char* m;
  };
  std::string flagship;
  for (auto& c : std::vector<Case>{{5, 4, "[(x):1, (x-1):1]"}, {5, 2, "[]"}, {7, 3, "[(x):1, inf:1]"}, {13, 6, "[(x):1]"}, {9, 4, "[(x):1, (x+1):1]"}}) {
    const FiniteField F = FiniteField::of_order(c.q);
    const auto r = max_kummer_kernel_check(F, c.n, dv(c.m, F), 30, c.q);
    o.take(r, F.name() + " m=" + c.m);
    if (c.q == 5 && c.n == 4) flagship = fact(r, "degree");
  }
  o.require(flagship == "16", "flagship [E:F] = " + flagship);
  o.detail = "5 configurations, flagship [E:F] = " + flagship + o.detail;
  return o;
}

Outcome lemma_ext() {
  Outcome o;
  const FiniteField F3 = FiniteField::make(3), F9 = FiniteField::make(3, 2);
  elem_t beta = 0;
  for (elem_t v = 0; v < F9.size(); ++v)
    if (F9.frobenius(v, 1) != v) {
      beta = v;
      break;
    }
  const auto e = ConstKummerExt::from_u(F3, 2, 4, RatFunc(Poly::x(F9) - Poly::constant(F9, beta)));
  const auto r = lemma_ext_check(e, 3, 40, 1);
  o.take(r, "q=3 n=4");
  o.take(lemma_ext_check(e, {dv("[(x-1):1]", F3)}), "D = (x-1)");
  const Curve C = Curve::make(F5, 1, 1);
  const auto rc = lemma_ext_check(CurveConstKummerExt::from_u(C, 2, 4, chord_u(C, 2)), 2, 40, 2);
  o.take(rc, C.to_string());
  o.require(r.samples >= 30 && rc.samples >= 30, "fewer than 30 samples");
  o.require(std::stoul(fact(r, "degree_zero_samples")) > 0 && std::stoul(fact(rc, "degree_zero_samples")) > 0,
            "no degree-0 samples");
  o.detail = "q=3 n=4 d'=2: " + std::to_string(r.samples) + " samples (" + fact(r, "degree_zero_samples") +
             " of degree 0); curve n=4: " + std::to_string(rc.samples) + " samples" + o.detail;
  return o;
}

Outcome surjectivity() {
  Outcome o;
  const FiniteField F7 = FiniteField::make(7), F9 = FiniteField::make(3, 2);
  const std::vector<AbelianExtDesc> exts{
      max_kummer_extension(F5, 4, dv("[(x):1, (x-1):1]")),
      AbelianExtDesc::make(F5, {{text::parse_ratfunc("(x-2)", F5), 4}}, 1, dv("[(x-2):1, inf:1]")),
      AbelianExtDesc::make(F5, {}, 3),
      AbelianExtDesc::make(F5, {{text::parse_ratfunc("(x^2+2)/(x)", F5), 2}}, 2),
      max_kummer_extension(F7, 3, dv("[(x):1, inf:1]", F7)),
      AbelianExtDesc::make(F9, {{text::parse_ratfunc("(x^3+x+1)", F9), 8}}, 2)};
  for (auto& e : exts) o.take(surjectivity_check(e, 3), e.to_string());
  o.detail = std::to_string(exts.size()) + " extensions generated by places of degree <= 3" + o.detail;
  return o;
}

Outcome tate() {
  Outcome o;
  std::string curves;
  for (std::uint32_t n : {2u, 3u, 4u, 5u}) {
    const Curve C = find_pairing_curve(n);
    o.take(tate_check(C, n, 20, n), C.to_string() + " n=" + std::to_string(n));
    curves += (curves.empty() ? "" : "; ") + C.to_string() + " n=" + std::to_string(n);
  }
  o.detail = curves + o.detail;
  return o;
}

Outcome rayclass() {
  Outcome o;
  std::size_t count = 0;
  for (std::uint32_t q : {5u, 7u}) {
    const FiniteField F = FiniteField::of_order(q);
    for (const char* m : {"[(x):1]", "[(x):1, (x-1):1]", "[(x):3]", "[(x^2+2):1]", "[(x):1, inf:1]", "[(x):1, (x-2):1, (x-3):1]"}) {
      RatDivisor D;
      try {
        D = dv(m, F);
      } catch (const parse_error&) {
        continue;  // not a place over this field
      }
      for (std::uint32_t n : {2u, q - 1})
        if (n > 1) {
          o.take(rayclass_oracle_check(F, D, n), F.name() + " m=" + m + " n=" + std::to_string(n));
          ++count;
        }
    }
  }
  o.detail = std::to_string(count) + " (q, m, n) cases agree with the unit-group oracle and under doubling" + o.detail;
  return o;
}

Outcome norm_compat() {
  Outcome o;
  const std::vector<std::pair<AbelianExtDesc, std::uint32_t>> cases{
      {AbelianExtDesc::make(F5, {{text::parse_ratfunc("(x-2)/(x)", F5), 4}}), 2},
      {max_kummer_extension(F5, 4, dv("[(x):1, (x-1):1]")), 2},
      {AbelianExtDesc::make(F5, {{text::parse_ratfunc("(x^2+2)", F5), 2}}), 3}};
  for (auto& [e, d] : cases) {
    const auto r = norm_compat_check(e, d, 50, d);
    o.take(r, e.to_string() + " d=" + std::to_string(d));
  }
  o.detail = "3 constant-extension configurations x 50 divisors" + o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Weil reciprocity", weil},
      {"adjointness", adjoint},
      {"kernel containments", kernels},
      {"non-degeneracy of tau-bar", nondeg},
      {"cardinality identity", cardinality},
      {"reciprocity (Artin kernel)", reciprocity},
      {"kernel theorem (maximal Kummer)", kummer_kernel},
      {"h-function lemma", lemma_ext},
      {"Artin surjectivity", surjectivity},
      {"Tate pairing", tate},
      {"ray class oracle", rayclass},
      {"norm compatibility", norm_compat}};
  const auto t0 = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
