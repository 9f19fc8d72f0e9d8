#include <gtest/gtest.h>

#include "cft/lemma_ext.hpp"
#include "cft/sample.hpp"
#include "cft/text.hpp"

using namespace cft;

namespace {

const FiniteField F3 = FiniteField::make(3);
const FiniteField F5 = FiniteField::make(5);

std::string fact(const CheckReport& r, const std::string& key) {
  for (auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

std::string first_failure(const CheckReport& r) { return r.failures.empty() ? "" : r.failures[0]; }

// y^4 = f over F_9(x) built from u = x - beta, beta outside F_3.
ConstKummerExt q3_ext() {
  const auto F9 = FiniteField::make(3, 2);
  elem_t beta = 0;
  for (elem_t v = 0; v < F9.size(); ++v)
    if (F9.frobenius(v, 1) != v) {
      beta = v;
      break;
    }
  return ConstKummerExt::from_u(F3, 2, 4, RatFunc(Poly::x(F9) - Poly::constant(F9, beta)));
}

}  // namespace

TEST(NthRoots, Genus0) {
  const RatFunc w = text::parse_ratfunc("(x^2+2)/(x-1)", F5);
  const auto hs = nth_roots(w.pow(4) * RatFunc::constant(F5, 1), 4);
  ASSERT_EQ(hs.size(), 4u);
  std::set<elem_t> ratios;
  for (auto& h : hs) {
    EXPECT_EQ(h.pow(4), w.pow(4));
    const RatFunc z = h / w;
    ASSERT_TRUE(z.is_constant());
    ratios.insert(z.lead());
  }
  EXPECT_EQ(ratios.size(), 4u);
  EXPECT_THROW(nth_roots(w, 4), domain_error);
  EXPECT_THROW(nth_roots(RatFunc::constant(F5, 2), 2), extension_degree_error);
}

TEST(HFunction, TrivialConstantExtension) {
  auto e = ConstKummerExt::from_u(F5, 1, 4, text::parse_ratfunc("(x-2)", F5));
  const auto hs = h_function(e);
  ASSERT_EQ(hs.size(), 4u);
  // h = f^((q-1)/n) with q = 5, n = 4.
  EXPECT_NE(std::find(hs.begin(), hs.end(), e.f), hs.end());
  EXPECT_TRUE(h_divisor_check(e, hs).pass);
}

TEST(HFunction, DivisorIdentity) {
  auto e = q3_ext();
  const auto hs = h_function(e);
  ASSERT_EQ(hs.size(), 4u);
  const auto r = h_divisor_check(e, hs);
  EXPECT_TRUE(r.pass) << first_failure(r);
  for (auto& h : hs) EXPECT_EQ(h.pow(4), e.phi(e.f, -1).pow(3) / e.f);
}

TEST(HFunction, AvoidsConormSupport) {
  auto e = q3_ext();
  const RatDivisor avoid = conorm(RatPlace::infinity(F3), e.ext);
  const auto hs = h_function(e, avoid);
  for (auto& h : hs)
    for (auto& P : avoid.support()) EXPECT_EQ(ord(h, P), 0);
}

TEST(LemmaExt, ExplicitDivisorQ3) {
  const auto e = q3_ext();
  const auto r = lemma_ext_check(e, {text::parse_divisor("[(x-1):1]", F3)});
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(fact(r, "sigma_choices"), "4");
}

TEST(LemmaExt, PrincipalAndDegreeZeroDivisors) {
  const auto e = q3_ext();
  const std::vector<RatDivisor> Ds{text::parse_divisor("[(x-1):1, (x^2+x+2):-1, (x):1]", F3),
                                   principal_divisor(text::parse_ratfunc("(x^2+x+2)/(x^2+2*x+2)", F3)),
                                   text::parse_divisor("[(x-1):2, (x):1]", F3)};
  const auto r = lemma_ext_check(e, Ds);
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(fact(r, "degree_zero_samples"), "2");
  EXPECT_THROW(lemma_ext_check(e, {text::parse_divisor("[inf:1]", F3)}), precondition_error);
}

TEST(LemmaExt, SampledGenus0) {
  const auto r = lemma_ext_check(q3_ext(), 3, 40, 1);
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(r.samples, 40u);
  EXPECT_EQ(fact(r, "negative_control_matches"), "0");
  EXPECT_EQ(r.witnesses.size(), 4u);
  const auto e5 = ConstKummerExt::from_u(F5, 2, 4, RatFunc(Poly::x(FiniteField::make(5, 2)) -
                                                           Poly::constant(FiniteField::make(5, 2), 7)));
  const auto r5 = lemma_ext_check(e5, 2, 30, 2);
  EXPECT_TRUE(r5.pass) << first_failure(r5);
}

TEST(LemmaExt, Curve) {
  const Curve C = Curve::make(F5, 1, 1);
  for (std::uint32_t n : {3u, 4u}) {
    const auto e = CurveConstKummerExt::from_u(C, 2, n, chord_u(C, 2));
    const auto hs = e.h_candidates();
    EXPECT_EQ(hs.size(), n);
    const auto r = lemma_ext_check(e, 2, 36, n);
    EXPECT_TRUE(r.pass) << "n=" << n << ": " << first_failure(r);
    EXPECT_GE(r.samples, 30u);
    EXPECT_EQ(fact(r, "negative_control_matches"), "0");
  }
}

TEST(LemmaExt, MismatchIsDetected) {
  // Matching against the wrong candidate list must fail.
  ExtMatching m;
  const FieldElem a{F5, 2}, b{F5, 3}, one{F5, 1};
  m.sigma_side = {{a, b}, {b, a}};
  m.h_side = {{a, a}, {b, b}};
  m.control = {one, one};
  m.degrees = {1, 1};
  m.labels = {"D1", "D2"};
  EXPECT_FALSE(ext_matching_report(m, "synthetic").pass);
  m.h_side = {{b, a}, {a, b}};
  EXPECT_TRUE(ext_matching_report(m, "synthetic").pass);
  m.control = {a, b};
  EXPECT_FALSE(ext_matching_report(m, "synthetic").pass);
}
