#include <gtest/gtest.h>

#include "cft/ratfun.hpp"
#include "cft/sample.hpp"
#include "cft/suites.hpp"
#include "cft/text.hpp"

using namespace cft;

namespace {

const FiniteField F5 = FiniteField::make(5);
const FiniteField F3 = FiniteField::make(3);

RatFunc fn(const char* s, const FiniteField& F = F5) { return text::parse_ratfunc(s, F); }
RatPlace pl(const char* s, const FiniteField& F = F5) { return text::parse_place(s, F); }
RatDivisor dv(const char* s, const FiniteField& F = F5) { return text::parse_divisor(s, F); }

}  // namespace

TEST(PrincipalDivisor, Examples) {
  EXPECT_EQ(principal_divisor(fn("(x-1)/(x-2)")), dv("[(x-1):1, (x-2):-1]"));
  EXPECT_EQ(principal_divisor(fn("(x^2+1)", F3)), dv("[(x^2+1):1, inf:-2]", F3));
  EXPECT_TRUE(principal_divisor(fn("(3)")).is_zero());
  EXPECT_THROW(RatFunc(Poly(F5), Poly::constant(F5, 1)), domain_error);
}

TEST(PrincipalDivisor, DegreeZero) {
  sample::Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(principal_divisor(sample::random_function(F5, 8, rng)).degree(), 0);
}

TEST(Residue, Examples) {
  const auto c = residue_mod_nth_powers(fn("(x)"), pl("(x-2)"), 4);
  EXPECT_FALSE(c.is_trivial());
  // Fourth powers in F_5^x are {1}: the class of 2 is 2 itself.
  EXPECT_EQ(c.character, Poly::constant(F5, 2));
  EXPECT_TRUE(residue_mod_nth_powers(fn("(x)"), pl("(x)"), 4).is_trivial());
  EXPECT_TRUE(residue_mod_nth_powers(fn("(x-2)").pow(4), pl("(x-2)"), 4).is_trivial());
}

TEST(Residue, IndependentOfAuxiliary) {
  const RatFunc f = fn("(x-2)").pow(4) * fn("(x+1)/(x^2+2)");
  const RatPlace p = pl("(x-2)");
  const auto a = residue_mod_nth_powers(f, p, 4, fn("(x-2)")), b = residue_mod_nth_powers(f, p, 4, fn("(x-2)") * fn("(x-3)").pow(2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, residue_mod_nth_powers(f, p, 4));
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(fn("(x)"), dv("[(x-2):1]")), (FieldElem{F5, 2}));
  EXPECT_EQ(evaluate(fn("(x)", F3), dv("[(x^2+1):1]", F3)), (FieldElem{F3, 1}));
  const RatFunc f = fn("(x)"), g = fn("(x-1)/(x-2)");
  EXPECT_EQ(evaluate(f, principal_divisor(g)), (FieldElem{F5, 3}));
  EXPECT_EQ(evaluate(g, principal_divisor(f)), (FieldElem{F5, 3}));
  EXPECT_THROW(evaluate(f, dv("[(x):1]")), precondition_error);
}

TEST(Evaluate, Multiplicative) {
  sample::Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const RatFunc f = sample::random_function(F5, 3, rng), g = sample::random_function(F5, 3, rng);
    const RatDivisor D = sample::random_divisor(F5, 2, 2, 2, rng), E = sample::random_divisor(F5, 2, 2, 2, rng);
    try {
      EXPECT_EQ(evaluate(f * g, D), evaluate(f, D) * evaluate(g, D));
      EXPECT_EQ(evaluate(f, D + E), evaluate(f, D) * evaluate(f, E));
      ++checked;
    } catch (const precondition_error&) {
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Evaluate, WeilReciprocity) {
  const auto r5 = weil_check(F5, 500, 11);
  EXPECT_TRUE(r5.pass) << (r5.failures.empty() ? "" : r5.failures[0]);
  EXPECT_EQ(r5.samples, 500u);
  const auto r9 = weil_check(FiniteField::make(3, 2), 200, 12);
  EXPECT_TRUE(r9.pass);
}

TEST(CoprimeShift, Examples) {
  const std::set<RatPlace> avoid{pl("(x)")};
  const RatFunc s = coprime_shift(fn("(x)").pow(4) * fn("(x-1)"), 4, avoid);
  EXPECT_EQ(ord(s, pl("(x)")), 0);
  EXPECT_TRUE(selmer_contains(s / fn("(x-1)"), 4, {}));
  EXPECT_EQ(s / fn("(x-1)"), fn("(1)"));
  EXPECT_EQ(coprime_shift(fn("(x)").pow(4) * fn("(x-1)"), 4, {}), fn("(x)").pow(4) * fn("(x-1)"));
  const RatFunc one = coprime_shift(fn("(x)").pow(4), 4, avoid);
  EXPECT_TRUE(principal_divisor(one).is_zero());
  EXPECT_THROW(coprime_shift(fn("(x)").pow(2), 4, avoid), precondition_error);
}

TEST(CoprimeShift, ClassPreservedAndAvoidsSupport) {
  sample::Rng rng(5);
  const std::set<RatPlace> avoid{pl("(x)"), pl("(x-1)"), pl("inf")};
  for (int i = 0; i < 100; ++i) {
    const RatFunc f = sample::random_nth_power(F5, 4, 2, rng) * fn("(x^2+2)/(x^2+3)");
    const RatFunc s = coprime_shift(f, 4, avoid);
    for (auto& p : avoid) EXPECT_EQ(ord(s, p), 0);
    const RatDivisor q = principal_divisor(s / f);
    for (auto& [p, k] : q.terms()) EXPECT_EQ(k % 4, 0);
  }
}

TEST(Selmer, Contains) {
  const std::set<RatPlace> S{pl("(x)"), pl("(x-1)")};
  EXPECT_TRUE(selmer_contains(fn("(x)/(x-1)"), 4, S));
  EXPECT_FALSE(selmer_contains(fn("(x)"), 4, {}));
  EXPECT_TRUE(selmer_contains(fn("(2)"), 3, {}));
  sample::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const RatFunc h = sample::random_function(F5, 3, rng);
    for (const RatFunc& f : {fn("(x)/(x-1)"), fn("(x)"), fn("(x^2+2)").pow(2)})
      EXPECT_EQ(selmer_contains(f * h.pow(4), 4, S), selmer_contains(f, 4, S));
  }
}

TEST(Selmer, Basis) {
  const auto b0 = selmer_basis(F5, 4, {});
  ASSERT_EQ(b0.generators().size(), 1u);
  EXPECT_EQ(b0.generators()[0], fn("(2)"));
  EXPECT_EQ(b0.order(), 4u);
  const auto b2 = selmer_basis(F5, 4, {pl("(x)"), pl("(x-1)")});
  EXPECT_EQ(b2.generators().size(), 2u);
  EXPECT_EQ(b2.order(), 16u);
  for (auto& g : b2.generators()) EXPECT_TRUE(selmer_contains(g, 4, {pl("(x)"), pl("(x-1)")}));
  const auto b3 = selmer_basis(F3, 2, {});
  EXPECT_EQ(b3.order(), 2u);
  EXPECT_EQ(b3.generators()[0], fn("(2)", F3));
  EXPECT_THROW(selmer_basis(F5, 5, {}), domain_error);
}

TEST(Selmer, CoordinatesRoundTrip) {
  const std::set<RatPlace> S{pl("(x)"), pl("inf")};
  const auto b = selmer_basis(F5, 4, S);
  for (auto& c : b.elements()) EXPECT_EQ(b.coordinates(b.element(c)), c);
}

TEST(Conorm, NormOfConormIsDegreeMultiple) {
  const auto F9 = FiniteField::make(3, 2);
  for (auto& p : rat_places_up_to_degree(F3, 3)) {
    const RatDivisor C = conorm(p, F9);
    EXPECT_EQ(norm_divisor(C, F3), 2 * RatDivisor(p));
  }
}
