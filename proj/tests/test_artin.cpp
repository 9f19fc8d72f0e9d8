#include <gtest/gtest.h>

#include "cft/artin.hpp"
#include "cft/sample.hpp"
#include "cft/text.hpp"

using namespace cft;

namespace {

const FiniteField F5 = FiniteField::make(5);

RatFunc fn(const char* s, const FiniteField& F = F5) { return text::parse_ratfunc(s, F); }
RatPlace pl(const char* s, const FiniteField& F = F5) { return text::parse_place(s, F); }
RatDivisor dv(const char* s, const FiniteField& F = F5) { return text::parse_divisor(s, F); }

std::string fact(const CheckReport& r, const std::string& key) {
  for (auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

std::string first_failure(const CheckReport& r) { return r.failures.empty() ? "" : r.failures[0]; }

}  // namespace

TEST(Frobenius, ConstantExtension) {
  const auto e = AbelianExtDesc::make(F5, {}, 2);
  // x^2+2 is irreducible: 3 is not a square mod 5.
  std::set<elem_t> squares;
  for (elem_t a = 0; a < 5; ++a) squares.insert(a * a % 5);
  ASSERT_FALSE(squares.count(3));
  EXPECT_TRUE(frobenius_at_place(e, pl("(x^2+2)")).is_identity());
  const auto g = frobenius_at_place(e, pl("(x-3)"));
  EXPECT_EQ(g.j, 1u);
  EXPECT_EQ(frobenius_at_place(e, pl("inf")).j, 1u);
}

TEST(Frobenius, KummerResidue) {
  const auto e = AbelianExtDesc::make(F5, {{fn("(x-2)"), 4}});
  const auto g = frobenius_at_place(e, pl("(x)"));
  // Residue of x-2 at x = 0 is 3; 3^((5-1)/4) = 3.
  EXPECT_EQ(g.zeta[0], (FieldElem{F5, 3}));
  EXPECT_THROW(frobenius_at_place(e, pl("(x-2)")), precondition_error);
  EXPECT_THROW(frobenius_at_place(e, pl("inf")), precondition_error);
}

TEST(Frobenius, TwoPathsAgree) {
  const auto F9 = FiniteField::make(3, 2);
  for (const auto& e : {AbelianExtDesc::make(F5, {{fn("(x-2)"), 4}, {fn("(x^2+2)/(x)"), 2}}, 3),
                        AbelianExtDesc::make(F9, {{fn("(x^3+x+1)", F9), 8}}, 2)}) {
    const auto r = frobenius_paths_check(e, 3);
    EXPECT_TRUE(r.pass) << first_failure(r);
    EXPECT_GT(r.samples, 10u);
  }
}

TEST(ArtinMap, Examples) {
  const auto c = AbelianExtDesc::make(F5, {}, 3);
  EXPECT_TRUE(artin_map(c, {}).is_identity());
  sample::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const RatDivisor D = sample::random_divisor(F5, 3, 3, 3, rng);
    EXPECT_EQ(artin_map(c, D).j, static_cast<std::uint32_t>(nt::mod(D.degree(), 3)));
  }
  const auto e = AbelianExtDesc::make(F5, {{fn("(x)/(x-1)"), 4}}, 2);
  const std::set<RatPlace> avoid{pl("(x)"), pl("(x-1)")};
  for (int i = 0; i < 50; ++i) {
    const RatDivisor D = sample::random_divisor(F5, 2, 3, 3, rng, avoid), E = sample::random_divisor(F5, 2, 3, 3, rng, avoid);
    EXPECT_EQ(artin_map(e, D + E), artin_map(e, D) * artin_map(e, E));
  }
  EXPECT_THROW(artin_map(e, dv("[(x):1]")), precondition_error);
}

TEST(Modulus, Reciprocity) {
  const RatDivisor m = dv("[(x):1, (x-1):1]");
  const auto e = max_kummer_extension(F5, 4, m);
  const auto r = modulus_check(e, m, 100, 3);
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(r.samples, 100u);
  EXPECT_NE(fact(r, "negative_nonidentity"), "0");
  // x-2 is not 1 mod x(x-1) and its divisor is seen by the extension.
  EXPECT_FALSE(artin_map(e, principal_divisor(fn("(x-2)"))).is_identity());
  EXPECT_TRUE(artin_map(e, principal_divisor(fn("(1)"))).is_identity());
}

TEST(Surjectivity, Witnesses) {
  const auto triv = surjectivity_witness(AbelianExtDesc::make(F5, {}), 2);
  EXPECT_TRUE(triv.places.empty());
  EXPECT_TRUE(triv.complete());
  const auto k = surjectivity_witness(AbelianExtDesc::make(F5, {{fn("(x-2)"), 4}}, 1, dv("[(x-2):1, inf:1]")), 3);
  ASSERT_EQ(k.places.size(), 1u);
  EXPECT_EQ(k.places[0], pl("(x)"));
  EXPECT_EQ(k.degree, 4u);
  const auto c = surjectivity_witness(AbelianExtDesc::make(F5, {}, 3), 3);
  ASSERT_EQ(c.places.size(), 1u);
  EXPECT_EQ(c.places[0].degree(), 1);
  const auto big = surjectivity_check(max_kummer_extension(F5, 4, dv("[(x):1, (x-1):1]")), 3);
  EXPECT_TRUE(big.pass) << first_failure(big);
}

TEST(KummerKernel, Flagship) {
  const auto r = max_kummer_kernel_check(F5, 4, dv("[(x):1, (x-1):1]"), 30, 1);
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(fact(r, "degree"), "16");
  EXPECT_EQ(fact(r, "rayclass_order"), "16");
  EXPECT_EQ(fact(r, "kernel_size"), "1");
}

TEST(KummerKernel, SmallCases) {
  const auto r1 = max_kummer_kernel_check(F5, 1, dv("[(x):1]"), 10, 1);
  EXPECT_TRUE(r1.pass);
  EXPECT_EQ(fact(r1, "degree"), "1");
  const auto r2 = max_kummer_kernel_check(F5, 2, {}, 10, 1);
  EXPECT_TRUE(r2.pass) << first_failure(r2);
  EXPECT_EQ(fact(r2, "degree"), "2");
  const auto F7 = FiniteField::make(7);
  const auto r3 = max_kummer_kernel_check(F7, 3, dv("[(x):1, inf:1]", F7), 20, 2);
  EXPECT_TRUE(r3.pass) << first_failure(r3);
}

TEST(GaloisOrder, ConstantsAndRadicals) {
  EXPECT_EQ(galois_order(AbelianExtDesc::make(F5, {{fn("(x-2)"), 4}})), 4u);
  // 2 becomes a square in GF(25): y^2 = 2 is absorbed by the constant extension.
  EXPECT_EQ(galois_order(AbelianExtDesc::make(F5, {{fn("(2)"), 2}}, 2)), 2u);
  EXPECT_EQ(galois_order(AbelianExtDesc::make(F5, {{fn("(2)"), 2}}, 1)), 2u);
  EXPECT_EQ(galois_order(AbelianExtDesc::make(F5, {{fn("(x)"), 2}, {fn("(x)"), 4}})), 4u);
}

TEST(NormCompat, ConstantExtension) {
  const auto e = AbelianExtDesc::make(F5, {{fn("(x-2)/(x)"), 4}});
  const auto r = norm_compat_check(e, 2, 50, 6);
  EXPECT_TRUE(r.pass) << first_failure(r);
  EXPECT_EQ(r.samples, 100u);
  EXPECT_TRUE(norm_compat_check(e, 1, 10, 1).pass);
  EXPECT_THROW(norm_compat_check(AbelianExtDesc::make(F5, {}, 2), 2, 1, 1), domain_error);
}

TEST(Descriptor, RejectsRamificationOutsideModulus) {
  EXPECT_THROW(AbelianExtDesc::make(F5, {{fn("(x)"), 4}}, 1, dv("[(x-1):1]")), domain_error);
  EXPECT_THROW(AbelianExtDesc::make(F5, {{fn("(x)"), 3}}), domain_error);
  EXPECT_EQ(AbelianExtDesc::make(F5, {{fn("(x)"), 4}}).modulus(), dv("[(x):1, inf:1]"));
}
