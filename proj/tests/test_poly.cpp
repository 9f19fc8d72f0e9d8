#include <gtest/gtest.h>

#include "cft/poly.hpp"
#include "cft/sample.hpp"

using namespace cft;

namespace {

Poly multiply_back(const Factorization& f, const FiniteField& F) {
  Poly r = Poly::constant(F, f.unit);
  for (auto& [g, e] : f.factors) r = r * g.pow(static_cast<std::uint64_t>(e));
  return r;
}

// Irreducibility by trial division against every monic of degree <= deg/2.
bool brute_irreducible(const Poly& a) {
  const auto& F = a.field();
  for (int d = 1; d <= a.degree() / 2; ++d)
    for (std::uint64_t i = 0; i < monic_count(F, d); ++i)
      if ((a % monic_from_index(F, d, i)).is_zero()) return false;
  return a.degree() >= 1;
}

}  // namespace

TEST(Poly, DivmodIdentity) {
  const auto F = FiniteField::make(7);
  sample::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Poly a = sample::random_poly(F, 9, rng), b = sample::random_poly(F, 4, rng);
    if (b.is_zero()) continue;
    auto [q, r] = Poly::divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(Poly, XgcdBezout) {
  const auto F = FiniteField::make(5);
  sample::Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const Poly a = sample::random_poly(F, 6, rng), b = sample::random_poly(F, 5, rng);
    if (a.is_zero() || b.is_zero()) continue;
    auto [g, s, u] = Poly::xgcd(a, b);
    EXPECT_EQ(s * a + u * b, g);
    EXPECT_TRUE((a % g).is_zero());
    EXPECT_TRUE((b % g).is_zero());
  }
}

TEST(Poly, FactorizationMultipliesBack) {
  for (auto [p, r] : {std::pair{5u, 1u}, {3u, 2u}, {2u, 1u}, {13u, 1u}}) {
    const auto F = FiniteField::make(p, r);
    sample::Rng rng(p * 10 + r);
    for (int t = 0; t < 60; ++t) {
      const Poly a = sample::random_poly(F, 8, rng);
      if (a.is_zero()) continue;
      const auto f = factor(a);
      EXPECT_EQ(multiply_back(f, F), a) << a.to_string();
      for (auto& [g, e] : f.factors) {
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE(brute_irreducible(g)) << g.to_string();
      }
    }
  }
}

TEST(Poly, FactorizationIsDeterministic) {
  const auto F = FiniteField::make(3, 2);
  sample::Rng rng(9);
  const Poly a = sample::random_poly(F, 8, rng);
  EXPECT_EQ(factor(a).factors, factor(a).factors);
}

TEST(Poly, InseparableInput) {
  const auto F = FiniteField::make(3);
  const Poly x = Poly::x(F), one = Poly::constant(F, 1);
  const Poly a = (x.pow(3) + one) * (x * x + one);  // (x+1)^3 (x^2+1)
  const auto f = factor(a);
  EXPECT_EQ(multiply_back(f, F), a);
  ASSERT_EQ(f.factors.size(), 2u);
}

TEST(Poly, IrreducibleCountsMatchNecklaceFormula) {
  // Number of monic irreducibles of degree d over F_q: (1/d) sum_{e|d} mu(e) q^{d/e}.
  const auto F = FiniteField::make(3);
  EXPECT_EQ(irreducibles(F, 1).size(), 3u);
  EXPECT_EQ(irreducibles(F, 2).size(), 3u);
  EXPECT_EQ(irreducibles(F, 3).size(), 8u);
  EXPECT_EQ(irreducibles(F, 4).size(), 18u);
  for (auto& g : irreducibles(F, 3)) EXPECT_TRUE(brute_irreducible(g));
}

TEST(Poly, X2Plus1OverF3IsIrreducible) {
  const auto F = FiniteField::make(3);
  EXPECT_TRUE(is_irreducible(Poly(F, {1, 0, 1})));
  EXPECT_FALSE(is_irreducible(Poly(FiniteField::make(5), {1, 0, 1})));
}

TEST(Poly, IrreducibleRootIsARoot) {
  const auto F = FiniteField::make(5), K = FiniteField::make(5, 3);
  for (auto& g : irreducibles(F, 3)) {
    const FieldElem a = detail::irreducible_root(g, K);
    FieldElem v{K, 0};
    for (std::size_t i = g.coeffs().size(); i-- > 0;) v = v * a + embed(FieldElem{F, g.coeff(i)}, K);
    EXPECT_TRUE(v.is_zero());
  }
}
