#include <gtest/gtest.h>

#include "cft/artin.hpp"
#include "cft/pairings.hpp"
#include "cft/text.hpp"

using namespace cft;

namespace {

const FiniteField F5 = FiniteField::make(5);

RatFunc fn(const char* s, const FiniteField& F = F5) { return text::parse_ratfunc(s, F); }
RatPlace pl(const char* s, const FiniteField& F = F5) { return text::parse_place(s, F); }
RatDivisor dv(const char* s, const FiniteField& F = F5) { return text::parse_divisor(s, F); }
FieldElem el(elem_t v) { return {F5, v}; }

const std::set<RatPlace> S2{pl("(x)"), pl("(x-1)")};

}  // namespace

TEST(Ev, Examples) {
  const auto e = ev_ns(fn("(x-2)").pow(4) * fn("(3)").pow(4), 4, PlaceSet::finite({}), 2);
  for (auto& [p, v] : e.values) EXPECT_TRUE(v.is_one()) << p.to_string();
  const auto c = ev_ns(fn("(2)"), 4, PlaceSet::finite({}), 2);
  for (auto& [p, v] : c.values) EXPECT_EQ(v, el(2).pow(p.degree())) << p.to_string();
  const auto r = ev_ns(fn("(x)/(x-1)"), 4, PlaceSet::finite(S2), 1);
  EXPECT_EQ(r.at(pl("(x-2)")), el(2));
  EXPECT_THROW(ev_ns(fn("(x)"), 4, PlaceSet::finite({}), 1), domain_error);
}

TEST(Ord, Examples) {
  const PlaceSet none = PlaceSet::finite({});
  EXPECT_EQ(ord_ns(dv("[(x-2):1]"), 4, none).residues, (std::map<RatPlace, std::int64_t>{{pl("(x-2)"), 1}}));
  EXPECT_TRUE(ord_ns(4 * dv("[(x-2):1, (x^2+2):-3]"), 4, none).residues.empty());
  EXPECT_EQ(ord_ns(dv("[(x-2):1, (x-3):2]"), 4, none).residues,
            (std::map<RatPlace, std::int64_t>{{pl("(x-2)"), 1}, {pl("(x-3)"), 2}}));
  EXPECT_THROW(ord_ns(dv("[(x):1]"), 4, PlaceSet::finite({pl("(x)")})), domain_error);
}

TEST(Tau, Examples) {
  const PlaceSet none = PlaceSet::finite({});
  // 2^((5-1)/4 * deg) with deg (x-2) = 1.
  EXPECT_EQ(tau_ns(fn("(2)"), dv("[(x-2):1]"), 4, none), el(2));
  const PlaceSet S = PlaceSet::finite(S2);
  const RatFunc f = fn("(x)/(x-1)"), g = fn("(x^2+2)/(x-1)").pow(4) * fn("(x)/(x-1)");
  for (const char* D : {"[(x-2):1]", "[(x-3):2, (x^2+3):1]", "[inf:3, (x-2):-1]"}) {
    EXPECT_TRUE(tau_ns(f, 4 * dv(D), 4, S).is_one());
    EXPECT_EQ(tau_ns(fn("(x-2)").pow(4) * f, dv(D), 4, S), tau_ns(f, dv(D), 4, S));
    EXPECT_EQ(tau_ns(g, dv(D), 4, S), tau_ns_direct(g, dv(D), 4, S));
  }
}

TEST(TauBar, EmptySTable) {
  const auto T = tau_bar_table(F5, 4, {});
  ASSERT_EQ(T.entries.size(), 4u);
  ASSERT_EQ(T.entries[0].size(), 4u);
  EXPECT_EQ(T.bilinearity_failures, 0u);
  // Constant c = 2^a against a divisor of degree b: 2^(a b) since c(D) = c^deg D.
  const MuN mu = MuN::make(F5, 4);
  const TauBarData d = tau_bar_data(F5, 4, {});
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 4; ++b) {
      const RatFunc f = d.function({a});
      const std::int64_t deg = d.divisor({b}).degree();
      FieldElem expect = el(1);
      for (std::int64_t k = 0; k < nt::mod(deg, 4); ++k) expect = expect * FieldElem{F5, f.lead()};
      EXPECT_EQ(mu.power(T.at({a}, {b})), expect);
    }
  EXPECT_TRUE(nondegeneracy_check(T).nondegenerate);
}

TEST(TauBar, TrivialAndLarge) {
  const auto T1 = tau_bar_table(F5, 1, {});
  EXPECT_EQ(T1.entries.size(), 1u);
  EXPECT_EQ(T1.entries[0].size(), 1u);
  for (const auto& S : {std::set<RatPlace>{pl("(x)")}, S2}) {
    const auto T = tau_bar_table(F5, 4, S);
    EXPECT_EQ(T.bilinearity_failures, 0u);
    const auto res = nondegeneracy_check(T);
    EXPECT_TRUE(res.nondegenerate);
    EXPECT_TRUE(res.crit1_consistent);
    EXPECT_TRUE(res.left_kernel.size() == 1 && res.right_kernel.size() == 1);
  }
  EXPECT_EQ(tau_bar_table(F5, 4, S2).entries.size(), 16u);
  EXPECT_THROW(tau_bar_table(F5, 3, {}), domain_error);
}

TEST(Nondegeneracy, DegenerateTables) {
  const ProductGroup G{{4}}, H{{4, 4}};
  const auto zero = PairingTable::from_basis(4, G, G, {{0}});
  const auto r0 = nondegeneracy_check(zero);
  EXPECT_FALSE(r0.nondegenerate);
  EXPECT_EQ(r0.left_kernel.size(), 4u);
  EXPECT_EQ(r0.right_kernel.size(), 4u);
  // Two equal rows: (1,-1) pairs trivially.
  const auto dup = PairingTable::from_basis(4, H, G, {{1}, {1}});
  const auto r1 = nondegeneracy_check(dup);
  EXPECT_FALSE(r1.nondegenerate);
  EXPECT_EQ(r1.left_kernel.size(), 4u);
  EXPECT_TRUE(r1.crit1_consistent);
}

TEST(Adjointness, SquaresAcrossFields) {
  const std::vector<std::pair<FiniteField, std::uint32_t>> cases{
      {F5, 4}, {FiniteField::make(3, 2), 4}, {FiniteField::make(13), 6}, {FiniteField::make(13), 4}};
  for (auto& [F, n] : cases) {
    const std::set<RatPlace> S{pl("(x)", F), pl("inf", F)};
    for (int sq = 1; sq <= 3; ++sq) {
      const auto r = adjointness_check(sq, F, n, S, 60, 17 * sq + n);
      EXPECT_TRUE(r.pass) << F.name() << " n=" << n << " square " << sq << (r.failures.empty() ? "" : ": " + r.failures[0]);
      EXPECT_EQ(r.samples, 60u);
    }
  }
  EXPECT_TRUE(adjointness_check(2, F5, 4, S2, 0, 1).pass);
}

TEST(Adjointness, SquareTwoExample) {
  const PlaceSet S = PlaceSet::finite(S2);
  const RatFunc f = fn("(x)/(x-1)"), g = fn("(x-2)/(x-3)");
  EXPECT_EQ(tau_ns(f, principal_divisor(g), 4, S), tau_ns(g, principal_divisor(f), 4, S.complement()));
}

TEST(Kernels, Containment) {
  const auto r = kernel_containment_check(F5, 4, S2, 40, 10, 3);
  EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures[0]);
}

TEST(Diagram, ExactnessAndFiveLemma) {
  for (const auto& S : {std::set<RatPlace>{pl("(x)")}, S2}) {
    const auto e = exactness_check(F5, 4, S, 2);
    EXPECT_TRUE(e.pass) << (e.failures.empty() ? "" : e.failures[0]);
    const auto f = five_lemma_check(F5, 4, S, 2);
    EXPECT_TRUE(f.pass) << (f.failures.empty() ? "" : f.failures[0]);
  }
}

TEST(Cardinality, SelmerMatchesRayClass) {
  const auto r = cardinality_check(F5, 4, dv("[(x):1, (x-1):1]"));
  EXPECT_TRUE(r.pass);
  const auto F7 = FiniteField::make(7);
  EXPECT_TRUE(cardinality_check(F7, 3, dv("[(x):1, inf:1]", F7)).pass);
  EXPECT_TRUE(cardinality_check(F7, 6, dv("[(x^2+1):1]", F7)).pass);
}

TEST(Tnm, Examples) {
  const RatDivisor m = dv("[(x):1, (x-1):1]");
  const RatFunc f = fn("(x)/(x-1)");
  EXPECT_EQ(t_nm(F5, 4, m, f, dv("[(x-2):1]")), el(2));
  EXPECT_EQ(t_nm(F5, 4, m, f, dv("[(x-2):1]")), tau_ns(f, dv("[(x-2):1]"), 4, PlaceSet::finite(S2)));
  EXPECT_TRUE(t_nm(F5, 4, m, f, dv("[(x-2):4, (x^2+2):-8]")).is_one());
  EXPECT_TRUE(t_nm(F5, 4, m, fn("(1)"), dv("[(x-3):1]")).is_one());
}

TEST(KummerPairing, Definition) {
  const auto sb = selmer_basis(F5, 4, S2);
  const auto e = AbelianExtDesc::make(F5, {{sb.generators()[0], 4}, {sb.generators()[1], 4}}, 1, dv("[(x):1, (x-1):1]"));
  EXPECT_TRUE(kummer_pairing(sb, sb.generators()[0], GaloisElem::identity(e)).is_one());
  GaloisElem g = GaloisElem::identity(e);
  g.zeta[0] = el(2);
  EXPECT_EQ(kummer_pairing(sb, sb.generators()[0], g), el(2));
  // Bilinear on a 3x3 sub-table.
  const std::vector<RatFunc> fs{sb.generators()[0], sb.generators()[1], sb.generators()[0] * sb.generators()[1]};
  GaloisElem h = GaloisElem::identity(e);
  h.zeta = {el(3), el(4)};
  const std::vector<GaloisElem> gs{g, h, g * h};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(kummer_pairing(sb, fs[2], gs[j]), kummer_pairing(sb, fs[0], gs[j]) * kummer_pairing(sb, fs[1], gs[j]));
      EXPECT_EQ(kummer_pairing(sb, fs[i], gs[2]), kummer_pairing(sb, fs[i], gs[0]) * kummer_pairing(sb, fs[i], gs[1]));
    }
}
