#include <gtest/gtest.h>

#include "cft/sample.hpp"
#include "cft/text.hpp"

using namespace cft;

namespace {

const FiniteField F5 = FiniteField::make(5);

}  // namespace

TEST(Text, Fields) {
  EXPECT_EQ(text::parse_field("GF(9)"), FiniteField::make(3, 2));
  EXPECT_EQ(text::parse_field("GF(3^2)"), FiniteField::make(3, 2));
  EXPECT_EQ(text::parse_field("5"), F5);
  EXPECT_THROW(text::parse_field("GF(6)"), parse_error);
  EXPECT_THROW(text::parse_field("GF(9"), parse_error);
}

TEST(Text, Elements) {
  const auto a = text::parse_elem("GF(9):[1,2]");
  EXPECT_EQ(a.to_string(), "GF(9):[1,2]");
  EXPECT_EQ(a, FieldElem::from_digits(FiniteField::make(3, 2), {1, 2}));
  EXPECT_THROW(text::parse_elem("GF(9):[1,3]"), parse_error);
}

TEST(Text, FunctionsRoundTrip) {
  const RatFunc f = text::parse_ratfunc("(x^4+2*x)/(x-1) over GF(5)");
  EXPECT_EQ(f.num(), Poly(F5, {0, 2, 0, 0, 1}));
  EXPECT_EQ(f.den(), Poly(F5, {4, 1}));
  EXPECT_EQ(text::parse_ratfunc(f.to_string()), f);
  EXPECT_EQ(text::parse_ratfunc(f.to_string()).to_string(), f.to_string());
  // Canonical printing uses nonnegative coefficients.
  EXPECT_NE(text::parse_ratfunc("(x-1)", F5).to_string().find("x+4"), std::string::npos);
  const auto F9 = FiniteField::make(3, 2);
  for (const auto& F : {F5, F9}) {
    sample::Rng rng(F.size());
    for (int i = 0; i < 200; ++i) {
      const RatFunc g = sample::random_function(F, 5, rng);
      EXPECT_EQ(text::parse_ratfunc(g.to_string()), g) << g.to_string();
    }
  }
  EXPECT_THROW(text::parse_ratfunc("(x+1)"), parse_error);
  EXPECT_THROW(text::parse_ratfunc("(x+1)/(0)", F5), parse_error);
  EXPECT_THROW(text::parse_ratfunc("(x+1) over GF(7)", F5), parse_error);
}

TEST(Text, PlacesAndDivisors) {
  EXPECT_TRUE(text::parse_place("inf", F5).is_infinite());
  EXPECT_EQ(text::parse_place("(x^2+2)", F5).degree(), 2);
  EXPECT_THROW(text::parse_place("(x^2+1)", F5), parse_error);  // (x-2)(x-3)
  const RatDivisor D = text::parse_divisor("[(x-1):1, inf:-1]", F5);
  EXPECT_EQ(D.degree(), 0);
  EXPECT_EQ(text::parse_divisor(D.to_string(), F5), D);
  EXPECT_TRUE(text::parse_divisor("[]", F5).is_zero());
  sample::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const RatDivisor E = sample::random_divisor(F5, 3, 4, 5, rng);
    EXPECT_EQ(text::parse_divisor(E.to_string(), F5).to_string(), E.to_string());
  }
  const auto S = text::parse_place_set("{(x), inf}", F5);
  EXPECT_EQ(S.size(), 2u);
  EXPECT_EQ(text::parse_place_set(PlaceSet::finite(S).to_string(), F5), S);
}

TEST(Text, CurvesAndPoints) {
  const Curve C = text::parse_curve("y^2=x^3+1*x+1 over GF(5)");
  EXPECT_EQ(C.a(), (FieldElem{F5, 1}));
  EXPECT_EQ(text::parse_curve(C.to_string()).to_string(), C.to_string());
  const ECPoint O = text::parse_point("O", C);
  EXPECT_TRUE(O.is_infinity());
  for (auto& P : rational_points(C, C.extension(2))) EXPECT_EQ(text::parse_point(P.to_string(), C), P);
  EXPECT_THROW(text::parse_point("(0,0)@GF(5)", C), parse_error);
  const auto pts = rational_points(C, F5);
  const ECDivisor D = point_divisor(C, pts[1], 2) - point_divisor(C, pts[2]);
  EXPECT_EQ(text::parse_ec_divisor(D.to_string(), C), D);
  EXPECT_THROW(text::parse_curve("y^2=x^3+0*x+0 over GF(5)"), std::exception);
}

TEST(Text, Extensions) {
  const auto e = text::parse_ext("kummer: n=4, f=(x-2) ; const: r=2 ; over GF(5)(x)");
  EXPECT_EQ(e.r(), 2u);
  ASSERT_EQ(e.kummer().size(), 1u);
  EXPECT_EQ(e.kummer()[0].n, 4u);
  EXPECT_EQ(text::parse_ext(e.to_string()).to_string(), e.to_string());
  EXPECT_THROW(text::parse_ext("kummer: n=4 ; over GF(5)(x)"), parse_error);
}

TEST(Text, ErrorsCarryOffsets) {
  try {
    text::parse_divisor("[(x-1):1, (x):]", F5);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("14"), std::string::npos) << e.what();
  }
}
