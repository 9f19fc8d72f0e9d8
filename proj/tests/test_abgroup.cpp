#include <gtest/gtest.h>

#include "cft/abgroup.hpp"
#include "cft/sample.hpp"

using namespace cft;

namespace {

IntMatrix mul(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < A.cols; ++k) s += A(i, k) * B(k, j);
      C.a[i * C.cols + j] = s;
    }
  return C;
}

// Laplace expansion; fine for the small matrices used here.
std::int64_t det(const IntMatrix& A) {
  if (A.rows == 1) return A(0, 0);
  std::int64_t s = 0;
  for (std::size_t j = 0; j < A.cols; ++j) {
    IntMatrix M(A.rows - 1, A.cols - 1);
    for (std::size_t i = 1; i < A.rows; ++i)
      for (std::size_t k = 0, c = 0; k < A.cols; ++k)
        if (k != j) M.a[(i - 1) * M.cols + c++] = A(i, k);
    s += (j % 2 ? -1 : 1) * A(0, j) * det(M);
  }
  return s;
}

std::vector<std::int64_t> diagonal(const IntMatrix& D) {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
  return d;
}

void expect_smith(const IntMatrix& A, const SmithForm& s) {
  EXPECT_EQ(mul(mul(s.U, A), s.V).a, s.D.a);
  EXPECT_EQ(std::abs(det(s.U)), 1);
  EXPECT_EQ(std::abs(det(s.V)), 1);
  const auto d = diagonal(s.D);
  for (std::size_t i = 0; i < s.D.rows; ++i)
    for (std::size_t j = 0; j < s.D.cols; ++j)
      if (i != j) EXPECT_EQ(s.D(i, j), 0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    EXPECT_GE(d[i], 0);
    if (d[i] != 0) EXPECT_EQ(d[i + 1] % d[i], 0);
    else EXPECT_EQ(d[i + 1], 0);
  }
}

}  // namespace

TEST(Smith, Examples) {
  const auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(diagonal(id.D), (std::vector<std::int64_t>{1, 1, 1}));
  const IntMatrix A{{2, 0}, {0, 3}};
  const auto s = smith_normal_form(A);
  expect_smith(A, s);
  EXPECT_EQ(diagonal(s.D), (std::vector<std::int64_t>{1, 6}));
  const IntMatrix B{{2, 4}, {0, 4}};
  const auto t = smith_normal_form(B);
  expect_smith(B, t);
  EXPECT_EQ(diagonal(t.D), (std::vector<std::int64_t>{2, 4}));
}

TEST(Smith, RandomMatrices) {
  sample::Rng rng(17);
  std::uniform_int_distribution<int> dim(1, 4), ent(-9, 9);
  for (int t = 0; t < 300; ++t) {
    IntMatrix A(dim(rng), dim(rng));
    for (auto& x : A.a) x = ent(rng);
    const auto s = smith_normal_form(A);
    expect_smith(A, s);
    if (A.rows == A.cols) {
      std::int64_t p = 1;
      for (auto d : diagonal(s.D)) p *= d;
      EXPECT_EQ(p, std::abs(det(A)));
    }
  }
}

TEST(FinAbGroup, FromOrdersNormalizes) {
  const auto G = FinAbGroup::from_orders({2, 3, 4});
  EXPECT_EQ(G.invariants(), (std::vector<std::int64_t>{2, 12}));
  EXPECT_EQ(G.order(), 24u);
  EXPECT_EQ(G.elements().size(), 24u);
  EXPECT_EQ(FinAbGroup::from_orders({1, 1}).order(), 1u);
}

TEST(FinAbGroup, ElementOrdersDivideExponent) {
  const auto G = FinAbGroup::from_orders({4, 4});
  for (auto& x : G.elements()) {
    EXPECT_EQ(4 % G.element_order(x), 0u);
    EXPECT_TRUE(G.is_zero(G.add(x, G.neg(x))));
  }
}

TEST(Quotient, ModNPresentation) {
  // Z^2 / <(2,4),(0,4)> mod 4 = Z/2 x Z/4.
  const auto q = quotient_mod(IntMatrix{{2, 4}, {0, 4}}, 4);
  EXPECT_EQ(q.group.invariants(), (std::vector<std::int64_t>{2, 4}));
  EXPECT_TRUE(q.group.is_zero(q.map({2, 4})));
  EXPECT_TRUE(q.group.is_zero(q.map({4, 0})));
  EXPECT_FALSE(q.group.is_zero(q.map({1, 0})));
}
