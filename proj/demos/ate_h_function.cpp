// The h-function of y^4 = f over GF(9)(x), a Kummer extension of the constant extension of GF(3)(x):
// the four candidates h, and h(Con D) against the Frobenius action for a few divisors D.

#include <iostream>

#include "cft/cft.hpp"

int main() {
  using namespace cft;
  const FiniteField F3 = FiniteField::make(3), F9 = FiniteField::make(3, 2);
  elem_t beta = 0;
  while (F9.frobenius(beta, 1) == beta) ++beta;
  ConstKummerExt e = ConstKummerExt::from_u(F3, 2, 4, RatFunc(Poly::x(F9) - Poly::constant(F9, beta)));
  std::cout << e.to_string() << "\n\n";

  const auto hs = h_function(e);
  for (std::size_t i = 0; i < hs.size(); ++i) std::cout << "h" << i << " = " << hs[i].to_string() << "\n";

  std::cout << "\n";
  const std::vector<RatDivisor> Ds{text::parse_divisor("[(x-1):1]", F3), text::parse_divisor("[(x):1]", F3),
                                   text::parse_divisor("[(x^2+x+2):1, (x):-2]", F3)};
  for (auto& D : Ds) {
    RatDivisor con;
    for (auto& [p, k] : D.terms()) con = con + k * conorm(p, e.ext);
    std::cout << "D = " << D.to_string() << ":";
    for (auto& h : hs) std::cout << " " << evaluate(h, con).to_string();
    std::cout << "\n";
  }

  const CheckReport r = lemma_ext_check(e, Ds);
  std::cout << "\none candidate per extension of sigma: " << (r.pass ? "yes" : "no") << "\n";
  for (auto& w : r.witnesses) std::cout << "  " << w << "\n";
  return r.pass ? 0 : 1;
}
