// Tate pairing table on E(F_q)[n] x E(F_q)/nE(F_q) for the first curve with n | gcd(#E, q-1).

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "cft/cft.hpp"

int main(int argc, char** argv) {
  using namespace cft;
  const std::uint32_t n = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 4;
  const Curve C = find_pairing_curve(n);
  const auto T = n_torsion(C, n);
  const auto Q = quotient_reps(C, n);
  std::cout << C.to_string() << ", #E = " << C.order() << ", n = " << n << "\n";

  const std::uint32_t k = embedding_degree(C.q(), n);
  const MuN mu = MuN::make(C.extension(k), n);
  std::cout << "dlog base " << mu.gen().to_string() << "\n\n" << std::setw(24) << "";
  for (auto& R : Q) std::cout << std::setw(20) << R.to_string();
  std::cout << "\n";
  for (auto& P : T) {
    std::cout << std::setw(24) << P.to_string();
    for (auto& R : Q) std::cout << std::setw(20) << mu_dlog(tate_pairing(C, P, R, n), mu);
    std::cout << "\n";
  }
  const CheckReport r = tate_check(C, n, 20, 1);
  std::cout << "\nbilinear and non-degenerate: " << (r.pass ? "yes" : "no") << "\n";
  return r.pass ? 0 : 1;
}
