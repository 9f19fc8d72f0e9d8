// The maximal exponent-4 Kummer extension of GF(5)(x) unramified outside x(x-1): its Galois group,
// the Artin images of small places, and the class group it matches.

#include <iostream>

#include "cft/cft.hpp"

int main() {
  using namespace cft;
  const FiniteField F = FiniteField::make(5);
  const RatDivisor m = text::parse_divisor("[(x):1, (x-1):1]", F);
  const std::uint32_t n = 4;

  const AbelianExtDesc E = max_kummer_extension(F, n, m);
  const RayClassData cl = ray_class_group(F, m, n);
  std::cout << "E = " << E.to_string() << "\n";
  std::cout << "[E:F] = " << galois_order(E) << ", Cl_m/4Cl_m = " << cl.group().to_string() << "\n\n";

  for (auto& p : rat_places_up_to_degree(F, 2)) {
    if (m.contains(p)) continue;
    std::cout << p.to_string() << " -> " << frobenius_at_place(E, p).to_string() << "  class "
              << elem_label(cl.map(RatDivisor(p))) << "\n";
  }

  const CheckReport r = max_kummer_kernel_check(F, n, m, 50, 1);
  std::cout << "\nker A = 4 Cl_m: " << (r.pass ? "yes" : "no") << " (" << r.samples << " classes and samples)\n";
  return r.pass ? 0 : 1;
}
