#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace cft::nt {

inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("pow_u64 overflow");
    r *= base;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization by trial division, ascending primes with multiplicities.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) { n /= d; ++e; }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, e] : factor(n)) out.push_back(p);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> xgcd(std::int64_t a, std::int64_t b) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) return {-a, -s0, -t0};
  return {a, s0, t0};
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  auto [g, s, t] = xgcd(mod(a, m), m);
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(s, m);
}

}  // namespace cft::nt
