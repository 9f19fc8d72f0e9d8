#pragma once

// Integer matrices, Smith normal form, and finite abelian groups given by invariant factors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cft/error.hpp"
#include "cft/ntheory.hpp"

namespace cft {

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols) throw domain_error("IntMatrix: ragged initializer");
      a.insert(a.end(), row.begin(), row.end());
    }
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw domain_error("IntMatrix: dimension mismatch");
    IntMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const std::int64_t v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) {
          std::int64_t t;
          if (__builtin_mul_overflow(v, y(k, j), &t) || __builtin_add_overflow(r(i, j), t, &r(i, j)))
            throw size_error("IntMatrix: integer overflow");
        }
      }
    return r;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
};

/// Determinant by fraction-free elimination (Bareiss).
inline std::int64_t determinant(IntMatrix m) {
  if (m.rows != m.cols) throw domain_error("determinant: matrix not square");
  const std::size_t n = m.rows;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = (__int128)m(i, j) * m(k, k) - (__int128)m(i, k) * m(k, j);
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) throw size_error("determinant: integer overflow");
        m(i, j) = static_cast<std::int64_t>(v);
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix U, D, V;
};

namespace detail {

// Bezout data for eliminating b against pivot a; plain subtraction when a | b.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> pivot_gcd(std::int64_t a, std::int64_t b) {
  if (b % a == 0) return {a, 1, 0};
  return nt::xgcd(a, b);
}

inline std::int64_t checked_lin(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
  std::int64_t p, q, r;
  if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) || __builtin_add_overflow(p, q, &r))
    throw size_error("smith_normal_form: integer overflow");
  return r;
}

// rows (i, j) <- [[s, t], [u, v]] * rows (i, j)
inline void row_op(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t s, std::int64_t t, std::int64_t u,
                   std::int64_t v) {
  for (std::size_t c = 0; c < m.cols; ++c) {
    const std::int64_t x = m(i, c), y = m(j, c);
    m(i, c) = checked_lin(s, x, t, y);
    m(j, c) = checked_lin(u, x, v, y);
  }
}
// cols (i, j) <- cols (i, j) * [[s, u], [t, v]]: new col i = s*ci + t*cj, new col j = u*ci + v*cj
inline void col_op(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t s, std::int64_t t, std::int64_t u,
                   std::int64_t v) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const std::int64_t x = m(r, i), y = m(r, j);
    m(r, i) = checked_lin(s, x, t, y);
    m(r, j) = checked_lin(u, x, v, y);
  }
}

// Rows of U past the rank annihilate A and columns of V past the rank lie in its kernel,
// so they may be combined freely; pairwise size reduction keeps the transforms small.
inline void reduce_family(std::vector<std::vector<std::int64_t>>& vecs, std::size_t free_from) {
  auto dot = [](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    __int128 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (__int128)x[i] * y[i];
    return (long double)s;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = free_from; j < vecs.size(); ++j) {
      const long double nj = dot(vecs[j], vecs[j]);
      if (nj == 0) continue;
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (i == j) continue;
        const long double c = std::roundl(dot(vecs[i], vecs[j]) / nj);
        if (c == 0) continue;
        const auto ci = static_cast<std::int64_t>(c);
        const long double before = dot(vecs[i], vecs[i]);
        auto cand = vecs[i];
        for (std::size_t k = 0; k < cand.size(); ++k) cand[k] -= ci * vecs[j][k];
        if (dot(cand, cand) < before) vecs[i] = std::move(cand), changed = true;
      }
    }
  }
}

inline void shrink_transforms(SmithForm& f) {
  std::size_t rank = 0;
  while (rank < std::min(f.D.rows, f.D.cols) && f.D(rank, rank) != 0) ++rank;
  std::vector<std::vector<std::int64_t>> rows(f.U.rows, std::vector<std::int64_t>(f.U.cols));
  for (std::size_t i = 0; i < f.U.rows; ++i)
    for (std::size_t j = 0; j < f.U.cols; ++j) rows[i][j] = f.U(i, j);
  reduce_family(rows, rank);
  for (std::size_t i = 0; i < f.U.rows; ++i)
    for (std::size_t j = 0; j < f.U.cols; ++j) f.U(i, j) = rows[i][j];
  std::vector<std::vector<std::int64_t>> cols(f.V.cols, std::vector<std::int64_t>(f.V.rows));
  for (std::size_t i = 0; i < f.V.rows; ++i)
    for (std::size_t j = 0; j < f.V.cols; ++j) cols[j][i] = f.V(i, j);
  reduce_family(cols, rank);
  for (std::size_t i = 0; i < f.V.rows; ++i)
    for (std::size_t j = 0; j < f.V.cols; ++j) f.V(i, j) = cols[j][i];
}

}  // namespace detail

/// U*A*V = D with U, V unimodular, D diagonal, d_1 | d_2 | ..., all d_i >= 0.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  using detail::col_op;
  using detail::row_op;
  const std::size_t m = A.rows, n = A.cols;
  SmithForm res{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix& D = res.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the lower-right block.
      std::size_t pi = m, pj = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const std::int64_t v = D(i, j) < 0 ? -D(i, j) : D(i, j);
          if (v != 0 && (best == 0 || v < best)) best = v, pi = i, pj = j;
        }
      if (best == 0) return res;
      if (pi != t) D.swap_rows(pi, t), res.U.swap_rows(pi, t);
      if (pj != t) D.swap_cols(pj, t), res.V.swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const std::int64_t a = D(t, t), b = D(i, t);
        auto [g, s, u] = detail::pivot_gcd(a, b);
        row_op(D, t, i, s, u, -b / g, a / g);
        row_op(res.U, t, i, s, u, -b / g, a / g);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const std::int64_t a = D(t, t), b = D(t, j);
        auto [g, s, u] = detail::pivot_gcd(a, b);
        col_op(D, t, j, s, u, -b / g, a / g);
        col_op(res.V, t, j, s, u, -b / g, a / g);
      }
      for (std::size_t i = t + 1; i < m; ++i)
        if (D(i, t) != 0) clean = false;
      if (!clean) continue;
      // Divisibility: fold any row with an entry not divisible by the pivot into row t.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) { bad = i; break; }
      if (bad == m) break;
      row_op(D, t, bad, 1, 1, 0, 1);
      row_op(res.U, t, bad, 1, 1, 0, 1);
    }
    if (D(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
      for (std::size_t c = 0; c < m; ++c) res.U(t, c) = -res.U(t, c);
    }
  }
  detail::shrink_transforms(res);
  return res;
}

/// Smith form of the lattice rowspace(A) + n*Z^k over Z/n: diagonal entries divide n.
/// V and W = V^{-1} (mod n) act on row vectors: x -> x*V identifies Z^k/L with (+) Z/d_i.
struct ModSmithForm {
  std::int64_t n = 1;
  std::vector<std::int64_t> diag;  // length k, each a divisor of n (n means unconstrained mod n)
  IntMatrix V, W;
};

inline ModSmithForm smith_mod(IntMatrix A, std::int64_t n) {
  if (n < 1) throw domain_error("smith_mod: modulus must be positive");
  const std::size_t m = A.rows, k = A.cols;
  ModSmithForm res{n, std::vector<std::int64_t>(k, n), IntMatrix::identity(k), IntMatrix::identity(k)};
  for (auto& v : A.a) v = nt::mod(v, n);
  auto reduce_row = [&](IntMatrix& M, std::size_t i) {
    for (std::size_t c = 0; c < M.cols; ++c) M(i, c) = nt::mod(M(i, c), n);
  };
  auto reduce_col = [&](IntMatrix& M, std::size_t j) {
    for (std::size_t r = 0; r < M.rows; ++r) M(r, j) = nt::mod(M(r, j), n);
  };
  auto val = [&](std::int64_t a) { return std::gcd(a, n); };
  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    for (;;) {
      std::size_t pi = m, pj = k;
      // Smallest gcd with n, ties broken by smallest value, so the pivot strictly improves.
      std::pair<std::int64_t, std::int64_t> best{n, n};
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < k; ++j) {
          const std::pair<std::int64_t, std::int64_t> key{val(A(i, j)), A(i, j)};
          if (A(i, j) != 0 && key < best) best = key, pi = i, pj = j;
        }
      if (pi == m) return res;
      if (pi != t) A.swap_rows(pi, t);
      if (pj != t) A.swap_cols(pj, t), res.V.swap_cols(pj, t), res.W.swap_rows(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        const auto a = A(t, t), b = A(i, t);
        auto [g, s, u] = detail::pivot_gcd(a, b);
        detail::row_op(A, t, i, s, u, -b / g, a / g);
        reduce_row(A, t);
        reduce_row(A, i);
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (A(t, j) == 0) continue;
        const auto a = A(t, t), b = A(t, j);
        auto [g, s, u] = detail::pivot_gcd(a, b);
        detail::col_op(A, t, j, s, u, -b / g, a / g);
        detail::col_op(res.V, t, j, s, u, -b / g, a / g);
        detail::row_op(res.W, t, j, a / g, b / g, -u, s);
        reduce_col(A, t);
        reduce_col(A, j);
        reduce_col(res.V, t);
        reduce_col(res.V, j);
        reduce_row(res.W, t);
        reduce_row(res.W, j);
      }
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0) clean = false;
      if (!clean) continue;
      const std::int64_t d = val(A(t, t));
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (A(i, j) % d != 0) { bad = i; break; }
      if (bad == m) break;
      detail::row_op(A, t, bad, 1, 1, 0, 1);
      reduce_row(A, t);
    }
    res.diag[t] = val(A(t, t));
  }
  return res;
}

/// Incrementally maintained lattice L = span(rows) + n*Z^k in echelon form over Z/n.
class ModLattice {
 public:
  ModLattice(std::size_t k, std::int64_t n) : k_(k), n_(n), rows_(k) {}

  std::size_t dim() const { return k_; }
  std::int64_t modulus() const { return n_; }

  /// Adds a relation; unimodular row operations keep the span exact.
  void insert(std::vector<std::int64_t> w) {
    for (auto& x : w) x = nt::mod(x, n_);
    for (std::size_t c = 0; c < k_; ++c) {
      if (w[c] == 0) continue;
      auto& b = rows_[c];
      if (b.empty()) {
        b = std::move(w);
        break;
      }
      const std::int64_t a = b[c], x = w[c];
      auto [g, s, t] = nt::xgcd(a, x);
      std::vector<std::int64_t> r(k_), w2(k_);
      for (std::size_t j = 0; j < k_; ++j) {
        r[j] = nt::mod(s * b[j] + t * w[j], n_);
        w2[j] = nt::mod((x / g) * b[j] - (a / g) * w[j], n_);
      }
      b = std::move(r);
      w = std::move(w2);
    }
  }

  /// Square matrix whose rows (together with n*Z^k) span L.
  IntMatrix matrix() const {
    IntMatrix m(k_, k_);
    for (std::size_t c = 0; c < k_; ++c) {
      if (rows_[c].empty()) continue;
      for (std::size_t j = 0; j < k_; ++j) m(c, j) = rows_[c][j];
    }
    return m;
  }

 private:
  std::size_t k_;
  std::int64_t n_;
  std::vector<std::vector<std::int64_t>> rows_;
};

/// Finitely generated abelian group Z^free (+) Z/d_1 (+) ... (+) Z/d_k with d_i | d_{i+1}, d_i > 1.
class FinAbGroup {
 public:
  using Elem = std::vector<std::int64_t>;

  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<std::int64_t> invariants, std::size_t free_rank = 0)
      : inv_(std::move(invariants)), free_(free_rank) {
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      if (inv_[i] <= 1) throw domain_error("FinAbGroup: invariant factors must exceed 1");
      if (i && inv_[i] % inv_[i - 1] != 0) throw domain_error("FinAbGroup: divisibility chain violated");
    }
  }
  /// Group presented by arbitrary cyclic orders, normalized to invariant factors.
  static FinAbGroup from_orders(const std::vector<std::int64_t>& orders) {
    std::vector<std::int64_t> diag;
    for (auto o : orders)
      if (o != 1) diag.push_back(o);
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    auto s = smith_normal_form(m);
    std::vector<std::int64_t> inv;
    std::size_t fr = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (s.D(i, i) == 0) ++fr;
      else if (s.D(i, i) > 1) inv.push_back(s.D(i, i));
    }
    return FinAbGroup(inv, fr);
  }

  const std::vector<std::int64_t>& invariants() const { return inv_; }
  std::size_t free_rank() const { return free_; }
  std::size_t rank() const { return inv_.size() + free_; }
  bool is_finite() const { return free_ == 0; }

  std::uint64_t order() const {
    if (free_) throw domain_error("FinAbGroup: infinite group has no finite order");
    std::uint64_t o = 1;
    for (auto d : inv_) {
      if (__builtin_mul_overflow(o, static_cast<std::uint64_t>(d), &o)) throw size_error("FinAbGroup: order overflow");
    }
    return o;
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.inv_ == b.inv_ && a.free_ == b.free_;
  }
  friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) { return !(a == b); }

  /// The quotient G/nG.
  FinAbGroup mod(std::int64_t n) const {
    std::vector<std::int64_t> orders;
    for (auto d : inv_) orders.push_back(std::gcd(d, n));
    for (std::size_t i = 0; i < free_; ++i) orders.push_back(n);
    return from_orders(orders);
  }

  Elem zero() const { return Elem(rank(), 0); }
  Elem reduce(Elem x) const {
    for (std::size_t i = 0; i < inv_.size(); ++i) x[i] = nt::mod(x[i], inv_[i]);
    return x;
  }
  Elem add(const Elem& x, const Elem& y) const {
    Elem r(rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = x[i] + y[i];
    return reduce(r);
  }
  Elem neg(const Elem& x) const {
    Elem r(rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -x[i];
    return reduce(r);
  }
  Elem scale(const Elem& x, std::int64_t c) const {
    Elem r(rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = x[i] * c;
    return reduce(r);
  }
  bool is_zero(const Elem& x) const {
    for (auto v : reduce(x))
      if (v != 0) return false;
    return true;
  }
  std::uint64_t element_order(const Elem& x) const {
    if (free_) throw domain_error("FinAbGroup: element order in infinite group");
    std::int64_t o = 1;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      const std::int64_t oi = inv_[i] / std::gcd(nt::mod(x[i], inv_[i]), inv_[i]);
      o = std::lcm(o, oi);
    }
    return static_cast<std::uint64_t>(o);
  }

  /// All elements in lexicographic order of coordinates (finite groups only).
  std::vector<Elem> elements() const {
    const std::uint64_t total = order();
    if (total > (1u << 22)) throw size_error("FinAbGroup: too many elements to enumerate");
    std::vector<Elem> out;
    out.reserve(total);
    Elem x(inv_.size(), 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      out.push_back(x);
      for (std::size_t i = inv_.size(); i-- > 0;) {
        if (++x[i] < inv_[i]) break;
        x[i] = 0;
      }
    }
    return out;
  }

  /// Order of the subgroup generated by gens.
  std::uint64_t subgroup_order(const std::vector<Elem>& gens) const {
    if (free_) throw domain_error("FinAbGroup: subgroup order in infinite group");
    if (inv_.empty()) return 1;
    const std::int64_t N = inv_.back();
    IntMatrix m(gens.size() + inv_.size(), inv_.size());
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (std::size_t i = 0; i < inv_.size(); ++i) m(r, i) = gens[r][i];
    for (std::size_t i = 0; i < inv_.size(); ++i) m(gens.size() + i, i) = inv_[i];
    auto s = smith_mod(m, N);
    std::uint64_t quot = 1;
    for (auto d : s.diag) quot *= static_cast<std::uint64_t>(d);
    return order() / quot;
  }

  std::string to_string() const {
    std::ostringstream os;
    if (inv_.empty() && free_ == 0) return "0";
    bool first = true;
    for (std::size_t i = 0; i < free_; ++i) os << (first ? "" : " x ") << "Z", first = false;
    for (auto d : inv_) os << (first ? "" : " x ") << "Z/" << d, first = false;
    return os.str();
  }

 private:
  std::vector<std::int64_t> inv_;
  std::size_t free_ = 0;
};

/// Quotient group Z^k / (rowspace(A) + n*Z^k) together with the coordinate change.
struct ModQuotient {
  FinAbGroup group;
  std::int64_t n = 1;
  std::size_t dim = 0;
  std::vector<std::size_t> kept;  // diagonal positions with d > 1
  std::vector<std::int64_t> diag;
  IntMatrix V, W;

  /// Image of x in Z^k as group coordinates.
  FinAbGroup::Elem map(const std::vector<std::int64_t>& x) const {
    FinAbGroup::Elem e(kept.size(), 0);
    for (std::size_t t = 0; t < kept.size(); ++t) {
      const std::size_t col = kept[t];
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < dim; ++i) acc = nt::mod(acc + nt::mod(x[i], n) * V(i, col), n);
      e[t] = nt::mod(acc, diag[col]);
    }
    return e;
  }
  /// A vector of Z^k mapping to the t-th invariant generator.
  std::vector<std::int64_t> representative(std::size_t t) const {
    std::vector<std::int64_t> r(dim);
    for (std::size_t i = 0; i < dim; ++i) r[i] = W(kept[t], i);
    return r;
  }
};

inline ModQuotient quotient_mod(const IntMatrix& relations, std::int64_t n) {
  ModQuotient q;
  q.n = n;
  q.dim = relations.cols;
  auto s = smith_mod(relations, n);
  q.diag = s.diag;
  q.V = std::move(s.V);
  q.W = std::move(s.W);
  // Diagonal entries arrive in divisibility order.
  std::vector<std::int64_t> inv;
  for (std::size_t i = 0; i < q.diag.size(); ++i)
    if (q.diag[i] > 1) q.kept.push_back(i), inv.push_back(q.diag[i]);
  q.group = FinAbGroup(inv);
  return q;
}

}  // namespace cft
