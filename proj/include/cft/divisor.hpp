#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cft {

/// Finite formal sum of places with nonzero integer multiplicities.
template <class Place>
class Divisor {
 public:
  using Map = std::map<Place, std::int64_t>;

  Divisor() = default;
  explicit Divisor(const Place& p, std::int64_t k = 1) { add(p, k); }

  void add(const Place& p, std::int64_t k) {
    if (k == 0) return;
    auto [it, inserted] = m_.emplace(p, k);
    if (!inserted) {
      it->second += k;
      if (it->second == 0) m_.erase(it);
    }
  }
  std::int64_t ord(const Place& p) const {
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
  }
  const Map& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto& [p, k] : m_) d += k * p.degree();
    return d;
  }
  bool is_effective() const {
    for (auto& [p, k] : m_)
      if (k < 0) return false;
    return true;
  }
  std::vector<Place> support() const {
    std::vector<Place> s;
    for (auto& [p, k] : m_) s.push_back(p);
    return s;
  }
  bool contains(const Place& p) const { return m_.count(p) > 0; }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    for (auto& [p, k] : b.m_) a.add(p, k);
    return a;
  }
  friend Divisor operator-(Divisor a, const Divisor& b) {
    for (auto& [p, k] : b.m_) a.add(p, -k);
    return a;
  }
  friend Divisor operator*(std::int64_t c, const Divisor& a) {
    Divisor r;
    for (auto& [p, k] : a.m_) r.add(p, c * k);
    return r;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.m_ == b.m_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

  /// "[(x+4):1, inf:-1]"
  std::string to_string() const {
    std::string s = "[";
    bool first = true;
    for (auto& [p, k] : m_) {
      s += (first ? "" : ", ") + p.to_string() + ":" + std::to_string(k);
      first = false;
    }
    return s + "]";
  }

 private:
  Map m_;
};

}  // namespace cft
