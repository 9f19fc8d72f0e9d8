#pragma once

// Parsers for the text grammars printed by to_string(): field elements, polynomials, functions, places,
// divisors, curves, points and abelian extension descriptors. parse(print(v)) == v for every value.

#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cft/artin.hpp"
#include "cft/ecfun.hpp"
#include "cft/error.hpp"
#include "cft/ratfun.hpp"

namespace cft::text {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    ws();
    return i_ == s_.size();
  }
  char peek() {
    ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool eat(std::string_view w) {
    ws();
    if (s_.substr(i_, w.size()) != w) return false;
    i_ += w.size();
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view w) {
    if (!eat(w)) fail("expected '" + std::string(w) + "'");
  }
  std::int64_t integer() {
    ws();
    bool neg = false;
    if (i_ < s_.size() && s_[i_] == '-') {
      neg = true;
      ++i_;
    }
    const std::size_t start = i_;
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large");
    }
    if (i_ == start) fail("expected an integer");
    return neg ? -v : v;
  }
  void skip(std::size_t k) {
    ws();
    i_ += k;
  }
  std::string_view rest() {
    ws();
    return s_.substr(i_);
  }
  void end() {
    if (!done()) fail("trailing text");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw parse_error(why + " at offset " + std::to_string(i_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// "GF(9)" or "GF(3^2)".
inline FiniteField field(Cursor& c) {
  c.expect("GF(");
  const std::int64_t a = c.integer();
  std::int64_t deg = 1;
  if (c.eat('^')) deg = c.integer();
  c.expect(')');
  if (a < 2 || deg < 1) c.fail("bad field size");
  std::int64_t p = a;
  if (deg == 1) {
    for (std::int64_t d = 2; d * d <= a; ++d)
      if (a % d == 0) {
        p = d;
        break;
      }
    std::int64_t v = a;
    deg = 0;
    while (v % p == 0) {
      v /= p;
      ++deg;
    }
    if (v != 1) c.fail("field size is not a prime power");
  }
  try {
    return FiniteField::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(deg));
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
}

// Integer (reduced mod p) or "[c0,c1,...]".
inline elem_t coeff(Cursor& c, const FiniteField& F) {
  if (c.eat('[')) {
    std::vector<std::uint32_t> d;
    do {
      const std::int64_t v = c.integer();
      if (v < 0) c.fail("negative digit");
      d.push_back(static_cast<std::uint32_t>(v));
    } while (c.eat(','));
    c.expect(']');
    try {
      return FieldElem::from_digits(F, d).value;
    } catch (const std::exception& e) {
      c.fail(e.what());
    }
  }
  return F.from_int(c.integer());
}

inline bool starts_coeff(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) || ch == '['; }

// Sum of terms c*x^k, c, x^k with '+' or '-' separators.
inline Poly poly(Cursor& c, const FiniteField& F) {
  Poly out(F);
  for (bool first = true;; first = false) {
    bool neg = c.eat('-');
    if (!neg && !first && !c.eat('+')) break;
    elem_t k = 1;
    std::size_t e = 0;
    const bool has_coeff = starts_coeff(c.peek());
    if (has_coeff) k = coeff(c, F);
    if (!has_coeff || c.eat('*')) {
      c.expect('x');
      e = 1;
      if (c.eat('^')) {
        const std::int64_t v = c.integer();
        if (v < 0) c.fail("negative exponent");
        e = static_cast<std::size_t>(v);
      }
    }
    if (neg) k = F.neg(k);
    out = out + Poly::monomial(F, k, e);
  }
  return out;
}

inline Poly paren_poly(Cursor& c, const FiniteField& F) {
  c.expect('(');
  Poly p = poly(c, F);
  c.expect(')');
  return p;
}

// "(num)/(den)" or "(num)".
inline RatFunc ratfunc_body(Cursor& c, const FiniteField& F) {
  const Poly num = paren_poly(c, F);
  Poly den = Poly::constant(F, 1);
  if (c.eat('/')) den = paren_poly(c, F);
  if (den.is_zero()) c.fail("zero denominator");
  return RatFunc(num, den);
}

inline RatPlace place(Cursor& c, const FiniteField& F) {
  if (c.eat("inf")) return RatPlace::infinity(F);
  const Poly pi = paren_poly(c, F);
  try {
    return RatPlace::finite(pi);
  } catch (const domain_error& e) {
    c.fail(e.what());
  }
}

// "(x,y)@GF(q^r)" or "O".
inline ECPoint point(Cursor& c, const Curve& C) {
  if (c.eat('O')) return ECPoint::infinity();
  // The coordinates are read once the field label after '@' is known.
  const std::string_view body = c.rest();
  const auto at = body.find(")@");
  const auto stop = at == std::string_view::npos ? at : body.find(')', at + 2);
  if (stop == std::string_view::npos) c.fail("expected '(x,y)@GF(..)'");
  Cursor label(body.substr(at + 2, stop - at - 1));
  const FiniteField K = field(label);
  label.end();
  Cursor inner(body.substr(0, at + 1));
  c.skip(stop + 1);
  if (K.characteristic() != C.field().characteristic() || K.degree() % C.field().degree() != 0)
    c.fail("point field is not an extension of the curve field");
  inner.expect('(');
  const elem_t x = coeff(inner, K);
  inner.expect(',');
  const elem_t y = coeff(inner, K);
  inner.expect(')');
  inner.end();
  const ECPoint P{{K, x}, {K, y}};
  if (!C.contains(P)) c.fail("point is not on the curve");
  return P;
}

template <class P, class F>
inline Divisor<P> divisor(Cursor& c, F&& one_place) {
  Divisor<P> D;
  c.expect('[');
  if (c.eat(']')) return D;
  do {
    const P p = one_place(c);
    c.expect(':');
    D.add(p, c.integer());
  } while (c.eat(','));
  c.expect(']');
  return D;
}

template <class T, class Fn>
inline T whole(std::string_view s, Fn&& fn) {
  Cursor c(s);
  T v = fn(c);
  c.end();
  return v;
}

}  // namespace detail

/// "GF(9)" or "GF(3^2)"; also a bare size "9".
inline FiniteField parse_field(std::string_view s) {
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front())))
    return parse_field("GF(" + std::string(s) + ")");
  return detail::whole<FiniteField>(s, [](detail::Cursor& c) { return detail::field(c); });
}

/// "GF(9):[1,2]"
inline FieldElem parse_elem(std::string_view s) {
  return detail::whole<FieldElem>(s, [](detail::Cursor& c) {
    const FiniteField F = detail::field(c);
    c.expect(':');
    return FieldElem{F, detail::coeff(c, F)};
  });
}

/// "x^2+[1,2]*x+3"
inline Poly parse_poly(std::string_view s, const FiniteField& F) {
  return detail::whole<Poly>(s, [&](detail::Cursor& c) { return detail::poly(c, F); });
}

/// "(x^4+2*x)/(x-1) over GF(5)"; the field suffix may be left out when F is given.
inline RatFunc parse_ratfunc(std::string_view s, const std::optional<FiniteField>& F = std::nullopt) {
  const auto pos = s.rfind(" over ");
  std::optional<FiniteField> K = F;
  std::string_view body = s;
  if (pos != std::string_view::npos) {
    const FiniteField G = parse_field(s.substr(pos + 6));
    if (K && *K != G) throw parse_error("function field " + G.name() + " differs from " + K->name());
    K = G;
    body = s.substr(0, pos);
  }
  if (!K) throw parse_error("function without a field: \"" + std::string(s) + "\"");
  return detail::whole<RatFunc>(body, [&](detail::Cursor& c) { return detail::ratfunc_body(c, *K); });
}

/// "(x^2+1)" or "inf".
inline RatPlace parse_place(std::string_view s, const FiniteField& F) {
  return detail::whole<RatPlace>(s, [&](detail::Cursor& c) { return detail::place(c, F); });
}

/// "[(x-1):1, inf:-1]"
inline RatDivisor parse_divisor(std::string_view s, const FiniteField& F) {
  return detail::whole<RatDivisor>(s, [&](detail::Cursor& c) {
    return detail::divisor<RatPlace>(c, [&](detail::Cursor& d) { return detail::place(d, F); });
  });
}

/// A set of places "{(x), inf}", as printed by PlaceSet for finite sets.
inline std::set<RatPlace> parse_place_set(std::string_view s, const FiniteField& F) {
  return detail::whole<std::set<RatPlace>>(s, [&](detail::Cursor& c) {
    std::set<RatPlace> S;
    c.expect('{');
    if (c.eat('}')) return S;
    do S.insert(detail::place(c, F));
    while (c.eat(','));
    c.expect('}');
    return S;
  });
}

/// "y^2=x^3+a*x+b over GF(q)"
inline Curve parse_curve(std::string_view s) {
  const auto pos = s.rfind(" over ");
  if (pos == std::string_view::npos) throw parse_error("curve without a field: \"" + std::string(s) + "\"");
  const FiniteField F = parse_field(s.substr(pos + 6));
  return detail::whole<Curve>(s.substr(0, pos), [&](detail::Cursor& c) {
    c.expect("y^2");
    c.expect('=');
    c.expect("x^3");
    c.expect('+');
    const elem_t a = detail::coeff(c, F);
    c.expect('*');
    c.expect('x');
    c.expect('+');
    const elem_t b = detail::coeff(c, F);
    try {
      return Curve(FieldElem{F, a}, FieldElem{F, b});
    } catch (const std::exception& e) {
      c.fail(e.what());
    }
  });
}

/// "(x,y)@GF(q^r)" or "O".
inline ECPoint parse_point(std::string_view s, const Curve& C) {
  return detail::whole<ECPoint>(s, [&](detail::Cursor& c) { return detail::point(c, C); });
}

/// "[(1,2)@GF(5):1, O:-1]"; each point stands for its place.
inline ECDivisor parse_ec_divisor(std::string_view s, const Curve& C) {
  return detail::whole<ECDivisor>(s, [&](detail::Cursor& c) {
    return detail::divisor<ECPlace>(c, [&](detail::Cursor& d) { return ECPlace::of(C, detail::point(d, C)); });
  });
}

/// "kummer: n=4, f=(x-2) ; const: r=2 ; over GF(5)(x)"
inline AbelianExtDesc parse_ext(std::string_view s, const std::optional<RatDivisor>& modulus = std::nullopt) {
  const auto pos = s.rfind("over ");
  if (pos == std::string_view::npos) throw parse_error("extension without a base field: \"" + std::string(s) + "\"");
  std::string_view tail = s.substr(pos + 5);
  if (tail.size() < 3 || tail.substr(tail.size() - 3) != "(x)") throw parse_error("expected base 'GF(q)(x)'");
  const FiniteField F = parse_field(tail.substr(0, tail.size() - 3));
  std::vector<KummerGen> gens;
  std::uint32_t r = 1;
  detail::Cursor c(s.substr(0, pos));
  while (!c.done()) {
    if (c.eat("kummer:")) {
      c.expect("n=");
      const std::int64_t n = c.integer();
      if (n <= 0) c.fail("n must be positive");
      c.expect(',');
      c.expect("f=");
      gens.push_back({detail::ratfunc_body(c, F), static_cast<std::uint32_t>(n)});
    } else if (c.eat("const:")) {
      c.expect("r=");
      const std::int64_t v = c.integer();
      if (v <= 0) c.fail("r must be positive");
      r = static_cast<std::uint32_t>(v);
    } else {
      c.fail("expected 'kummer:' or 'const:'");
    }
    c.expect(';');
  }
  try {
    return AbelianExtDesc::make(F, std::move(gens), r, modulus);
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
}

}  // namespace cft::text
