#pragma once

// Scalar backends share one compile-time interface, scalar_traits<S>. The
// exact-rational backend (GMP rationals) lives here; the others are in
// radical.hpp, bigfloat.hpp, dual.hpp and homogeneous.hpp.

#include <gmpxx.h>

#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "g2jet/error.hpp"

namespace g2jet {

using Rational = mpq_class;
using Integer = mpz_class;

template <class S>
struct scalar_traits;

/// A coefficient field usable inside Jet. Generic code must never bind
/// arithmetic results to `auto`: gmpxx and boost return expression templates.
template <class S>
concept Field = std::regular<S> && requires(const S& a, const S& b, const Rational& q) {
  { S(a + b) };
  { S(a - b) };
  { S(a * b) };
  { S(a / b) };
  { S(-a) };
  { scalar_traits<S>::from_rational(q) } -> std::same_as<S>;
  { scalar_traits<S>::is_zero(a) } -> std::same_as<bool>;
  { scalar_traits<S>::is_nilpotent(a) } -> std::same_as<bool>;
  { scalar_traits<S>::sign(a) } -> std::same_as<int>;
  { scalar_traits<S>::rational_power(a, q) } -> std::same_as<std::optional<S>>;
  { scalar_traits<S>::to_string(a) } -> std::same_as<std::string>;
};

namespace detail {

/// Exact q-th root of an integer; nullopt when n is not a perfect power.
inline std::optional<Integer> exact_integer_root(const Integer& n, unsigned long q) {
  if (q == 1) return n;
  if (sgn(n) < 0) {
    if (q % 2 == 0) return std::nullopt;
    auto r = exact_integer_root(Integer(-n), q);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer root;
  if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), q) == 0) return std::nullopt;
  return root;
}

inline Rational rational_ipow(const Rational& base, long e) {
  Rational result = 1;
  Rational b = base;
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (n) {
    if (n & 1UL) result *= b;
    b *= b;
    n >>= 1;
  }
  if (invert) {
    if (sgn(result) == 0) throw NotRepresentable("zero raised to a negative power");
    result = 1 / result;
  }
  return result;
}

/// Exact a^alpha over the rationals (real branch; positive root for even denominators).
inline std::optional<Rational> rational_power(const Rational& a, const Rational& alpha) {
  const Integer& p = alpha.get_num();
  const Integer& q = alpha.get_den();
  if (!p.fits_slong_p() || !q.fits_ulong_p()) return std::nullopt;
  if (sgn(a) == 0) {
    if (sgn(p) > 0) return Rational(0);
    return std::nullopt;
  }
  unsigned long qq = q.get_ui();
  if (sgn(a) < 0 && qq % 2 == 0) return std::nullopt;
  auto num = exact_integer_root(a.get_num(), qq);
  auto den = exact_integer_root(a.get_den(), qq);
  if (!num || !den) return std::nullopt;
  Rational root(*num, *den);
  root.canonicalize();
  return rational_ipow(root, p.get_si());
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("malformed rational coefficient '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  bool digits = false, slash = false, den_digits = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      (slash ? den_digits : digits) = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
    } else {
      throw bad();
    }
  }
  if (!digits || (slash && !den_digits)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace detail

template <>
struct scalar_traits<Rational> {
  static constexpr const char* name = "rational";
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_nilpotent(const Rational& a) { return sgn(a) == 0; }
  static int sign(const Rational& a) { return sgn(a); }
  static std::optional<Rational> rational_power(const Rational& a, const Rational& alpha) {
    return detail::rational_power(a, alpha);
  }
  static std::string to_string(const Rational& a) { return a.get_str(); }
  static Rational parse(std::string_view s) { return detail::parse_rational(s); }
  static double to_double(const Rational& a) { return a.get_d(); }
};

/// Convenience: lift a rational constant into the scalar field S.
template <Field S>
S lift(const Rational& q) {
  return scalar_traits<S>::from_rational(q);
}

template <Field S>
S lift(long n) {
  return scalar_traits<S>::from_rational(Rational(n));
}

template <Field S>
bool is_zero(const S& a) {
  return scalar_traits<S>::is_zero(a);
}

}  // namespace g2jet
