#pragma once

// Dual numbers re + eps*ε with ε² = 0 over any coefficient field. Threading
// them through a nonlinear jet map yields its exact directional derivative.

#include "g2jet/jets/scalar.hpp"

namespace g2jet {

template <Field S>
struct Dual {
  S re{};
  S eps{};

  Dual() = default;
  Dual(long n) : re(lift<S>(n)) {}  // NOLINT(google-explicit-constructor)
  Dual(S r, S e) : re(std::move(r)), eps(std::move(e)) {}
  explicit Dual(const S& r) : re(r) {}

  friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.eps == b.eps; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {S(a.re + b.re), S(a.eps + b.eps)}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {S(a.re - b.re), S(a.eps - b.eps)}; }
  friend Dual operator-(const Dual& a) { return {S(-a.re), S(-a.eps)}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {S(a.re * b.re), S(S(a.re * b.eps) + S(a.eps * b.re))};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    if (scalar_traits<S>::is_zero(b.re)) throw std::domain_error("division by a nilpotent dual number");
    S inv = S(lift<S>(1) / b.re);
    S r = S(a.re * inv);
    return {r, S(S(S(a.eps - S(r * b.eps))) * inv)};
  }
  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
};

template <Field S>
struct scalar_traits<Dual<S>> {
  using T = scalar_traits<S>;
  static constexpr const char* name = "dual";
  static Dual<S> from_rational(const Rational& q) { return Dual<S>(T::from_rational(q)); }
  static bool is_zero(const Dual<S>& a) { return T::is_zero(a.re) && T::is_zero(a.eps); }
  static bool is_nilpotent(const Dual<S>& a) { return T::is_zero(a.re); }
  static int sign(const Dual<S>& a) { return T::sign(a.re); }
  static std::optional<Dual<S>> rational_power(const Dual<S>& a, const Rational& alpha) {
    if (T::is_zero(a.re)) {
      if (T::is_zero(a.eps) && sgn(alpha) > 0) return Dual<S>();
      return std::nullopt;
    }
    auto p = T::rational_power(a.re, alpha);
    if (!p) return std::nullopt;
    // d(x^α) = α x^α / x dx
    S deriv = S(S(T::from_rational(alpha) * *p) / a.re);
    return Dual<S>(*p, S(deriv * a.eps));
  }
  static std::string to_string(const Dual<S>& a) {
    return T::to_string(a.re) + "+(" + T::to_string(a.eps) + ")*eps";
  }
  static double to_double(const Dual<S>& a) { return T::to_double(a.re); }
};

}  // namespace g2jet
