#pragma once

// value * λ^exponent for a formal positive scale λ. Running a pipeline on
// inputs of this type reads off its homogeneity degree in λ exactly; adding
// terms of different degree is an error, so any inhomogeneity is caught.

#include "g2jet/jets/scalar.hpp"

namespace g2jet {

template <Field S>
struct Homogeneous {
  S value{};
  Rational exponent{0};

  Homogeneous() = default;
  Homogeneous(long n) : value(lift<S>(n)) {}  // NOLINT(google-explicit-constructor)
  Homogeneous(S v, Rational e) : value(std::move(v)), exponent(std::move(e)) {}

  static Homogeneous scale() { return {lift<S>(1), Rational(1)}; }

  bool is_zero() const { return scalar_traits<S>::is_zero(value); }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.value == b.value && a.exponent == b.exponent;
  }

  friend Homogeneous operator+(const Homogeneous& a, const Homogeneous& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exponent != b.exponent)
      throw PreconditionFailed("sum of terms with scale degrees " + a.exponent.get_str() + " and " +
                               b.exponent.get_str());
    return {S(a.value + b.value), a.exponent};
  }
  friend Homogeneous operator-(const Homogeneous& a) { return {S(-a.value), a.exponent}; }
  friend Homogeneous operator-(const Homogeneous& a, const Homogeneous& b) { return a + (-b); }
  friend Homogeneous operator*(const Homogeneous& a, const Homogeneous& b) {
    return {S(a.value * b.value), Rational(a.exponent + b.exponent)};
  }
  friend Homogeneous operator/(const Homogeneous& a, const Homogeneous& b) {
    return {S(a.value / b.value), Rational(a.exponent - b.exponent)};
  }
  Homogeneous& operator+=(const Homogeneous& b) { return *this = *this + b; }
  Homogeneous& operator-=(const Homogeneous& b) { return *this = *this - b; }
  Homogeneous& operator*=(const Homogeneous& b) { return *this = *this * b; }
};

template <Field S>
struct scalar_traits<Homogeneous<S>> {
  using T = scalar_traits<S>;
  using H = Homogeneous<S>;
  static constexpr const char* name = "homogeneous";
  static H from_rational(const Rational& q) { return H(T::from_rational(q), Rational(0)); }
  static bool is_zero(const H& a) { return a.is_zero(); }
  static bool is_nilpotent(const H& a) { return a.is_zero(); }
  static int sign(const H& a) { return T::sign(a.value); }
  static std::optional<H> rational_power(const H& a, const Rational& alpha) {
    auto p = T::rational_power(a.value, alpha);
    if (!p) return std::nullopt;
    return H(*p, Rational(a.exponent * alpha));
  }
  static std::string to_string(const H& a) {
    return T::to_string(a.value) + "*lambda^(" + a.exponent.get_str() + ")";
  }
  static double to_double(const H& a) { return T::to_double(a.value); }
};

}  // namespace g2jet
