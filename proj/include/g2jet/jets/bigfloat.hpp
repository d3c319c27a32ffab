#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <ios>
#include <string>

#include "g2jet/jets/scalar.hpp"

namespace g2jet {

using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

/// Sets the working precision (in bits) of newly created BigFloat values.
class BigFloatScope {
 public:
  static constexpr unsigned kDefaultBits = 256;

  explicit BigFloatScope(unsigned bits = kDefaultBits) : saved_(BigFloat::default_precision()) {
    if (bits < 32) throw PreconditionFailed("big-float precision must be at least 32 bits");
    BigFloat::default_precision(digits_for(bits));
    bits_stack().push_back(bits);
  }
  ~BigFloatScope() {
    BigFloat::default_precision(saved_);
    bits_stack().pop_back();
  }
  BigFloatScope(const BigFloatScope&) = delete;
  BigFloatScope& operator=(const BigFloatScope&) = delete;

  static unsigned bits() { return bits_stack().empty() ? kDefaultBits : bits_stack().back(); }

 private:
  static unsigned digits_for(unsigned bits) { return static_cast<unsigned>(bits * 0.30102999566398 + 1); }
  static std::vector<unsigned>& bits_stack() {
    static std::vector<unsigned> s;
    return s;
  }
  unsigned saved_;
};

template <>
struct scalar_traits<BigFloat> {
  static constexpr const char* name = "bigfloat";
  static BigFloat from_rational(const Rational& q) {
    BigFloat x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
  }
  /// Values below 2^(-3/4 * precision) are treated as cancellation noise.
  static bool is_zero(const BigFloat& a) {
    if (a == 0) return true;
    long e = 0;
    mpfr_get_d_2exp(&e, a.backend().data(), MPFR_RNDN);
    return e < -static_cast<long>(3 * BigFloatScope::bits() / 4);
  }
  static bool is_nilpotent(const BigFloat& a) { return is_zero(a); }
  static int sign(const BigFloat& a) { return is_zero(a) ? 0 : (a > 0 ? 1 : -1); }
  static std::optional<BigFloat> rational_power(const BigFloat& a, const Rational& alpha) {
    int s = sign(a);
    if (s == 0) {
      if (sgn(alpha) > 0) return BigFloat(0);
      return std::nullopt;
    }
    BigFloat e = from_rational(alpha);
    if (s > 0) return BigFloat(boost::multiprecision::pow(a, e));
    if (alpha.get_den() % 2 == 0) return std::nullopt;
    BigFloat m = boost::multiprecision::pow(BigFloat(-a), e);
    if (alpha.get_num() % 2 != 0) m = -m;
    return m;
  }
  static std::string to_string(const BigFloat& a) {
    if (a == 0) return "0";
    return a.str(static_cast<std::streamsize>(BigFloatScope::bits() * 0.30102999566398 + 2),
                 std::ios_base::scientific);
  }
  static BigFloat parse(std::string_view s) {
    try {
      if (s.find('/') != std::string_view::npos) return from_rational(detail::parse_rational(s));
      BigFloat x{std::string(s)};
      return x;
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("malformed decimal coefficient '" + std::string(s) + "'");
    }
  }
  static double to_double(const BigFloat& a) { return a.convert_to<double>(); }
};

}  // namespace g2jet
