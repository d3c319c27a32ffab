#pragma once

// Exact arithmetic in Q(t) = Q[t]/(t^d - r) for a positive rational r that is
// not a p-th power for any prime p dividing d. The real embedding sends t to
// the positive real root r^(1/d); signs are decided in that embedding.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "g2jet/jets/scalar.hpp"

namespace g2jet {

class RadicalField {
 public:
  static constexpr int kMaxDegree = 9;

  RadicalField(int degree, Rational radicand) : degree_(degree), radicand_(std::move(radicand)) {
    radicand_.canonicalize();
    if (degree_ < 1 || degree_ > kMaxDegree)
      throw PreconditionFailed("radical degree must lie in 1..9, got " + std::to_string(degree_));
    if (sgn(radicand_) <= 0) throw PreconditionFailed("radicand must be a positive rational");
    // t^d - r is irreducible over Q iff r is not a p-th power for every prime p | d
    // (the -4b^4 exception of Capelli's theorem cannot occur for r > 0).
    for (int p = 2; p <= degree_; ++p) {
      if (degree_ % p != 0 || !is_prime(p)) continue;
      if (detail::rational_power(radicand_, Rational(1, p)))
        throw PreconditionFailed("t^" + std::to_string(degree_) + " - " + radicand_.get_str() +
                                 " is reducible over the rationals (radicand is a perfect " +
                                 std::to_string(p) + "-th power)");
    }
  }

  int degree() const noexcept { return degree_; }
  const Rational& radicand() const noexcept { return radicand_; }
  std::string spec() const { return "radical:" + std::to_string(degree_) + ":" + radicand_.get_str(); }

  /// The field every Radical value currently computes in.
  static const RadicalField& active() {
    auto& s = stack();
    if (s.empty()) throw PreconditionFailed("no radical field is active");
    return *s.back();
  }
  static bool has_active() { return !stack().empty(); }

  /// RAII activation; scopes nest.
  class Scope {
   public:
    explicit Scope(RadicalField field) { stack().push_back(std::make_shared<RadicalField>(std::move(field))); }
    ~Scope() { stack().pop_back(); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
  };

 private:
  static bool is_prime(int p) {
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) return false;
    return p >= 2;
  }
  static std::vector<std::shared_ptr<const RadicalField>>& stack() {
    static std::vector<std::shared_ptr<const RadicalField>> s;
    return s;
  }

  int degree_;
  Rational radicand_;
};

class Radical {
 public:
  Radical() = default;
  Radical(long n) : Radical(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  Radical(const Rational& q) {               // NOLINT(google-explicit-constructor)
    if (sgn(q) != 0) c_.push_back(q);
  }
  explicit Radical(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { reduce(); }

  /// The adjoined root t itself.
  static Radical generator() { return Radical(std::vector<Rational>{Rational(0), Rational(1)}); }

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  Rational coefficient(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  bool is_zero() const noexcept { return c_.empty(); }

  friend bool operator==(const Radical& a, const Radical& b) { return a.c_ == b.c_; }

  friend Radical operator+(const Radical& a, const Radical& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Radical(std::move(c), raw_tag{});
  }
  friend Radical operator-(const Radical& a) {
    Radical r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Radical operator-(const Radical& a, const Radical& b) { return a + (-b); }
  friend Radical operator*(const Radical& a, const Radical& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1 && b.c_.size() == 1) return Radical(Rational(a.c_[0] * b.c_[0]));
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Radical(std::move(c));
  }
  friend Radical operator/(const Radical& a, const Radical& b) { return a * b.inverse(); }
  Radical& operator+=(const Radical& b) { return *this = *this + b; }
  Radical& operator-=(const Radical& b) { return *this = *this - b; }
  Radical& operator*=(const Radical& b) { return *this = *this * b; }

  Radical inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in radical field");
    if (c_.size() == 1) return Radical(Rational(1 / c_[0]));
    const auto& F = RadicalField::active();
    const int d = F.degree();
    // Column j of the multiplication matrix is this * t^j.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    Radical col = *this;
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) m[i][j] = col.coefficient(i);
      col = col * generator();
    }
    m[0][d] = 1;
    for (int p = 0; p < d; ++p) {
      int piv = p;
      while (piv < d && sgn(m[piv][p]) == 0) ++piv;
      if (piv == d) throw std::domain_error("singular element in radical field");
      std::swap(m[p], m[piv]);
      Rational inv = 1 / m[p][p];
      for (int j = p; j <= d; ++j) m[p][j] *= inv;
      for (int i = 0; i < d; ++i) {
        if (i == p || sgn(m[i][p]) == 0) continue;
        Rational f = m[i][p];
        for (int j = p; j <= d; ++j) m[i][j] -= f * m[p][j];
      }
    }
    std::vector<Rational> x(d);
    for (int i = 0; i < d; ++i) x[i] = m[i][d];
    return Radical(std::move(x));
  }

  /// Sign in the real embedding t -> r^(1/d) > 0.
  int sign() const {
    if (is_zero()) return 0;
    if (c_.size() == 1) return sgn(c_[0]);
    const auto& F = RadicalField::active();
    for (mpfr_prec_t prec = 256; prec <= (1 << 16); prec *= 4) {
      mpfr_t t, acc, term;
      mpfr_inits2(prec, t, acc, term, static_cast<mpfr_ptr>(nullptr));
      mpfr_set_q(t, F.radicand().get_mpq_t(), MPFR_RNDN);
      mpfr_rootn_ui(t, t, static_cast<unsigned long>(F.degree()), MPFR_RNDN);
      mpfr_set_zero(acc, 1);
      for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        mpfr_mul(acc, acc, t, MPFR_RNDN);
        mpfr_set_q(term, c_[i].get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
      }
      // Compare against a bound on accumulated rounding relative to coefficient size.
      mpfr_t bound;
      mpfr_init2(bound, 64);
      mpfr_set_ui_2exp(bound, 1, -static_cast<long>(prec) / 2, MPFR_RNDN);
      Rational maxabs = 0;
      for (const auto& q : c_) maxabs = std::max(maxabs, Rational(abs(q)));
      mpfr_set_q(term, maxabs.get_mpq_t(), MPFR_RNDN);
      mpfr_mul(bound, bound, term, MPFR_RNDN);
      int s = 0;
      if (mpfr_cmpabs(acc, bound) > 0) s = mpfr_sgn(acc);
      mpfr_clears(t, acc, term, bound, static_cast<mpfr_ptr>(nullptr));
      if (s != 0) return s;
    }
    throw NotRepresentable("cannot decide the sign of a radical element");
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    const auto& F = RadicalField::active();
    double t = std::pow(F.radicand().get_d(), 1.0 / F.degree());
    double acc = 0;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * t + c_[i].get_d();
    return acc;
  }

  /// Exact a^alpha for elements of the form c*t^e (a single nonzero coefficient).
  std::optional<Radical> rational_power(const Rational& alpha) const {
    if (is_zero()) {
      if (sgn(alpha) > 0) return Radical();
      return std::nullopt;
    }
    int e = -1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) != 0) {
        if (e >= 0) return std::nullopt;
        e = static_cast<int>(i);
      }
    }
    if (e == 0) {
      auto r = detail::rational_power(c_[0], alpha);
      if (r) return Radical(*r);
      if (!RadicalField::has_active()) return std::nullopt;
    }
    const auto& F = RadicalField::active();
    const long d = F.degree();
    if (!alpha.get_num().fits_slong_p() || !alpha.get_den().fits_slong_p()) return std::nullopt;
    const long p = alpha.get_num().get_si();
    const long q = alpha.get_den().get_si();
    const Rational& c = c_[e];
    if (sign() < 0 && q % 2 == 0) return std::nullopt;
    // a^p = c^p t^(e p) = c^p r^floor(ep/d) t^(ep mod d); the root is c' t^j with j q = e p (mod d).
    auto floordiv = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    const long ep = e * p;
    const Rational lhs = detail::rational_ipow(c, p) * detail::rational_ipow(F.radicand(), floordiv(ep, d));
    const long rem = ((ep % d) + d) % d;
    for (long j = 0; j < d; ++j) {
      if ((j * q) % d != rem) continue;
      Rational target = lhs / detail::rational_ipow(F.radicand(), floordiv(j * q, d));
      auto root = detail::rational_power(target, Rational(1, q));
      if (!root) continue;
      std::vector<Rational> coeffs(j + 1);
      coeffs[j] = *root;
      Radical candidate(std::move(coeffs));
      // Pick the real root with the sign of the real value a^alpha.
      int want = (sign() > 0) ? 1 : ((p % 2 == 0) ? 1 : -1);
      if (candidate.sign() != want) candidate = -candidate;
      return candidate;
    }
    return std::nullopt;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      std::string num = c_[i].get_str();
      if (!first && num[0] != '-') os << '+';
      os << num;
      if (i == 1) os << "*t";
      if (i > 1) os << "*t^" << i;
      first = false;
    }
    return os.str();
  }

  /// Parses "a0+a1*t+a2*t^2..." (terms in any order, rational coefficients).
  static Radical parse(std::string_view text) {
    std::string s(text);
    std::vector<Rational> c;
    std::size_t i = 0;
    auto fail = [&] { return ParseError("malformed radical coefficient '" + s + "'"); };
    if (s.empty()) throw fail();
    while (i < s.size()) {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
      std::string term = s.substr(i, j - i);
      i = j;
      int power = 0;
      std::size_t star = term.find("*t");
      std::string coeff = term;
      if (star != std::string::npos) {
        coeff = term.substr(0, star);
        std::string rest = term.substr(star + 2);
        if (rest.empty()) {
          power = 1;
        } else if (rest[0] == '^' && rest.size() > 1) {
          try {
            power = std::stoi(rest.substr(1));
          } catch (...) {
            throw fail();
          }
        } else {
          throw fail();
        }
      }
      if (power < 0 || power >= RadicalField::kMaxDegree) throw fail();
      Rational q = detail::parse_rational(coeff);
      if (static_cast<int>(c.size()) <= power) c.resize(power + 1);
      c[power] += q;
    }
    return Radical(std::move(c));
  }

 private:
  struct raw_tag {};
  Radical(std::vector<Rational> coeffs, raw_tag) : c_(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  void reduce() {
    trim();
    if (c_.size() <= 1) return;
    const auto& F = RadicalField::active();
    const std::size_t d = F.degree();
    for (std::size_t n = c_.size(); n-- > d;) {
      if (sgn(c_[n]) != 0) c_[n - d] += F.radicand() * c_[n];
      c_[n] = 0;
    }
    trim();
  }

  std::vector<Rational> c_;
};

template <>
struct scalar_traits<Radical> {
  static constexpr const char* name = "radical";
  static Radical from_rational(const Rational& q) { return Radical(q); }
  static bool is_zero(const Radical& a) { return a.is_zero(); }
  static bool is_nilpotent(const Radical& a) { return a.is_zero(); }
  static int sign(const Radical& a) { return a.sign(); }
  static std::optional<Radical> rational_power(const Radical& a, const Rational& alpha) {
    return a.rational_power(alpha);
  }
  static std::string to_string(const Radical& a) { return a.to_string(); }
  static Radical parse(std::string_view s) { return Radical::parse(s); }
  static double to_double(const Radical& a) { return a.to_double(); }
};

}  // namespace g2jet
