#pragma once

// Truncated power series in x1..x7 at the origin.
//
// A jet has a nominal order k (terms of degree > k are never stored) and an
// effective order e <= k: the coefficients of degree <= e are exact, anything
// above is unknown and therefore not stored. Differentiation lowers e by one;
// products keep as much as the valuations of the factors allow. A jet flagged
// `exact` is a polynomial known to all orders (every omitted coefficient is
// zero), which is what lets polynomial data survive repeated differentiation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "g2jet/jets/monomial.hpp"
#include "g2jet/jets/scalar.hpp"

namespace g2jet {

template <Field S>
class Jet;

namespace detail {
template <class S>
struct MulKernel;
}

template <Field S>
class Jet {
 public:
  using scalar_type = S;
  struct Term {
    std::uint32_t rank;
    S coeff;
    friend bool operator==(const Term& a, const Term& b) { return a.rank == b.rank && a.coeff == b.coeff; }
  };

  /// Exact zero of order 0.
  Jet() = default;
  /// Exact zero of the given order.
  explicit Jet(int order) : order_(check_order(order)), eff_(order) {}

  static Jet constant(int order, const S& c) {
    Jet j(order);
    if (!scalar_traits<S>::is_zero(c)) j.terms_.push_back({0, c});
    return j;
  }
  static Jet constant(int order, long c) { return constant(order, lift<S>(c)); }

  /// The coordinate function x_axis, axis in 1..7.
  static Jet variable(int order, int axis, const S& c = lift<S>(1)) {
    if (axis < 1 || axis > kDim) throw PreconditionFailed("axis must lie in 1..7");
    Exponent e{};
    e[axis - 1] = 1;
    return monomial(order, e, c);
  }

  static Jet monomial(int order, const Exponent& e, const S& c = lift<S>(1)) {
    std::vector<Term> t;
    t.push_back({exponent_rank(e), c});
    return from_terms(order, std::move(t), order, true);
  }

  /// Builds a jet from arbitrary (rank, coeff) pairs: sums duplicates, drops zeros
  /// and everything above the effective order. An exact jet loses exactness if a
  /// term above the nominal order had to be dropped.
  static Jet from_terms(int order, std::vector<Term> terms, int eff, bool exact) {
    Jet j;
    j.order_ = check_order(order);
    j.eff_ = std::clamp(eff, -1, order);
    j.exact_ = exact && j.eff_ == order;
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.rank < b.rank; });
    for (auto& t : terms) {
      if (rank_degree(t.rank) > j.eff_) {
        if (!scalar_traits<S>::is_zero(t.coeff)) j.exact_ = false;
        continue;
      }
      if (!j.terms_.empty() && j.terms_.back().rank == t.rank) {
        j.terms_.back().coeff = S(j.terms_.back().coeff + t.coeff);
      } else {
        j.terms_.push_back(std::move(t));
      }
    }
    j.drop_zeros();
    return j;
  }

  int order() const noexcept { return order_; }
  int effective_order() const noexcept { return eff_; }
  bool is_exact() const noexcept { return exact_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  S coeff_rank(std::uint32_t rank) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), rank,
                               [](const Term& t, std::uint32_t r) { return t.rank < r; });
    if (it != terms_.end() && it->rank == rank) return it->coeff;
    return S{};
  }
  S coeff(const Exponent& e) const { return coeff_rank(exponent_rank(e)); }
  S eval0() const { return coeff_rank(0); }

  /// Lowest degree with a nonzero coefficient; order + 1 for the zero jet.
  int valuation() const { return terms_.empty() ? order_ + 1 : rank_degree(terms_.front().rank); }

  /// Valuation that is guaranteed for the true series: the first unknown
  /// degree caps it unless the jet is exact.
  int certified_valuation() const {
    if (exact_) return terms_.empty() ? kInfiniteValuation : valuation();
    return std::min(terms_.empty() ? order_ + 1 : valuation(), eff_ + 1);
  }

  int max_degree() const { return terms_.empty() ? -1 : rank_degree(terms_.back().rank); }

  // ---- structural changes -------------------------------------------------

  /// Reinterprets the jet at another nominal order.
  Jet with_order(int order) const {
    if (order >= order_) {
      Jet j = *this;
      j.order_ = check_order(order);
      if (exact_) j.eff_ = order;
      return j;
    }
    return from_terms(order, terms_, std::min(eff_, order), exact_);
  }

  /// Declares the stored polynomial to be the whole series.
  Jet as_exact() const {
    Jet j = *this;
    j.eff_ = order_;
    j.exact_ = true;
    return j;
  }

  /// Forgets everything above degree e.
  Jet with_effective_order(int e) const {
    if (e >= eff_) {
      Jet j = *this;
      j.exact_ = false;
      return j;
    }
    return from_terms(order_, terms_, e, false);
  }

  /// Taylor polynomial of degree n. When n is within the effective order the
  /// result is an exact polynomial; otherwise nothing is dropped.
  Jet truncate(int n) const {
    if (n > eff_) return *this;
    Jet j(order_);
    for (const auto& t : terms_)
      if (rank_degree(t.rank) <= n) j.terms_.push_back(t);
    return j;
  }

  /// Removes all terms of degree <= n (a - truncate(a, n)).
  Jet kill_low(int n) const {
    Jet j = *this;
    j.terms_.clear();
    for (const auto& t : terms_)
      if (rank_degree(t.rank) > n) j.terms_.push_back(t);
    return j;
  }

  // ---- arithmetic ---------------------------------------------------------

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, false); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, true); }
  friend Jet operator-(const Jet& a) {
    Jet j = a;
    for (auto& t : j.terms_) t.coeff = S(-t.coeff);
    return j;
  }
  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }

  friend Jet operator*(const S& c, const Jet& a) {
    if (scalar_traits<S>::is_zero(c)) return Jet(a.order_);
    Jet j = a;
    for (auto& t : j.terms_) t.coeff = S(c * t.coeff);
    j.drop_zeros();
    return j;
  }
  friend Jet operator*(const Jet& a, const S& c) { return c * a; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    check_same_order(a, b, "product");
    const int k = a.order_;
    const int va = a.certified_valuation();
    const int vb = b.certified_valuation();
    const long ea = a.exact_ ? kInfiniteValuation : a.eff_;
    const long eb = b.exact_ ? kInfiniteValuation : b.eff_;
    const int eff = static_cast<int>(std::min<long>({ea + vb, eb + va, k}));
    Jet out(k);
    out.eff_ = std::max(eff, -1);
    out.exact_ = a.exact_ && b.exact_ && a.max_degree() + b.max_degree() <= k;
    if (a.exact_ && a.terms_.empty()) out.exact_ = true;
    if (b.exact_ && b.terms_.empty()) out.exact_ = true;
    if (out.exact_) out.eff_ = k;
    if (!a.terms_.empty() && !b.terms_.empty() && out.eff_ >= 0)
      detail::MulKernel<S>::run(a.terms_, b.terms_, out.eff_, out.terms_);
    return out;
  }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  /// Formal partial derivative along x_axis (axis in 1..7).
  Jet partial(int axis) const {
    if (axis < 1 || axis > kDim) throw PreconditionFailed("axis must lie in 1..7");
    const auto& tab = MonomialTable::get();
    const int shift = 4 * (axis - 1);
    Jet j(order_);
    j.exact_ = exact_;
    j.eff_ = exact_ ? order_ : std::max(eff_ - 1, -1);
    for (const auto& t : terms_) {
      Packed p = tab.packed(t.rank);
      unsigned e = (p >> shift) & 0xFu;
      if (e == 0) continue;
      Packed q = p - (Packed{1} << shift);
      j.terms_.push_back({packed_rank(q), S(lift<S>(static_cast<long>(e)) * t.coeff)});
    }
    std::sort(j.terms_.begin(), j.terms_.end(), [](const Term& x, const Term& y) { return x.rank < y.rank; });
    return j;
  }

  /// Multiplication by the coordinate x_axis.
  Jet times_variable(int axis) const {
    const auto& tab = MonomialTable::get();
    const int shift = 4 * (axis - 1);
    Jet j(order_);
    j.eff_ = exact_ ? order_ : std::min(eff_ + 1, order_);
    j.exact_ = exact_;
    for (const auto& t : terms_) {
      if (rank_degree(t.rank) + 1 > order_) {
        j.exact_ = false;
        j.eff_ = std::min(j.eff_, order_);
        continue;
      }
      Packed p = tab.packed(t.rank) + (Packed{1} << shift);
      j.terms_.push_back({packed_rank(p), t.coeff});
    }
    std::sort(j.terms_.begin(), j.terms_.end(), [](const Term& x, const Term& y) { return x.rank < y.rank; });
    return j;
  }

  /// Multiplies every coefficient of degree d by f(d).
  Jet scale_by_degree(const std::function<S(int)>& f) const {
    Jet j = *this;
    for (auto& t : j.terms_) t.coeff = S(f(rank_degree(t.rank)) * t.coeff);
    j.drop_zeros();
    return j;
  }

  /// Substitution x_i -> x_i / s.
  Jet dilate(const S& s) const {
    if (scalar_traits<S>::is_zero(s)) throw PreconditionFailed("dilation factor must be nonzero");
    S inv = S(lift<S>(1) / s);
    std::vector<S> powers{lift<S>(1)};
    for (int d = 1; d <= order_; ++d) powers.push_back(S(powers.back() * inv));
    return scale_by_degree([&](int d) { return powers[d]; });
  }

  /// a^alpha for a jet whose constant term is a unit with a representable alpha-th power.
  Jet unit_power(const Rational& alpha) const {
    if (eff_ < 0) throw InsufficientOrder("constant term of the jet is unknown");
    S a0 = eval0();
    if (scalar_traits<S>::is_nilpotent(a0))
      throw PreconditionFailed("power of a jet whose constant term is not a unit");
    auto c = scalar_traits<S>::rational_power(a0, alpha);
    if (!c)
      throw NotRepresentable("(" + scalar_traits<S>::to_string(a0) + ")^(" + alpha.get_str() +
                             ") is not representable in the " + scalar_traits<S>::name + " backend");
    S inv = S(lift<S>(1) / a0);
    Jet w = inv * (*this) - constant(order_, lift<S>(1));
    const int n_max = exact_ ? order_ : eff_;
    Jet r = constant(order_, lift<S>(1));
    if (w.is_zero() && w.exact_) return *c * r;
    // Horner form of sum_n binom(alpha, n) w^n.
    for (int n = n_max; n >= 1; --n) {
      S f = lift<S>(Rational((alpha - (n - 1)) / n));
      r = constant(order_, lift<S>(1)) + f * (w * r);
    }
    Jet out = *c * r;
    out.exact_ = false;
    out.eff_ = std::min(out.eff_, exact_ ? order_ : eff_);
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    std::vector<typename Jet<T>::Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) t.push_back({x.rank, f(x.coeff)});
    return Jet<T>::from_terms(order_, std::move(t), eff_, exact_);
  }

  /// Structural equality: same order, precision metadata and coefficients.
  friend bool operator==(const Jet& a, const Jet& b) {
    return a.order_ == b.order_ && a.eff_ == b.eff_ && a.exact_ == b.exact_ && a.terms_ == b.terms_;
  }

  /// True when the coefficients of degree <= n agree.
  friend bool agree_to(const Jet& a, const Jet& b, int n) {
    auto lo = [n](const Jet& j) {
      std::vector<Term> t;
      for (const auto& x : j.terms_)
        if (rank_degree(x.rank) <= n) t.push_back(x);
      return t;
    };
    return lo(a) == lo(b);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    const auto& tab = MonomialTable::get();
    bool first = true;
    for (const auto& t : terms_) {
      if (!first) os << " + ";
      first = false;
      os << '(' << scalar_traits<S>::to_string(t.coeff) << ')';
      if (t.rank != 0) os << '*' << exponent_to_string(tab.exponent(t.rank));
    }
    return os.str();
  }

  static constexpr int kInfiniteValuation = 1 << 20;

 private:
  template <Field>
  friend class Jet;

  static int check_order(int order) {
    if (order < 0 || order > kMaxOrder)
      throw PreconditionFailed("truncation order must lie in 0.." + std::to_string(kMaxOrder));
    return order;
  }
  static void check_same_order(const Jet& a, const Jet& b, const char* what) {
    if (a.order_ != b.order_)
      throw OrderMismatch(std::string(what) + " of jets of orders " + std::to_string(a.order_) + " and " +
                          std::to_string(b.order_));
  }

  static Jet combine(const Jet& a, const Jet& b, bool subtract) {
    check_same_order(a, b, subtract ? "difference" : "sum");
    Jet out(a.order_);
    out.exact_ = a.exact_ && b.exact_;
    out.eff_ = std::min(a.eff_, b.eff_);
    auto& t = out.terms_;
    t.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    auto push = [&](std::uint32_t r, S c) {
      if (rank_degree(r) <= out.eff_ && !scalar_traits<S>::is_zero(c)) t.push_back({r, std::move(c)});
    };
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].rank < b.terms_[j].rank)) {
        push(a.terms_[i].rank, a.terms_[i].coeff);
        ++i;
      } else if (i == a.terms_.size() || b.terms_[j].rank < a.terms_[i].rank) {
        push(b.terms_[j].rank, subtract ? S(-b.terms_[j].coeff) : b.terms_[j].coeff);
        ++j;
      } else {
        push(a.terms_[i].rank, subtract ? S(a.terms_[i].coeff - b.terms_[j].coeff)
                                        : S(a.terms_[i].coeff + b.terms_[j].coeff));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return scalar_traits<S>::is_zero(t.coeff); });
  }

  int order_ = 0;
  int eff_ = 0;
  bool exact_ = true;
  std::vector<Term> terms_;
};

namespace detail {

/// Index one past the last term of each degree, for early loop exits.
template <class TermVec>
std::array<std::size_t, kMaxOrder + 2> degree_ends(const TermVec& t) {
  std::array<std::size_t, kMaxOrder + 2> ends{};
  std::size_t i = 0;
  for (int d = 0; d <= kMaxOrder + 1; ++d) {
    while (i < t.size() && rank_degree(t[i].rank) <= d) ++i;
    ends[d] = i;
  }
  return ends;
}

/// Generic dense-accumulator product, truncated at degree eff.
template <class S>
struct MulKernel {
  using Term = typename Jet<S>::Term;
  static void run(const std::vector<Term>& a, const std::vector<Term>& b, int eff, std::vector<Term>& out) {
    thread_local std::vector<S> acc;
    thread_local std::vector<char> used;
    const std::uint32_t n = monomial_count(eff);
    if (acc.size() < n) {
      acc.resize(n);
      used.resize(n, 0);
    }
    std::vector<std::uint32_t> touched;
    const auto& tab = MonomialTable::get();
    const auto bend = degree_ends(b);
    for (const auto& x : a) {
      const int da = tab.degree(x.rank);
      if (da > eff) break;
      const Packed pa = tab.packed(x.rank);
      const std::size_t stop = bend[eff - da];
      for (std::size_t j = 0; j < stop; ++j) {
        std::uint32_t r = packed_rank(pa + tab.packed(b[j].rank));
        if (!used[r]) {
          used[r] = 1;
          touched.push_back(r);
          acc[r] = S(x.coeff * b[j].coeff);
        } else {
          acc[r] = S(acc[r] + S(x.coeff * b[j].coeff));
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    out.reserve(touched.size());
    for (std::uint32_t r : touched) {
      used[r] = 0;
      if (!scalar_traits<S>::is_zero(acc[r])) out.push_back({r, std::move(acc[r])});
      acc[r] = S{};
    }
  }
};

/// Rational product: clear denominators per factor, accumulate integers with
/// fused multiply-add, divide once at the end.
template <>
struct MulKernel<Rational> {
  using Term = Jet<Rational>::Term;
  static void integerize(const std::vector<Term>& t, std::vector<Integer>& num, Integer& den) {
    den = 1;
    for (const auto& x : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.coeff.get_den_mpz_t());
    num.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      mpz_divexact(num[i].get_mpz_t(), den.get_mpz_t(), t[i].coeff.get_den_mpz_t());
      mpz_mul(num[i].get_mpz_t(), num[i].get_mpz_t(), t[i].coeff.get_num_mpz_t());
    }
  }
  static void run(const std::vector<Term>& a, const std::vector<Term>& b, int eff, std::vector<Term>& out) {
    thread_local std::vector<Integer> acc;
    thread_local std::vector<char> used;
    thread_local std::vector<Integer> na, nb;
    const std::uint32_t n = monomial_count(eff);
    if (acc.size() < n) {
      acc.resize(n);
      used.resize(n, 0);
    }
    Integer da_, db_;
    integerize(a, na, da_);
    integerize(b, nb, db_);
    std::vector<std::uint32_t> touched;
    const auto& tab = MonomialTable::get();
    const auto bend = degree_ends(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int da = tab.degree(a[i].rank);
      if (da > eff) break;
      const Packed pa = tab.packed(a[i].rank);
      const std::size_t stop = bend[eff - da];
      for (std::size_t j = 0; j < stop; ++j) {
        std::uint32_t r = packed_rank(pa + tab.packed(b[j].rank));
        if (!used[r]) {
          used[r] = 1;
          touched.push_back(r);
          mpz_mul(acc[r].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
        } else {
          mpz_addmul(acc[r].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    Integer den = da_ * db_;
    out.reserve(touched.size());
    for (std::uint32_t r : touched) {
      used[r] = 0;
      if (sgn(acc[r]) == 0) continue;
      Rational q(acc[r], den);
      q.canonicalize();
      out.push_back({r, std::move(q)});
    }
  }
};

}  // namespace detail

template <Field S>
Jet<S> partial(const Jet<S>& a, int axis) {
  return a.partial(axis);
}

}  // namespace g2jet
