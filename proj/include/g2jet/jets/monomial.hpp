#pragma once

// Monomials x1^a1 ... x7^a7 are addressed by their rank in graded order:
// all monomials of degree d precede those of degree d+1, and within a degree
// the order is the combinatorial number system on the stars-and-bars
// positions. Ranks are dense, so jets can use flat accumulators.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "g2jet/error.hpp"

namespace g2jet {

inline constexpr int kDim = 7;
inline constexpr int kMaxOrder = 15;

using Exponent = std::array<int, kDim>;

namespace detail {

/// C(n, k) for 0 <= n <= kMaxOrder + kDim + 1.
inline const std::array<std::array<std::uint32_t, 9>, kMaxOrder + kDim + 2>& binomials() {
  static const auto table = [] {
    std::array<std::array<std::uint32_t, 9>, kMaxOrder + kDim + 2> t{};
    for (std::size_t n = 0; n < t.size(); ++n) {
      t[n][0] = 1;
      if (n == 0) continue;
      for (std::size_t k = 1; k < 9; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

inline std::uint32_t binom(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomials()[n][k];
}

}  // namespace detail

/// Number of monomials of total degree <= d.
inline std::uint32_t monomial_count(int d) { return d < 0 ? 0 : detail::binom(d + kDim, kDim); }

/// Seven 4-bit exponents packed into one word; exponent i lives in bits 4i..4i+3.
using Packed = std::uint32_t;

inline Packed pack(const Exponent& e) {
  Packed p = 0;
  for (int i = 0; i < kDim; ++i) p |= static_cast<Packed>(e[i]) << (4 * i);
  return p;
}

inline Exponent unpack(Packed p) {
  Exponent e{};
  for (int i = 0; i < kDim; ++i) e[i] = static_cast<int>((p >> (4 * i)) & 0xFu);
  return e;
}

inline int packed_degree(Packed p) {
  int d = 0;
  for (int i = 0; i < kDim; ++i) d += static_cast<int>((p >> (4 * i)) & 0xFu);
  return d;
}

inline std::uint32_t packed_rank(Packed p) {
  int d = packed_degree(p);
  std::uint32_t r = monomial_count(d - 1);
  int prefix = 0;
  for (int j = 1; j < kDim; ++j) {
    prefix += static_cast<int>((p >> (4 * (j - 1))) & 0xFu);
    r += detail::binom(prefix + j - 1, j);
  }
  return r;
}

inline std::uint32_t exponent_rank(const Exponent& e) {
  int d = 0;
  for (int a : e) {
    if (a < 0) throw PreconditionFailed("negative exponent");
    d += a;
  }
  if (d > kMaxOrder) throw PreconditionFailed("monomial degree exceeds " + std::to_string(kMaxOrder));
  return packed_rank(pack(e));
}

/// rank -> packed exponent and degree, built once up to kMaxOrder.
class MonomialTable {
 public:
  static const MonomialTable& get() {
    static const MonomialTable t;
    return t;
  }
  Packed packed(std::uint32_t rank) const { return packed_[rank]; }
  int degree(std::uint32_t rank) const { return degree_[rank]; }
  Exponent exponent(std::uint32_t rank) const { return unpack(packed_[rank]); }

 private:
  MonomialTable() {
    const std::uint32_t n = monomial_count(kMaxOrder);
    packed_.resize(n);
    degree_.resize(n);
    Exponent e{};
    for (int d = 0; d <= kMaxOrder; ++d) enumerate(d, 0, e);
  }
  void enumerate(int remaining, int i, Exponent& e) {
    if (i == kDim - 1) {
      e[i] = remaining;
      Packed p = pack(e);
      std::uint32_t r = packed_rank(p);
      packed_[r] = p;
      degree_[r] = static_cast<std::uint8_t>(packed_degree(p));
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      e[i] = a;
      enumerate(remaining - a, i + 1, e);
    }
  }
  std::vector<Packed> packed_;
  std::vector<std::uint8_t> degree_;
};

inline int rank_degree(std::uint32_t rank) { return MonomialTable::get().degree(rank); }

/// Rank of the product of two monomials given by rank.
inline std::uint32_t rank_product(std::uint32_t a, std::uint32_t b) {
  const auto& t = MonomialTable::get();
  return packed_rank(t.packed(a) + t.packed(b));
}

inline std::string exponent_to_string(const Exponent& e) {
  std::string s;
  for (int i = 0; i < kDim; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace g2jet
