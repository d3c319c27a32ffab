#pragma once

// Strictly increasing multi-indices over {1..7} as 7-bit masks (bit i-1 for
// index i). Within a degree they are numbered lexicographically by index tuple,
// which is also the canonical order of form components in files.

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "g2jet/error.hpp"

namespace g2jet {

using Mask = std::uint8_t;

inline constexpr Mask kFullMask = 0x7F;

inline int mask_degree(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (int i = 1; i <= 7; ++i)
    if (m & (1u << (i - 1))) out.push_back(i);
  return out;
}

inline Mask bit(int i) { return static_cast<Mask>(1u << (i - 1)); }

/// Number of indices of m strictly below i.
inline int count_below(Mask m, int i) { return std::popcount(static_cast<unsigned>(m) & ((1u << (i - 1)) - 1u)); }

/// Sign of e^A ∧ e^B relative to e^{A∪B}; zero if A and B overlap.
inline int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j = 1; j <= 7; ++j)
    if (b & bit(j)) inversions += std::popcount(static_cast<unsigned>(a) & ~((1u << j) - 1u));
  return (inversions & 1) ? -1 : 1;
}

struct CanonicalIndex {
  Mask mask = 0;
  int sign = 0;  // 0 when the tuple repeats an index
};

/// Sorts an arbitrary index tuple, returning the permutation sign.
inline CanonicalIndex canonicalize(const std::vector<int>& idx) {
  Mask m = 0;
  int inversions = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] < 1 || idx[a] > 7) throw PreconditionFailed("form index out of range 1..7");
    if (m & bit(idx[a])) return {};
    m |= bit(idx[a]);
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (idx[a] > idx[b]) ++inversions;
  }
  return {m, (inversions & 1) ? -1 : 1};
}

/// Masks of each degree in lexicographic order of their index tuples, and the inverse map.
class MaskTable {
 public:
  static const MaskTable& get() {
    static const MaskTable t;
    return t;
  }
  const std::vector<Mask>& masks(int degree) const { return masks_[degree]; }
  int position(Mask m) const { return position_[m]; }

 private:
  MaskTable() {
    for (int d = 0; d <= 7; ++d) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      build(d, 1, cur, tuples);
      for (const auto& t : tuples) {
        Mask m = 0;
        for (int i : t) m |= bit(i);
        position_[m] = static_cast<int>(masks_[d].size());
        masks_[d].push_back(m);
      }
    }
  }
  static void build(int d, int next, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == d) {
      out.push_back(cur);
      return;
    }
    for (int i = next; i <= 7; ++i) {
      cur.push_back(i);
      build(d, i + 1, cur, out);
      cur.pop_back();
    }
  }
  std::array<std::vector<Mask>, 8> masks_;
  std::array<int, 128> position_{};
};

inline std::string mask_to_string(Mask m) {
  std::string s = "e^";
  if (m == 0) return "1";
  for (int i : mask_indices(m)) s += std::to_string(i);
  return s;
}

}  // namespace g2jet
