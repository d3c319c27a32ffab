#pragma once

#include <array>

#include "g2jet/forms/form.hpp"

namespace g2jet {

using Triple = std::array<int, 3>;

/// Index triples carrying +1 and -1 in the canonical G2 3-form.
inline constexpr std::array<Triple, 4> kPlusTriples{{{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}}};
inline constexpr std::array<Triple, 3> kMinusTriples{{{2, 5, 7}, {3, 4, 7}, {3, 5, 6}}};

/// The seven triples with their canonical signs.
inline std::array<std::pair<Triple, int>, 7> canonical_triples() {
  std::array<std::pair<Triple, int>, 7> t;
  for (int i = 0; i < 4; ++i) t[i] = {kPlusTriples[i], 1};
  for (int i = 0; i < 3; ++i) t[4 + i] = {kMinusTriples[i], -1};
  return t;
}

inline Mask triple_mask(const Triple& t) { return static_cast<Mask>(bit(t[0]) | bit(t[1]) | bit(t[2])); }

/// sigma_can = sum_{I+} e^{ijk} - sum_{I-} e^{ijk}, as an exact constant form.
template <Field S>
Form<S> sigma_can(int order) {
  Form<S> s(3, order);
  for (const auto& [t, sign] : canonical_triples()) s.at(triple_mask(t)) = Jet<S>::constant(order, lift<S>(sign));
  return s;
}

/// The quadratic closed 3-form
///   θ = sum_{I+} (1 - q_ijk) e^{ijk} - sum_{I-} (1 - q_ijk) e^{ijk},  q_ijk = x_i^2 + x_j^2 + x_k^2,
/// with q_ijk replaced by -q_ijk when sign = -1. θ(0) = sigma_can in both cases.
template <Field S>
Form<S> theta(int order, int sign = 1) {
  if (sign != 1 && sign != -1) throw PreconditionFailed("theta: sign must be +1 or -1");
  Form<S> s(3, order);
  for (const auto& [t, c] : canonical_triples()) {
    Jet<S> q(order);
    for (int i : t) {
      Exponent e{};
      e[i - 1] = 2;
      q = q + Jet<S>::monomial(order, e);
    }
    Jet<S> one = Jet<S>::constant(order, lift<S>(1));
    Jet<S> f = sign > 0 ? one - q : one + q;
    s.at(triple_mask(t)) = c > 0 ? f : -f;
  }
  return s;
}

}  // namespace g2jet
