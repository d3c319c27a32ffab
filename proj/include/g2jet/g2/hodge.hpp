#pragma once

// Hodge star, codifferential and Hodge Laplacian of a jet metric on R^7.
//
// For a k-form a with raised components a^I,
//   ⋆a = sqrt(det g) sum_I a^I ε(I, I^c) e^{I^c}.
// Raising costs k index passes, so for k >= 4 we use the equivalent
// (⋆a)^J = ε(J^c, J) a_{J^c} / sqrt(det g) and lower the 7 - k indices of the
// result instead. Either way at most three passes are needed.

#include <bit>
#include <vector>

#include "g2jet/forms/ops.hpp"
#include "g2jet/g2/metric.hpp"

namespace g2jet {

namespace detail {

/// Applies m to every index of the antisymmetric tensor a:
///   out_{i1..ik} = m^{i1 j1} ... m^{ik jk} a_{j1..jk}.
/// Indices are moved one at a time; the intermediate mixed tensors
/// T^U_L (U already transformed, L not yet) are antisymmetric in each group.
template <Field S>
Form<S> transform_indices(const Form<S>& a, const JetMatrix<S>& m) {
  const int k = a.degree();
  const int ord = a.order();
  const auto& tab = MaskTable::get();
  // level r holds T^U_L with |U| = r, |L| = k - r, stored at [pos(U) * C(7, k-r) + pos(L)].
  std::vector<Jet<S>> cur(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) cur[i] = a[i];
  for (int r = 0; r < k; ++r) {
    const auto& lower_prev = tab.masks(k - r);
    const auto& upper_next = tab.masks(r + 1);
    const auto& lower_next = tab.masks(k - r - 1);
    std::vector<Jet<S>> next(upper_next.size() * lower_next.size(), Jet<S>(ord));
    for (std::size_t pu = 0; pu < upper_next.size(); ++pu) {
      const Mask U1 = upper_next[pu];
      const int u = std::bit_width(static_cast<unsigned>(U1));  // largest index in U1
      const Mask U = static_cast<Mask>(U1 & ~bit(u));
      const std::size_t base_prev = static_cast<std::size_t>(tab.position(U)) * lower_prev.size();
      for (std::size_t pl = 0; pl < lower_next.size(); ++pl) {
        const Mask L1 = lower_next[pl];
        std::vector<Jet<S>> parts;
        for (int l = 1; l <= kDim; ++l) {
          if (L1 & bit(l)) continue;
          const Jet<S>& mul = m[u - 1][l - 1];
          if (mul.is_zero() && mul.is_exact()) continue;
          const Jet<S>& t = cur[base_prev + tab.position(static_cast<Mask>(L1 | bit(l)))];
          if (t.is_zero() && t.is_exact()) continue;
          Jet<S> p = mul * t;
          parts.push_back((count_below(L1, l) & 1) ? -p : p);
        }
        next[pu * lower_next.size() + pl] = sum(ord, parts);
      }
    }
    cur = std::move(next);
  }
  Form<S> out(k, ord);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cur[i];
  return out;
}

}  // namespace detail

/// Components with all indices raised by g^{-1}.
template <Field S>
Form<S> raise_indices(const MetricJet<S>& g, const Form<S>& a) {
  return detail::transform_indices(a, g.ginv);
}

/// Inverse of raise_indices.
template <Field S>
Form<S> lower_indices(const MetricJet<S>& g, const Form<S>& a) {
  return detail::transform_indices(a, g.g);
}

template <Field S>
Form<S> hodge_star(const MetricJet<S>& g, const Form<S>& a) {
  if (g.order() != a.order()) throw OrderMismatch("Hodge star: metric and form orders differ");
  const int k = a.degree();
  const int ord = a.order();
  Form<S> out(7 - k, ord);
  if (k <= 3) {
    Form<S> up = raise_indices(g, a);
    for (std::size_t i = 0; i < up.size(); ++i) {
      const Mask I = up.mask_at(i);
      const Mask C = static_cast<Mask>(kFullMask & ~I);
      Jet<S> v = g.vol * up[i];
      out.at(C) = merge_sign(I, C) > 0 ? v : -v;
    }
    return out;
  }
  Form<S> up(7 - k, ord);
  for (std::size_t i = 0; i < up.size(); ++i) {
    const Mask J = up.mask_at(i);
    const Mask C = static_cast<Mask>(kFullMask & ~J);
    Jet<S> v = g.vol_inv * a.at(C);
    up[i] = merge_sign(C, J) > 0 ? v : -v;
  }
  return lower_indices(g, up);
}

/// Flat-metric star: a relabelling with signs, no products.
template <Field S>
Form<S> hodge_star_euclid(const Form<S>& a) {
  Form<S> out(7 - a.degree(), a.order());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mask I = a.mask_at(i);
    const Mask C = static_cast<Mask>(kFullMask & ~I);
    out.at(C) = merge_sign(I, C) > 0 ? a[i] : -a[i];
  }
  return out;
}

/// δ = (-1)^k ⋆ d ⋆ on k-forms in dimension 7; this is the sign for which
/// δ d f = -sum_i d_i^2 f on functions in flat space.
template <Field S>
Form<S> codifferential(const MetricJet<S>& g, const Form<S>& a) {
  if (a.degree() == 0) throw PreconditionFailed("codifferential of a 0-form");
  Form<S> r = hodge_star(g, d(hodge_star(g, a)));
  return (a.degree() % 2) ? -r : r;
}

template <Field S>
Form<S> codifferential_euclid(const Form<S>& a) {
  if (a.degree() == 0) throw PreconditionFailed("codifferential of a 0-form");
  Form<S> r = hodge_star_euclid(d(hodge_star_euclid(a)));
  return (a.degree() % 2) ? -r : r;
}

/// Δ = dδ + δd.
template <Field S>
Form<S> hodge_laplacian(const MetricJet<S>& g, const Form<S>& a) {
  Form<S> out(a.degree(), a.order());
  if (a.degree() > 0) out = d(codifferential(g, a));
  if (a.degree() < 7) out = out + codifferential(g, d(a));
  return out;
}

/// Δ a = dδa for a closed form; the closedness is checked to the effective order of da.
template <Field S>
Form<S> hodge_laplacian_closed(const MetricJet<S>& g, const Form<S>& a) {
  if (a.degree() < 7 && !d(a).is_zero())
    throw PreconditionFailed("closed-form Laplacian applied to a form that is not closed");
  if (a.degree() == 0) return Form<S>(0, a.order());
  return d(codifferential(g, a));
}

}  // namespace g2jet
