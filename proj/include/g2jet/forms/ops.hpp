#pragma once

#include <string>
#include <vector>

#include "g2jet/forms/form.hpp"

namespace g2jet {

namespace detail {

/// Sums jets of equal order, skipping exact zeros.
template <Field S>
Jet<S> sum(int order, const std::vector<Jet<S>>& parts) {
  Jet<S> acc(order);
  for (const auto& p : parts) {
    if (p.is_zero() && p.is_exact()) continue;
    acc = acc + p;
  }
  return acc;
}

}  // namespace detail

template <Field S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  const int m = a.degree() + b.degree();
  if (m > 7) throw PreconditionFailed("wedge of forms of total degree " + std::to_string(m) + " exceeds 7");
  if (a.order() != b.order())
    throw OrderMismatch("wedge of forms of orders " + std::to_string(a.order()) + " and " +
                        std::to_string(b.order()));
  const int k = a.order();
  Form<S> out(m, k);
  std::vector<std::vector<Jet<S>>> parts(out.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mask ma = a.mask_at(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Mask mb = b.mask_at(j);
      int s = merge_sign(ma, mb);
      if (s == 0) continue;
      Jet<S> p = a[i] * b[j];
      parts[MaskTable::get().position(static_cast<Mask>(ma | mb))].push_back(s > 0 ? p : -p);
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = detail::sum(k, parts[t]);
  return out;
}

/// X ⌟ a, contraction in the first slot.
template <Field S>
Form<S> interior(const VectorField<S>& X, const Form<S>& a) {
  if (a.degree() == 0) throw PreconditionFailed("interior product of a 0-form");
  if (X.order() != a.order()) throw OrderMismatch("interior product: vector field and form orders differ");
  const int k = a.order();
  Form<S> out(a.degree() - 1, k);
  std::vector<std::vector<Jet<S>>> parts(out.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mask I = a.mask_at(i);
    for (int j : mask_indices(I)) {
      Jet<S> p = X[j] * a[i];
      int pos = MaskTable::get().position(static_cast<Mask>(I & ~bit(j)));
      parts[pos].push_back((count_below(I, j) & 1) ? -p : p);
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = detail::sum(k, parts[t]);
  return out;
}

template <Field S>
Form<S> exterior_derivative(const Form<S>& a) {
  if (a.degree() == 7) throw PreconditionFailed("exterior derivative of a 7-form");
  const int k = a.order();
  Form<S> out(a.degree() + 1, k);
  std::vector<std::vector<Jet<S>>> parts(out.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mask I = a.mask_at(i);
    for (int j = 1; j <= 7; ++j) {
      if (I & bit(j)) continue;
      Jet<S> p = a[i].partial(j);
      int pos = MaskTable::get().position(static_cast<Mask>(I | bit(j)));
      parts[pos].push_back((count_below(I, j) & 1) ? -p : p);
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = detail::sum(k, parts[t]);
  return out;
}

template <Field S>
Form<S> d(const Form<S>& a) {
  return exterior_derivative(a);
}

enum class TaylorMode { keep_low, kill_low };

/// keep_low: the Taylor polynomial of degree n (an exact polynomial form).
/// kill_low: a minus that polynomial, so all jets through order n vanish.
template <Field S>
Form<S> taylor_project(const Form<S>& a, int n, TaylorMode mode) {
  if (n > a.effective_order())
    throw InsufficientOrder("Taylor projection to degree " + std::to_string(n) + " of a form known to order " +
                            std::to_string(a.effective_order()));
  if (mode == TaylorMode::keep_low) return a.apply([n](const Jet<S>& c) { return c.truncate(n); });
  return a.apply([n](const Jet<S>& c) { return c.kill_low(n); });
}

/// Substitutes x_i -> x_i / s in every coefficient.
template <Field S>
Form<S> dilate(const Form<S>& a, const S& s) {
  return a.apply([&](const Jet<S>& c) { return c.dilate(s); });
}

/// Radial homotopy: x^a e^I maps to (|a| + m)^{-1} X_rad ⌟ (x^a e^I). The result
/// has nominal order one higher than the input, so no information is lost, and
/// d h + h d = id on forms of degree >= 1.
template <Field S>
Form<S> radial_homotopy(const Form<S>& b) {
  const int m = b.degree();
  if (m == 0) throw PreconditionFailed("radial homotopy of a 0-form");
  const int k = b.order() + 1;
  Form<S> out(m - 1, k);
  std::vector<std::vector<Jet<S>>> parts(out.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Mask I = b.mask_at(i);
    Jet<S> f = b[i].scale_by_degree([m](int deg) { return lift<S>(Rational(1, deg + m)); }).with_order(k);
    for (int j : mask_indices(I)) {
      Jet<S> p = f.times_variable(j);
      int pos = MaskTable::get().position(static_cast<Mask>(I & ~bit(j)));
      parts[pos].push_back((count_below(I, j) & 1) ? -p : p);
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = detail::sum(k, parts[t]);
  return out;
}

/// Flat Laplacian -sum_i d_i^2 applied componentwise.
template <Field S>
Jet<S> laplacian_euclid(const Jet<S>& f) {
  Jet<S> acc(f.order());
  bool first = true;
  for (int i = 1; i <= kDim; ++i) {
    Jet<S> p = f.partial(i).partial(i);
    acc = first ? p : acc + p;
    first = false;
  }
  return -acc;
}

template <Field S>
Form<S> laplacian_euclid(const Form<S>& a) {
  return a.apply([](const Jet<S>& c) { return laplacian_euclid(c); });
}

}  // namespace g2jet
