#pragma once

// Lie derivative and the pullback by the time-1 flow of a jet vector field.

#include "g2jet/forms/ops.hpp"
#include "g2jet/jets/dual_jet.hpp"

namespace g2jet {

/// Cartan's formula ℒ_V a = d(V⌟a) + V⌟da.
template <Field S>
Form<S> lie_derivative(const VectorField<S>& v, const Form<S>& a) {
  if (v.order() != a.order()) throw OrderMismatch("Lie derivative: field and form orders differ");
  Form<S> out(a.degree(), a.order());
  if (a.degree() > 0) out = d(interior(v, a));
  if (a.degree() < kDim) out = out + interior(v, d(a));
  return out;
}

template <Field S>
bool is_nilpotent(const VectorField<S>& v) {
  for (const auto& c : v.comp)
    if (!is_nilpotent(c)) return false;
  return true;
}

namespace detail {

/// ℒ_V b for V vanishing to second order. Such a field maps degree m to degree
/// >= m + 1, so the degree <= k part of the result only needs the known parts
/// of V and b; those are differentiated as polynomials one order higher, and
/// the effective order is set from the degree bound instead of from the
/// truncated products.
template <Field S>
Form<S> lie_step(const VectorField<S>& v, const Form<S>& b) {
  const int k = b.order();
  const long ev = v.is_exact() ? Jet<S>::kInfiniteValuation : v.effective_order();
  const long vb = b.certified_valuation();
  const int e = static_cast<int>(std::min<long>({b.effective_order() + 1L, ev - 1 + vb, k}));
  Form<S> out = lie_derivative(v.as_exact().with_order(k + 1), b.as_exact().with_order(k + 1)).with_order(k);
  return out.with_effective_order(e);
}

}  // namespace detail

/// (φ_V)^* a = Σ_n ℒ_V^n a / n!, where φ_V is the time-1 flow of V.
/// V must vanish to second order at the origin (each ℒ_V then raises the
/// valuation, so the series is finite on jets), or have nilpotent
/// coefficients (then the series stops after the linear term).
template <Field S>
Form<S> flow_pullback(const VectorField<S>& v, const Form<S>& a) {
  const bool quadratic = v.certified_valuation() >= 2;
  const bool nil = is_nilpotent(v);
  if (!nil && !quadratic)
    throw PreconditionFailed("flow pullback needs a field vanishing to second order at the origin");
  const int k = a.order();
  Form<S> sum = a;
  Form<S> term = a;
  for (int n = 1;; ++n) {
    if (n > 2 * k + 4) throw Stagnation("flow pullback: Lie series did not terminate");
    term = lift<S>(Rational(1, n)) * (quadratic ? detail::lie_step(v, term) : lie_derivative(v, term));
    if (term.is_zero() && (term.is_exact() || term.certified_valuation() > k)) break;
    sum = sum + term;
    if (nil || term.certified_valuation() > k) break;
  }
  return sum;
}

/// Pullback by the inverse flow, which is the time-1 flow of -V.
template <Field S>
Form<S> inverse_flow_pullback(const VectorField<S>& v, const Form<S>& a) {
  return flow_pullback(VectorField<S>(-v), a);
}

}  // namespace g2jet
