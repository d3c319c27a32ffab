#pragma once

// Directional derivatives of the gauge field and of φ ↦ Δ_φ φ, computed by
// running the nonlinear maps over dual numbers, and the first-order
// remainder
//   Ψ_{ζ,φ}(ψ) = (d/dt) Δ_{φ+tψ}(φ+tψ) + Δ_φ ψ - sign d(V'_{ζ,φ}(ψ) ⌟ φ).

#include "g2jet/deturck/connection.hpp"
#include "g2jet/deturck/flow.hpp"

namespace g2jet {

/// V'_{ζ,φ}(ψ) = (d/dt) V(ζ, φ + tψ) at t = 0.
template <Field S>
VectorField<S> linearize_V(const G2Structure<S>& zeta, const G2Structure<S>& phi, const Form<S>& psi, int sign,
                           const GaugeCoefficients& coef = GaugeCoefficients::printed()) {
  if (psi.degree() != 3) throw PreconditionFailed("linearize_V: ψ must be a 3-form");
  using D = Dual<S>;
  G2Structure<D> z(to_dual(zeta.form()));
  G2Structure<D> p(to_dual(phi.form(), psi));
  return eps_part(deturck_field(z, p, sign, coef));
}

/// (d/dt) Δ_{φ+tψ}(φ+tψ) at t = 0 for closed φ, ψ.
template <Field S>
Form<S> linearized_laplacian(const G2Structure<S>& phi, const Form<S>& psi) {
  if (psi.degree() != 3) throw PreconditionFailed("linearized Laplacian: ψ must be a 3-form");
  if (phi.sign() != 1) throw PreconditionFailed("linearized Laplacian needs a positive G2-structure");
  G2Structure<Dual<S>> p(to_dual(phi.form(), psi));
  return eps_part(p.self_laplacian());
}

template <Field S>
Form<S> psi_map(const G2Structure<S>& zeta, const G2Structure<S>& phi, const Form<S>& psi, int sign,
                const GaugeCoefficients& coef = GaugeCoefficients::printed()) {
  Form<S> lin = linearized_laplacian(phi, psi);
  Form<S> lap = hodge_laplacian_closed(phi.metric(), psi);
  Form<S> gauge = d(interior(linearize_V(zeta, phi, psi, sign, coef), phi.form()));
  return sign > 0 ? lin + lap - gauge : lin + lap + gauge;
}

}  // namespace g2jet
