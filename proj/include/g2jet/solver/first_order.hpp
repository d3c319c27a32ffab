#pragma once

// Correcting σ0 to first order at the origin.
//
// With ρ0 = Δ_{σ0}σ0 - η (closed, zero at the origin) and τ = h(ρ0), the
// quartic 2-form
//   τ* = Σ_{i<j} Σ_{k,l} 2/(1 + 3δ_kl) ∂²τ_ij/∂x_k∂x_l(0) x_k^3 x_l e^{ij}
// over unordered pairs k <= l satisfies Δτ* = -12 τ^(2), τ^(2) the quadratic
// part of τ. Summing over ordered pairs doubles the off-diagonal terms, so
// that variant is kept only for comparison.
//
// σ1* = σ0 + κ dτ* with κ = -1/(12γ), γ^{-1} the conformal factor of g_{σ0}(0),
// fixes the linear part of the gauged equation; pulling back by the inverse
// flow of V(σ0, σ1*) gives σ1 with
//   (Δ_{σ1}σ1 - η)(0) = 0,  ∇(Δ_{σ1}σ1 - η)(0) = 0,  σ1(0) = η(0).

#include "g2jet/deturck/linearize.hpp"
#include "g2jet/verify/claim.hpp"

namespace g2jet {

template <Field S>
using SecondJets = std::array<std::array<std::array<std::array<S, kDim>, kDim>, kDim>, kDim>;

enum class PairSum { ordered, unordered };

/// jets[i][j][k][l] = ∂²τ_ij/∂x_k∂x_l(0), 0-based, antisymmetric in (i, j).
template <Field S>
SecondJets<S> second_jets(const Form<S>& tau) {
  if (tau.degree() != 2) throw PreconditionFailed("second jets: expected a 2-form");
  if (tau.effective_order() < 2) throw InsufficientOrder("second jets need a 2-form known to order 2");
  SecondJets<S> out{};
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      const Jet<S>& c = tau.at(static_cast<Mask>(bit(i + 1) | bit(j + 1)));
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          Exponent e{};
          ++e[k];
          ++e[l];
          S v = c.coeff(e);
          if (k == l) v = S(lift<S>(2) * v);
          out[i][j][k][l] = v;
          out[j][i][k][l] = S(-v);
        }
    }
  return out;
}

template <Field S>
Form<S> build_tau_star(const SecondJets<S>& jets, int order, PairSum pairs = PairSum::unordered) {
  if (order < 4) throw PreconditionFailed("tau*: truncation order must be at least 4");
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < k; ++l)
          if (!(jets[i][j][k][l] == jets[i][j][l][k]))
            throw PreconditionFailed("tau*: second derivatives are not symmetric in (k, l)");
  Form<S> out(2, order);
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      std::vector<typename Jet<S>::Term> terms;
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          if (pairs == PairSum::unordered && l < k) continue;
          const S& v = jets[i][j][k][l];
          if (scalar_traits<S>::is_zero(v)) continue;
          Exponent e{};
          e[k] += 3;
          e[l] += 1;
          const S w = lift<S>(k == l ? Rational(1, 2) : Rational(2));
          terms.push_back({exponent_rank(e), S(w * v)});
        }
      out.at(static_cast<Mask>(bit(i + 1) | bit(j + 1))) = Jet<S>::from_terms(order, std::move(terms), order, true);
    }
  return out;
}

/// γ with g(0) = γ^{-1} I; throws if g(0) is not a multiple of the identity.
template <Field S>
S conformal_gamma(const MetricJet<S>& m) {
  const S g11 = m.g[0][0].eval0();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const S want = i == j ? g11 : S(lift<S>(0));
      if (!(m.g[i][j].eval0() == want)) throw PreconditionFailed("metric at the origin is not conformal to Euclidean");
    }
  return S(lift<S>(1) / g11);
}

template <Field S>
struct FirstOrderCorrection {
  Form<S> tau;       // h(Δ_{σ0}σ0 - η)
  Form<S> tau_star;  // unordered-pair quartic form
  S kappa{};
  Form<S> sigma1_star;
  VectorField<S> gauge;
  G2Structure<S> sigma1;
  ClaimList checks;
};

/// Positive η only: for η(0) = -c sigma_can no positive σ has σ(0) = -η(0) and
/// Δ_σσ(0) = η(0), since <Δ_σσ, σ>(0) = |δσ(0)|^2 >= 0 for closed σ.
template <Field S>
FirstOrderCorrection<S> build_sigma1(const G2Structure<S>& sigma0, const Form<S>& eta, int sign) {
  if (sign != 1)
    throw PreconditionFailed(
        "negative forms: Delta_sigma sigma(0) = eta(0) is incompatible with sigma(0) = -eta(0) "
        "because <Delta_sigma sigma, sigma>(0) = |delta sigma(0)|^2 >= 0");
  if (sigma0.sign() != 1) throw PreconditionFailed("sigma0 must be positive");
  if (eta.order() != sigma0.order()) throw OrderMismatch("sigma0 and eta have different orders");
  const int k = sigma0.order();
  if (k < 5) throw InsufficientOrder("first-order correction needs truncation order >= 5");
  FirstOrderCorrection<S> out;
  const Form<S> rho0 = sigma0.self_laplacian() - eta;
  if (!rho0.at_origin().is_zero()) throw PreconditionFailed("sigma0 does not solve the equation at the origin");
  out.tau = radial_homotopy(rho0);
  out.tau_star = build_tau_star(second_jets(out.tau), k);
  const S gamma = conformal_gamma(sigma0.metric());
  out.kappa = S(lift<S>(-1) / (lift<S>(12) * gamma));
  out.sigma1_star = sigma0.form() + out.kappa * d(out.tau_star).with_order(k);
  const G2Structure<S> star(out.sigma1_star);
  out.gauge = deturck_field(sigma0, star, sign, GaugeCoefficients::elliptic());
  out.sigma1 = G2Structure<S>(inverse_flow_pullback(out.gauge, out.sigma1_star));

  const Form<S> res = out.sigma1.self_laplacian() - eta;
  auto low = [](const Form<S>& a, int n) { return a.apply([n](const Jet<S>& c) { return c.truncate(n); }); };
  out.checks.push_back({"sigma1-equation-at-origin", "(Delta_sigma1 sigma1 - eta)(0) = 0", res.at_origin().is_zero(),
                        res.at_origin().to_string()});
  const Form<S> lin = low(res, 1) - res.at_origin();
  out.checks.push_back({"sigma1-gradient-at-origin", "grad(Delta_sigma1 sigma1 - eta)(0) = 0",
                        lin.is_zero() && res.effective_order() >= 1, lin.to_string()});
  out.checks.push_back({"sigma1-value-at-origin", "sigma1(0) = sign(eta) eta(0)",
                        out.sigma1.form().at_origin() == lift<S>(sign) * eta.at_origin(),
                        out.sigma1.form().at_origin().to_string()});
  for (auto& c : out.checks)
    if (c.pass) c.witness.clear();
  return out;
}

}  // namespace g2jet
