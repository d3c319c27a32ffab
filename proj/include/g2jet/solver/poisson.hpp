#pragma once

// Jet solutions of Δ_σσ = η for closed positive η with η(0) = c sigma_can(0).
//
// σ0 = c Θ(εx) with ε = c^{1/3}/2 solves the equation at the origin (the
// scale law Δ_{λσ}(λσ) = λ^{1/3}Δ_σσ and Δ_ΘΘ(0) = 4 sigma_can(0)). When c
// has no rational cube root the solve runs on m η with m = c^2 and divides
// the result by m^3. σ1 corrects σ0 to first order; then
//   F(ψ) = Δ_{σ1+ψ}(σ1+ψ) - (φ_V)^*η,  V = V(σ1, σ1 + ψ),
// is driven to valuation > k - 2 by ψ += L^{-1}F(ψ), where L = -F'(0) has
// principal part γΔ at the origin and is inverted by the graded solve. The
// outer residual is evaluated at order k + 1; the linear solves only need
// degrees <= k and run at order k; the ungauging pullback needs V through
// degree k + 1 and runs at order k + 2. The first-order conditions only involve
// σ1 through degree 3, so σ1 is built at order 5 and kept as a polynomial.
// Finally σ = (φ_V^{-1})^*(σ1 + ψ), which solves the ungauged equation
// because the Laplacian commutes with pullbacks.

#include <optional>

#include "g2jet/solver/first_order.hpp"
#include "g2jet/solver/right_inverse.hpp"
#include "g2jet/solver/seed.hpp"

namespace g2jet {

template <Field S>
struct PoissonProblem {
  Form<S> eta;
  int sign = 1;
  /// c with η(0) = c sign sigma_can(0), c > 0. Checked, never trusted.
  std::optional<S> normalization;
};

template <Field S>
struct JetSolution {
  Form<S> sigma;
  VectorField<S> gauge;
  Form<S> residual;  // Δ_σσ - η from a fresh evaluation
  int certified_valuation = 0;
  std::vector<int> outer_valuations;  // gauged residual before each step
  std::vector<GradedSolveTrace> inner;
  ClaimList claims;
  std::vector<Finding> findings;
};

/// c with η(0) = c sign sigma_can(0), if η(0) has that shape with c > 0.
template <Field S>
std::optional<S> detect_normalization(const Form<S>& eta, int sign) {
  const S c = S(lift<S>(sign) * eta.at(triple_mask({1, 2, 3})).eval0());
  if (scalar_traits<S>::sign(c) <= 0) return std::nullopt;
  if (!(eta.at_origin() == S(lift<S>(sign) * c) * sigma_can<S>(eta.order()))) return std::nullopt;
  return c;
}

/// c Θ(εx) with ε = c^{1/3}/2, which satisfies Δ_σ0σ0(0) = σ0(0) = c sigma_can(0).
/// Needs c^{1/3} in the scalar field.
template <Field S>
Form<S> normalized_seed(const S& c, int order) {
  const auto root = scalar_traits<S>::rational_power(c, Rational(1, 3));
  if (!root || scalar_traits<S>::sign(c) <= 0)
    throw NotRepresentable("normalized seed: no positive cube root of " + scalar_traits<S>::to_string(c));
  const S eps = S(*root / lift<S>(2));
  return c * dilate(seed_form<S>(order), S(lift<S>(1) / eps));
}

namespace detail {

template <Field S>
std::string valuation_string(int v) {
  return v >= Jet<S>::kInfiniteValuation ? std::string("inf") : std::to_string(v);
}

}  // namespace detail

template <Field S>
JetSolution<S> jet_poisson_solve(const PoissonProblem<S>& problem) {
  const Form<S>& eta_in = problem.eta;
  const int k = eta_in.order();
  if (eta_in.degree() != 3) throw PreconditionFailed("eta must be a 3-form");
  if (problem.sign != 1 && problem.sign != -1) throw PreconditionFailed("sign must be +1 or -1");
  if (!d(eta_in).is_zero()) throw PreconditionFailed("eta is not closed");
  if (k < 5) throw InsufficientOrder("the solve needs truncation order >= 5");
  if (!problem.normalization) {
    const Form<S> e0 = eta_in.at_origin();
    throw PreconditionFailed("normalization evidence missing: need eta(0) = c sign sigma_can(0) with c > 0, got eta(0) = " +
                             (e0.is_zero() ? std::string("0") : e0.to_string()));
  }
  const S c = *problem.normalization;
  if (scalar_traits<S>::sign(c) <= 0 || !(eta_in.at_origin() == S(lift<S>(problem.sign) * c) * sigma_can<S>(k)))
    throw PreconditionFailed("normalization evidence does not match eta(0)");
  if (problem.sign != 1)
    throw PreconditionFailed(
        "negative eta: Delta_sigma sigma(0) = eta(0) is incompatible with sigma(0) = -eta(0) "
        "because <Delta_sigma sigma, sigma>(0) = |delta sigma(0)|^2 >= 0");

  JetSolution<S> out;
  const int w = k + 1;
  const int k1 = 5;
  const int target = k - 2;

  S m = lift<S>(1);
  if (!scalar_traits<S>::rational_power(c, Rational(1, 3))) m = S(c * c);
  const S cm = S(m * c);
  const Form<S> eta = (m * eta_in).with_order(w);

  // σ0 and σ1
  const G2Structure<S> sigma0(normalized_seed(cm, k1));
  const FirstOrderCorrection<S> first = build_sigma1(sigma0, eta.with_order(k1), 1);
  append(out.claims, first.checks);
  if (!all_pass(first.checks)) throw PreconditionFailed("first-order correction failed its checks");
  const int e1 = first.sigma1.form().effective_order();
  if (e1 < 3) throw InsufficientOrder("sigma1 is known only to order " + std::to_string(e1));
  const G2Structure<S> sigma1(taylor_project(first.sigma1.form(), e1, TaylorMode::keep_low).as_exact().with_order(w));
  const S gamma = conformal_gamma(sigma1.metric());

  auto gauged = [&](const Form<S>& psi, VectorField<S>* v_out) {
    const G2Structure<S> star(sigma1.form() + psi);
    const VectorField<S> v = deturck_field(sigma1, star, 1, GaugeCoefficients::elliptic());
    if (v_out) *v_out = v;
    return Form<S>(star.self_laplacian() - flow_pullback(v, eta));
  };
  const G2Structure<S> sigma1_k(sigma1.form().with_order(k));
  const Form<S> eta_k = eta.with_order(k);
  const std::function<Form<S>(const Form<S>&)> op = [&](const Form<S>& delta) {
    const VectorField<S> dv = linearize_V(sigma1_k, sigma1_k, delta, 1, GaugeCoefficients::elliptic());
    return Form<S>(lie_derivative(dv, eta_k) - linearized_laplacian(sigma1_k, delta));
  };

  Form<S> psi(3, w);
  Form<S> res;
  for (int n = 0;; ++n) {
    res = gauged(psi, nullptr);
    const int v = res.certified_valuation();
    out.outer_valuations.push_back(std::min(v, k + 1));
    if (v > target) break;
    if (res.effective_order() < target)
      throw InsufficientOrder("gauged residual known only to order " + std::to_string(res.effective_order()) +
                              "; use a larger truncation order");
    if (n > k || (n > 0 && v <= out.outer_valuations[n - 1]))
      throw Stagnation("fixed-point iteration: gauged residual valuation stuck at " + std::to_string(v));
    GradedSolveTrace tr;
    const Form<S> delta = graded_linear_solve(op, res.with_order(k), gamma, &tr, target);
    psi = psi + taylor_project(delta, std::min(k, delta.effective_order()), TaylorMode::keep_low).as_exact().with_order(w);
    out.inner.push_back(std::move(tr));
  }
  const int gauged_val = res.certified_valuation();

  const Form<S> star = (sigma1.form() + psi).with_order(k + 2);
  const VectorField<S> v = deturck_field(G2Structure<S>(sigma1.form().with_order(k + 2)), G2Structure<S>(star), 1,
                                         GaugeCoefficients::elliptic());
  const Form<S> ungauged = inverse_flow_pullback(v, star);
  if (ungauged.effective_order() < k)
    throw InsufficientOrder("ungauged form known only to order " + std::to_string(ungauged.effective_order()));
  const S scale_back = S(lift<S>(1) / (m * m * m));
  out.sigma = scale_back * taylor_project(ungauged, k, TaylorMode::keep_low).as_exact().with_order(k);
  out.gauge = v.with_order(k);

  // certificate from scratch
  const G2Structure<S> fresh(out.sigma);
  out.residual = fresh.self_laplacian() - eta_in;
  out.certified_valuation = std::min(out.residual.certified_valuation(), k + 1);
  const int cv = out.certified_valuation;
  out.claims.push_back({"solution-closed", "d sigma = 0", d(out.sigma).is_zero(), d(out.sigma).to_string()});
  out.claims.push_back({"solution-positive", "sigma is positive at the origin", fresh.sign() == 1, {}});
  out.claims.push_back({"solution-residual", "valuation(Delta_sigma sigma - eta) > k - 2, recomputed from sigma",
                        cv > target, "certified valuation " + std::to_string(cv)});
  out.claims.push_back({"gauge-consistency",
                        "Delta_sigma* sigma* - (phi_V)^* eta and Delta_sigma sigma - eta both vanish through order k - 2",
                        gauged_val > target && cv > target,
                        "gauged " + detail::valuation_string<S>(gauged_val) + ", ungauged " + std::to_string(cv)});
  for (auto& x : out.claims)
    if (x.pass) x.witness.clear();

  std::string outer;
  for (int x : out.outer_valuations) outer += (outer.empty() ? "" : ",") + std::to_string(x);
  out.findings = {
      {"order", std::to_string(k)},
      {"working_order", std::to_string(w)},
      {"normalization", scalar_traits<S>::to_string(c)},
      {"rhs_multiplier", scalar_traits<S>::to_string(m)},
      {"gamma", scalar_traits<S>::to_string(gamma)},
      {"gamma_equals_one_twelfth", gamma == lift<S>(Rational(1, 12)) ? "yes" : "no"},
      {"outer_iterations", std::to_string(out.inner.size())},
      {"gauged_residual_valuations", outer},
      {"certified_residual_valuation", std::to_string(cv)},
  };
  return out;
}

}  // namespace g2jet
