#pragma once

// Inverting the flat Laplacian on jets.
//
// G solves Δw = q (Δ = -Σ∂²) degree by degree: for q homogeneous of degree d,
//   w = Σ_j c_j |x|^{2j+2} L^j q,   L = Σ∂²,
// with a_j = (2j + 2)(7 + 2d - 2j), c_0 = -1/a_0, c_j = -c_{j-1}/a_j, which
// follows from L(|x|^{2m} f) = |x|^{2m} Lf + 2m(2m + 5 + 2 deg f)|x|^{2m-2} f.
// R = d ∘ G ∘ h on closed forms (h the radial homotopy) is closed and satisfies
// ΔR = id, and the graded solve inverts γΔ + K when K ∘ R raises valuation.

#include <functional>
#include <vector>

#include "g2jet/forms/ops.hpp"

namespace g2jet {

template <Field S>
Jet<S> poly_laplace_inverse(const Jet<S>& q) {
  const int k = q.order();
  const int e = q.effective_order();
  Jet<S> r2(k);
  for (int i = 1; i <= kDim; ++i) {
    Exponent x{};
    x[i - 1] = 2;
    r2 = r2 + Jet<S>::monomial(k, x);
  }
  std::vector<std::vector<typename Jet<S>::Term>> parts(std::max(k - 1, 0));
  for (const auto& t : q.terms()) {
    const int deg = rank_degree(t.rank);
    if (deg <= k - 2) parts[deg].push_back(t);
  }
  Jet<S> out(k);
  for (int deg = 0; deg <= std::min(e, k - 2); ++deg) {
    if (parts[deg].empty()) continue;
    Jet<S> f = Jet<S>::from_terms(k, parts[deg], k, true);
    Jet<S> rp = r2;
    S c = S(lift<S>(-1) / lift<S>(2L * (kDim + 2 * deg)));
    for (int j = 0;; ++j) {
      out = out + c * (rp * f);
      f = -laplacian_euclid(f);
      if (f.is_zero()) break;
      rp = rp * r2;
      const long a = (2L * j + 4) * (kDim + 2L * deg - 2L * j - 2);
      c = S(-c / lift<S>(a));
    }
  }
  if (q.is_exact() && q.max_degree() <= k - 2) return out;
  return out.with_effective_order(std::min(e + 2, k));
}

/// d(G(h(φ))) with every jet of degree <= kill_order removed (kill_order < 0 keeps all).
template <Field S>
Form<S> right_inverse_jet(const Form<S>& phi, int kill_order = -1) {
  if (phi.degree() == 0) throw PreconditionFailed("right inverse: 0-forms are not in the domain");
  if (!d(phi).is_zero()) throw PreconditionFailed("right inverse: input is not closed");
  const int k = phi.order();
  Form<S> h = radial_homotopy(phi);
  Form<S> g = h.apply([](const Jet<S>& c) { return poly_laplace_inverse(c); });
  Form<S> out = d(g).with_order(k);
  if (kill_order >= 0) out = taylor_project(out, kill_order, TaylorMode::kill_low);
  return out;
}

struct GradedSolveTrace {
  std::vector<int> residual_valuations;
};

/// Solves L ψ = φ for L = γΔ + K given as a black box on closed forms, by
/// ψ_{n+1} = ψ_n + γ^{-1} R(φ - L ψ_n). The residual's certified valuation must
/// rise at every step; the loop ends once it exceeds the residual's effective
/// order, or `target` when that is given.
template <Field S>
Form<S> graded_linear_solve(const std::function<Form<S>(const Form<S>&)>& op, const Form<S>& phi, const S& gamma,
                            GradedSolveTrace* trace = nullptr, int target = -1) {
  if (!d(phi).is_zero()) throw PreconditionFailed("graded solve: right-hand side is not closed");
  const S inv = S(lift<S>(1) / gamma);
  const int k = phi.order();
  Form<S> psi(phi.degree(), k);
  Form<S> res = phi;
  int last = -1;
  for (int n = 0;; ++n) {
    const int v = res.certified_valuation();
    if (trace) trace->residual_valuations.push_back(std::min(v, k + 1));
    if (v > res.effective_order() || (target >= 0 && v > target)) break;
    if (v <= last || n > k + 2)
      throw Stagnation("graded solve: residual valuation stuck at degree " + std::to_string(v));
    last = v;
    psi = psi + inv * right_inverse_jet(res);
    res = phi - op(psi);
  }
  return psi;
}

}  // namespace g2jet
