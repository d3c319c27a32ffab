#pragma once

// Exact audit of the quadratic form θ: its metric to second order, the Hodge
// star expansions, and the value of Δ_θ θ at the origin, each as a claim.
// With s = sign, θ has coefficients 1 - s q_ijk and the claims are the
// corresponding second-order statements with s_i = -2 s x_i^2.

#include "g2jet/g2/hodge.hpp"
#include "g2jet/solver/seed.hpp"
#include "g2jet/verify/claim.hpp"

namespace g2jet {

namespace detail {

template <Field S>
std::string first_difference(const Form<S>& a, const Form<S>& b, int n) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!agree_to(a[i], b[i], n))
      return mask_to_string(a.mask_at(i)) + ": got " + a[i].truncate(n).to_string() + ", expected " +
             b[i].truncate(n).to_string();
  return {};
}

template <Field S>
Jet<S> square_sum(int order, Mask m) {
  Jet<S> q(order);
  for (int i : mask_indices(m)) {
    Exponent e{};
    e[i - 1] = 2;
    q = q + Jet<S>::monomial(order, e);
  }
  return q;
}

}  // namespace detail

template <Field S = Rational>
ClaimList verify_pointsolve(int sign = 1, int order = 4) {
  if (sign != 1 && sign != -1) throw PreconditionFailed("pointsolve: sign must be +1 or -1");
  if (order < 4) throw PreconditionFailed("pointsolve needs truncation order >= 4");
  using J = Jet<S>;
  using F = Form<S>;
  const int k = order;
  const S s = lift<S>(sign);
  const std::string tag = sign > 0 ? "" : "-negative";
  ClaimList out;
  auto add = [&](std::string id, std::string statement, bool pass, std::string witness = {}) {
    out.push_back({id + tag, std::move(statement), pass, pass ? std::string() : std::move(witness)});
  };

  const F th = theta<S>(k, sign);
  add("theta-closed", "d theta = 0", d(th).is_zero(), d(th).to_string());
  add("theta-at-origin", "theta(0) = sigma_can(0)", th.at_origin() == sigma_can<S>(k));

  const G2Structure<S> st(th);
  const auto& g = st.metric();
  const J one = J::constant(k, lift<S>(1));
  const J r2 = detail::square_sum<S>(k, kFullMask);

  bool diag = true;
  std::string wdiag;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (i != j && !agree_to(g.g[i][j], J(k), 2)) {
        diag = false;
        wdiag = "g_" + std::to_string(i + 1) + std::to_string(j + 1) + " = " + g.g[i][j].to_string();
      }
  add("metric-diagonal", "g_theta is diagonal through second order", diag, wdiag);

  bool origin = true, linear = true, quad = true;
  J ssum(k);
  std::string wl, wq;
  for (int i = 0; i < kDim; ++i) {
    const J& gi = g.g[i][i];
    if (!(gi.eval0() == lift<S>(1))) origin = false;
    const J li = gi.truncate(1).kill_low(0);
    const J si = gi.truncate(2).kill_low(1);
    if (!li.is_zero()) {
      linear = false;
      wl = "l_" + std::to_string(i + 1) + " = " + li.to_string();
    }
    Exponent e{};
    e[i] = 2;
    const J want = J::monomial(k, e, S(lift<S>(-2) * s));
    if (!agree_to(si, want, 2)) {
      quad = false;
      wq = "s_" + std::to_string(i + 1) + " = " + si.to_string();
    }
    ssum = ssum + si;
  }
  add("metric-at-origin", "g_theta(0) is the Euclidean metric", origin);
  add("metric-linear-terms", "l_i = 0 for every i", linear, wl);
  add("metric-quadratic-terms", "s_i = -2 s x_i^2 for every i", quad, wq);
  add("metric-quadratic-trace", "s_1 + ... + s_7 = -2 s |x|^2", agree_to(ssum, S(lift<S>(-2) * s) * r2, 2),
      ssum.to_string());
  {
    const J want = one + lift<S>(Rational(1, 2)) * ssum;
    add("volume-expansion", "vol_theta = (1 + (s_1 + ... + s_7)/2 + O(|x|^3)) e^{1234567}",
        agree_to(g.vol, want, 2), g.vol.truncate(2).to_string());
  }

  bool bdiag = true;
  std::string wb;
  for (int i = 1; i <= kDim; ++i) {
    const F ci = contract_basis(i, th);
    const J top = top_coefficient(wedge(wedge(ci, ci), th));
    Exponent e{};
    e[i - 1] = 2;
    const J want = lift<S>(6) * (one - s * (r2 + J::monomial(k, e, lift<S>(2))));
    if (!agree_to(top, want, 2)) {
      bdiag = false;
      wb = "i = " + std::to_string(i) + ": " + top.truncate(2).to_string();
    }
  }
  add("b-diagonal-expansion", "(e_i _| theta) ^ (e_i _| theta) ^ theta = (6(1 - s|x|^2 - 2s x_i^2) + O(|x|^3)) e^{1234567}",
      bdiag, wb);

  bool five = true;
  std::string w5;
  for (Mask m : MaskTable::get().masks(5)) {
    const F a = F::basis(k, mask_indices(m));
    std::string w = detail::first_difference(hodge_star(g, a), hodge_star_euclid(a), 1);
    if (!w.empty()) {
      five = false;
      w5 = mask_to_string(m) + " -> " + w;
    }
  }
  add("star-five-forms", "star_theta e^{ijklm} = (1 + O(|x|^2)) e^{pq}", five, w5);

  // Two candidate expansions of star_theta e^{ijk}: the quotient g_I / g_{I^c}
  // under the square root, and its reciprocal (the diagonal-metric star).
  bool three = true, three_recip = true;
  std::string w3, w3r;
  for (Mask m : MaskTable::get().masks(3)) {
    const F a = F::basis(k, mask_indices(m));
    const F star = hodge_star(g, a);
    const J q = detail::square_sum<S>(k, m) - detail::square_sum<S>(k, static_cast<Mask>(kFullMask & ~m));
    std::string w = detail::first_difference(star, (one - s * q) * hodge_star_euclid(a), 2);
    if (!w.empty() && three) {
      three = false;
      w3 = mask_to_string(m) + " -> " + w;
    }
    std::string wr = detail::first_difference(star, (one + s * q) * hodge_star_euclid(a), 2);
    if (!wr.empty() && three_recip) {
      three_recip = false;
      w3r = mask_to_string(m) + " -> " + wr;
    }
  }
  add("star-three-forms",
      "star_theta e^{ijk} = (1 - s(x_i^2 + x_j^2 + x_k^2) + s(x_a^2 + x_b^2 + x_c^2 + x_d^2) + O(|x|^3)) e^{abcd}", three,
      w3);
  add("star-three-forms-reciprocal",
      "star_theta e^{ijk} = (1 + s(x_i^2 + x_j^2 + x_k^2) - s(x_a^2 + x_b^2 + x_c^2 + x_d^2) + O(|x|^3)) e^{abcd}",
      three_recip, w3r);

  F tilde(3, k);
  for (const auto& [t, c] : canonical_triples()) {
    const J f = one - lift<S>(2) * s * detail::square_sum<S>(k, triple_mask(t));
    tilde.at(triple_mask(t)) = c > 0 ? f : -f;
  }
  const F star_th = hodge_star(g, th);
  {
    const F lhs = d(star_th);
    const F rhs = d(hodge_star_euclid(tilde));
    add("star-reduction", "d star_theta theta = d star theta~ + O(|x|^2), theta~_ijk = 1 - 2s q_ijk",
        agree_to(lhs, rhs, 1), detail::first_difference(lhs, rhs, 1));
  }
  {
    const F lhs = d(hodge_star(g, d(star_th))).at_origin();
    const F rhs = d(hodge_star_euclid(d(star_th))).at_origin();
    add("flat-star-at-origin", "(d star_theta d star_theta theta)(0) = (d star d star_theta theta)(0)", lhs == rhs,
        detail::first_difference(lhs, rhs, 0));
  }
  {
    const F lap = laplacian_euclid(tilde).at_origin();
    const F want = lift<S>(12) * s * sigma_can<S>(k);
    add("flat-laplacian-theta-tilde", "(Delta_g theta~)(0) = 12 s sigma_can(0)", lap == want,
        detail::first_difference(lap, want, 0));
  }
  {
    const F lap = st.self_laplacian().at_origin();
    const F want = lift<S>(12) * s * sigma_can<S>(k);
    add("delta-theta-at-origin", "(Delta_theta theta)(0) = 12 s sigma_can(0)", lap == want,
        "Delta_theta theta(0) = " + (lap.is_zero() ? std::string("0") : lap.to_string()));
  }
  {
    const F lap = G2Structure<S>(seed_form<S>(k)).self_laplacian().at_origin();
    const F want = lift<S>(kSeedFactor) * sigma_can<S>(k);
    if (sign > 0)
      add("seed-self-laplacian-at-origin", "(Delta_Theta Theta)(0) = 4 sigma_can(0) for the corrected seed",
          lap == want, detail::first_difference(lap, want, 0));
  }
  return out;
}

}  // namespace g2jet
