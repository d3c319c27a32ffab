#pragma once

// How Δ_σσ and g_σ scale under σ -> λσ, read off exactly by running the
// pipeline on Homogeneous scalars, cross-checked at λ = t^3 with t^9 = 2 and
// t^9 = 3 (λ^{1/3} = t keeps det^{1/9} in the field), and the constant λ that
// makes σ0 = λΘ satisfy
//   Δ_{σ0}σ0(0) = λ sigma_can(0) = σ0(0).
// If Δ_ΘΘ(0) = μ sigma_can(0), that needs λ^α μ = λ, i.e. λ = μ^{1/(1-α)}.

#include "g2jet/jets/homogeneous.hpp"
#include "g2jet/jets/radical.hpp"
#include "g2jet/solver/seed.hpp"
#include "g2jet/verify/claim.hpp"

namespace g2jet {

struct ScaleAudit {
  Rational alpha;            // Δ_{λσ}(λσ) = λ^alpha Δ_σσ
  Rational metric_exponent;  // g_{λσ} = λ^metric_exponent g_σ
  Rational theta_factor;     // Δ_θθ(0) = theta_factor sigma_can(0)
  Rational seed_factor;      // Δ_ΘΘ(0) = seed_factor sigma_can(0)
  std::optional<Rational> theta_lambda;
  std::optional<Rational> seed_lambda;
  ClaimList claims;
  std::vector<Finding> findings;
};

namespace detail {

/// c with a = c sigma_can(0), or nullopt if a(0) is not proportional to sigma_can.
template <Field S>
std::optional<S> sigma_can_multiple(const Form<S>& a) {
  const Form<S> s = sigma_can<S>(a.order());
  const S c = a.at(triple_mask({1, 2, 3})).eval0();
  if (!(a.at_origin() == c * s)) return std::nullopt;
  return c;
}

/// j/d when r = t^j, if r is a pure power of the generator.
inline std::optional<Rational> generator_exponent(const Radical& r, int d) {
  const auto& c = r.coefficients();
  std::optional<Rational> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    if (out || c[i] != 1) return std::nullopt;
    out = Rational(static_cast<long>(i), d);
  }
  if (out) out->canonicalize();
  return out;
}

/// λ = μ^{1/(1-α)} when it is rational.
inline std::optional<Rational> fixed_scale(const Rational& mu, const Rational& alpha) {
  if (sgn(mu) <= 0 || alpha == 1) return std::nullopt;
  return detail::rational_power(mu, Rational(1 / (1 - alpha)));
}

}  // namespace detail

/// The Homogeneous run and the radical oracle use Θ at order 2, which is all
/// the origin value of Δ needs.
inline ScaleAudit determine_scale(int sign = 1) {
  if (sign != 1 && sign != -1) throw PreconditionFailed("scale audit: sign must be +1 or -1");
  ScaleAudit a;
  const int k = 2;
  using H = Homogeneous<Rational>;
  const Form<Rational> seed = seed_form<Rational>(k);

  // exact exponents
  {
    const Form<H> lam = seed.map([](const Rational& c) { return H(c, Rational(1)); });
    const G2Structure<H> st(lam);
    const auto lap = st.self_laplacian().at_origin();
    const H c = lap.at(triple_mask({1, 2, 3})).eval0();
    a.alpha = c.exponent;
    a.metric_exponent = st.metric().g[0][0].eval0().exponent;
    H b = st.b()[0][0].eval0();
    a.claims.push_back({"scale-b-cubic", "B(lambda Theta) = lambda^3 B(Theta)", b.exponent == 3,
                        "exponent " + b.exponent.get_str()});
    a.claims.push_back({"scale-homogeneous-run",
                        "Delta_{lambda Theta}(lambda Theta)(0) is homogeneous in lambda of a single degree",
                        !lap.is_zero(), {}});
  }

  // oracle at λ = t^3, t^9 = r
  bool oracle = true, metric_law = true;
  std::string woracle, wmetric;
  const auto lap_seed = G2Structure<Rational>(seed).self_laplacian().at_origin();
  const Rational mu = detail::sigma_can_multiple(lap_seed).value_or(Rational(0));
  for (long r : {2L, 3L}) {
    RadicalField::Scope scope(RadicalField(9, Rational(r)));
    const Radical t = Radical::generator();
    const Radical lambda = t * t * t;
    const Form<Radical> lifted = seed.map([](const Rational& c) { return Radical(c); });
    const G2Structure<Radical> base(lifted);
    const G2Structure<Radical> scaled(lambda * lifted);
    const Radical num = scaled.self_laplacian().at_origin().at(triple_mask({1, 2, 3})).eval0();
    const Radical ratio = num / Radical(mu);
    const auto e = detail::generator_exponent(ratio, 3);
    if (!e || *e != a.alpha || !(scaled.self_laplacian().at_origin() == ratio * base.self_laplacian().at_origin())) {
      oracle = false;
      woracle = "lambda^3 = " + std::to_string(r) + ": ratio " + ratio.to_string();
    }
    const auto me = detail::generator_exponent(scaled.metric().g[0][0].eval0(), 3);
    if (!me || *me != a.metric_exponent) {
      metric_law = false;
      wmetric = "lambda^3 = " + std::to_string(r);
    }
    const Radical f = *scalar_traits<Radical>::rational_power(lambda, a.metric_exponent);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        if (!(scaled.metric().g[i][j] == f * base.metric().g[i][j])) {
          metric_law = false;
          wmetric = "lambda^3 = " + std::to_string(r) + ", entry " + std::to_string(i + 1) + std::to_string(j + 1);
        }
  }
  a.claims.push_back({"scale-exponent-oracle",
                      "Delta_{lambda Theta}(lambda Theta)(0) = lambda^alpha Delta_Theta Theta(0) at lambda^3 = 2 and lambda^3 = 3", oracle,
                      woracle});
  a.claims.push_back({"scale-metric-law", "g_{lambda sigma} = lambda^(2/3) g_sigma",
                      metric_law && a.metric_exponent == Rational(2, 3), wmetric});

  const auto lap_theta = G2Structure<Rational>(theta<Rational>(k, sign)).self_laplacian().at_origin();
  a.theta_factor = detail::sigma_can_multiple(lap_theta).value_or(Rational(0));
  a.seed_factor = mu;
  a.theta_lambda = detail::fixed_scale(Rational(sign) * a.theta_factor, a.alpha);
  a.seed_lambda = detail::fixed_scale(a.seed_factor, a.alpha);
  if (a.seed_lambda) {
    const Rational lam = *a.seed_lambda;
    const G2Structure<Rational> s0(lam * seed);
    const bool both = s0.self_laplacian().at_origin() == lam * sigma_can<Rational>(k) &&
                      s0.form().at_origin() == lam * sigma_can<Rational>(k);
    a.claims.push_back({"scale-seed-conditions",
                        "sigma0 = lambda Theta satisfies Delta_sigma0 sigma0(0) = sigma0(0) = lambda sigma_can(0)", both,
                        "lambda = " + lam.get_str()});
  } else {
    a.claims.push_back({"scale-seed-conditions", "a rational lambda exists for the corrected seed", false,
                        "mu = " + a.seed_factor.get_str()});
  }

  // 12^{2/3} with factor 12^{-1/3} = λ^α holds only for α = -1/2.
  const Rational printed_alpha(-1, 2);
  auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };
  a.findings = {
      {"alpha", a.alpha.get_str()},
      {"metric_exponent", a.metric_exponent.get_str()},
      {"theta_factor", a.theta_factor.get_str()},
      {"theta_lambda", a.theta_lambda ? a.theta_lambda->get_str() : "none"},
      {"seed_factor", a.seed_factor.get_str()},
      {"seed_lambda", a.seed_lambda ? a.seed_lambda->get_str() : "none"},
      {"lambda_12_power_2/3_consistent", yes_no(a.alpha == printed_alpha)},
      {"factor_12_power_-1/3_consistent", yes_no(a.alpha == printed_alpha)},
      {"alpha_implied_by_those_constants", printed_alpha.get_str()},
      {"lambda_if_theta_factor_were_12", "12^(3/2)"},
  };
  return a;
}

}  // namespace g2jet
