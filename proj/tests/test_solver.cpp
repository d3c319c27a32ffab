#include <gtest/gtest.h>

#include "g2jet/solver/first_order.hpp"
#include "g2jet/solver/pointsolve.hpp"
#include "g2jet/solver/right_inverse.hpp"
#include "g2jet/solver/scale.hpp"
#include "g2jet/verify/random.hpp"
#include "support.hpp"

using namespace g2jet;
using testing_support::agree;
using testing_support::ex;
using F = Form<Rational>;
using J = Jet<Rational>;
using G = G2Structure<Rational>;

namespace {

J r_squared(int k) {
  J r(k);
  for (int i = 0; i < kDim; ++i) {
    Exponent e{};
    e[i] = 2;
    r = r + J::monomial(k, e);
  }
  return r;
}

const Claim* find_claim(const ClaimList& c, const std::string& id) {
  for (const auto& x : c)
    if (x.id == id) return &x;
  return nullptr;
}

}  // namespace

TEST(Seed, ThetaValues) {
  const F th = theta<Rational>(4, 1);
  EXPECT_EQ(th.at_origin(), sigma_can<Rational>(4));
  EXPECT_TRUE(d(th).is_zero());
  EXPECT_TRUE(d(theta<Rational>(4, -1)).is_zero());
  const J want = J::constant(4, Rational(1)) - J::monomial(4, ex({2})) - J::monomial(4, ex({0, 2})) -
                 J::monomial(4, ex({0, 0, 2}));
  EXPECT_EQ(th.at(triple_mask({1, 2, 3})), want);
}

TEST(Seed, CorrectedSeedIsClosedWithLaplacianFourSigmaCan) {
  const F s = seed_form<Rational>(3);
  EXPECT_TRUE(s.is_exact());
  EXPECT_TRUE(d(s).is_zero());
  EXPECT_EQ(s.at_origin(), sigma_can<Rational>(3));
  EXPECT_EQ(G(s).self_laplacian().at_origin(), Rational(kSeedFactor) * sigma_can<Rational>(3));
}

TEST(PointSolve, ObservedClaimPattern) {
  for (int sign : {1, -1}) {
    const ClaimList c = verify_pointsolve(sign, 4);
    const std::string tag = sign > 0 ? "" : "-negative";
    for (const auto& x : c) {
      const bool expected_fail = x.id == "star-three-forms" + tag || x.id == "star-reduction" + tag ||
                                 x.id == "delta-theta-at-origin" + tag;
      EXPECT_EQ(x.pass, !expected_fail) << x.id << ": " << x.witness;
    }
    const Claim* lap = find_claim(c, "delta-theta-at-origin" + tag);
    ASSERT_NE(lap, nullptr);
    EXPECT_EQ(lap->witness, "Delta_theta theta(0) = 0");
  }
}

TEST(TauStar, DiagonalSecondDerivative) {
  SecondJets<Rational> jets{};
  jets[0][1][2][2] = 1;
  jets[1][0][2][2] = -1;
  const F t = build_tau_star(jets, 4);
  F want(2, 4);
  want.at(static_cast<Mask>(bit(1) | bit(2))) = J::monomial(4, ex({0, 0, 4}), Rational(1, 2));
  EXPECT_EQ(t, want);
}

TEST(TauStar, MixedSecondDerivative) {
  SecondJets<Rational> jets{};
  for (auto [k, l] : {std::pair{2, 3}, std::pair{3, 2}}) {
    jets[0][1][k][l] = 1;
    jets[1][0][k][l] = -1;
  }
  const Mask m = static_cast<Mask>(bit(1) | bit(2));
  const J both = J::monomial(4, ex({0, 0, 3, 1}), Rational(2)) + J::monomial(4, ex({0, 0, 1, 3}), Rational(2));
  EXPECT_EQ(build_tau_star(jets, 4, PairSum::ordered).at(m), both);
  // one unordered pair {3, 4} contributes only x3^3 x4
  EXPECT_EQ(build_tau_star(jets, 4).at(m), J::monomial(4, ex({0, 0, 3, 1}), Rational(2)));
}

TEST(TauStar, ZeroAndAsymmetricInput) {
  SecondJets<Rational> jets{};
  EXPECT_TRUE(build_tau_star(jets, 4).is_zero());
  jets[0][1][2][3] = 1;
  EXPECT_THROW(build_tau_star(jets, 4), PreconditionFailed);
}

TEST(TauStar, LaplacianIsMinusTwelveTimesQuadraticPart) {
  Rng rng(21);
  for (int n = 0; n < 5; ++n) {
    const F tau = rng.form(2, 4, 3, 2, 2);
    const F ts = build_tau_star(second_jets(tau), 4);
    EXPECT_TRUE(agree(laplacian_euclid(ts), Rational(-12) * tau, 2)) << n;
  }
}

TEST(PolyLaplaceInverse, Examples) {
  const int k = 6;
  EXPECT_EQ(poly_laplace_inverse(J::constant(k, Rational(1))), Rational(-1, 14) * r_squared(k));
  const J x1 = J::variable(k, 1);
  EXPECT_EQ(poly_laplace_inverse(x1), Rational(-1, 18) * (x1 * r_squared(k)));
  EXPECT_TRUE(poly_laplace_inverse(J(k)).is_zero());
}

TEST(PolyLaplaceInverse, InvertsLaplacianOnRandomPolynomials) {
  Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const int deg = static_cast<int>(rng.uniform(0, 6));
    const int k = deg + 2;
    const J q = rng.jet(k, 3, deg, deg).as_exact();
    const J w = poly_laplace_inverse(q);
    EXPECT_EQ(laplacian_euclid(w).as_exact(), q) << n;
  }
}

TEST(RightInverse, ClosedAndInvertsLaplacian) {
  Rng rng(5);
  const int k = 6;
  for (int n = 0; n < 100; ++n) {
    const F phi = rng.closed_form(3, k, 3, 1, k - 2);
    const F r = right_inverse_jet(phi);
    EXPECT_TRUE(d(r).is_zero()) << n;
    EXPECT_TRUE(agree(laplacian_euclid(r), phi, k - 2)) << n;
  }
  EXPECT_TRUE(right_inverse_jet(F(3, k)).is_zero());
  EXPECT_THROW(right_inverse_jet(J::variable(k, 4) * F::basis(k, {1, 2, 3})), PreconditionFailed);
}

TEST(RightInverse, QuadraticSample) {
  const int k = 6;
  const F phi = J::monomial(k, ex({2})) * F::basis(k, {1, 2, 3});
  ASSERT_TRUE(d(phi).is_zero());
  EXPECT_TRUE(agree(laplacian_euclid(right_inverse_jet(phi)), phi, k - 2));
}

TEST(RightInverse, KillOrderRemovesLowJets) {
  Rng rng(8);
  const int k = 6;
  const F phi = rng.closed_form(3, k, 3, 1, 3);
  const F r = right_inverse_jet(phi, 2);
  EXPECT_GE(r.valuation(), 3);
  EXPECT_TRUE(d(r).is_zero());
}

TEST(GradedSolve, ZeroPerturbationIsOneStep) {
  Rng rng(9);
  const int k = 6;
  const Rational gamma(1, 4);
  const F phi = rng.closed_form(3, k, 3, 0, k - 2);
  const std::function<F(const F&)> op = [&](const F& x) { return gamma * laplacian_euclid(x); };
  GradedSolveTrace tr;
  const F psi = graded_linear_solve(op, phi, gamma, &tr);
  EXPECT_EQ(psi, Rational(4) * right_inverse_jet(phi));
  EXPECT_TRUE(agree(op(psi), phi, k - 2));
  EXPECT_EQ(tr.residual_valuations.size(), 2u);
}

TEST(GradedSolve, ValuationRaisingPerturbation) {
  Rng rng(10);
  const int k = 6;
  // K = x1 * (flat Laplacian) raises valuation by one
  const J x1 = J::variable(k, 1);
  const std::function<F(const F&)> op = [&](const F& x) {
    const F l = laplacian_euclid(x);
    return l + d(radial_homotopy(x1 * l)).with_order(k);
  };
  for (int n = 0; n < 5; ++n) {
    const F phi = rng.closed_form(3, k, 3, 0, 3);
    GradedSolveTrace tr;
    const F psi = graded_linear_solve(op, phi, Rational(1), &tr);
    EXPECT_TRUE(d(psi).is_zero());
    EXPECT_TRUE(agree(op(psi), phi, k - 2)) << n;
    for (std::size_t i = 1; i < tr.residual_valuations.size(); ++i)
      EXPECT_GT(tr.residual_valuations[i], tr.residual_valuations[i - 1]);
    EXPECT_LE(tr.residual_valuations.size(), static_cast<std::size_t>(k + 1));
  }
}

TEST(GradedSolve, StagnationIsReported) {
  const int k = 5;
  const std::function<F(const F&)> op = [](const F& x) { return F(x.degree(), x.order()); };
  EXPECT_THROW(graded_linear_solve(op, sigma_can<Rational>(k), Rational(1)), Stagnation);
}

TEST(Scale, Audit) {
  const ScaleAudit a = determine_scale(1);
  for (const auto& c : a.claims) EXPECT_TRUE(c.pass) << c.id << ": " << c.witness;
  EXPECT_EQ(a.alpha, Rational(1, 3));
  EXPECT_EQ(a.metric_exponent, Rational(2, 3));
  EXPECT_EQ(a.theta_factor, Rational(0));
  EXPECT_FALSE(a.theta_lambda.has_value());
  ASSERT_TRUE(a.seed_lambda.has_value());
  EXPECT_EQ(*a.seed_lambda, Rational(8));
}

TEST(FirstOrder, Sigma1ConditionsOnRandomEta) {
  Rng rng(13);
  const int k = 5;
  const G s0(Rational(8) * seed_form<Rational>(k));
  for (int n = 0; n < 2; ++n) {
    const F eta = Rational(8) * sigma_can<Rational>(k) + rng.closed_form(3, k, 2, 1, k - 2, 30);
    const auto c = build_sigma1(s0, eta, 1);
    for (const auto& x : c.checks) EXPECT_TRUE(x.pass) << x.id << ": " << x.witness;
    EXPECT_TRUE(d(c.sigma1.form()).is_zero());
  }
  EXPECT_THROW(build_sigma1(s0, Rational(8) * sigma_can<Rational>(k), -1), PreconditionFailed);
}
