#include <gtest/gtest.h>

#include "g2jet/deturck/linearize.hpp"
#include "g2jet/jets/radical.hpp"
#include "g2jet/verify/random.hpp"
#include "support.hpp"

using namespace g2jet;
using testing_support::agree;
using testing_support::ex;
using F = Form<Rational>;
using J = Jet<Rational>;
using VF = VectorField<Rational>;
using G = G2Structure<Rational>;

namespace {

const GaugeCoefficients kElliptic = GaugeCoefficients::elliptic();

::testing::AssertionResult field_agree(const VF& a, const VF& b) {
  for (int i = 0; i < kDim; ++i) {
    auto r = agree(a.comp[i], b.comp[i]);
    if (!r) return r << " in component " << i + 1;
  }
  return ::testing::AssertionSuccess();
}

/// A closed form positive at the origin: sigma_can plus a small closed perturbation.
F closed_positive(Rng& rng, int k, int lo = 1) {
  return sigma_can<Rational>(k) + Rational(1, 3) * rng.closed_form(3, k, 2, lo, k, 30);
}

VF random_field(Rng& rng, int k, int lo) {
  VF v(k);
  for (int i = 0; i < kDim; ++i)
    if (rng.coin(60)) v.comp[i] = rng.jet(k, 2, lo, k);
  return v;
}

}  // namespace

TEST(Christoffel, EuclideanMetricIsFlat) {
  auto gam = christoffels(MetricJet<Rational>::euclidean(3));
  for (const auto& a : gam)
    for (const auto& b : a)
      for (const auto& c : b) EXPECT_TRUE(c.is_zero());
}

TEST(Christoffel, SymmetricAndMetricCompatible) {
  Rng rng(11);
  for (int n = 0; n < 4; ++n) {
    auto m = rng.metric(3, 2);
    auto gam = christoffels(m);
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) EXPECT_EQ(gam[k][i][j], gam[k][j][i]);
    // ∂_k g_ij = Γ^l_{ki} g_lj + Γ^l_{kj} g_il
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
          J rhs(3);
          for (int l = 0; l < kDim; ++l) rhs = rhs + gam[l][k][i] * m.g[l][j] + gam[l][k][j] * m.g[i][l];
          EXPECT_TRUE(agree(m.g[i][j].partial(k + 1), rhs, 2));
        }
  }
}

TEST(Christoffel, ThetaMetricFirstJet) {
  // g_θ = diag(1 - 2x_i^2) + O(|x|^3), so the only linear parts are Γ^i_{ii} = -2x_i.
  auto gam = christoffels(G(theta<Rational>(4)).metric());
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        J want(4);
        if (i == k && j == k) want = J::variable(4, k + 1, Rational(-2));
        EXPECT_TRUE(agree_to(gam[k][i][j], want, 1)) << k << i << j;
      }
}

TEST(GaugeField, VanishesOnEqualStructures) {
  Rng rng(12);
  for (int n = 0; n < 3; ++n) {
    G z(closed_positive(rng, 3));
    for (int sign : {1, -1}) {
      EXPECT_TRUE(deturck_field(z, z, sign).is_zero());
      EXPECT_TRUE(deturck_field(z, z, sign, kElliptic).is_zero());
    }
  }
}

TEST(GaugeField, LinearInConnectionDifference) {
  Rng rng(13);
  G z(closed_positive(rng, 3));
  G p(closed_positive(rng, 3));
  auto t = connection_difference(christoffels(z.metric()), christoffels(p.metric()));
  auto t2 = t;
  for (auto& a : t2)
    for (auto& b : a)
      for (auto& c : b) c = Rational(2) * c;
  EXPECT_TRUE(field_agree(deturck_field(t2, p.metric(), 1), Rational(2) * deturck_field(t, p.metric(), 1)));
  EXPECT_TRUE(field_agree(deturck_field(t, p.metric(), -1), -deturck_field(t, p.metric(), 1)));
}

TEST(GaugeField, StructuresAgreeingToSecondOrderGiveQuadraticField) {
  Rng rng(14);
  F z = closed_positive(rng, 4);
  F p = z + rng.closed_form(3, 4, 2, 3, 4, 40);
  auto v = deturck_field(G(z), G(p), 1);
  EXPECT_GE(v.certified_valuation(), 2);
}

TEST(GaugeField, RejectsNegativeStructures) {
  G neg(-sigma_can<Rational>(2));
  G pos(sigma_can<Rational>(2));
  EXPECT_THROW(deturck_field(neg, pos, 1), PreconditionFailed);
  EXPECT_THROW(deturck_field(pos, pos, 0), PreconditionFailed);
}

TEST(Lie, Examples) {
  const int k = 3;
  F a = J::variable(k, 1) * F::basis(k, {2, 3});
  EXPECT_EQ(lie_derivative(VF::constant(k, 1), a), F::basis(k, {2, 3}));
  EXPECT_TRUE(lie_derivative(VF(k), a).is_zero());
  // the radial field scales x^a e^I by |a| + deg I
  F b = J::monomial(k, ex({0, 1, 1})) * F::basis(k, {1, 4});
  EXPECT_EQ(lie_derivative(VF::radial(k), b).with_order(k), Rational(4) * b);
}

TEST(Lie, CommutesWithD) {
  Rng rng(15);
  for (int n = 0; n < 10; ++n) {
    auto v = random_field(rng, 4, 0);
    F a = rng.form(static_cast<int>(rng.uniform(0, 6)), 4, 2);
    EXPECT_TRUE(agree(d(lie_derivative(v, a)), lie_derivative(v, d(a))));
  }
}

TEST(Flow, ZeroFieldIsIdentity) {
  Rng rng(16);
  F a = rng.form(3, 4, 3);
  EXPECT_EQ(flow_pullback(VF(4), a), a);
}

TEST(Flow, InverseFlowUndoesFlow) {
  Rng rng(17);
  for (int n = 0; n < 5; ++n) {
    auto v = random_field(rng, 5, 2);
    F a = rng.form(3, 5, 3);
    EXPECT_TRUE(agree(flow_pullback(v, inverse_flow_pullback(v, a)), a, 5));
    EXPECT_TRUE(agree(inverse_flow_pullback(v, flow_pullback(v, a)), a, 5));
  }
}

TEST(Flow, FixesOriginAndClosedness) {
  Rng rng(18);
  for (int n = 0; n < 5; ++n) {
    auto v = random_field(rng, 5, 2);
    F a = rng.closed_form(3, 5, 3);
    F b = flow_pullback(v, a);
    EXPECT_EQ(b.at_origin(), a.at_origin());
    EXPECT_TRUE(d(b).is_zero());
  }
}

TEST(Flow, TimeTwoIsFlowTwice) {
  Rng rng(19);
  auto v = random_field(rng, 5, 2);
  F a = rng.form(2, 5, 3);
  EXPECT_TRUE(agree(flow_pullback(Rational(2) * v, a), flow_pullback(v, flow_pullback(v, a)), 5));
}

TEST(Flow, DerivativeInTimeIsLieDerivative) {
  Rng rng(20);
  auto v = random_field(rng, 4, 2);
  F a = rng.form(3, 4, 3);
  VectorField<Dual<Rational>> tv = to_dual(VF(4), v);
  auto moved = flow_pullback(tv, to_dual(a));
  EXPECT_TRUE(agree(re_part(moved), a, 4));
  EXPECT_TRUE(agree(eps_part(moved), lie_derivative(v, a), 3));
}

TEST(Flow, RefusesFieldsNotVanishingToSecondOrder) {
  VF v(3);
  v.comp[0] = J::variable(3, 2);
  EXPECT_THROW(flow_pullback(v, sigma_can<Rational>(3)), PreconditionFailed);
}

TEST(LinearizeV, ZeroAndHomogeneity) {
  Rng rng(21);
  G z(closed_positive(rng, 3));
  G p(closed_positive(rng, 3));
  F psi = rng.closed_form(3, 3, 2, 1, 3, 40);
  EXPECT_TRUE(linearize_V(z, p, F(3, 3), 1).is_zero());
  EXPECT_TRUE(field_agree(linearize_V(z, p, Rational(2) * psi, 1), Rational(2) * linearize_V(z, p, psi, 1)));
}

TEST(LinearizeV, DependsOnFirstJetOfPsiAtOrigin) {
  Rng rng(22);
  G z(closed_positive(rng, 3));
  G p(closed_positive(rng, 3));
  F psi = rng.closed_form(3, 3, 2, 0, 3, 40);
  F psi2 = psi + rng.closed_form(3, 3, 2, 2, 3, 40);
  auto a = linearize_V(z, p, psi, 1);
  auto b = linearize_V(z, p, psi2, 1);
  for (int i = 0; i < kDim; ++i) EXPECT_EQ(a.comp[i].eval0(), b.comp[i].eval0());
}

TEST(LinearizedLaplacian, ZeroClosedAndAdditive) {
  Rng rng(23);
  G p(closed_positive(rng, 4));
  F psi1 = rng.closed_form(3, 4, 2, 1, 4, 30);
  F psi2 = rng.closed_form(3, 4, 2, 1, 4, 30);
  EXPECT_TRUE(linearized_laplacian(p, F(3, 4)).is_zero());
  F l1 = linearized_laplacian(p, psi1);
  EXPECT_TRUE(d(l1).is_zero());
  EXPECT_TRUE(agree(linearized_laplacian(p, psi1 + psi2), l1 + linearized_laplacian(p, psi2)));
}

TEST(PsiMap, ClosedAndFirstOrder) {
  Rng rng(24);
  const int k = 4;
  G p(closed_positive(rng, k));
  G z(closed_positive(rng, k));
  for (int v : {2, 3}) {
    F psi = rng.closed_form(3, k, 2, v, k, 40);
    ASSERT_EQ(psi.valuation(), v);
    for (int sign : {1, -1}) {
      F out = psi_map(z, p, psi, sign, kElliptic);
      EXPECT_TRUE(d(out).is_zero());
      EXPECT_GE(out.valuation(), v - 1);
    }
  }
}

TEST(PsiMap, PrintedGaugeLeavesSecondOrderPart) {
  Rng rng(24);
  const int k = 4;
  G p(closed_positive(rng, k));
  G z(closed_positive(rng, k));
  F psi = rng.closed_form(3, k, 2, 2, k, 40);
  EXPECT_EQ(psi_map(z, p, psi, 1).valuation(), 0);
}

TEST(PsiMap, GaugeReferenceOnlyEntersThroughTheGaugeTerm) {
  Rng rng(25);
  const int k = 3;
  G p(closed_positive(rng, k));
  G z1(closed_positive(rng, k));
  G z2(closed_positive(rng, k));
  F psi = rng.closed_form(3, k, 2, 1, k, 40);
  for (int sign : {1, -1}) {
    F sum1 = psi_map(z1, p, psi, sign, kElliptic) + Rational(sign) * d(interior(linearize_V(z1, p, psi, sign, kElliptic), p.form()));
    F sum2 = psi_map(z2, p, psi, sign, kElliptic) + Rational(sign) * d(interior(linearize_V(z2, p, psi, sign, kElliptic), p.form()));
    EXPECT_TRUE(agree(sum1, sum2));
  }
}

TEST(PsiMap, PrincipalPartAtOriginForCubeScale) {
  // φ(0) = 8 sigma_can gives g_φ(0) = 4 I, so Δ_φ ψ(0) = Δ_euclid ψ(0) / 4 for ψ = O(|x|^2).
  Rng rng(26);
  const int k = 2;
  G p(Rational(8) * sigma_can<Rational>(k) + rng.closed_form(3, k, 2, 1, k, 30));
  for (int n = 0; n < 3; ++n) {
    F psi = rng.closed_form(3, k, 3, 2, 2, 50);
    F gauged = linearized_laplacian(p, psi) - d(interior(linearize_V(p, p, psi, 1, kElliptic), p.form()));
    F want = Rational(-1, 4) * laplacian_euclid(psi);
    EXPECT_EQ(gauged.at_origin(), want.at_origin());
  }
}

TEST(PsiMap, PrincipalPartAtOriginForTwelveScale) {
  // φ(0) = 12^{3/2} sigma_can = 24√3 sigma_can gives the factor 1/12.
  RadicalField::Scope scope(RadicalField(2, 3));
  using R = Radical;
  Rng rng(27);
  const int k = 2;
  auto lift_r = [](const F& a) { return a.map([](const Rational& q) { return R(q); }); };
  const R c = R(24) * R::generator();
  G2Structure<R> p(c * sigma_can<R>(k) + lift_r(rng.closed_form(3, k, 2, 1, k, 30)));
  for (int n = 0; n < 2; ++n) {
    auto psi = lift_r(rng.closed_form(3, k, 3, 2, 2, 50));
    auto gauged = linearized_laplacian(p, psi) - d(interior(linearize_V(p, p, psi, 1, kElliptic), p.form()));
    auto want = R(Rational(-1, 12)) * laplacian_euclid(psi);
    EXPECT_EQ(gauged.at_origin(), want.at_origin());
  }
}
