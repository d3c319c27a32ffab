#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "g2jet/g2/structure.hpp"
#include "g2jet/jets/radical.hpp"
#include "g2jet/verify/random.hpp"
#include "support.hpp"

using namespace g2jet;
using testing_support::agree;
using testing_support::ex;
using F = Form<Rational>;
using J = Jet<Rational>;
using M = MetricJet<Rational>;

namespace {

F e(std::vector<int> idx, int k) { return F::basis(k, idx); }

J sq(int i, int k) {
  Exponent x{};
  x[i - 1] = 2;
  return J::monomial(k, x);
}

// Brute-force B-matrix of a constant 3-form:
//   B_ij = 1/24 sum over permutations (a..g) of sgn * φ_iab φ_jcd φ_efg.
std::array<std::array<Rational, 7>, 7> b_matrix_oracle(const F& phi) {
  Rational t[7][7][7];
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      for (int c = 0; c < 7; ++c) {
        auto can = canonicalize({a + 1, b + 1, c + 1});
        t[a][b][c] = can.sign == 0 ? Rational(0) : Rational(can.sign * phi.at(can.mask).eval0());
      }
  std::array<int, 7> p;
  std::iota(p.begin(), p.end(), 0);
  std::array<std::array<Rational, 7>, 7> out{};
  do {
    int inv = 0;
    for (int x = 0; x < 7; ++x)
      for (int y = x + 1; y < 7; ++y) inv += p[x] > p[y];
    const Rational tail = t[p[4]][p[5]][p[6]];
    if (tail == 0) continue;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Rational v = t[i][p[0]][p[1]] * t[j][p[2]][p[3]] * tail;
        out[i][j] += (inv & 1) ? Rational(-v) : v;
      }
  } while (std::next_permutation(p.begin(), p.end()));
  for (auto& row : out)
    for (auto& x : row) x /= 24;
  return out;
}

/// ⟨a, b⟩_g as a function: sum over increasing I of a_I b^I.
J inner(const M& g, const F& a, const F& b) {
  F up = raise_indices(g, b);
  J acc(a.order());
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * up[i];
  return acc;
}

}  // namespace

TEST(SigmaCan, Coefficients) {
  F s = sigma_can<Rational>(0);
  EXPECT_EQ(s.at({1, 2, 3}).eval0(), 1);
  EXPECT_EQ(s.at({2, 5, 7}).eval0(), -1);
  EXPECT_TRUE(s.at({1, 2, 4}).is_zero());
  int nonzero = 0;
  for (std::size_t i = 0; i < s.size(); ++i) nonzero += !s[i].is_zero();
  EXPECT_EQ(nonzero, 7);
}

TEST(BMatrix, CanonicalFormAgainstBruteForce) {
  auto oracle = b_matrix_oracle(sigma_can<Rational>(0));
  auto b = at_origin(b_matrix(sigma_can<Rational>(0)));
  auto nb = at_origin(b_matrix(F(-sigma_can<Rational>(0))));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      EXPECT_EQ(oracle[i][j], i == j ? 6 : 0);
      EXPECT_EQ(b[i][j], oracle[i][j]);
      EXPECT_EQ(nb[i][j], -oracle[i][j]);
    }
}

TEST(BMatrix, RandomConstantFormsAgainstBruteForce) {
  Rng rng(10);
  for (int n = 0; n < 5; ++n) {
    F phi = rng.form(3, 0, 1, 0, 0, 40);
    auto oracle = b_matrix_oracle(phi);
    auto b = at_origin(b_matrix(phi));
    EXPECT_EQ(b, oracle);
  }
}

TEST(BMatrix, CubicHomogeneity) {
  Rng rng(11);
  for (int n = 0; n < 10; ++n) {
    F phi = rng.form(3, 2, 2, 0, 2, 40);
    Rational lambda = rng.nonzero_rational();
    auto b = b_matrix(phi);
    auto bl = b_matrix(F(lambda * phi));
    Rational l3 = lambda * lambda * lambda;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) EXPECT_EQ(bl[i][j], l3 * b[i][j]);
  }
}

TEST(Positivity, Examples) {
  EXPECT_EQ(positivity_check(sigma_can<Rational>(2)), Positivity::positive);
  EXPECT_EQ(positivity_check(F(-sigma_can<Rational>(2))), Positivity::negative);
  EXPECT_EQ(positivity_check(e({1, 2, 3}, 2)), Positivity::neither);
  auto b = at_origin(b_matrix(e({1, 2, 3}, 0)));
  for (const auto& row : b)
    for (const auto& x : row) EXPECT_EQ(x, 0);  // e_i⌟e^{123} has only indices in {1,2,3}
  EXPECT_EQ(positivity_check(theta<Rational>(3)), Positivity::positive);
  EXPECT_EQ(positivity_check(theta<Rational>(3, -1)), Positivity::positive);
  EXPECT_EQ(positivity_check(F(-theta<Rational>(3, -1))), Positivity::negative);
}

TEST(Metric, CanonicalFormGivesIdentity) {
  for (int k : {0, 3}) {
    G2Structure<Rational> s(sigma_can<Rational>(k));
    EXPECT_EQ(s.sign(), 1);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        EXPECT_TRUE(s.metric().g[i][j].is_exact());
        EXPECT_EQ(s.metric().g[i][j], i == j ? J::constant(k, 1) : J(k));
      }
    F vol = s.volume_form();
    EXPECT_EQ(vol.at(kFullMask), J::constant(k, 1));
  }
  // Substituting back: 6 g_ij vol = (e_i⌟σ)∧(e_j⌟σ)∧σ holds with g = I, vol = e^{1..7}.
  F s = sigma_can<Rational>(0);
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j) {
      F lhs = wedge(wedge(contract_basis(i, s), contract_basis(j, s)), s);
      EXPECT_EQ(top_coefficient(lhs).eval0(), i == j ? 6 : 0);
    }
}

TEST(Metric, NegativeFormUsesItsNegative) {
  G2Structure<Rational> neg(F(-sigma_can<Rational>(1)));
  EXPECT_EQ(neg.sign(), -1);
  EXPECT_EQ(neg.metric().g[2][2], J::constant(1, 1));
  EXPECT_THROW(G2Structure<Rational>(e({1, 2, 3}, 1)), PreconditionFailed);
  EXPECT_THROW(metric_from_form(F(-sigma_can<Rational>(1))), PreconditionFailed);
}

TEST(Metric, ThetaIsDiagonalToSecondOrder) {
  G2Structure<Rational> th = G2Structure<Rational>::closed(theta<Rational>(2));
  const auto& g = th.metric().g;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      J expect = i == j ? J::constant(2, 1) - 2 * sq(i + 1, 2) : J(2);
      EXPECT_TRUE(agree(g[i][j], expect, 2)) << i << "," << j;
    }
  // vol = 1 + (s_1 + ... + s_7)/2 with s_i = -2x_i^2.
  J vol = J::constant(2, 1);
  for (int i = 1; i <= 7; ++i) vol = vol - sq(i, 2);
  EXPECT_TRUE(agree(th.metric().vol, vol, 2));
}

TEST(Metric, InverseAndVolumeDensity) {
  Rng rng(12);
  for (int n = 0; n < 3; ++n) {
    M m = metric_from_form(rng.positive_form(3, 2, 2));
    auto prod = matmul(m.g, m.ginv);
    auto det = det_and_inverse(m.g).det;
    EXPECT_TRUE(agree(J(m.vol * m.vol), det, 3));
    EXPECT_TRUE(agree(J(m.vol * m.vol_inv), J::constant(3, 1), 3));
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) EXPECT_TRUE(agree(prod[i][j], i == j ? J::constant(3, 1) : J(3), 3));
  }
}

TEST(Metric, ScalingLawInCubeRootField) {
  // metric(λφ) = λ^{2/3} metric(φ), vol(λφ) = λ^{7/3} vol(φ); with λ = 2 and t^3 = 2.
  RadicalField::Scope scope(RadicalField(3, 2));
  using R = Radical;
  const R t = R::generator();
  Rng rng(13);
  for (int n = 0; n < 3; ++n) {
    Form<R> phi = rng.positive_form<R>(2, 2, 2);
    MetricJet<R> a = metric_from_form(phi);
    MetricJet<R> b = metric_from_form(Form<R>(R(2) * phi));
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) EXPECT_TRUE(agree(b.g[i][j], Jet<R>(R(t * t) * a.g[i][j]), 2));
    EXPECT_TRUE(agree(b.vol, Jet<R>(R(R(4) * t) * a.vol), 2));
  }
}

TEST(HodgeStar, EuclideanExamples) {
  EXPECT_EQ(hodge_star_euclid(e({1, 2, 3}, 1)), e({4, 5, 6, 7}, 1));
  EXPECT_EQ(hodge_star_euclid(e({2}, 1)), -e({1, 3, 4, 5, 6, 7}, 1));
  M flat = M::euclidean(1);
  for (int k = 0; k <= 7; ++k) {
    F a = Rng(20 + k).form(k, 1, 2);
    EXPECT_EQ(hodge_star(flat, a), hodge_star_euclid(a));
  }
}

TEST(HodgeStar, InvolutionOnJetMetrics) {
  Rng rng(21);
  for (int n = 0; n < 2; ++n) {
    M g = rng.metric(2, 2);
    for (int k = 0; k <= 7; ++k) {
      F a = rng.form(k, 2, 2, 0, 2, 40);
      EXPECT_TRUE(agree(hodge_star(g, hodge_star(g, a)), a, 2)) << "degree " << k;
    }
  }
}

TEST(HodgeStar, DefiningIdentityBothRoutes) {
  // a ∧ ⋆b = ⟨a, b⟩ vol, exercising the raise route (k <= 3) and the lower route (k >= 4).
  Rng rng(22);
  M g = rng.metric(2, 2);
  for (int k = 0; k <= 7; ++k) {
    F a = rng.form(k, 2, 1, 0, 2, 40), b = rng.form(k, 2, 1, 0, 2, 40);
    J lhs = top_coefficient(wedge(a, hodge_star(g, b)));
    J rhs = g.vol * inner(g, a, b);
    EXPECT_TRUE(agree(lhs, rhs, 2)) << "degree " << k;
  }
}

TEST(HodgeStar, ThetaOnCanonicalTriples) {
  G2Structure<Rational> th(theta<Rational>(2));
  for (const auto& [t, c] : canonical_triples()) {
    const Mask I = triple_mask(t);
    const Mask C = static_cast<Mask>(kFullMask & ~I);
    F star = hodge_star(th.metric(), e({t[0], t[1], t[2]}, 2));
    // sqrt(g_aa g_bb g_cc g_dd / (g_ii g_jj g_kk)) with g_ll = 1 - 2x_l^2.
    J expect = J::constant(2, 1);
    for (int i : mask_indices(I)) expect = expect + sq(i, 2);
    for (int i : mask_indices(C)) expect = expect - sq(i, 2);
    if (merge_sign(I, C) < 0) expect = -expect;
    EXPECT_TRUE(agree(star.at(C), expect, 2));
    for (std::size_t p = 0; p < star.size(); ++p)
      if (star.mask_at(p) != C) EXPECT_TRUE(agree(star[p], J(2), 2));
  }
  // ⋆ e^{ijklm} = (1 + O(|x|^2)) e^{pq}; the quadratic part is Σ_{ijklm} x^2 - Σ_{pq} x^2.
  for (Mask m : MaskTable::get().masks(5)) {
    const Mask C = static_cast<Mask>(kFullMask & ~m);
    F star = hodge_star(th.metric(), F::basis(2, mask_indices(m)));
    EXPECT_EQ(star.at(C).eval0(), merge_sign(m, C));
    J expect = J::constant(2, 1);
    for (int i : mask_indices(m)) expect = expect + sq(i, 2);
    for (int i : mask_indices(C)) expect = expect - sq(i, 2);
    if (merge_sign(m, C) < 0) expect = -expect;
    EXPECT_TRUE(agree(star.at(C), expect, 2));
  }
}

TEST(Laplacian, EuclideanExamples) {
  EXPECT_EQ(laplacian_euclid(sq(1, 2)).eval0(), -2);
  F tilde(3, 2);
  for (const auto& [t, c] : canonical_triples()) {
    J f = J::constant(2, 1);
    for (int i : t) f = f - 2 * sq(i, 2);
    tilde.at(triple_mask(t)) = c > 0 ? f : -f;
  }
  F lap = laplacian_euclid(tilde);
  EXPECT_EQ(lap.at_origin(), F(Rational(12) * sigma_can<Rational>(2)));
  EXPECT_TRUE(agree(hodge_laplacian(M::euclidean(2), tilde), lap, 0));
}

TEST(Laplacian, QuadraticThetaIsHarmonicAtOrigin) {
  // θ has no linear terms, so its torsion vanishes at 0 and so does Δ_θθ(0).
  for (int sign : {1, -1}) {
    G2Structure<Rational> th = G2Structure<Rational>::closed(theta<Rational>(2, sign));
    F lap = th.self_laplacian();
    ASSERT_GE(lap.effective_order(), 0);
    EXPECT_TRUE(lap.at_origin().is_zero()) << "sign " << sign;
  }
}

TEST(Laplacian, CanonicalComponentIsTorsionNormSquared) {
  // For closed φ with φ(0) = σ_can: <Δ_φφ, φ>(0) = |δφ(0)|^2 (flat inner products at 0).
  Rng rng(34);
  int checked = 0;
  for (int n = 0; n < 12; ++n) {
    F phi = sigma_can<Rational>(2) + Rational(1, 4) * rng.closed_form(3, 2, 2, 1, 2, 30);
    if (positivity_check(phi) != Positivity::positive) continue;
    G2Structure<Rational> s(phi);
    F lap = s.self_laplacian();
    F tau = codifferential(s.metric(), phi);
    F can = sigma_can<Rational>(2);
    Rational lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < lap.size(); ++i) lhs += lap[i].eval0() * can[i].eval0();
    for (std::size_t i = 0; i < tau.size(); ++i) rhs += tau[i].eval0() * tau[i].eval0();
    EXPECT_EQ(lhs, rhs);
    ++checked;
  }
  EXPECT_GE(checked, 8);
}

TEST(Laplacian, CodifferentialSquaresToZero) {
  Rng rng(30);
  M g = rng.metric(3, 2, 2);
  for (int k = 2; k <= 7; ++k) {
    F a = rng.form(k, 3, 2, 0, 3, 30);
    F dd = codifferential(g, codifferential(g, a));
    EXPECT_GE(dd.effective_order(), 0);
    EXPECT_TRUE(agree(dd, F(k - 2, 3), 0)) << "degree " << k;
  }
}

TEST(Laplacian, CommutesWithD) {
  Rng rng(31);
  M g = rng.metric(4, 2, 2);
  for (int k : {0, 2}) {
    F a = rng.form(k, 4, 2, 0, 4, 30);
    F lhs = hodge_laplacian(g, d(a));
    F rhs = d(hodge_laplacian(g, a));
    EXPECT_TRUE(agree(lhs, rhs, 0)) << "degree " << k;
  }
}

TEST(Laplacian, ClosedFormsUseOneTerm) {
  Rng rng(32);
  M g = rng.metric(3, 2, 2);
  F a = rng.closed_form(3, 3, 2, 0, 3, 30);
  F full = hodge_laplacian(g, a);
  F short_form = F(-d(hodge_star(g, d(hodge_star(g, a)))));
  EXPECT_TRUE(agree(full, short_form, 0));
  EXPECT_TRUE(agree(hodge_laplacian_closed(g, a), short_form, 0));
  EXPECT_THROW(hodge_laplacian_closed(g, rng.form(3, 3, 2, 1, 3, 100)), PreconditionFailed);
}

TEST(Laplacian, DilationCommutation) {
  // Δ(A_s φ) = s^{-2} A_s(Δ φ) for the flat metric.
  Rng rng(33);
  for (int n = 0; n < 5; ++n) {
    F phi = rng.form(3, 4, 3, 0, 4, 40);
    Rational s = rng.nonzero_rational();
    F lhs = laplacian_euclid(dilate(phi, s));
    F rhs = Rational(1 / (s * s)) * dilate(laplacian_euclid(phi), s);
    EXPECT_TRUE(agree(lhs, rhs, 2));
  }
}
