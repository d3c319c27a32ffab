#pragma once

// Levi-Civita connections of jet metrics, their difference tensor, and the
// gauge field
//   V(ζ, φ) = sign Σ_{ijk} (15/28 g_φ^{ij} T^k_{ij} + 1/4 g_φ^{ik} T^j_{ji}) e_k,
// with T = Γ(ζ) - Γ(φ). The two coefficients are parameters; (1, 0) gives the
// field whose Lie derivative cancels the non-elliptic part of the linearized
// Laplacian (see GaugeCoefficients::elliptic).

#include <array>

#include "g2jet/g2/structure.hpp"

namespace g2jet {

/// Γ^k_{ij} stored at [k][i][j], 0-based.
template <Field S>
using Connection = std::array<std::array<std::array<Jet<S>, kDim>, kDim>, kDim>;

template <Field S>
Connection<S> christoffels(const MetricJet<S>& m) {
  const int k = m.order();
  // dg[a][b][c] = ∂_a g_bc
  std::array<std::array<std::array<Jet<S>, kDim>, kDim>, kDim> dg;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = b; c < kDim; ++c) {
        dg[a][b][c] = m.g[b][c].partial(a + 1);
        dg[a][c][b] = dg[a][b][c];
      }
  const S half = lift<S>(Rational(1, 2));
  Connection<S> gam;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      // Γ_{l,ij} = 1/2 (∂_i g_jl + ∂_j g_il - ∂_l g_ij)
      std::array<Jet<S>, kDim> low;
      for (int l = 0; l < kDim; ++l) low[l] = half * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
      for (int kk = 0; kk < kDim; ++kk) {
        Jet<S> acc(k);
        for (int l = 0; l < kDim; ++l) {
          if (low[l].is_zero() && low[l].is_exact()) continue;
          if (m.ginv[kk][l].is_zero() && m.ginv[kk][l].is_exact()) continue;
          acc = acc + m.ginv[kk][l] * low[l];
        }
        gam[kk][i][j] = acc;
        gam[kk][j][i] = acc;
      }
    }
  return gam;
}

/// T^k_{ij} = Γ(ζ)^k_{ij} - Γ(φ)^k_{ij}.
template <Field S>
Connection<S> connection_difference(const Connection<S>& a, const Connection<S>& b) {
  Connection<S> t;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) t[k][i][j] = a[k][i][j] - b[k][i][j];
  return t;
}

struct GaugeCoefficients {
  Rational trace_first{15, 28};  // multiplies g^{ij} T^k_{ij}
  Rational trace_second{1, 4};   // multiplies g^{ik} T^j_{ji}

  static GaugeCoefficients printed() { return {}; }
  static GaugeCoefficients elliptic() { return {Rational(1), Rational(0)}; }
};

/// The gauge field built from T and the inverse metric of φ.
template <Field S>
VectorField<S> deturck_field(const Connection<S>& t, const MetricJet<S>& gphi, int sign,
                             const GaugeCoefficients& coef = GaugeCoefficients::printed()) {
  if (sign != 1 && sign != -1) throw PreconditionFailed("gauge field: sign must be +1 or -1");
  const int ord = gphi.order();
  const S c1 = lift<S>(coef.trace_first);
  const S c2 = lift<S>(coef.trace_second);
  // u_i = Σ_j T^j_{ji}
  std::array<Jet<S>, kDim> u;
  for (int i = 0; i < kDim; ++i) {
    Jet<S> acc(ord);
    for (int j = 0; j < kDim; ++j) acc = acc + t[j][j][i];
    u[i] = acc;
  }
  VectorField<S> v;
  for (int k = 0; k < kDim; ++k) {
    Jet<S> w(ord);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        if ((t[k][i][j].is_zero() && t[k][i][j].is_exact()) || (gphi.ginv[i][j].is_zero() && gphi.ginv[i][j].is_exact()))
          continue;
        w = w + gphi.ginv[i][j] * t[k][i][j];
      }
    Jet<S> z(ord);
    for (int i = 0; i < kDim; ++i) {
      if (gphi.ginv[i][k].is_zero() && gphi.ginv[i][k].is_exact()) continue;
      z = z + gphi.ginv[i][k] * u[i];
    }
    Jet<S> vk = c1 * w + c2 * z;
    v.comp[k] = sign > 0 ? vk : -vk;
  }
  return v;
}

template <Field S>
VectorField<S> deturck_field(const G2Structure<S>& zeta, const G2Structure<S>& phi, int sign,
                             const GaugeCoefficients& coef = GaugeCoefficients::printed()) {
  if (zeta.sign() != 1 || phi.sign() != 1) throw PreconditionFailed("gauge field needs positive G2-structures");
  if (zeta.order() != phi.order()) throw OrderMismatch("gauge field: structures of different orders");
  auto t = connection_difference(christoffels(zeta.metric()), christoffels(phi.metric()));
  return deturck_field(t, phi.metric(), sign, coef);
}

}  // namespace g2jet
