#pragma once

// The B-matrix of a 3-form, the positivity certificate, and the induced
// metric. With B_ij e^{1..7} = (e_i⌟φ)∧(e_j⌟φ)∧φ, the identity
// 6 g_ij vol_g = B_ij e^{1..7} and vol_g = sqrt(det g) e^{1..7} give
//   sqrt(det g) = (det B')^{1/9},   g = B' (det B')^{-1/9},   B' = B / 6.

#include <array>
#include <string>

#include "g2jet/forms/ops.hpp"
#include "g2jet/g2/canonical.hpp"

namespace g2jet {

template <Field S>
using JetMatrix = std::array<std::array<Jet<S>, kDim>, kDim>;

template <Field S>
JetMatrix<S> identity_matrix(int order) {
  JetMatrix<S> m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = i == j ? Jet<S>::constant(order, lift<S>(1)) : Jet<S>(order);
  return m;
}

template <Field S>
JetMatrix<S> scale(const S& c, const JetMatrix<S>& a) {
  JetMatrix<S> m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = c * a[i][j];
  return m;
}

template <Field S>
JetMatrix<S> scale(const Jet<S>& f, const JetMatrix<S>& a) {
  JetMatrix<S> m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = f * a[i][j];
  return m;
}

template <Field S>
JetMatrix<S> matmul(const JetMatrix<S>& a, const JetMatrix<S>& b) {
  JetMatrix<S> m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Jet<S> acc(a[0][0].order());
      for (int l = 0; l < kDim; ++l) acc = acc + a[i][l] * b[l][j];
      m[i][j] = acc;
    }
  return m;
}

/// Constant part of a jet matrix.
template <Field S>
std::array<std::array<S, kDim>, kDim> at_origin(const JetMatrix<S>& a) {
  std::array<std::array<S, kDim>, kDim> m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = a[i][j].eval0();
  return m;
}

template <Field S>
struct DetInverse {
  Jet<S> det;
  JetMatrix<S> inverse;
};

/// Gauss-Jordan elimination without pivoting; requires every leading
/// principal minor of the constant term to be invertible.
template <Field S>
DetInverse<S> det_and_inverse(const JetMatrix<S>& m) {
  const int k = m[0][0].order();
  JetMatrix<S> a = m;
  JetMatrix<S> inv = identity_matrix<S>(k);
  Jet<S> det = Jet<S>::constant(k, lift<S>(1));
  for (int p = 0; p < kDim; ++p) {
    if (scalar_traits<S>::is_nilpotent(a[p][p].eval0()))
      throw PreconditionFailed("metric matrix has a singular leading minor at the origin");
    det = det * a[p][p];
    Jet<S> pinv = a[p][p].unit_power(Rational(-1));
    for (int j = 0; j < kDim; ++j) {
      a[p][j] = pinv * a[p][j];
      inv[p][j] = pinv * inv[p][j];
    }
    for (int r = 0; r < kDim; ++r) {
      if (r == p || (a[r][p].is_zero() && a[r][p].is_exact())) continue;
      Jet<S> f = a[r][p];
      for (int j = 0; j < kDim; ++j) {
        if (j > p) a[r][j] = a[r][j] - f * a[p][j];
        inv[r][j] = inv[r][j] - f * inv[p][j];
      }
      a[r][p] = Jet<S>(k);
    }
  }
  return {det, inv};
}

/// Top-degree coefficient of a 7-form.
template <Field S>
const Jet<S>& top_coefficient(const Form<S>& a) {
  return a.at(kFullMask);
}

/// e_i ⌟ φ for the constant coordinate field e_i (no jet products needed).
template <Field S>
Form<S> contract_basis(int i, const Form<S>& a) {
  Form<S> out(a.degree() - 1, a.order());
  for (std::size_t p = 0; p < a.size(); ++p) {
    const Mask I = a.mask_at(p);
    if (!(I & bit(i))) continue;
    out.at(static_cast<Mask>(I & ~bit(i))) = (count_below(I, i) & 1) ? -a[p] : a[p];
  }
  return out;
}

/// B_ij with (e_i⌟φ)∧(e_j⌟φ)∧φ = B_ij e^{1234567}.
template <Field S>
JetMatrix<S> b_matrix(const Form<S>& phi) {
  if (phi.degree() != 3) throw PreconditionFailed("B-matrix needs a 3-form");
  std::array<Form<S>, kDim> c;
  std::array<Form<S>, kDim> p;
  for (int i = 1; i <= kDim; ++i) c[i - 1] = contract_basis(i, phi);
  for (int i = 0; i < kDim; ++i) p[i] = wedge(c[i], phi);
  JetMatrix<S> b;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      b[i][j] = top_coefficient(wedge(c[j], p[i]));
      b[j][i] = b[i][j];
    }
  return b;
}

enum class Positivity { positive, negative, neither };

inline std::string to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::negative: return "negative";
    default: return "neither";
  }
}

namespace detail {

/// Sylvester's criterion on a constant symmetric matrix.
template <Field S>
bool positive_definite(std::array<std::array<S, kDim>, kDim> m) {
  for (int p = 0; p < kDim; ++p) {
    if (scalar_traits<S>::sign(m[p][p]) <= 0) return false;
    for (int r = p + 1; r < kDim; ++r) {
      S f = S(m[r][p] / m[p][p]);
      for (int j = p; j < kDim; ++j) m[r][j] = S(m[r][j] - S(f * m[p][j]));
    }
  }
  return true;
}

}  // namespace detail

/// Definiteness of B(0).
template <Field S>
Positivity positivity_from_b(const JetMatrix<S>& b) {
  auto m = at_origin(b);
  if (detail::positive_definite(m)) return Positivity::positive;
  for (auto& row : m)
    for (auto& x : row) x = S(-x);
  if (detail::positive_definite(m)) return Positivity::negative;
  return Positivity::neither;
}

template <Field S>
Positivity positivity_check(const Form<S>& phi) {
  if (phi.degree() != 3) throw PreconditionFailed("positivity is defined for 3-forms");
  // Only the constant terms matter.
  return positivity_from_b(b_matrix(phi.at_origin().with_order(0)));
}

/// Riemannian metric with cached inverse and volume density sqrt(det g).
template <Field S>
struct MetricJet {
  JetMatrix<S> g;
  JetMatrix<S> ginv;
  Jet<S> vol;      // sqrt(det g)
  Jet<S> vol_inv;  // 1 / sqrt(det g)

  int order() const { return g[0][0].order(); }

  static MetricJet euclidean(int order) {
    MetricJet m;
    m.g = identity_matrix<S>(order);
    m.ginv = m.g;
    m.vol = Jet<S>::constant(order, lift<S>(1));
    m.vol_inv = m.vol;
    return m;
  }

  /// From a symmetric matrix whose constant term is positive definite.
  static MetricJet from_matrix(const JetMatrix<S>& g) {
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < i; ++j)
        if (!(g[i][j] == g[j][i])) throw PreconditionFailed("metric matrix is not symmetric");
    if (!detail::positive_definite(at_origin(g)))
      throw PreconditionFailed("metric is not positive definite at the origin");
    auto di = det_and_inverse(g);
    MetricJet m;
    m.g = g;
    m.ginv = di.inverse;
    m.vol = di.det.unit_power(Rational(1, 2));
    m.vol_inv = di.det.unit_power(Rational(-1, 2));
    return m;
  }

  MetricJet with_order(int k) const {
    MetricJet m;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        m.g[i][j] = g[i][j].with_order(k);
        m.ginv[i][j] = ginv[i][j].with_order(k);
      }
    m.vol = vol.with_order(k);
    m.vol_inv = vol_inv.with_order(k);
    return m;
  }
};

/// The metric of a positive 3-form together with its B-matrix.
template <Field S>
MetricJet<S> metric_from_b(const JetMatrix<S>& b) {
  if (positivity_from_b(b) != Positivity::positive)
    throw PreconditionFailed("metric requested for a 3-form that is not positive at the origin");
  const S sixth = lift<S>(Rational(1, 6));
  JetMatrix<S> bp = scale(sixth, b);
  auto di = det_and_inverse(bp);
  MetricJet<S> m;
  m.vol = di.det.unit_power(Rational(1, 9));
  m.vol_inv = di.det.unit_power(Rational(-1, 9));
  m.g = scale(m.vol_inv, bp);
  m.ginv = scale(m.vol, di.inverse);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < i; ++j) {
      m.g[i][j] = m.g[j][i];
      m.ginv[i][j] = m.ginv[j][i];
    }
  return m;
}

template <Field S>
MetricJet<S> metric_from_form(const Form<S>& phi) {
  return metric_from_b(b_matrix(phi));
}

}  // namespace g2jet
