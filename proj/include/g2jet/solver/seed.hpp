#pragma once

// Closed 3-forms whose self-Laplacian at the origin is prescribed.
//
// build_theta is the diagonal quadratic form of g2/canonical.hpp. Its
// self-Laplacian vanishes at the origin, so the solver starts instead from
//   Θ = sigma_can + L + Q,
//   L = 3 d(x2^2 e^{14}) + 2 d(x1^2 e^{24}) + d(x1^2 e^{26}),
// where the linear part L carries torsion with |τ(0)|^2 = 28, and Q is a
// quadratic combination of the closed forms f(x_i, x_j, x_k) e^{ijk} that
// removes the traceless part. Then Δ_Θ Θ(0) = 4 sigma_can(0).

#include <vector>

#include "g2jet/g2/canonical.hpp"
#include "g2jet/g2/structure.hpp"

namespace g2jet {

template <Field S>
G2Structure<S> build_theta(int order, int sign) {
  return G2Structure<S>(theta<S>(order, sign));
}

/// Δ_Θ Θ(0) = kSeedFactor sigma_can(0).
inline constexpr long kSeedFactor = 4;

namespace detail {

inline Form<Rational> seed_linear_part(int order) {
  using J = Jet<Rational>;
  auto term = [order](long c, int var, std::vector<int> idx) {
    Exponent e{};
    e[var - 1] = 2;
    return Rational(c) * d(J::monomial(order + 1, e) * Form<Rational>::basis(order + 1, idx)).with_order(order);
  };
  return term(3, 2, {1, 4}) + term(2, 1, {2, 4}) + term(1, 1, {2, 6});
}

inline std::vector<Rational> origin_values(const Form<Rational>& a) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a[i].eval0());
  return v;
}

/// Q as an exact order-2 form. φ ↦ Δ_φ φ(0) is affine in the quadratic part
/// of φ when φ(0) = sigma_can (no products of first derivatives involve Q),
/// so Q solves a 35 x 210 linear system; the pivot-column solution is taken.
inline const Form<Rational>& seed_quadratic_part() {
  static const Form<Rational> q = [] {
    const int k = 2;
    using F = Form<Rational>;
    const F base = sigma_can<Rational>(k);
    std::vector<F> cand;
    for (Mask m : MaskTable::get().masks(3)) {
      auto idx = mask_indices(m);
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
          Exponent e{};
          ++e[idx[a] - 1];
          ++e[idx[b] - 1];
          cand.push_back(Jet<Rational>::monomial(k, e) * F::basis(k, idx));
        }
    }
    const auto lap0 = origin_values(G2Structure<Rational>(base + seed_linear_part(k)).self_laplacian());
    const std::size_t rows = lap0.size();
    const std::size_t cols = cand.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (std::size_t c = 0; c < cols; ++c) {
      auto col = origin_values(G2Structure<Rational>(base + cand[c]).self_laplacian());
      for (std::size_t r = 0; r < rows; ++r) a[r][c] = col[r];
    }
    const auto target = origin_values(Rational(kSeedFactor) * base);
    for (std::size_t r = 0; r < rows; ++r) a[r][cols] = target[r] - lap0[r];
    // reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
      std::size_t p = row;
      while (p < rows && sgn(a[p][c]) == 0) ++p;
      if (p == rows) continue;
      std::swap(a[p], a[row]);
      const Rational inv = 1 / a[row][c];
      for (auto& x : a[row]) x *= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || sgn(a[r][c]) == 0) continue;
        const Rational f = a[r][c];
        for (std::size_t j = c; j <= cols; ++j) a[r][j] -= f * a[row][j];
      }
      pivots.push_back(c);
      ++row;
    }
    for (std::size_t r = row; r < rows; ++r)
      if (sgn(a[r][cols]) != 0) throw PreconditionFailed("seed correction: inconsistent linear system");
    F out(3, k);
    for (std::size_t r = 0; r < pivots.size(); ++r) out = out + a[r][cols] * cand[pivots[r]];
    return out;
  }();
  return q;
}

}  // namespace detail

/// The exact polynomial form Θ at the given order (at least 2).
template <Field S>
Form<S> seed_form(int order) {
  if (order < 2) throw PreconditionFailed("seed form needs truncation order >= 2");
  Form<Rational> q = detail::seed_quadratic_part().with_order(order);
  Form<Rational> theta = sigma_can<Rational>(order) + detail::seed_linear_part(order) + q;
  return theta.as_exact().map([](const Rational& c) { return lift<S>(c); });
}

}  // namespace g2jet
