#pragma once

#include "g2jet/g2/hodge.hpp"

namespace g2jet {

/// A 3-form that is positive or negative at the origin, with its B-matrix and
/// metric computed once. The metric of a negative form is that of -φ.
template <Field S>
class G2Structure {
 public:
  G2Structure() = default;

  explicit G2Structure(Form<S> phi) : phi_(std::move(phi)) {
    if (phi_.degree() != 3) throw PreconditionFailed("a G2-structure is a 3-form");
    b_ = b_matrix(phi_);
    auto p = positivity_from_b(b_);
    if (p == Positivity::neither)
      throw PreconditionFailed("3-form is neither positive nor negative at the origin");
    sign_ = p == Positivity::positive ? 1 : -1;
    if (sign_ > 0) {
      metric_ = metric_from_b(b_);
    } else {
      JetMatrix<S> nb = scale(lift<S>(-1), b_);  // B is cubic in φ
      metric_ = metric_from_b(nb);
    }
  }

  /// Additionally certifies dφ = 0 to the available order.
  static G2Structure closed(Form<S> phi) {
    if (!d(phi).is_zero()) throw PreconditionFailed("3-form is not closed");
    return G2Structure(std::move(phi));
  }

  const Form<S>& form() const { return phi_; }
  int sign() const { return sign_; }
  int order() const { return phi_.order(); }
  const JetMatrix<S>& b() const { return b_; }
  const MetricJet<S>& metric() const { return metric_; }

  /// vol = sqrt(det g) e^{1234567}.
  Form<S> volume_form() const {
    Form<S> v(7, order());
    v[0] = metric_.vol;
    return v;
  }

  /// Δ_φ φ; φ is closed in every use, so only dδφ is formed.
  Form<S> self_laplacian() const { return hodge_laplacian_closed(metric_, phi_); }

 private:
  Form<S> phi_;
  int sign_ = 1;
  JetMatrix<S> b_;
  MetricJet<S> metric_;
};

}  // namespace g2jet
