#pragma once

// Deterministic random inputs for the property suites. Only the raw 64-bit
// output of mt19937_64 is used (reduced with %), so sequences are identical
// across standard libraries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "g2jet/forms/ops.hpp"
#include "g2jet/g2/metric.hpp"
#include "g2jet/jets/jet.hpp"

namespace g2jet {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin(int percent) { return uniform(0, 99) < percent; }

  /// Small rational with numerator in [-n, n] and denominator in [1, m].
  Rational rational(long n = 5, long m = 4) {
    Rational q(uniform(-n, n), uniform(1, m));
    q.canonicalize();
    return q;
  }
  Rational nonzero_rational(long n = 5, long m = 4) {
    for (;;) {
      Rational q = rational(n, m);
      if (sgn(q) != 0) return q;
    }
  }

  Exponent exponent(int lo_degree, int hi_degree) {
    int d = static_cast<int>(uniform(lo_degree, hi_degree));
    Exponent e{};
    for (int i = 0; i < d; ++i) ++e[uniform(0, kDim - 1)];
    return e;
  }

  /// Exact polynomial jet of order k with `terms` random monomials of degree in [lo, hi].
  template <Field S = Rational>
  Jet<S> jet(int k, int terms, int lo = 0, int hi = -1) {
    if (hi < 0) hi = k;
    std::vector<typename Jet<S>::Term> t;
    for (int i = 0; i < terms; ++i) t.push_back({exponent_rank(exponent(lo, hi)), lift<S>(rational())});
    return Jet<S>::from_terms(k, std::move(t), k, true);
  }

  /// Exact polynomial form; each component is nonzero with probability `density`%.
  template <Field S = Rational>
  Form<S> form(int degree, int k, int terms, int lo = 0, int hi = -1, int density = 50) {
    Form<S> a(degree, k);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (coin(density)) a[i] = jet<S>(k, terms, lo, hi);
    return a;
  }

  /// Exact closed form d(beta) with coefficients of degree in [lo, hi].
  template <Field S = Rational>
  Form<S> closed_form(int degree, int k, int terms, int lo = 0, int hi = -1, int density = 50) {
    if (hi < 0) hi = k;
    if (degree == 0) return Form<S>::function(Jet<S>::constant(k, lift<S>(rational())));
    return exterior_derivative(form<S>(degree - 1, k + 1, terms, lo + 1, std::min(hi, k) + 1, density)).with_order(k);
  }

  /// Symmetric jet metric equal to the identity at the origin plus random
  /// polynomial terms of degree in [1, hi].
  template <Field S = Rational>
  MetricJet<S> metric(int k, int terms, int hi = -1) {
    JetMatrix<S> g = identity_matrix<S>(k);
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        if (!coin(50)) continue;
        g[i][j] = g[i][j] + jet<S>(k, terms, 1, hi);
        g[j][i] = g[i][j];
      }
    return MetricJet<S>::from_matrix(g);
  }

  /// sigma_can plus random terms of degree in [1, hi]; positive at the origin.
  template <Field S = Rational>
  Form<S> positive_form(int k, int terms, int hi = -1, int density = 50) {
    return sigma_can<S>(k) + form<S>(3, k, terms, 1, hi, density);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace g2jet
