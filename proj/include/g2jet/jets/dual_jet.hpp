#pragma once

// Jets over dual numbers: a product kernel that splits into the base field's
// kernel (re*re, re*eps + eps*re), and helpers to move between S and Dual<S>.

#include "g2jet/jets/dual.hpp"
#include "g2jet/jets/jet.hpp"

namespace g2jet {

namespace detail {

template <Field S>
struct MulKernel<Dual<S>> {
  using Term = typename Jet<Dual<S>>::Term;
  using BaseTerm = typename Jet<S>::Term;

  static void split(const std::vector<Term>& t, std::vector<BaseTerm>& re, std::vector<BaseTerm>& eps) {
    for (const auto& x : t) {
      if (!scalar_traits<S>::is_zero(x.coeff.re)) re.push_back({x.rank, x.coeff.re});
      if (!scalar_traits<S>::is_zero(x.coeff.eps)) eps.push_back({x.rank, x.coeff.eps});
    }
  }

  static void run(const std::vector<Term>& a, const std::vector<Term>& b, int eff, std::vector<Term>& out) {
    std::vector<BaseTerm> ar, ae, br, be;
    split(a, ar, ae);
    split(b, br, be);
    std::vector<BaseTerm> rr, re1, re2;
    MulKernel<S>::run(ar, br, eff, rr);
    if (!be.empty()) MulKernel<S>::run(ar, be, eff, re1);
    if (!ae.empty()) MulKernel<S>::run(ae, br, eff, re2);
    // merge three rank-sorted lists
    std::size_t i = 0, j = 0, l = 0;
    constexpr std::uint32_t kEnd = ~std::uint32_t{0};
    auto rank_of = [kEnd](const std::vector<BaseTerm>& v, std::size_t p) { return p < v.size() ? v[p].rank : kEnd; };
    for (;;) {
      const std::uint32_t r = std::min({rank_of(rr, i), rank_of(re1, j), rank_of(re2, l)});
      if (r == kEnd) break;
      Dual<S> c;
      if (rank_of(rr, i) == r) c.re = std::move(rr[i++].coeff);
      if (rank_of(re1, j) == r) c.eps = std::move(re1[j++].coeff);
      if (rank_of(re2, l) == r) c.eps = S(c.eps + re2[l++].coeff);
      if (!scalar_traits<Dual<S>>::is_zero(c)) out.push_back({r, std::move(c)});
    }
  }
};

}  // namespace detail

/// Lifts a Jet, Form or VectorField to dual coefficients with zero eps part.
template <class Container>
auto to_dual(const Container& a) {
  return a.map([](const auto& c) { return Dual<std::decay_t<decltype(c)>>(c); });
}

/// re + eps ε for two containers of the same shape and order.
template <class Container>
auto to_dual(const Container& re, const Container& eps) {
  return to_dual(re) + eps.map([](const auto& c) {
    using S = std::decay_t<decltype(c)>;
    return Dual<S>(S{}, c);
  });
}

template <class Container>
auto re_part(const Container& a) {
  return a.map([](const auto& c) { return c.re; });
}

template <class Container>
auto eps_part(const Container& a) {
  return a.map([](const auto& c) { return c.eps; });
}

/// True when every coefficient is nilpotent (no real part).
template <Field S>
bool is_nilpotent(const Jet<S>& a) {
  for (const auto& t : a.terms())
    if (!scalar_traits<S>::is_nilpotent(t.coeff)) return false;
  return true;
}

}  // namespace g2jet
