#pragma once

// Differential forms on R^7 with jet coefficients. A degree-m form stores all
// C(7, m) components densely (zero components are zero jets that still carry
// their own effective order), so precision bookkeeping is per component.

#include <array>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "g2jet/forms/multi_index.hpp"
#include "g2jet/jets/jet.hpp"

namespace g2jet {

template <Field S>
class Form {
 public:
  using J = Jet<S>;

  Form() : Form(0, 0) {}
  /// Exact zero form.
  Form(int degree, int order) : degree_(check_degree(degree)), order_(order) {
    comps_.assign(MaskTable::get().masks(degree).size(), J(order));
  }

  /// Degree-0 form wrapping a function.
  static Form function(const J& f) {
    Form a(0, f.order());
    a.comps_[0] = f;
    return a;
  }

  /// Constant-coefficient form c e^I.
  static Form basis(int order, const std::vector<int>& indices, const S& c = lift<S>(1)) {
    auto ci = canonicalize(indices);
    Form a(static_cast<int>(indices.size()), order);
    if (ci.sign != 0) a.at(ci.mask) = J::constant(order, ci.sign > 0 ? c : S(-c));
    return a;
  }

  int degree() const noexcept { return degree_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return comps_.size(); }

  const J& operator[](std::size_t pos) const { return comps_[pos]; }
  J& operator[](std::size_t pos) { return comps_[pos]; }
  Mask mask_at(std::size_t pos) const { return MaskTable::get().masks(degree_)[pos]; }

  const J& at(Mask m) const { return comps_[position_checked(m)]; }
  J& at(Mask m) { return comps_[position_checked(m)]; }
  const J& at(const std::vector<int>& indices) const { return at(canonicalize(indices).mask); }

  /// Minimum effective order over components.
  int effective_order() const {
    int e = order_;
    for (const auto& c : comps_) e = std::min(e, c.effective_order());
    return e;
  }
  bool is_exact() const {
    for (const auto& c : comps_)
      if (!c.is_exact()) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// Lowest degree among nonzero coefficients; order + 1 for the zero form.
  int valuation() const {
    int v = order_ + 1;
    for (const auto& c : comps_) v = std::min(v, c.valuation());
    return v;
  }
  int certified_valuation() const {
    int v = J::kInfiniteValuation;
    for (const auto& c : comps_) v = std::min(v, c.certified_valuation());
    return v;
  }

  /// Applies f to every component.
  template <class F>
  Form apply(F&& f) const {
    Form out = *this;
    for (auto& c : out.comps_) c = f(c);
    if (!out.comps_.empty()) out.order_ = out.comps_[0].order();
    return out;
  }

  Form with_order(int k) const {
    Form a = apply([k](const J& c) { return c.with_order(k); });
    a.order_ = k;
    return a;
  }
  Form as_exact() const {
    return apply([](const J& c) { return c.as_exact(); });
  }
  Form with_effective_order(int e) const {
    return apply([e](const J& c) { return c.with_effective_order(e); });
  }

  /// Value at the origin as a constant exact form.
  Form at_origin() const {
    return apply([this](const J& c) { return J::constant(order_, c.eval0()); });
  }

  friend Form operator+(const Form& a, const Form& b) { return zip(a, b, [](const J& x, const J& y) { return x + y; }); }
  friend Form operator-(const Form& a, const Form& b) { return zip(a, b, [](const J& x, const J& y) { return x - y; }); }
  friend Form operator-(const Form& a) {
    return a.apply([](const J& x) { return -x; });
  }
  Form& operator+=(const Form& b) { return *this = *this + b; }
  Form& operator-=(const Form& b) { return *this = *this - b; }
  friend Form operator*(const S& c, const Form& a) {
    return a.apply([&](const J& x) { return c * x; });
  }
  friend Form operator*(const J& f, const Form& a) {
    return a.apply([&](const J& x) { return f * x; });
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.degree_ == b.degree_ && a.order_ == b.order_ && a.comps_ == b.comps_;
  }

  /// Coefficients of degree <= n agree in every component.
  friend bool agree_to(const Form& a, const Form& b, int n) {
    if (a.degree_ != b.degree_) return false;
    for (std::size_t i = 0; i < a.comps_.size(); ++i)
      if (!agree_to(a.comps_[i], b.comps_[i], n)) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    Form<T> out(degree_, order_);
    for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].map(f);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].is_zero()) continue;
      if (!first) os << "\n";
      first = false;
      os << mask_to_string(mask_at(i)) << ": " << comps_[i].to_string();
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  static int check_degree(int d) {
    if (d < 0 || d > 7) throw PreconditionFailed("form degree must lie in 0..7");
    return d;
  }
  std::size_t position_checked(Mask m) const {
    if (mask_degree(m) != degree_)
      throw PreconditionFailed("multi-index " + mask_to_string(m) + " does not match form degree " +
                               std::to_string(degree_));
    return static_cast<std::size_t>(MaskTable::get().position(m));
  }
  template <class F>
  static Form zip(const Form& a, const Form& b, F&& f) {
    if (a.degree_ != b.degree_)
      throw PreconditionFailed("cannot add forms of degrees " + std::to_string(a.degree_) + " and " +
                               std::to_string(b.degree_));
    if (a.order_ != b.order_)
      throw OrderMismatch("forms of orders " + std::to_string(a.order_) + " and " + std::to_string(b.order_));
    Form out = a;
    for (std::size_t i = 0; i < a.comps_.size(); ++i) out.comps_[i] = f(a.comps_[i], b.comps_[i]);
    return out;
  }

  int degree_;
  int order_;
  std::vector<J> comps_;
};

/// Vector field with jet components; index 0 is the coefficient of e_1.
template <Field S>
struct VectorField {
  std::array<Jet<S>, kDim> comp;

  VectorField() = default;
  explicit VectorField(int order) { comp.fill(Jet<S>(order)); }

  static VectorField constant(int order, int axis, const S& c = lift<S>(1)) {
    VectorField v(order);
    v.comp[axis - 1] = Jet<S>::constant(order, c);
    return v;
  }
  /// The radial field sum_i x_i e_i.
  static VectorField radial(int order) {
    VectorField v;
    for (int i = 0; i < kDim; ++i) v.comp[i] = Jet<S>::variable(order, i + 1);
    return v;
  }

  int order() const { return comp[0].order(); }
  const Jet<S>& operator[](int axis) const { return comp[axis - 1]; }
  Jet<S>& operator[](int axis) { return comp[axis - 1]; }

  int effective_order() const {
    int e = order();
    for (const auto& c : comp) e = std::min(e, c.effective_order());
    return e;
  }
  int valuation() const {
    int v = order() + 1;
    for (const auto& c : comp) v = std::min(v, c.valuation());
    return v;
  }
  int certified_valuation() const {
    int v = Jet<S>::kInfiniteValuation;
    for (const auto& c : comp) v = std::min(v, c.certified_valuation());
    return v;
  }
  bool is_exact() const {
    for (const auto& c : comp)
      if (!c.is_exact()) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }

  template <class F>
  VectorField apply(F&& f) const {
    VectorField v;
    for (int i = 0; i < kDim; ++i) v.comp[i] = f(comp[i]);
    return v;
  }
  VectorField with_order(int k) const {
    return apply([k](const Jet<S>& c) { return c.with_order(k); });
  }
  VectorField as_exact() const {
    return apply([](const Jet<S>& c) { return c.as_exact(); });
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField v;
    for (int i = 0; i < kDim; ++i) v.comp[i] = a.comp[i] + b.comp[i];
    return v;
  }
  friend VectorField operator-(const VectorField& a) {
    return a.apply([](const Jet<S>& c) { return -c; });
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }
  friend VectorField operator*(const S& c, const VectorField& a) {
    return a.apply([&](const Jet<S>& x) { return c * x; });
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comp == b.comp; }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    VectorField<T> v;
    for (int i = 0; i < kDim; ++i) v.comp[i] = comp[i].map(f);
    return v;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < kDim; ++i)
      if (!comp[i].is_zero()) os << "e_" << i + 1 << ": " << comp[i].to_string() << "\n";
    return os.str();
  }
};

}  // namespace g2jet
