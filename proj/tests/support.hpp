#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <ostream>

#include "g2jet/forms/form.hpp"

namespace g2jet {

template <class S>
void PrintTo(const Jet<S>& j, std::ostream* os) {
  *os << "[k=" << j.order() << " e=" << j.effective_order() << (j.is_exact() ? " exact" : "") << "] "
      << j.to_string();
}

template <class S>
void PrintTo(const Form<S>& f, std::ostream* os) {
  *os << "[deg " << f.degree() << " k=" << f.order() << " e=" << f.effective_order() << "]\n" << f.to_string();
}

template <class S>
void PrintTo(const VectorField<S>& v, std::ostream* os) {
  *os << v.to_string();
}

}  // namespace g2jet

namespace testing_support {

inline g2jet::Exponent ex(std::initializer_list<int> a) {
  g2jet::Exponent e{};
  int i = 0;
  for (int v : a) e[i++] = v;
  return e;
}

/// Both sides known to at least `need` orders and equal up to the smaller effective order.
template <class T>
::testing::AssertionResult agree(const T& a, const T& b, int need = 0) {
  const int n = std::min(a.effective_order(), b.effective_order());
  if (n < need) return ::testing::AssertionFailure() << "effective order " << n << " below " << need;
  if (!agree_to(a, b, n)) return ::testing::AssertionFailure() << "differ below degree " << n;
  return ::testing::AssertionSuccess();
}

}  // namespace testing_support
