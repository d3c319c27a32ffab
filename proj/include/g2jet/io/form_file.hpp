#pragma once

// Text files for forms and vector fields (JSON).
//
//   {"format": "g2jet-form", "version": 1, "kind": "form", "degree": 3,
//    "order": 6, "backend": "rational",
//    "terms": [{"indices": [1, 2, 3], "exponents": [0, 0, 0, 0, 0, 0, 0], "coeff": "1"}, ...]}
//
// Terms are sorted by multi-index, then by monomial rank, so writing a parsed
// canonical file reproduces it byte for byte. A vector field has kind
// "vector_field" and single indices naming the ∂_i component. "effective_order"
// is present only when the data is not an exact polynomial.

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "g2jet/forms/form.hpp"
#include "g2jet/jets/bigfloat.hpp"
#include "g2jet/jets/radical.hpp"

namespace g2jet {

inline constexpr int kFormFileVersion = 1;

struct BackendSpec {
  enum class Kind { rational, radical, bigfloat } kind = Kind::rational;
  int degree = 0;      // radical
  Rational radicand;   // radical
  unsigned bits = 0;   // bigfloat

  std::string to_string() const {
    switch (kind) {
      case Kind::radical: return "radical:" + std::to_string(degree) + ":" + radicand.get_str();
      case Kind::bigfloat: return "bigfloat:" + std::to_string(bits);
      default: return "rational";
    }
  }
};

inline BackendSpec parse_backend(const std::string& s) {
  BackendSpec b;
  if (s == "rational") return b;
  auto fail = [&]() -> BackendSpec { throw ParseError("unknown backend '" + s + "'"); };
  if (s.rfind("radical:", 0) == 0) {
    const auto rest = s.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) return fail();
    b.kind = BackendSpec::Kind::radical;
    try {
      b.degree = std::stoi(rest.substr(0, colon));
    } catch (const std::exception&) {
      return fail();
    }
    b.radicand = detail::parse_rational(rest.substr(colon + 1));
    (void)RadicalField(b.degree, b.radicand);  // validates
    return b;
  }
  if (s == "bigfloat" || s.rfind("bigfloat:", 0) == 0) {
    b.kind = BackendSpec::Kind::bigfloat;
    b.bits = BigFloatScope::kDefaultBits;
    if (s.size() > 9) {
      try {
        b.bits = static_cast<unsigned>(std::stoul(s.substr(9)));
      } catch (const std::exception&) {
        return fail();
      }
    }
    if (b.bits < 32) throw ParseError("big-float precision must be at least 32 bits");
    return b;
  }
  return fail();
}

template <Field S>
std::string active_backend() {
  if constexpr (std::is_same_v<S, Radical>) return RadicalField::active().spec();
  else if constexpr (std::is_same_v<S, BigFloat>) return "bigfloat:" + std::to_string(BigFloatScope::bits());
  else return "rational";
}

namespace detail {

template <Field S>
void append_terms(nlohmann::json& out, const Jet<S>& c, const std::vector<int>& indices) {
  const auto& tab = MonomialTable::get();
  for (const auto& t : c.terms()) {
    const Exponent e = tab.exponent(t.rank);
    out.push_back({{"indices", indices},
                   {"exponents", std::vector<int>(e.begin(), e.end())},
                   {"coeff", scalar_traits<S>::to_string(t.coeff)}});
  }
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("form file: missing field '") + key + "'");
  return j.at(key);
}

inline int int_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("form file: field '") + key + "' must be an integer");
  return v.get<int>();
}

inline int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline Exponent parse_exponent(const nlohmann::json& t) {
  const auto& ex = field(t, "exponents");
  if (!ex.is_array() || ex.size() != kDim) throw ParseError("form file: exponents must list 7 integers");
  Exponent e{};
  for (int i = 0; i < kDim; ++i) {
    if (!ex[i].is_number_integer() || ex[i].get<int>() < 0)
      throw ParseError("form file: exponents must be non-negative integers");
    e[i] = ex[i].get<int>();
  }
  return e;
}

template <Field S>
S parse_coeff(const nlohmann::json& t) {
  const auto& c = field(t, "coeff");
  if (!c.is_string()) throw ParseError("form file: coeff must be a string");
  return scalar_traits<S>::parse(c.get<std::string>());
}

inline void check_header(const nlohmann::json& j, const std::string& kind, const std::string& backend) {
  if (field(j, "format") != "g2jet-form") throw ParseError("not a g2jet form file");
  if (int_field(j, "version") != kFormFileVersion)
    throw ParseError("unsupported form file version " + std::to_string(int_field(j, "version")));
  if (field(j, "kind") != kind) throw ParseError("form file: expected kind '" + kind + "'");
  // rational files embed into every backend
  if (field(j, "backend") != backend && field(j, "backend") != "rational")
    throw ParseError("form file backend '" + field(j, "backend").get<std::string>() + "' does not match active '" +
                     backend + "'");
}

/// Sorted, duplicate-free terms per component.
template <Field S>
Jet<S> assemble(int order, std::vector<typename Jet<S>::Term> terms, int eff, bool exact) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].rank == terms[i - 1].rank) throw ParseError("form file: repeated term");
  for (const auto& t : terms)
    if (scalar_traits<S>::is_zero(t.coeff)) throw ParseError("form file: zero coefficient");
  return Jet<S>::from_terms(order, std::move(terms), eff, exact);
}

}  // namespace detail

template <Field S>
nlohmann::json form_to_json(const Form<S>& a) {
  nlohmann::json j = {{"format", "g2jet-form"}, {"version", kFormFileVersion}, {"kind", "form"},
                      {"degree", a.degree()},   {"order", a.order()},          {"backend", active_backend<S>()}};
  if (!a.is_exact()) j["effective_order"] = a.effective_order();
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < a.size(); ++i) detail::append_terms(terms, a[i], mask_indices(a.mask_at(i)));
  j["terms"] = std::move(terms);
  return j;
}

template <Field S>
Form<S> form_from_json(const nlohmann::json& j) {
  detail::check_header(j, "form", active_backend<S>());
  const int m = detail::int_field(j, "degree");
  const int k = detail::int_field(j, "order");
  if (m < 0 || m > kDim) throw ParseError("form file: degree must lie in 0..7");
  if (k < 0 || k > kMaxOrder) throw ParseError("form file: order out of range");
  const bool exact = !j.contains("effective_order");
  const int eff = exact ? k : detail::int_field(j, "effective_order");
  if (eff < -1 || eff > k) throw ParseError("form file: effective order out of range");
  Form<S> out(m, k);
  std::vector<std::vector<typename Jet<S>::Term>> parts(out.size());
  const auto& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ParseError("form file: terms must be an array");
  for (const auto& t : terms) {
    const auto& idx = detail::field(t, "indices");
    if (!idx.is_array() || idx.size() != static_cast<std::size_t>(m))
      throw ParseError("form file: term has " + std::to_string(idx.size()) + " indices, degree is " +
                       std::to_string(m));
    Mask mask = 0;
    int prev = 0;
    for (const auto& x : idx) {
      if (!x.is_number_integer()) throw ParseError("form file: indices must be integers");
      const int i = x.get<int>();
      if (i <= prev || i > kDim) throw ParseError("form file: indices must be strictly increasing in 1..7");
      prev = i;
      mask = static_cast<Mask>(mask | bit(i));
    }
    const Exponent e = detail::parse_exponent(t);
    if (detail::exponent_degree(e) > k) throw ParseError("form file: term above the truncation order");
    parts[MaskTable::get().position(mask)].push_back({exponent_rank(e), detail::parse_coeff<S>(t)});
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::assemble<S>(k, std::move(parts[i]), eff, exact);
  return out;
}

template <Field S>
nlohmann::json field_to_json(const VectorField<S>& v) {
  nlohmann::json j = {{"format", "g2jet-form"}, {"version", kFormFileVersion}, {"kind", "vector_field"},
                      {"order", v.order()},     {"backend", active_backend<S>()}};
  if (!v.is_exact()) j["effective_order"] = v.effective_order();
  nlohmann::json terms = nlohmann::json::array();
  for (int i = 0; i < kDim; ++i) detail::append_terms(terms, v.comp[i], {i + 1});
  j["terms"] = std::move(terms);
  return j;
}

template <Field S>
VectorField<S> field_from_json(const nlohmann::json& j) {
  detail::check_header(j, "vector_field", active_backend<S>());
  const int k = detail::int_field(j, "order");
  if (k < 0 || k > kMaxOrder) throw ParseError("form file: order out of range");
  const bool exact = !j.contains("effective_order");
  const int eff = exact ? k : detail::int_field(j, "effective_order");
  std::array<std::vector<typename Jet<S>::Term>, kDim> parts;
  for (const auto& t : detail::field(j, "terms")) {
    const auto& idx = detail::field(t, "indices");
    if (!idx.is_array() || idx.size() != 1 || !idx[0].is_number_integer() || idx[0].get<int>() < 1 ||
        idx[0].get<int>() > kDim)
      throw ParseError("vector field file: each term needs one index in 1..7");
    const Exponent e = detail::parse_exponent(t);
    if (detail::exponent_degree(e) > k) throw ParseError("form file: term above the truncation order");
    parts[idx[0].get<int>() - 1].push_back({exponent_rank(e), detail::parse_coeff<S>(t)});
  }
  VectorField<S> v(k);
  for (int i = 0; i < kDim; ++i) v.comp[i] = detail::assemble<S>(k, std::move(parts[i]), eff, exact);
  return v;
}

/// Canonical text: two-space indentation and a trailing newline.
inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

/// Canonical form-file text: one header field per line, one term per line.
inline std::string dump_form_file(const nlohmann::json& j) {
  std::string out = "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + nlohmann::json(it.key()).dump() + ": ";
    if (it.key() == "terms" && it->is_array() && !it->empty()) {
      out += "[\n";
      for (std::size_t i = 0; i < it->size(); ++i) out += "    " + (*it)[i].dump() + (i + 1 < it->size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += it->dump();
    }
  }
  return out + "\n}\n";
}

/// Writes through a temporary file in the same directory and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

/// Reads just the backend of a form file, to pick the scalar type before parsing.
inline std::string peek_backend(const nlohmann::json& j) {
  const auto& b = detail::field(j, "backend");
  if (!b.is_string()) throw ParseError("form file: backend must be a string");
  return b.get<std::string>();
}

}  // namespace g2jet
