#pragma once

// Structured run reports. The JSON document is the contract; the text form is
// a rendering of it. Timings are only included on request so that reports of
// identical runs are byte-identical.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>

#include "g2jet/verify/claim.hpp"

namespace g2jet {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportVersion = 1;

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
  return out;
}

struct Section {
  std::string name;
  ClaimList claims;
  std::vector<Finding> findings;
  std::optional<double> seconds;
};

struct Report {
  std::string command;
  std::string inputs;  // canonical description of every input; only its digest is stored
  std::string backend = "rational";
  std::vector<Section> sections;
  std::string error;  // set when the command stopped before producing claims
  int exit_code = 0;

  bool all_pass() const {
    for (const auto& s : sections)
      if (!g2jet::all_pass(s.claims)) return false;
    return error.empty();
  }

  nlohmann::json to_json(bool timings = false) const {
    nlohmann::json secs = nlohmann::json::array();
    std::size_t passed = 0, total = 0;
    for (const auto& s : sections) {
      nlohmann::json claims = nlohmann::json::array();
      for (const auto& c : s.claims) {
        ++total;
        passed += c.pass;
        nlohmann::json e = {{"id", c.id}, {"statement", c.statement}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.pass) e["witness"] = c.witness;
        claims.push_back(std::move(e));
      }
      nlohmann::json findings = nlohmann::json::array();
      for (const auto& f : s.findings) findings.push_back({{"key", f.key}, {"value", f.value}});
      nlohmann::json sj = {{"name", s.name}, {"claims", std::move(claims)}, {"findings", std::move(findings)}};
      if (timings && s.seconds) sj["seconds"] = *s.seconds;
      secs.push_back(std::move(sj));
    }
    nlohmann::json j = {{"report_version", kReportVersion},
                        {"artifact_version", kVersion},
                        {"command", command},
                        {"inputs_digest", fnv1a_hex(inputs)},
                        {"backend", backend},
                        {"sections", std::move(secs)},
                        {"summary", {{"claims", total}, {"passed", passed}, {"all_pass", all_pass()}}},
                        {"exit_code", exit_code}};
    if (!error.empty()) j["error"] = error;
    return j;
  }

  std::string to_text(bool timings = false) const {
    std::ostringstream os;
    os << "g2jet " << kVersion << "  " << command << "  backend " << backend << "  inputs " << fnv1a_hex(inputs)
       << "\n";
    for (const auto& s : sections) {
      os << "\n[" << s.name << "]";
      if (timings && s.seconds) os << "  " << *s.seconds << " s";
      os << "\n";
      for (const auto& c : s.claims) {
        os << "  " << (c.pass ? "PASS " : "FAIL ") << c.id << "  " << c.statement << "\n";
        if (!c.pass && !c.witness.empty()) os << "       witness: " << c.witness << "\n";
      }
      for (const auto& f : s.findings) os << "  " << f.key << " = " << f.value << "\n";
    }
    if (!error.empty()) os << "\nerror: " << error << "\n";
    std::size_t passed = 0, total = 0;
    for (const auto& s : sections)
      for (const auto& c : s.claims) {
        ++total;
        passed += c.pass;
      }
    os << "\n" << passed << "/" << total << " claims pass\n";
    return os.str();
  }
};

}  // namespace g2jet
