#pragma once

// One checked statement of a verification suite: a stable id, the statement in
// words, pass/fail, and on failure the offending value.

#include <string>
#include <vector>

namespace g2jet {

struct Claim {
  std::string id;
  std::string statement;
  bool pass = false;
  std::string witness;
};

using ClaimList = std::vector<Claim>;

/// A measured quantity reported next to the claims (never pass/fail).
struct Finding {
  std::string key;
  std::string value;
};

inline bool all_pass(const ClaimList& c) {
  for (const auto& x : c)
    if (!x.pass) return false;
  return true;
}

inline void append(ClaimList& to, const ClaimList& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace g2jet
