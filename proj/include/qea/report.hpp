#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace qea {

enum class TriState : uint8_t { unchecked, yes, no };

enum class Verdict { certified, violated, inapplicable, partial };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::violated: return "violated";
    case Verdict::inapplicable: return "inapplicable";
    case Verdict::partial: return "partial";
  }
  return "?";
}

/// Stable exit-code contract: 0 certified, 1 violated, 2 inapplicable, 3 usage.
inline int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::certified: return 0;
    case Verdict::violated: return 1;
    case Verdict::inapplicable: return 2;
    case Verdict::partial: return 2;
  }
  return 3;
}

struct CertificateLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Outcome of one verification run: per-check certificate lines plus the
/// exact witnesses needed to re-check a failure without rerunning.
struct VerificationReport {
  std::string subject;
  std::vector<CertificateLine> lines;
  Verdict verdict = Verdict::certified;
  std::vector<std::string> witnesses;
  double millis = 0;

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    lines.push_back({name, ok, detail});
    if (!ok && verdict == Verdict::certified) verdict = Verdict::violated;
  }

  void inapplicable(const std::string& why) {
    verdict = Verdict::inapplicable;
    witnesses.push_back(why);
  }

  bool all_ok() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return true;
  }

  std::string text() const {
    std::ostringstream os;
    os << subject << ": " << verdict_name(verdict) << "\n";
    for (const auto& l : lines) {
      os << "  [" << (l.ok ? "ok" : "FAIL") << "] " << l.name;
      if (!l.detail.empty()) os << " -- " << l.detail;
      os << "\n";
    }
    for (const auto& w : witnesses) os << "  witness: " << w << "\n";
    return os.str();
  }
};

}  // namespace qea
