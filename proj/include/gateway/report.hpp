#ifndef GATEWAY_REPORT_HPP
#define GATEWAY_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gateway {

enum class CheckKind { deterministic, statistical };

// One verified identity or goodness-of-fit result. `paper_ref` names the
// identity the check exercises (stable label, see docs/formats.md).
struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::deterministic;
  double statistic = 0.0;
  double threshold = 0.0;  // tolerance for deterministic checks, alpha for statistical
  bool pass = false;
  std::string paper_ref;
};

struct VerificationReport {
  std::string suite;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  long runtime_ms = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline constexpr const char* kReportVersion = "1.0.0";

// stable-field-order JSON object, UTF-8; serialized form is newline-terminated
std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
void write_report_file(const std::string& path, const std::string& json_text);
VerificationReport report_from_json(const std::string& json_text);

}  // namespace gateway

#endif
