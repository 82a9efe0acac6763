#include "gateway/report.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace gateway {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json report_to_ordered(const VerificationReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["seed"] = r.seed;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["kind"] = c.kind == CheckKind::deterministic ? "deterministic" : "statistical";
    cj["statistic"] = c.statistic;
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    cj["paper_ref"] = c.paper_ref;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["runtime_ms"] = r.runtime_ms;
  j["version"] = kReportVersion;
  return j;
}

VerificationReport report_from_ordered(const ordered_json& j) {
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& cj : j.at("checks")) {
    CheckResult c;
    c.name = cj.at("name").get<std::string>();
    c.kind = cj.at("kind").get<std::string>() == "deterministic" ? CheckKind::deterministic
                                                                 : CheckKind::statistical;
    c.statistic = cj.at("statistic").get<double>();
    c.threshold = cj.at("threshold").get<double>();
    c.pass = cj.at("pass").get<bool>();
    c.paper_ref = cj.at("paper_ref").get<std::string>();
    r.checks.push_back(c);
  }
  r.runtime_ms = j.at("runtime_ms").get<long>();
  return r;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  return report_to_ordered(report).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_ordered(r));
  return arr.dump(2) + "\n";
}

void write_report_file(const std::string& path, const std::string& json_text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << json_text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

VerificationReport report_from_json(const std::string& json_text) {
  const ordered_json j = ordered_json::parse(json_text);
  return report_from_ordered(j);
}

}  // namespace gateway
