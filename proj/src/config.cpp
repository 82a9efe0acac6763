#include "gateway/config.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gateway {

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
  size_t value_col;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, size_t col, const std::string& what) {
  std::ostringstream os;
  os << "config parse error at line " << line << ", column " << col << ": " << what;
  throw std::invalid_argument(os.str());
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : v + ",") {
    if (ch == ',') {
      const std::string item = trim(cur);
      if (!item.empty()) out.push_back(item);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

std::vector<double> parse_reals(const Line& ln) {
  std::vector<double> out;
  for (const std::string& item : split_list(ln.value)) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      out.push_back(v);
    } catch (...) {
      fail(ln.number, ln.value_col, "expected a real number, got '" + item + "'");
    }
  }
  if (out.empty()) fail(ln.number, ln.value_col, "empty list");
  return out;
}

}  // namespace

void ExperimentGrid::validate() const {
  if (suites.empty()) throw std::invalid_argument("config: 'suites' must be non-empty");
  for (const std::string& s : suites)
    if (!is_suite(s)) throw std::invalid_argument("config: unknown suite '" + s + "'");
  for (double b : beta_grid)
    if (!(b > 0.0)) throw std::invalid_argument("config: beta_grid entries must be > 0");
  for (double s : sigma_grid)
    if (!(s > 0.0)) throw std::invalid_argument("config: sigma_grid entries must be > 0");
  for (double t : t_grid)
    if (!(t >= 0.0)) throw std::invalid_argument("config: t_grid entries must be >= 0");
  if (n_samples < 1000) throw std::invalid_argument("config: n_samples must be >= 1000");
  // the entropy bound only holds from beta = 1/2 up
  for (const std::string& s : suites) {
    if (s != "entropy") continue;
    for (double b : beta_grid)
      if (b < 0.5)
        throw std::invalid_argument(
            "config: suite 'entropy' requires beta >= 1/2 (hypothesis of the entropy decay "
            "bound); got beta_grid entry " +
            std::to_string(b));
  }
}

ExperimentGrid parse_config(const std::string& text) {
  ExperimentGrid grid;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = raw.find('=');
    if (eq == std::string::npos) fail(number, 1, "expected 'key = value'");
    Line ln;
    ln.number = number;
    ln.key = trim(raw.substr(0, eq));
    ln.value = trim(raw.substr(eq + 1));
    ln.value_col = eq + 2;
    if (ln.key.empty()) fail(number, 1, "missing key");
    if (!seen.insert(ln.key).second) fail(number, 1, "duplicate key '" + ln.key + "'");

    if (ln.key == "suites") {
      grid.suites = split_list(ln.value);
    } else if (ln.key == "beta_grid") {
      grid.beta_grid = parse_reals(ln);
    } else if (ln.key == "sigma_grid") {
      grid.sigma_grid = parse_reals(ln);
    } else if (ln.key == "t_grid") {
      grid.t_grid = parse_reals(ln);
    } else if (ln.key == "n_samples") {
      grid.n_samples = long(parse_reals(ln).at(0));
    } else if (ln.key == "seed") {
      grid.seed = std::uint64_t(parse_reals(ln).at(0));
    } else if (ln.key == "seed_policy") {
      if (ln.value == "fixed")
        grid.seed_policy = SeedPolicy::fixed;
      else if (ln.value == "per_cell")
        grid.seed_policy = SeedPolicy::per_cell;
      else
        fail(ln.number, ln.value_col, "seed_policy must be 'fixed' or 'per_cell'");
    } else {
      fail(ln.number, 1, "unknown key '" + ln.key + "'");
    }
  }
  grid.validate();
  return grid;
}

ExperimentGrid load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// advisory lock held for the duration of one archive operation
class DirLock {
 public:
  explicit DirLock(const std::string& dir) : fd_(-1) {
    const std::string path = dir + "/.lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("cannot lock " + path);
    }
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_;
};

}  // namespace

std::string archive_report(const VerificationReport& report, const std::string& dir) {
  const std::string json = report_to_json(report);
  std::string params_key;
  for (const auto& [k, v] : report.params) params_key += k + "=" + std::to_string(v) + ";";
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx",
                (unsigned long long)fnv1a(report.suite + "#" + std::to_string(report.seed) + "#" +
                                          params_key));
  const std::string path = dir + "/" + report.suite + "_" + hash + ".json";
  DirLock lock(dir);
  write_report_file(path, json);
  return path;
}

CampaignResult run_campaign(const ExperimentGrid& grid, const std::string& dir) {
  grid.validate();
  CampaignResult result;
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  const std::vector<double> betas = grid.beta_grid.empty() ? std::vector<double>{0.0} : grid.beta_grid;
  const std::vector<double> sigmas =
      grid.sigma_grid.empty() ? std::vector<double>{0.0} : grid.sigma_grid;
  std::uint64_t cell = 0;
  for (const std::string& suite : grid.suites) {
    for (double beta : betas) {
      for (double sigma : sigmas) {
        SuiteParams params;
        params.beta = beta;
        params.sigma = sigma;
        params.n_samples = grid.n_samples;
        params.t_grid = grid.t_grid;
        const std::uint64_t seed =
            grid.seed_policy == SeedPolicy::fixed ? grid.seed : grid.seed + 1000003 * cell;
        VerificationReport report = run_suite(suite, params, seed);
        const std::string file = archive_report(report, dir);
        result.all_passed = result.all_passed && report.passed();
        nlohmann::ordered_json entry;
        entry["file"] = file.substr(file.find_last_of('/') + 1);
        entry["suite"] = suite;
        nlohmann::ordered_json pj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report.params) pj[k] = v;
        entry["params"] = pj;
        entry["pass"] = report.passed();
        index.push_back(entry);
        result.files.push_back(file);
        result.reports.push_back(std::move(report));
        ++cell;
      }
    }
  }
  result.index_file = dir + "/index.json";
  {
    DirLock lock(dir);
    write_report_file(result.index_file, index.dump(2) + "\n");
  }
  return result;
}

}  // namespace gateway
