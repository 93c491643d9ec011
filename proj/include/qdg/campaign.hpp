#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdg/report.hpp"

namespace qdg::cli {

enum Exit { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitEnvelope = 3 };

struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string f, const std::string& msg) : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

struct Campaign {
  std::string name;
  std::string description;
  std::string group;
  std::string tau = "trivial";
  std::string alpha;  // empty: same as beta
  std::string beta = "trivial";
  std::vector<std::string> subgroups{"G"};
  std::vector<int> chain_sizes{2, 3};
  int boundary_sites = 4;
  nlohmann::json lattice;  // may be null
  int rounds = 2;
  std::vector<std::string> checks;
  std::string bf_weights = "projector";
  std::string output;
  bool snapshot = false;
};

// Throws ConfigError naming the offending field.
Campaign parse_campaign(const nlohmann::json& j);
Campaign load_campaign(const std::string& path_or_name);

struct RunOptions {
  bool override_envelope = false;
  std::optional<std::string> bf_weights;
  std::optional<std::string> out_dir;
};

struct RunResult {
  int exit_code = kExitPass;
  std::string message;
  std::map<std::string, Report> suites;
  nlohmann::json summary;
};

const std::vector<std::string>& suite_order();
RunResult run_campaign(const Campaign& c, const RunOptions& opt);
// Writes <dir>/<suite>.json and <dir>/summary.json.
void write_reports(const RunResult& r, const std::string& dir);

std::string campaign_dir();
std::vector<Campaign> shipped_campaigns();
std::string describe(const std::string& name);

}  // namespace qdg::cli
