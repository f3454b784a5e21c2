#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace banach {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "1";

// One batch experiment: a command plus its parameter object. Identical
// scenarios reproduce identical result values for any worker count.
struct Scenario {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output_path;  // empty: derived from the command
};

struct Validation {
  std::vector<std::string> errors;    // schema violations -> exit 2
  std::vector<std::string> capacity;  // resource-cap violations -> exit 3
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty() && capacity.empty(); }
  int exit_code() const {
    if (ok()) return 0;
    return errors.empty() ? 3 : 2;
  }
};

const std::vector<std::string>& scenario_commands();

// Pure schema check; never runs an estimator.
Validation validate_scenario(const nlohmann::json& scenario);

Scenario parse_scenario(const nlohmann::json& scenario);

struct RunOptions {
  int workers = 0;          // 0: keep the current worker count
  std::string out_dir = ".";
  bool write_files = true;  // report JSON (and CSV for growth-curve)
};

// Validates, dispatches, and returns the full report. The "results" subtree
// is a pure function of (scenario, seed); environment and timing live
// outside it.
nlohmann::json run_scenario(const Scenario& s, const RunOptions& opt = {});

}  // namespace banach
