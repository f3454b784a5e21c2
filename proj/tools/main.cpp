// banachlab CLI: batch scenario runner for the random-sum laboratory.
//
//   banachlab run --scenario exp.json [--seed N] [--workers K] [--out DIR]
//   banachlab estimate-type --set space.p=1 --set space.dim=3 --set n=3
//   banachlab validate --scenario exp.json

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "banachlab/errors.hpp"
#include "banachlab/scenario.hpp"

using banach::Scenario;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInternal = 4;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw banach::input_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw banach::input_error("scenario file is not valid JSON: " + std::string(e.what()));
  }
  return j;
}

// "space.p=2" -> parameters["space"]["p"] = 2 (value parsed as JSON when
// possible, kept as a string otherwise).
void apply_override(json& params, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw banach::input_error("--set expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &params;
  std::size_t begin = 0;
  for (;;) {
    const auto dot = key.find('.', begin);
    const std::string part = key.substr(begin, dot == std::string::npos ? dot : dot - begin);
    if (part.empty()) throw banach::input_error("--set key has an empty segment: " + key);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    begin = dot + 1;
  }
}

struct CommonArgs {
  std::string scenario_file;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 0;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_file, "scenario JSON file");
  cmd->add_option("--set", args.overrides, "parameter override key=value (repeatable)");
  cmd->add_option("--seed", args.seed, "root seed")->each([&](const std::string&) {
    args.seed_given = true;
  });
  cmd->add_option("--workers", args.workers, "worker thread count (results are identical)");
  cmd->add_option("--out", args.out_dir, "output directory for reports");
}

json build_scenario_json(const std::string& command, const CommonArgs& args) {
  json scenario;
  if (!args.scenario_file.empty()) {
    scenario = load_json_file(args.scenario_file);
    if (!scenario.is_object()) throw banach::input_error("scenario must be a JSON object");
  } else {
    scenario = json{{"command", command}, {"parameters", json::object()}};
  }
  if (!command.empty()) {
    if (scenario.contains("command") && scenario.at("command") != command &&
        !args.scenario_file.empty())
      throw banach::input_error("scenario file command '" +
                                scenario.at("command").get<std::string>() +
                                "' does not match subcommand '" + command + "'");
    scenario["command"] = command;
  }
  if (!scenario.contains("parameters")) scenario["parameters"] = json::object();
  for (const std::string& kv : args.overrides) apply_override(scenario["parameters"], kv);
  if (args.seed_given) scenario["seed"] = args.seed;
  return scenario;
}

int run_command(const std::string& command, const CommonArgs& args) {
  json scenario_json = build_scenario_json(command, args);

  banach::Validation v = banach::validate_scenario(scenario_json);
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
  if (!v.ok()) {
    for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
    for (const auto& e : v.capacity) std::cerr << "capacity: " << e << "\n";
    return v.exit_code();
  }

  Scenario s = banach::parse_scenario(scenario_json);
  banach::RunOptions opt;
  opt.workers = args.workers;
  opt.out_dir = args.out_dir;
  json report = banach::run_scenario(s, opt);

  const json& results = report.at("results");
  std::cout << s.command << ": ";
  if (results.contains("lower_bound"))
    std::cout << "lower_bound = " << results.at("lower_bound").get<double>();
  else if (results.contains("ratio"))
    std::cout << "ratio = " << results.at("ratio").get<double>();
  else if (results.contains("transfer"))
    std::cout << "ratio = " << results.at("transfer").at("ratio").get<double>();
  else if (results.contains("all_pass"))
    std::cout << (results.at("all_pass").get<bool>() ? "all checks passed" : "CHECKS FAILED");
  else if (results.contains("ell_norm"))
    std::cout << "ell_norm = " << results.at("ell_norm").at("value").get<double>();
  else if (results.contains("rows"))
    std::cout << results.at("rows").size() << " rows";
  std::cout << "\n";
  std::cout << "report: " << report.at("scenario").at("output_path").get<std::string>() << "\n";
  return kExitOk;
}

int validate_command(const CommonArgs& args) {
  if (args.scenario_file.empty())
    throw banach::input_error("validate requires --scenario <file>");
  json scenario_json = build_scenario_json("", args);
  banach::Validation v = banach::validate_scenario(scenario_json);
  for (const auto& w : v.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& e : v.errors) std::cout << "error: " << e << "\n";
  for (const auto& e : v.capacity) std::cout << "capacity: " << e << "\n";
  if (v.ok()) std::cout << "ok\n";
  return v.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banachlab: random sums, type/cotype constants, and Lipschitz transfer"};
  app.set_version_flag("--version", std::string(banach::kVersion));
  app.require_subcommand(1);

  struct Sub {
    std::string command;  // empty for run/validate
    CommonArgs args;
    bool is_validate = false;
  };
  std::vector<std::unique_ptr<Sub>> subs;

  auto add_sub = [&](const std::string& name, const std::string& desc, bool is_validate,
                     const std::string& command) {
    auto sub = std::make_unique<Sub>();
    sub->command = command;
    sub->is_validate = is_validate;
    CLI::App* c = app.add_subcommand(name, desc);
    add_common(c, sub->args);
    Sub* raw = sub.get();
    c->callback([raw] {
      int code = raw->is_validate ? validate_command(raw->args)
                                  : run_command(raw->command, raw->args);
      if (code != kExitOk) throw CLI::RuntimeError(code);
    });
    subs.push_back(std::move(sub));
  };

  add_sub("run", "run a scenario file", false, "");
  add_sub("validate", "schema-check a scenario file without running it", true, "");
  for (const std::string& c : banach::scenario_commands())
    add_sub(c, "run the " + c + " scenario", false, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();  // validation/capacity codes pass through
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const banach::capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const banach::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
