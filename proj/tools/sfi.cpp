// sfi: strong-field ionization toolkit CLI.
//
// Subcommands: validate | evolve | bounds | sweep | verify.
// Exit codes: 0 pass, 1 hypothesis/validation failure, 2 numerical
// abort, 3 configuration or I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfi/config.hpp"
#include "sfi/errors.hpp"
#include "sfi/harness.hpp"
#include "sfi/verify.hpp"
#include "sfi/version.hpp"

namespace {

sfi::RunConfig load(const std::string& config_path, const std::string& out_dir,
                    int workers) {
  sfi::RunConfig cfg = sfi::load_config(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (workers > 0) cfg.workers = workers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong-field ionization toolkit"};
  app.set_version_flag("--version", std::string(sfi::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir, scale_str = "desk", criteria_str;
  int workers = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    sub->add_option("--config", config_path, "config file (JSON)")
        ->required(config_required);
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--workers", workers, "parallel trajectories in sweeps");
  };

  CLI::App* c_validate = app.add_subcommand(
      "validate", "check bound hypotheses, pulse assumptions and state decay");
  add_common(c_validate, true);
  CLI::App* c_evolve =
      app.add_subcommand("evolve", "run a single trajectory and emit observables");
  add_common(c_evolve, true);
  CLI::App* c_bounds =
      app.add_subcommand("bounds", "evaluate the analytic bounds (no grid)");
  add_common(c_bounds, true);
  CLI::App* c_sweep = app.add_subcommand("sweep", "ladder sweep with scaling fits");
  add_common(c_sweep, true);
  CLI::App* c_verify =
      app.add_subcommand("verify", "run the acceptance criteria suite");
  add_common(c_verify, false);
  c_verify->add_option("--scale", scale_str, "smoke | desk | full")
      ->default_val("desk");
  c_verify->add_option("--criteria", criteria_str,
                       "comma-separated criterion ids (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;  // help/version exit 0, usage errors exit 3
  }

  try {
    if (c_validate->parsed()) return sfi::cmd_validate(load(config_path, out_dir, workers));
    if (c_evolve->parsed()) return sfi::cmd_evolve(load(config_path, out_dir, workers));
    if (c_bounds->parsed()) return sfi::cmd_bounds(load(config_path, out_dir, workers));
    if (c_sweep->parsed()) return sfi::cmd_sweep(load(config_path, out_dir, workers));
    if (c_verify->parsed()) {
      const sfi::Scale scale = sfi::scale_from_string(scale_str);
      std::vector<int> ids;
      if (!criteria_str.empty()) {
        std::size_t pos = 0;
        while (pos < criteria_str.size()) {
          std::size_t next = criteria_str.find(',', pos);
          if (next == std::string::npos) next = criteria_str.size();
          ids.push_back(std::stoi(criteria_str.substr(pos, next - pos)));
          pos = next + 1;
        }
      }
      const auto results = sfi::run_criteria(scale, ids);
      const std::string dir = out_dir.empty() ? std::string(".") : out_dir;
      std::filesystem::create_directories(dir);
      std::ofstream(dir + "/verdict.json") << sfi::verdict_json(results, scale);
      return sfi::verdict_exit_code(results);
    }
  } catch (const sfi::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const sfi::numerical_abort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 2;
  } catch (const sfi::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 3;
}
