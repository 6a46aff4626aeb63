// Command-line front end: run scenarios, list built-ins, run oracle checks.

#include "seesaw/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace seesaw;

namespace {

int cmd_run(const std::string& target, const std::string& out_dir, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> traj) {
  Scenario s;
  try {
    s = resolve_scenario(target);
    if (seed) s.ensemble.master_seed = *seed;
    if (traj) s.ensemble.n_traj = *traj;
    if (seed || traj) finalize_scenario(s);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  const std::string dir = out_dir.empty() ? "out/" + (s.name.empty() ? std::string("run") : s.name) : out_dir;
  const int code = run_scenario(s, dir, std::cerr);
  if (code == 0) std::cout << "wrote " << dir << "/timeseries.csv and " << dir << "/meta.txt\n";
  return code;
}

int cmd_list() {
  for (const auto& b : list_builtin_scenarios()) std::cout << b.name << "\t" << b.description << '\n';
  return 0;
}

int cmd_check() {
  int failed = 0;
  for (const auto& c : run_oracle_checks()) {
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << "]\n";
    failed += c.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " check(s) failed\n" : std::string("all checks passed\n"));
  return failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-lattice seesaw simulations"};
  app.require_subcommand(1);

  std::string target, out_dir;
  std::uint64_t seed = 0;
  std::size_t traj = 0;
  auto* run = app.add_subcommand("run", "Run a scenario file or built-in scenario");
  run->add_option("scenario", target, "Scenario file path or built-in name")->required();
  run->add_option("--out", out_dir, "Output directory (default out/<name>)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the master seed");
  auto* traj_opt = run->add_option("--traj", traj, "Override the trajectory count")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "List built-in scenarios");
  auto* check = app.add_subcommand("check", "Run the fast oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      return cmd_run(target, out_dir, *seed_opt ? std::optional(seed) : std::nullopt,
                     *traj_opt ? std::optional(traj) : std::nullopt);
    }
    if (*list) return cmd_list();
    if (*check) return cmd_check();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
