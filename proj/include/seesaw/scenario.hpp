#pragma once

#include "seesaw/dynamics.hpp"
#include "seesaw/models.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace seesaw {

// Malformed or invalid scenario configuration (CLI exit code 2).
class ConfigError : public SeesawError {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {});

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class ModelKind { seesaw, twosite_quantum, twosite_meanfield, fullspace_mcwf };
enum class SolverKind { schrodinger, lindblad, mcwf, meanfield };

const char* to_string(ModelKind m);
const char* to_string(SolverKind s);

// Initial-state recipe "<motion or atoms>[+<field>]", e.g. "superfluid",
// "mott", "right-localized+coherent", "flat+vacuum", "product-ground".
struct InitialStateSpec {
  std::string recipe;
  double asymmetry = 0.02;       // imbalance / N for the "asymmetric" recipe
  std::optional<Complex> alpha;  // unset: self-consistent steady-state field
  Index fock = 0;                // photon number for the "fock" field recipe
  std::optional<double> width;   // wave-packet width; unset: harmonic width
};

using ModelParams = std::variant<SeesawParams, TwoSiteParams, FullSpaceParams>;

struct Scenario {
  std::string name;
  std::string description;
  ModelKind model = ModelKind::twosite_quantum;
  SolverKind solver = SolverKind::lindblad;
  ModelParams params;
  InitialStateSpec initial;
  IntegratorConfig integrator;
  EnsembleConfig ensemble;
  bool step_check = true;  // deterministic solvers are re-run at dt/2
  std::vector<std::string> outputs;
  // Every key after defaults were applied, as "section.key" = value.
  std::vector<std::pair<std::string, std::string>> resolved;

  const TwoSiteParams& twosite() const { return std::get<TwoSiteParams>(params); }
  const FullSpaceParams& fullspace() const { return std::get<FullSpaceParams>(params); }
  const SeesawParams& seesaw() const { return std::get<SeesawParams>(params); }
};

// Flat "key = value" lines under [section] headers; '#' starts a comment.
// Unknown sections or keys, duplicates and invalid values are ConfigErrors
// carrying the line number and/or field name.
Scenario parse_scenario(const std::string& text, const std::string& source_name = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

// A path to an existing file, else a built-in scenario name.
Scenario resolve_scenario(const std::string& path_or_name);

struct BuiltinScenario {
  std::string name;
  std::string description;
};
std::vector<BuiltinScenario> list_builtin_scenarios();
Scenario load_builtin_scenario(const std::string& name);

// Raw text of every shipped scenario file, keyed by file stem.
const std::vector<std::pair<std::string, std::string>>& builtin_scenario_sources();

// Re-validates after programmatic edits and refreshes `resolved`.
void finalize_scenario(Scenario& s);

// Observables available for the scenario's model.
ObservableSet scenario_observables(const Scenario& s);
StateVector scenario_initial_state(const Scenario& s);
CavityModel scenario_cavity_model(const Scenario& s);  // two-site or full-space models
MeanFieldState scenario_meanfield_state(const Scenario& s);

struct RunOutput {
  TrajectoryRecord record;
  std::vector<Series> standard_errors;  // ensembles only
  std::optional<double> step_check_change;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

// Runs the scenario without touching the filesystem.
RunOutput execute_scenario(const Scenario& s);

// Writes timeseries.csv and meta.txt into out_dir (created if needed).
// Returns the process exit code: 0 success, 2 configuration error,
// 3 numerical failure. Errors are reported on `err`.
int run_scenario(const Scenario& s, const std::filesystem::path& out_dir, std::ostream& err);

// CSV with fixed column order: time, then outputs in declaration order;
// complex outputs split into re_/im_ columns; 17 significant digits.
std::string format_timeseries_csv(const Scenario& s, const TrajectoryRecord& record);
std::string format_number(double v);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};
// Fast analytic-oracle checks behind `seesaw check`.
std::vector<CheckResult> run_oracle_checks();

}  // namespace seesaw
