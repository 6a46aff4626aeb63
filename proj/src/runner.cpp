#include "seesaw/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace seesaw {

namespace {

constexpr double kTruncationWarning = 1e-4;
constexpr double kStepCheckWarning = 1e-4;

// Requested outputs plus every diagnostic monitor of the model.
ObservableSet selected_observables(const Scenario& s) {
  const ObservableSet all = scenario_observables(s);
  ObservableSet out;
  for (const auto& name : s.outputs) out.add(all.at(name));
  for (const auto& o : all.items()) {
    if (o.diagnostic) out.add(o);
  }
  return out;
}

std::vector<double> final_output_values(const Scenario& s, const TrajectoryRecord& r) {
  std::vector<double> v;
  for (const auto& name : s.outputs) {
    const Series& series = r.series(name);
    v.push_back(series.values.back().real());
    if (series.is_complex) v.push_back(series.values.back().imag());
  }
  return v;
}

TrajectoryRecord run_deterministic(const Scenario& s, const IntegratorConfig& cfg) {
  switch (s.solver) {
    case SolverKind::meanfield:
      return integrate_meanfield(s.twosite(), scenario_meanfield_state(s), cfg);
    case SolverKind::schrodinger: {
      const SparseOperator H = s.model == ModelKind::seesaw ? build_seesaw_hamiltonian(s.seesaw())
                                                            : scenario_cavity_model(s).hamiltonian;
      return propagate_schrodinger(H, scenario_initial_state(s), cfg, selected_observables(s));
    }
    case SolverKind::lindblad: {
      const CavityModel m = scenario_cavity_model(s);
      return integrate_lindblad(m.hamiltonian, m.jumps(), DensityMatrix::from_pure(scenario_initial_state(s)),
                                cfg, selected_observables(s));
    }
    case SolverKind::mcwf: break;
  }
  throw SeesawError("not a deterministic solver");
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunOutput execute_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  if (s.solver == SolverKind::mcwf) {
    const CavityModel m = scenario_cavity_model(s);
    const StateVector psi0 = scenario_initial_state(s);
    if (s.ensemble.n_traj == 1) {
      out.record = run_mcwf_trajectory(m.hamiltonian, m.jumps(), psi0, s.integrator,
                                       trajectory_seed(s.ensemble.master_seed, 0), selected_observables(s));
    } else {
      EnsembleResult e = run_mcwf_ensemble(m.hamiltonian, m.jumps(), psi0, s.integrator, s.ensemble,
                                           selected_observables(s));
      out.record = std::move(e.aggregate);
      out.standard_errors = std::move(e.standard_errors);
    }
  } else {
    out.record = run_deterministic(s, s.integrator);
    if (s.step_check) {
      const std::vector<double> coarse = final_output_values(s, out.record);
      const TrajectoryRecord fine = run_deterministic(s, s.integrator.refined());
      const std::vector<double> refined = final_output_values(s, fine);
      double change = 0.0;
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        change = std::max(change, std::abs(refined[i] - coarse[i]) / std::max(std::abs(refined[i]), 1.0));
      }
      out.step_check_change = change;
      if (change > kStepCheckWarning) {
        out.warnings.push_back("halving dt changes final outputs by " + format_number(change) +
                               " (relative); consider a smaller dt");
      }
    }
  }
  for (const auto& series : out.record.observables) {
    if (!series.diagnostic) continue;
    double peak = 0.0;
    for (const auto& v : series.values) peak = std::max(peak, v.real());
    if (peak > kTruncationWarning) {
      out.warnings.push_back(series.name + " reaches " + format_number(peak) +
                             "; the basis cutoff may be too small");
    }
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string format_timeseries_csv(const Scenario& s, const TrajectoryRecord& record) {
  std::vector<const Series*> columns;
  std::ostringstream os;
  os << "time";
  for (const auto& name : s.outputs) {
    const Series& series = record.series(name);
    columns.push_back(&series);
    if (series.is_complex) {
      os << ",re_" << name << ",im_" << name;
    } else {
      os << ',' << name;
    }
  }
  os << '\n';
  for (std::size_t row = 0; row < record.times.size(); ++row) {
    os << format_number(record.times[row]);
    for (const Series* series : columns) {
      const Complex v = series->values.at(row);
      os << ',' << format_number(v.real());
      if (series->is_complex) os << ',' << format_number(v.imag());
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string format_meta(const Scenario& s, const RunOutput& out) {
  std::ostringstream os;
  os << "[config]\n";
  for (const auto& [key, value] : s.resolved) os << key << " = " << value << '\n';

  os << "\n[seeds]\n";
  if (s.solver == SolverKind::mcwf) {
    os << "master_seed = " << s.ensemble.master_seed << '\n';
    os << "trajectory_seeds =";
    for (std::size_t k = 0; k < s.ensemble.n_traj; ++k) {
      os << (k ? ", " : " ") << trajectory_seed(s.ensemble.master_seed, k);
    }
    os << '\n';
    os << "jumps_total = " << out.record.jump_times.size() << '\n';
  } else {
    os << "deterministic = true\n";
  }

  os << "\n[truncation]\n";
  bool any = false;
  for (const auto& series : out.record.observables) {
    if (!series.diagnostic) continue;
    double peak = 0.0;
    for (const auto& v : series.values) peak = std::max(peak, v.real());
    os << "max_" << series.name << " = " << format_number(peak) << '\n';
    any = true;
  }
  if (!any) os << "none = mean-field run has no truncated basis\n";

  os << "\n[run]\n";
  os << "records = " << out.record.times.size() << '\n';
  os << "max_norm_drift = " << format_number(out.record.max_norm_drift) << '\n';
  if (out.step_check_change) os << "step_check_change = " << format_number(*out.step_check_change) << '\n';
  for (const auto& w : out.warnings) os << "warning = " << w << '\n';
  os << "wall_seconds = " << format_number(out.wall_seconds) << '\n';
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SeesawError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw SeesawError("write failed for '" + path.string() + "'");
}

}  // namespace

int run_scenario(const Scenario& s, const std::filesystem::path& out_dir, std::ostream& err) {
  RunOutput out;
  try {
    out = execute_scenario(s);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  for (const auto& w : out.warnings) err << "warning: " << w << '\n';
  try {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / "timeseries.csv", format_timeseries_csv(s, out.record));
    write_file(out_dir / "meta.txt", format_meta(s, out));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace seesaw
