#include "seesaw/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace seesaw;
namespace fs = std::filesystem;

namespace {

std::string builtin_text(const std::string& name) {
  for (const auto& [stem, text] : builtin_scenario_sources()) {
    if (stem == name) return text;
  }
  FAIL("missing built-in " << name);
  return {};
}

// Replaces the first "key = ..." line.
std::string with_value(std::string text, const std::string& key, const std::string& value) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool done = false;
  while (std::getline(in, line)) {
    if (!done && line.rfind(key + " =", 0) == 0) {
      out << key << " = " << value << '\n';
      done = true;
    } else {
      out << line << '\n';
    }
  }
  REQUIRE(done);
  return out.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("seesaw_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SEESAW_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallMcwf = R"(
[scenario]
name = small-mcwf
model = twosite-quantum
solver = mcwf
initial_state = superfluid+vacuum
outputs = photon_number, mean_a, negativity

[params]
N_atoms = 2
J = 0.2
Jtilde = 0.8
U0 = -0.5
Delta_c = -1.5
photon_cutoff = 6

[integrator]
dt = 0.01
t_final = 2
record_stride = 20

[ensemble]
n_traj = 24
master_seed = 9
)";

}  // namespace

TEST_SUITE("scenario parsing") {
  TEST_CASE("shipped fig4 carries the caption parameters") {
    const Scenario s = load_builtin_scenario("fig4");
    CHECK(s.model == ModelKind::twosite_quantum);
    const TwoSiteParams& p = s.twosite();
    CHECK(p.U0 == -2.0);
    CHECK(p.Delta_c == -6.0);
    CHECK(p.J == 0.01);
    CHECK(p.Jtilde == 1.6);
    CHECK(p.N_atoms == 2);
  }

  TEST_CASE("defaults are filled and echoed") {
    const Scenario s = parse_scenario("[scenario]\nmodel = twosite-quantum\n");
    CHECK(s.solver == SolverKind::lindblad);
    CHECK(s.initial.recipe == "superfluid");
    bool has_cutoff = false;
    for (const auto& [k, v] : s.resolved) has_cutoff |= (k == "params.photon_cutoff" && v == "16");
    CHECK(has_cutoff);
  }

  TEST_CASE("empty file is a parse error") {
    CHECK_THROWS_AS(parse_scenario(""), ConfigError);
    CHECK_THROWS_AS(parse_scenario("# only a comment\n\n"), ConfigError);
  }

  TEST_CASE("photon_cutoff = 0 names the field") {
    try {
      parse_scenario(with_value(builtin_text("fig4"), "photon_cutoff", "0"), "fig4.cfg");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "photon_cutoff");
      CHECK(std::string(e.what()).find("photon_cutoff") != std::string::npos);
    }
  }

  TEST_CASE("unknown key, duplicate key, bad number carry line numbers") {
    try {
      parse_scenario("[scenario]\nmodel = seesaw\n[params]\nomega = 2\n");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("omega") != std::string::npos);
    }
    try {
      parse_scenario("[scenario]\nmodel = seesaw\nmodel = seesaw\n");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
    }
    try {
      parse_scenario("[scenario]\nmodel = seesaw\n[params]\nJ = lots\n");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 4);
      CHECK(e.field() == "J");
    }
    CHECK_THROWS_AS(parse_scenario("[nonsense]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("model = seesaw\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel\n"), ConfigError);
  }

  TEST_CASE("fractions and comments") {
    const Scenario s = parse_scenario("[scenario]\nmodel = twosite-quantum  # inline\n[params]\nDelta_c = -2/3\n");
    CHECK(s.twosite().Delta_c == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  }

  TEST_CASE("recipe and outputs must fit the model") {
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = seesaw\ninitial_state = mott\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = twosite-quantum\ninitial_state = flat+vacuum\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = twosite-quantum\ninitial_state = mott\n[params]\nN_atoms = 3\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = seesaw\noutputs = photon_number\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = seesaw\nsolver = mcwf\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = twosite-meanfield\noutputs = negativity\n"), ConfigError);
    // Coherent field too large for the cutoff.
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = twosite-quantum\ninitial_state = superfluid+coherent\n"
                                   "[params]\nphoton_cutoff = 4\n[initial]\nalpha = 3\n"),
                    ConfigError);
  }

  TEST_CASE("lattice-derived couplings need V0 and recoil_ratio") {
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmodel = twosite-meanfield\n[params]\nJ = auto\n"), ConfigError);
    const Scenario s = load_builtin_scenario("fig3");
    CHECK(s.twosite().Jtilde > 0.0);
    CHECK(s.twosite().N_atoms == 4);
  }

  TEST_CASE("loading from a file and resolving names") {
    const fs::path dir = scratch_dir("load");
    std::ofstream(dir / "mine.cfg") << kSmallMcwf;
    CHECK(resolve_scenario((dir / "mine.cfg").string()).name == "small-mcwf");
    CHECK(resolve_scenario("fig2").name == "fig2");
    CHECK_THROWS_AS(resolve_scenario("no-such-scenario"), ConfigError);
    CHECK_THROWS_AS(load_scenario(dir / "missing.cfg"), ConfigError);
  }
}

TEST_SUITE("built-in scenarios") {
  TEST_CASE("figure and oracle scenarios are listed, load, and cite their source") {
    const auto list = list_builtin_scenarios();
    std::vector<std::string> names;
    for (const auto& b : list) names.push_back(b.name);
    for (const char* want : {"fig2", "fig3", "fig4", "fig5", "fig6", "damped-cavity", "bell-negativity"}) {
      CHECK(std::find(names.begin(), names.end(), want) != names.end());
    }
    for (const auto& b : list) {
      CHECK_NOTHROW(load_builtin_scenario(b.name));
      if (b.name.rfind("fig", 0) == 0) {
        CHECK(b.description.find("Fig. " + b.name.substr(3, 1)) != std::string::npos);
      }
    }
  }

  TEST_CASE("figure scenarios keep the top Fock level below 1e-4 at t = 0") {
    for (const char* name : {"fig2", "fig4", "fig4-mott", "fig5", "fig6"}) {
      const Scenario s = load_builtin_scenario(name);
      const StateVector psi = scenario_initial_state(s);
      const ObservableSet obs = scenario_observables(s);
      for (const auto& o : obs.items()) {
        if (o.diagnostic) CHECK(o.on_state(psi).real() < 1e-4);
      }
    }
  }
}

TEST_SUITE("running scenarios") {
  TEST_CASE("fig2: time, negativity, var_x columns; negativity starts at 0") {
    const fs::path dir = scratch_dir("fig2");
    const Scenario s = load_builtin_scenario("fig2");
    std::ostringstream err;
    REQUIRE(run_scenario(s, dir, err) == 0);
    std::istringstream csv(read_file(dir / "timeseries.csv"));
    std::string header, first;
    std::getline(csv, header);
    std::getline(csv, first);
    const auto cols = split(header, ',');
    REQUIRE(cols.size() >= 3);
    CHECK(cols[0] == "time");
    CHECK(cols[1] == "negativity");
    CHECK(cols[2] == "var_x");
    CHECK(std::abs(std::stod(split(first, ',')[1])) < 1e-12);
    const std::string meta = read_file(dir / "meta.txt");
    CHECK(meta.find("max_top_population:x") != std::string::npos);
    CHECK(meta.find("wall_seconds") != std::string::npos);
    CHECK(meta.find("params.J = 16") != std::string::npos);
    CHECK(err.str().find("warning") == std::string::npos);
  }

  TEST_CASE("fig3 with zero asymmetry keeps |alpha|^2 identically 0") {
    Scenario s = parse_scenario(with_value(builtin_text("fig3"), "asymmetry", "0"));
    const RunOutput out = execute_scenario(s);
    for (double v : out.record.real("photon_number")) CHECK(v == 0.0);
  }

  TEST_CASE("CSV layout: complex columns split, 17 significant digits") {
    Scenario s = parse_scenario(kSmallMcwf);
    const RunOutput out = execute_scenario(s);
    const std::string csv = format_timeseries_csv(s, out.record);
    CHECK(csv.rfind("time,photon_number,re_mean_a,im_mean_a,negativity\n", 0) == 0);
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    std::getline(in, line);
    while (std::getline(in, line)) {
      CHECK(split(line, ',').size() == 5);
      ++rows;
    }
    CHECK(rows == out.record.times.size());
  }

  TEST_CASE("same seed gives byte-identical CSV, independent of worker count") {
    Scenario s = parse_scenario(kSmallMcwf);
    std::ostringstream err;
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b"), c = scratch_dir("det_c");
    s.ensemble.workers = 1;
    REQUIRE(run_scenario(s, a, err) == 0);
    s.ensemble.workers = 3;
    REQUIRE(run_scenario(s, b, err) == 0);
    CHECK(read_file(a / "timeseries.csv") == read_file(b / "timeseries.csv"));
    s.ensemble.master_seed = 10;
    finalize_scenario(s);
    REQUIRE(run_scenario(s, c, err) == 0);
    CHECK(read_file(a / "timeseries.csv") != read_file(c / "timeseries.csv"));
  }

  TEST_CASE("bell-negativity stays at 1/2") {
    const RunOutput out = execute_scenario(load_builtin_scenario("bell-negativity"));
    for (double v : out.record.real("negativity")) CHECK(std::abs(v - 0.5) < 1e-10);
  }

  TEST_CASE("a numerical failure maps to exit code 3") {
    Scenario s = parse_scenario(kSmallMcwf);
    s.solver = SolverKind::lindblad;
    s.integrator.dt = 1.0;
    finalize_scenario(s);
    std::ostringstream err;
    CHECK(run_scenario(s, scratch_dir("fail"), err) == 3);
    CHECK(err.str().find("numerical") != std::string::npos);
  }
}

TEST_SUITE("command line") {
  TEST_CASE("exit codes") {
    const fs::path dir = scratch_dir("cli");
    CHECK(cli("list") == 0);
    CHECK(cli("check") == 0);
    CHECK(cli("run no-such-scenario --out " + dir.string()) == 2);
    std::ofstream(dir / "bad.cfg") << "[scenario]\nmodel = seesaw\n[params]\ncutoff_x = 1\n";
    CHECK(cli("run " + (dir / "bad.cfg").string() + " --out " + (dir / "o").string()) == 2);
    std::ofstream(dir / "unstable.cfg") << "[scenario]\nmodel = twosite-quantum\n[integrator]\ndt = 1\nt_final = 5\n";
    CHECK(cli("run " + (dir / "unstable.cfg").string() + " --out " + (dir / "u").string()) == 3);
    CHECK(cli("run bell-negativity --out " + (dir / "bell").string()) == 0);
    CHECK(fs::exists(dir / "bell" / "timeseries.csv"));
    CHECK(fs::exists(dir / "bell" / "meta.txt"));
    CHECK(cli("frobnicate") == 2);
  }

  TEST_CASE("--seed and --traj override the ensemble") {
    const fs::path dir = scratch_dir("cli_seed");
    std::ofstream(dir / "s.cfg") << kSmallMcwf;
    const std::string cfg = (dir / "s.cfg").string();
    REQUIRE(cli("run " + cfg + " --seed 4 --traj 5 --out " + (dir / "a").string()) == 0);
    REQUIRE(cli("run " + cfg + " --seed 4 --traj 5 --out " + (dir / "b").string()) == 0);
    CHECK(read_file(dir / "a" / "timeseries.csv") == read_file(dir / "b" / "timeseries.csv"));
    const std::string meta = read_file(dir / "a" / "meta.txt");
    CHECK(meta.find("ensemble.n_traj = 5") != std::string::npos);
    CHECK(meta.find("ensemble.master_seed = 4") != std::string::npos);
    CHECK(cli("run " + cfg + " --traj 0") == 2);
  }
}
