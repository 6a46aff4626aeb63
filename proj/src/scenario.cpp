#include "seesaw/scenario.hpp"

#include "seesaw/initial_states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace seesaw {

ConfigError::ConfigError(const std::string& message, int line, std::string field)
    : SeesawError(message), line_(line), field_(std::move(field)) {}

const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::seesaw: return "seesaw";
    case ModelKind::twosite_quantum: return "twosite-quantum";
    case ModelKind::twosite_meanfield: return "twosite-meanfield";
    case ModelKind::fullspace_mcwf: return "fullspace-mcwf";
  }
  return "?";
}

const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::schrodinger: return "schrodinger";
    case SolverKind::lindblad: return "lindblad";
    case SolverKind::mcwf: return "mcwf";
    case SolverKind::meanfield: return "meanfield";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

const std::set<std::string> kSections = {"scenario", "params", "initial", "integrator", "ensemble"};

// Raw key/value store with line numbers; reading marks keys as used.
class RawConfig {
 public:
  RawConfig(const std::string& text, const std::string& source) : source_(source) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      // '#' begins a comment at line start or after whitespace.
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
          line.resize(i);
          break;
        }
      }
      const std::string t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') throw error("malformed section header '" + t + "'", number);
        section = trim(std::string_view(t).substr(1, t.size() - 2));
        if (!kSections.count(section)) throw error("unknown section [" + section + "]", number);
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw error("expected 'key = value', got '" + t + "'", number);
      if (section.empty()) throw error("key outside of any [section]", number);
      const std::string key = trim(std::string_view(t).substr(0, eq));
      const std::string value = trim(std::string_view(t).substr(eq + 1));
      if (key.empty()) throw error("empty key", number);
      const std::string full = section + "." + key;
      if (entries_.count(full)) throw error("duplicate key '" + key + "' in [" + section + "]", number);
      entries_[full] = Entry{value, number, false};
    }
    if (entries_.empty()) throw error("no settings found (empty scenario file)", number > 0 ? number : 1);
  }

  ConfigError error(const std::string& what, int line, const std::string& field = {}) const {
    std::ostringstream os;
    os << source_;
    if (line > 0) os << ":" << line;
    os << ": " << what;
    return ConfigError(os.str(), line, field);
  }

  Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_) {
      if (!e.used) throw error("unknown key '" + key.substr(key.find('.') + 1) + "' in [" +
                                   key.substr(0, key.find('.')) + "]",
                               e.line, key);
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

double parse_plain_double(const std::string& s, bool& ok) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  ok = res.ec == std::errc() && res.ptr == end;
  return v;
}

// Accepts decimals and simple fractions such as "-2/3".
double parse_double(RawConfig& cfg, const std::string& key, const Entry& e) {
  bool ok = false;
  double v = 0.0;
  const auto slash = e.value.find('/');
  if (slash == std::string::npos) {
    v = parse_plain_double(e.value, ok);
  } else {
    bool ok_num = false, ok_den = false;
    const double num = parse_plain_double(trim(e.value.substr(0, slash)), ok_num);
    const double den = parse_plain_double(trim(e.value.substr(slash + 1)), ok_den);
    ok = ok_num && ok_den && den != 0.0;
    v = ok ? num / den : 0.0;
  }
  if (!ok || !std::isfinite(v)) {
    throw cfg.error("invalid number '" + e.value + "' for " + key, e.line, key);
  }
  return v;
}

long long parse_integer(RawConfig& cfg, const std::string& key, const Entry& e) {
  long long v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc() || res.ptr != e.value.data() + e.value.size()) {
    throw cfg.error("invalid integer '" + e.value + "' for " + key, e.line, key);
  }
  return v;
}

bool parse_bool(RawConfig& cfg, const std::string& key, const Entry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw cfg.error("invalid boolean '" + e.value + "' for " + key, e.line, key);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

// Reads optional keys of one section into typed targets.
class SectionReader {
 public:
  SectionReader(RawConfig& cfg, std::string section) : cfg_(cfg), section_(std::move(section)) {}

  const Entry* raw(const std::string& key) { return cfg_.find(section_ + "." + key); }

  void number(const std::string& key, double& target) {
    if (const Entry* e = raw(key)) target = parse_double(cfg_, key, *e);
  }
  template <typename Int>
  void integer(const std::string& key, Int& target) {
    if (const Entry* e = raw(key)) target = static_cast<Int>(parse_integer(cfg_, key, *e));
  }
  void boolean(const std::string& key, bool& target) {
    if (const Entry* e = raw(key)) target = parse_bool(cfg_, key, *e);
  }
  void text(const std::string& key, std::string& target) {
    if (const Entry* e = raw(key)) target = e->value;
  }
  int line(const std::string& key) {
    const Entry* e = raw(key);
    return e ? e->line : 0;
  }

 private:
  RawConfig& cfg_;
  std::string section_;
};

ModelKind parse_model(RawConfig& cfg, const Entry* e) {
  if (!e) throw cfg.error("missing required key 'model' in [scenario]", 0, "model");
  if (e->value == "seesaw") return ModelKind::seesaw;
  if (e->value == "twosite-quantum") return ModelKind::twosite_quantum;
  if (e->value == "twosite-meanfield") return ModelKind::twosite_meanfield;
  if (e->value == "fullspace-mcwf") return ModelKind::fullspace_mcwf;
  throw cfg.error("unknown model '" + e->value + "'", e->line, "model");
}

SolverKind default_solver(ModelKind m) {
  switch (m) {
    case ModelKind::seesaw: return SolverKind::schrodinger;
    case ModelKind::twosite_quantum: return SolverKind::lindblad;
    case ModelKind::twosite_meanfield: return SolverKind::meanfield;
    case ModelKind::fullspace_mcwf: return SolverKind::mcwf;
  }
  return SolverKind::lindblad;
}

std::vector<std::string> default_outputs(ModelKind m) {
  switch (m) {
    case ModelKind::seesaw: return {"negativity", "var_x"};
    case ModelKind::twosite_quantum: return {"photon_number", "negativity", "pair_correlation", "imbalance"};
    case ModelKind::twosite_meanfield: return {"photon_number", "imbalance"};
    case ModelKind::fullspace_mcwf: return {"photon_number", "negativity"};
  }
  return {};
}

std::string default_recipe(ModelKind m) {
  switch (m) {
    case ModelKind::seesaw: return "product-ground";
    case ModelKind::twosite_quantum:
    case ModelKind::twosite_meanfield: return "superfluid";
    case ModelKind::fullspace_mcwf: return "flat+vacuum";
  }
  return {};
}

bool solver_allowed(ModelKind m, SolverKind s) {
  switch (m) {
    case ModelKind::seesaw: return s == SolverKind::schrodinger;
    case ModelKind::twosite_meanfield: return s == SolverKind::meanfield;
    case ModelKind::twosite_quantum:
    case ModelKind::fullspace_mcwf: return s != SolverKind::meanfield;
  }
  return false;
}

std::string format_complex(Complex z) { return format_number(z.real()) + ", " + format_number(z.imag()); }

struct RecipeParts {
  std::string base;
  std::string field;  // empty when absent
};

RecipeParts split_recipe(const std::string& recipe) {
  const auto plus = recipe.find('+');
  if (plus == std::string::npos) return {recipe, {}};
  return {recipe.substr(0, plus), recipe.substr(plus + 1)};
}

Ket twosite_atomic_state(const std::string& base, int N, double asymmetry) {
  if (base == "superfluid") return twosite::superfluid(N);
  if (base == "mott") return twosite::mott(N);
  if (base == "all-left" || base == "left") return twosite::all_left(N);
  if (base == "all-right" || base == "right") return twosite::all_right(N);
  if (base == "asymmetric") return twosite::tilted_superfluid(N, asymmetry * N);
  throw SeesawError("unknown two-site atomic state '" + base + "'");
}

double mean_of(const SparseMatrix& op, const Ket& v) { return v.dot(op * v).real() / v.squaredNorm(); }

Ket field_state(const std::string& field, Index cutoff, const std::optional<Complex>& alpha,
                Complex auto_alpha, Index fock) {
  if (field.empty() || field == "vacuum") return fock_amplitudes(0, cutoff);
  if (field == "coherent") return coherent_amplitudes(alpha.value_or(auto_alpha), cutoff);
  if (field == "fock") return fock_amplitudes(fock, cutoff);
  throw SeesawError("unknown field state '" + field + "'");
}

}  // namespace

// ------------------------------------------------------------ parsing ---

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
  RawConfig cfg(text, source_name);
  Scenario s;
  SectionReader sc(cfg, "scenario");
  sc.text("name", s.name);
  sc.text("description", s.description);
  s.model = parse_model(cfg, sc.raw("model"));
  s.solver = default_solver(s.model);
  if (const Entry* e = sc.raw("solver")) {
    const std::string& v = e->value;
    if (v == "schrodinger") s.solver = SolverKind::schrodinger;
    else if (v == "lindblad") s.solver = SolverKind::lindblad;
    else if (v == "mcwf") s.solver = SolverKind::mcwf;
    else if (v == "meanfield") s.solver = SolverKind::meanfield;
    else throw cfg.error("unknown solver '" + v + "'", e->line, "solver");
    if (!solver_allowed(s.model, s.solver)) {
      throw cfg.error(std::string("solver '") + v + "' is not available for model " + to_string(s.model),
                      e->line, "solver");
    }
  }
  s.initial.recipe = default_recipe(s.model);
  sc.text("initial_state", s.initial.recipe);
  s.outputs = default_outputs(s.model);
  if (const Entry* e = sc.raw("outputs")) s.outputs = split_list(e->value);

  SectionReader pr(cfg, "params");
  switch (s.model) {
    case ModelKind::seesaw: {
      SeesawParams p;
      pr.number("omega_x", p.omega_x);
      pr.number("omega_phi", p.omega_phi);
      pr.number("J", p.J);
      pr.integer("cutoff_x", p.cutoff_x);
      pr.integer("cutoff_phi", p.cutoff_phi);
      s.params = p;
      break;
    }
    case ModelKind::twosite_quantum:
    case ModelKind::twosite_meanfield: {
      TwoSiteParams p;
      pr.number("U0", p.U0);
      pr.number("Delta_c", p.Delta_c);
      pr.number("kappa", p.kappa);
      pr.integer("N_atoms", p.N_atoms);
      pr.integer("photon_cutoff", p.photon_cutoff);
      std::optional<double> V0, recoil;
      if (const Entry* e = pr.raw("V0")) V0 = parse_double(cfg, "V0", *e);
      if (const Entry* e = pr.raw("recoil_ratio")) recoil = parse_double(cfg, "recoil_ratio", *e);
      const Entry* J = pr.raw("J");
      const Entry* Jt = pr.raw("Jtilde");
      const bool lattice = (J && J->value == "auto") || (Jt && Jt->value == "auto");
      if (lattice) {
        if (!V0 || !recoil) {
          throw cfg.error("J/Jtilde = auto needs V0 and recoil_ratio in [params]",
                          (J ? J->line : Jt->line), "J");
        }
        WannierData w{};
        try {
          w = compute_wannier_couplings(*V0, p.U0, *recoil);
        } catch (const SeesawError& ex) {
          throw cfg.error(ex.what(), pr.line("V0"), "V0");
        }
        p.J = w.J;
        p.Jtilde = w.Jtilde;
        s.resolved.emplace_back("params.lattice_source", "V0 = " + format_number(*V0) +
                                                             ", recoil_ratio = " + format_number(*recoil));
      }
      if (J && J->value != "auto") p.J = parse_double(cfg, "J", *J);
      if (Jt && Jt->value != "auto") p.Jtilde = parse_double(cfg, "Jtilde", *Jt);
      s.params = p;
      break;
    }
    case ModelKind::fullspace_mcwf: {
      FullSpaceParams p;
      pr.number("V0", p.V0);
      pr.number("U0", p.U0);
      pr.number("Delta_c", p.Delta_c);
      pr.number("kappa", p.kappa);
      pr.number("recoil_ratio", p.recoil_ratio);
      pr.integer("n_momentum", p.n_momentum);
      pr.integer("photon_cutoff", p.photon_cutoff);
      s.params = p;
      break;
    }
  }

  SectionReader in(cfg, "initial");
  in.number("asymmetry", s.initial.asymmetry);
  in.integer("fock", s.initial.fock);
  if (const Entry* e = in.raw("alpha")) {
    if (e->value != "auto") {
      const auto parts = split_list(e->value);
      if (parts.empty() || parts.size() > 2) {
        throw cfg.error("alpha must be 'auto', 're' or 're, im'", e->line, "alpha");
      }
      const double re = parse_double(cfg, "alpha", Entry{parts[0], e->line, true});
      const double im = parts.size() == 2 ? parse_double(cfg, "alpha", Entry{parts[1], e->line, true}) : 0.0;
      s.initial.alpha = Complex(re, im);
    }
  }
  if (const Entry* e = in.raw("width")) {
    if (e->value != "auto") s.initial.width = parse_double(cfg, "width", *e);
  }

  SectionReader ig(cfg, "integrator");
  ig.number("dt", s.integrator.dt);
  ig.number("t_final", s.integrator.t_final);
  ig.integer("record_stride", s.integrator.record_stride);
  if (const Entry* e = ig.raw("method")) {
    if (e->value != "rk4") throw cfg.error("unknown method '" + e->value + "' (only rk4)", e->line, "method");
  }
  ig.boolean("step_check", s.step_check);

  SectionReader en(cfg, "ensemble");
  en.integer("n_traj", s.ensemble.n_traj);
  if (const Entry* e = en.raw("n_traj")) {
    if (parse_integer(cfg, "n_traj", *e) < 1) throw cfg.error("n_traj must be >= 1", e->line, "n_traj");
  }
  en.integer("master_seed", s.ensemble.master_seed);
  en.integer("workers", s.ensemble.workers);

  cfg.reject_unused();

  try {
    finalize_scenario(s);
  } catch (const ConfigError&) {
    throw;
  } catch (const SeesawError& ex) {
    throw ConfigError(source_name + ": " + ex.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

std::vector<BuiltinScenario> list_builtin_scenarios() {
  std::vector<BuiltinScenario> out;
  for (const auto& [name, text] : builtin_scenario_sources()) {
    const Scenario s = parse_scenario(text, name + ".cfg");
    out.push_back({name, s.description});
  }
  return out;
}

Scenario load_builtin_scenario(const std::string& name) {
  for (const auto& [stem, text] : builtin_scenario_sources()) {
    if (stem == name) return parse_scenario(text, stem + ".cfg");
  }
  throw ConfigError("no scenario file or built-in scenario named '" + name + "'");
}

Scenario resolve_scenario(const std::string& path_or_name) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_name, ec)) return load_scenario(path_or_name);
  return load_builtin_scenario(path_or_name);
}

// ---------------------------------------------------------- validation ---

namespace {

// Validation failures name the offending field.
void check(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError("invalid " + field + ": " + message, 0, field);
}

template <typename Params>
void validate_params(const Params& p) {
  try {
    p.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const SeesawError& ex) {
    const std::string msg = ex.what();
    const std::string field = msg.substr(0, msg.find(' '));
    throw ConfigError("invalid " + field + ": " + msg, 0, field);
  }
}

}  // namespace

void finalize_scenario(Scenario& s) {
  std::visit([](const auto& p) { validate_params(p); }, s.params);
  check(s.integrator.dt > 0.0, "dt", "must be > 0");
  check(s.integrator.t_final >= s.integrator.dt, "t_final", "must be >= dt");
  check(s.integrator.record_stride >= 1, "record_stride", "must be >= 1");
  check(s.ensemble.n_traj >= 1, "n_traj", "must be >= 1");
  check(solver_allowed(s.model, s.solver), "solver",
        std::string(to_string(s.solver)) + " is not available for " + to_string(s.model));
  check(!s.outputs.empty(), "outputs", "at least one observable required");

  std::set<std::string> seen;
  if (s.model == ModelKind::twosite_meanfield) {
    const std::set<std::string> known = {"photon_number", "alpha", "imbalance", "pair_correlation"};
    for (const auto& o : s.outputs) {
      check(known.count(o) > 0, "outputs", "'" + o + "' is not defined for the mean-field model");
      check(seen.insert(o).second, "outputs", "'" + o + "' listed twice");
    }
  } else {
    const ObservableSet available = scenario_observables(s);
    for (const auto& o : s.outputs) {
      check(available.contains(o) && !available.at(o).diagnostic, "outputs",
            "'" + o + "' is not defined for model " + to_string(s.model));
      check(seen.insert(o).second, "outputs", "'" + o + "' listed twice");
    }
  }

  // Building the initial state validates the recipe against the model.
  try {
    if (s.model == ModelKind::twosite_meanfield) {
      (void)scenario_meanfield_state(s);
    } else {
      (void)scenario_initial_state(s);
    }
  } catch (const SeesawError& ex) {
    throw ConfigError(std::string("invalid initial_state: ") + ex.what(), 0, "initial_state");
  }

  auto& r = s.resolved;
  std::vector<std::pair<std::string, std::string>> lattice;
  for (const auto& kv : r) {
    if (kv.first == "params.lattice_source") lattice.push_back(kv);
  }
  r.clear();
  r.emplace_back("scenario.name", s.name);
  r.emplace_back("scenario.description", s.description);
  r.emplace_back("scenario.model", to_string(s.model));
  r.emplace_back("scenario.solver", to_string(s.solver));
  r.emplace_back("scenario.initial_state", s.initial.recipe);
  std::string outs;
  for (std::size_t i = 0; i < s.outputs.size(); ++i) outs += (i ? ", " : "") + s.outputs[i];
  r.emplace_back("scenario.outputs", outs);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SeesawParams>) {
          r.emplace_back("params.omega_x", format_number(p.omega_x));
          r.emplace_back("params.omega_phi", format_number(p.omega_phi));
          r.emplace_back("params.J", format_number(p.J));
          r.emplace_back("params.cutoff_x", std::to_string(p.cutoff_x));
          r.emplace_back("params.cutoff_phi", std::to_string(p.cutoff_phi));
        } else if constexpr (std::is_same_v<P, TwoSiteParams>) {
          r.emplace_back("params.J", format_number(p.J));
          r.emplace_back("params.Jtilde", format_number(p.Jtilde));
          r.emplace_back("params.U0", format_number(p.U0));
          r.emplace_back("params.Delta_c", format_number(p.Delta_c));
          r.emplace_back("params.kappa", format_number(p.kappa));
          r.emplace_back("params.N_atoms", std::to_string(p.N_atoms));
          r.emplace_back("params.photon_cutoff", std::to_string(p.photon_cutoff));
          for (const auto& kv : lattice) r.push_back(kv);
        } else {
          r.emplace_back("params.V0", format_number(p.V0));
          r.emplace_back("params.U0", format_number(p.U0));
          r.emplace_back("params.Delta_c", format_number(p.Delta_c));
          r.emplace_back("params.kappa", format_number(p.kappa));
          r.emplace_back("params.recoil_ratio", format_number(p.recoil_ratio));
          r.emplace_back("params.n_momentum", std::to_string(p.n_momentum));
          r.emplace_back("params.photon_cutoff", std::to_string(p.photon_cutoff));
        }
      },
      s.params);
  r.emplace_back("initial.asymmetry", format_number(s.initial.asymmetry));
  r.emplace_back("initial.alpha", s.initial.alpha ? format_complex(*s.initial.alpha) : "auto");
  r.emplace_back("initial.fock", std::to_string(s.initial.fock));
  r.emplace_back("initial.width", s.initial.width ? format_number(*s.initial.width) : "auto");
  r.emplace_back("integrator.method", "rk4");
  r.emplace_back("integrator.dt", format_number(s.integrator.dt));
  r.emplace_back("integrator.t_final", format_number(s.integrator.t_final));
  r.emplace_back("integrator.record_stride", std::to_string(s.integrator.record_stride));
  r.emplace_back("integrator.step_check", s.step_check ? "true" : "false");
  r.emplace_back("ensemble.n_traj", std::to_string(s.ensemble.n_traj));
  r.emplace_back("ensemble.master_seed", std::to_string(s.ensemble.master_seed));
  r.emplace_back("ensemble.workers", std::to_string(s.ensemble.workers));
}

// ------------------------------------------------------------- set-up ---

ObservableSet scenario_observables(const Scenario& s) {
  switch (s.model) {
    case ModelKind::seesaw: return seesaw_observables(s.seesaw());
    case ModelKind::twosite_quantum: return twosite_observables(s.twosite());
    case ModelKind::fullspace_mcwf: return fullspace_observables(s.fullspace());
    case ModelKind::twosite_meanfield: break;
  }
  throw SeesawError("the mean-field model records its own fixed observables");
}

CavityModel scenario_cavity_model(const Scenario& s) {
  if (s.model == ModelKind::twosite_quantum) return build_twosite_hamiltonian(s.twosite());
  if (s.model == ModelKind::fullspace_mcwf) return build_fullspace_hamiltonian(s.fullspace());
  throw SeesawError("scenario model has no cavity Hamiltonian");
}

StateVector scenario_initial_state(const Scenario& s) {
  const RecipeParts parts = split_recipe(s.initial.recipe);
  switch (s.model) {
    case ModelKind::seesaw: {
      if (s.initial.recipe != "product-ground") {
        throw SeesawError("seesaw model supports only 'product-ground'");
      }
      return seesaw_product_ground(s.seesaw());
    }
    case ModelKind::twosite_quantum: {
      const TwoSiteParams& p = s.twosite();
      const HilbertSpace space = twosite_space(p);
      if (parts.base == "bell") {
        if (p.N_atoms != 1 || !parts.field.empty()) {
          throw SeesawError("'bell' needs N_atoms = 1 and no field recipe");
        }
        Ket v = Ket::Zero(space.dim());
        v(space.compose(std::vector<Index>{0, 0})) = 1.0;  // left, vacuum
        v(space.compose(std::vector<Index>{1, 1})) = 1.0;  // right, one photon
        return StateVector(space, v);
      }
      const Ket atoms = twosite_atomic_state(parts.base, p.N_atoms, s.initial.asymmetry);
      const double d = mean_of(twosite::imbalance(p.N_atoms), atoms);
      return StateVector::product(
          space, {atoms, field_state(parts.field, p.photon_cutoff, s.initial.alpha,
                                     twosite_steady_field(p, d), s.initial.fock)});
    }
    case ModelKind::fullspace_mcwf: {
      const FullSpaceParams& p = s.fullspace();
      const HilbertSpace space = fullspace_space(p);
      const double width = s.initial.width.value_or(
          std::pow(p.recoil_ratio / (2.0 * std::max(std::abs(p.V0), 1e-300)), 0.25));
      Ket motion;
      if (parts.base == "flat") {
        motion = plane_wave::flat(p.n_momentum);
      } else if (parts.base == "right-localized") {
        motion = plane_wave::wave_packet(p.n_momentum, -std::numbers::pi / 2.0, width);
      } else if (parts.base == "left-localized") {
        motion = plane_wave::wave_packet(p.n_momentum, std::numbers::pi / 2.0, width);
      } else {
        throw SeesawError("unknown motional state '" + parts.base + "'");
      }
      const double mean_sin = mean_of(plane_wave::sin_kx(p.n_momentum), motion);
      return StateVector::product(
          space, {motion, field_state(parts.field, p.photon_cutoff, s.initial.alpha,
                                      fullspace_steady_field(p, mean_sin), s.initial.fock)});
    }
    case ModelKind::twosite_meanfield: break;
  }
  throw SeesawError("the mean-field model has no quantum initial state");
}

MeanFieldState scenario_meanfield_state(const Scenario& s) {
  if (s.model != ModelKind::twosite_meanfield) throw SeesawError("not a mean-field scenario");
  const TwoSiteParams& p = s.twosite();
  const RecipeParts parts = split_recipe(s.initial.recipe);
  MeanFieldState st;
  st.atomic_amplitudes = twosite_atomic_state(parts.base, p.N_atoms, s.initial.asymmetry);
  if (parts.field.empty() || parts.field == "vacuum") {
    st.alpha = 0.0;
  } else if (parts.field == "coherent") {
    const double d = mean_of(twosite::imbalance(p.N_atoms), st.atomic_amplitudes);
    st.alpha = s.initial.alpha.value_or(twosite_steady_field(p, d));
  } else {
    throw SeesawError("mean-field field recipe must be 'vacuum' or 'coherent'");
  }
  return st;
}

}  // namespace seesaw
