#include "seesaw/initial_states.hpp"
#include "seesaw/scenario.hpp"

#include <cmath>
#include <sstream>

namespace seesaw {

namespace {

CheckResult compare(const std::string& name, double got, double want, double tol) {
  std::ostringstream os;
  os << "got " << format_number(got) << ", expected " << format_number(want) << " (tol " << tol << ")";
  return {name, std::abs(got - want) <= tol, os.str()};
}

StateVector cat_state(double alpha, Index cutoff) {
  const HilbertSpace space({{kAtomsLabel, 2}, {kFieldLabel, cutoff}});
  const Ket left = StateVector::product(space, {Ket(Ket::Unit(2, 0)), coherent_amplitudes(alpha, cutoff)})
                       .amplitudes();
  const Ket right = StateVector::product(space, {Ket(Ket::Unit(2, 1)), coherent_amplitudes(-alpha, cutoff)})
                        .amplitudes();
  return StateVector(space, left + right);
}

}  // namespace

std::vector<CheckResult> run_oracle_checks() {
  std::vector<CheckResult> out;

  {
    const HilbertSpace space({{"a", 2}, {"b", 2}});
    Ket v = Ket::Zero(4);
    v(0) = v(3) = 1.0;
    out.push_back(compare("bell negativity", negativity(StateVector(space, v), "a"), 0.5, 1e-10));
    const StateVector product = StateVector::product(space, {Ket(Ket::Unit(2, 0)), Ket(Ket::Unit(2, 1))});
    out.push_back(compare("product negativity", negativity(product, "a"), 0.0, 1e-10));
  }

  for (double alpha : {0.5, 1.0, 2.0}) {
    const double want = std::sqrt(1.0 - std::exp(-4.0 * alpha * alpha)) / 2.0;
    out.push_back(compare("cat negativity alpha=" + format_number(alpha),
                          negativity(cat_state(alpha, 40), kAtomsLabel), want, 1e-8));
  }

  {
    const Complex alpha(1.2, -0.7);
    const FieldStatistics f = field_statistics(coherent_state(alpha, 30), kFieldLabel);
    out.push_back(compare("coherent <a>", std::abs(f.mean_a - alpha), 0.0, 1e-7));
    out.push_back(compare("coherent <n>", f.photon_number, std::norm(alpha), 1e-6));
  }

  {
    // Empty cavity: a coherent state decays as |alpha|^2 exp(-2 kappa t).
    const HilbertSpace space = HilbertSpace::single(kFieldLabel, 20);
    const double kappa = 1.0, alpha = 1.5;
    const SparseOperator H = SparseOperator::zero(space);
    const SparseOperator c = embed(space, kFieldLabel, annihilation(20)) * std::sqrt(2.0 * kappa);
    ObservableSet obs;
    obs.add_operator("n", embed(space, kFieldLabel, number_operator(20)));
    IntegratorConfig cfg;
    cfg.dt = 0.005;
    cfg.t_final = 1.0;
    cfg.record_stride = 200;
    const TrajectoryRecord r = integrate_lindblad(
        H, {c}, DensityMatrix::from_pure(coherent_state(alpha, 20)), cfg, obs);
    out.push_back(compare("damped cavity <n>(1)", r.real("n").back(), alpha * alpha * std::exp(-2.0 * kappa),
                          1e-8));
  }

  {
    TwoSiteParams p;
    p.N_atoms = 2;
    const SparseOperator a = eliminated_field_operator(p);
    const Ket image = a.apply(twosite::mott(2));
    out.push_back({"mott null field", image.cwiseAbs().maxCoeff() == 0.0,
                   "max |a_eff |1,1>| = " + format_number(image.cwiseAbs().maxCoeff())});
  }

  {
    TwoSiteParams p;
    p.N_atoms = 4;
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 10.0;
    cfg.record_stride = 100;
    const TrajectoryRecord r = integrate_meanfield(p, {twosite::superfluid(4), 0.0}, cfg);
    double peak = 0.0;
    for (double v : r.real("photon_number")) peak = std::max(peak, v);
    out.push_back(compare("mean-field symmetric start stays empty", peak, 0.0, 1e-24));
  }

  {
    const bool ok = classify_seesaw_stability(1.0, 3.0, 0.0) == Stability::stable &&
                    classify_seesaw_stability(1.0, 3.0, 16.0) == Stability::unstable;
    out.push_back({"seesaw stability classes", ok, "J=0 stable, J=16 unstable"});
  }
  return out;
}

}  // namespace seesaw
