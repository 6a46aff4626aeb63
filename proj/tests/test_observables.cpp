#include "oracles.hpp"

#include "seesaw/dynamics.hpp"
#include "seesaw/initial_states.hpp"
#include "seesaw/observables.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace seesaw;

namespace {

StateVector cat_state(double alpha, Index cutoff) {
  const HilbertSpace space({{"atoms", 2}, {"field", cutoff}});
  Ket v = oracle::kron_ket(Ket(Ket::Unit(2, 0)), coherent_amplitudes(alpha, cutoff)) +
          oracle::kron_ket(Ket(Ket::Unit(2, 1)), coherent_amplitudes(-alpha, cutoff));
  return StateVector(space, v);
}

}  // namespace

TEST_SUITE("negativity") {
  TEST_CASE("product states are 0") {
    std::mt19937_64 rng(8);
    const HilbertSpace s({{"A", 3}, {"B", 4}});
    for (int k = 0; k < 5; ++k) {
      const StateVector psi = StateVector::product(s, {oracle::random_ket(3, rng), oracle::random_ket(4, rng)});
      CHECK(std::abs(negativity(psi, "A")) < 1e-10);
      CHECK(std::abs(negativity(DensityMatrix::from_pure(psi), "B")) < 1e-10);
    }
  }

  TEST_CASE("Bell state is 1/2 on both paths") {
    const HilbertSpace s({{"a", 2}, {"b", 2}});
    Ket v = Ket::Zero(4);
    v(1) = 1.0;
    v(2) = -1.0;
    const StateVector psi(s, v);
    CHECK(std::abs(negativity(psi, "a") - 0.5) < 1e-10);
    CHECK(std::abs(negativity(DensityMatrix::from_pure(psi), "a") - 0.5) < 1e-10);
  }

  TEST_CASE("cat state follows sqrt(1 - exp(-4|alpha|^2)) / 2") {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const StateVector cat = cat_state(alpha, 40);
      CHECK(std::abs(negativity(cat, "atoms") - oracle::cat_negativity(alpha)) < 1e-8);
      CHECK(std::abs(negativity(cat, "field") - oracle::cat_negativity(alpha)) < 1e-8);
      CHECK(std::abs(negativity(DensityMatrix::from_pure(cat), "atoms") - oracle::cat_negativity(alpha)) < 1e-8);
    }
    CHECK(oracle::cat_negativity(1.0) == doctest::Approx(0.49540).epsilon(1e-5));
  }

  TEST_CASE("Schmidt and partial-transpose paths agree on random pure states") {
    std::mt19937_64 rng(77);
    const HilbertSpace s({{"A", 3}, {"B", 5}});
    for (int k = 0; k < 10; ++k) {
      const StateVector psi(s, oracle::random_ket(15, rng));
      CHECK(std::abs(negativity(psi, "A") - negativity(DensityMatrix::from_pure(psi), "A")) < 1e-8);
    }
  }

  TEST_CASE("invariant under local unitaries") {
    std::mt19937_64 rng(31);
    const HilbertSpace s({{"A", 3}, {"B", 4}});
    CMatrix rho = CMatrix::Zero(12, 12);
    for (int k = 0; k < 3; ++k) {
      const Ket v = oracle::random_ket(12, rng);
      rho += v * v.adjoint() / 3.0;
    }
    const double base = negativity(DensityMatrix(s, rho), "A");
    CHECK(base > 0.0);
    for (int k = 0; k < 4; ++k) {
      const CMatrix u = oracle::kron(oracle::random_unitary(3, rng), oracle::random_unitary(4, rng));
      const CMatrix rotated = u * rho * u.adjoint();
      CHECK(std::abs(negativity(DensityMatrix(s, 0.5 * (rotated + rotated.adjoint())), "A") - base) < 1e-8);
    }
  }

  TEST_CASE("explicitly separable mixtures are 0") {
    std::mt19937_64 rng(13);
    const HilbertSpace s({{"A", 2}, {"B", 3}});
    for (int trial = 0; trial < 5; ++trial) {
      CMatrix rho = CMatrix::Zero(6, 6);
      std::uniform_real_distribution<double> u(0.1, 1.0);
      double total = 0.0;
      std::vector<double> w(4);
      for (auto& x : w) total += (x = u(rng));
      for (int k = 0; k < 4; ++k) {
        const Ket a = oracle::random_ket(2, rng), b = oracle::random_ket(3, rng);
        rho += (w[k] / total) * oracle::kron(CMatrix(a * a.adjoint()), CMatrix(b * b.adjoint()));
      }
      CHECK(std::abs(negativity(DensityMatrix(s, 0.5 * (rho + rho.adjoint())), "A")) < 1e-10);
    }
  }

  TEST_CASE("closed forms for the two paths") {
    RVector l(2);
    l << 0.5, 0.5;
    CHECK(negativity_from_schmidt(l) == doctest::Approx(0.5));
    RVector ev(4);
    ev << -0.5, 0.5, 0.5, 0.5;
    CHECK(negativity_from_spectrum(ev) == doctest::Approx(0.5));
  }

  TEST_CASE("unknown label") {
    CHECK_THROWS_AS(negativity(cat_state(1.0, 10), "motion"), SeesawError);
  }
}

TEST_SUITE("field_statistics") {
  TEST_CASE("vacuum, coherent, cat") {
    const FieldStatistics v = field_statistics(coherent_state(0.0, 10), "field");
    CHECK(std::abs(v.mean_a) == 0.0);
    CHECK(v.photon_number == 0.0);

    const FieldStatistics c = field_statistics(coherent_state(1.0, 30), "field");
    CHECK(std::abs(c.mean_a - 1.0) < 1e-8);
    CHECK(std::abs(c.photon_number - 1.0) < 1e-8);

    const double alpha = 1.3;
    const StateVector cat = cat_state(alpha, 30);
    const FieldStatistics k = field_statistics(cat, "field");
    CHECK(std::abs(k.mean_a) < 1e-12);
    CHECK(std::abs(k.photon_number - alpha * alpha) < 1e-8);
    const FieldStatistics kd = field_statistics(DensityMatrix::from_pure(cat), "field");
    CHECK(std::abs(kd.photon_number - alpha * alpha) < 1e-8);
  }

  TEST_CASE("missing label") {
    CHECK_THROWS_AS(field_statistics(StateVector::basis(HilbertSpace::single("atoms", 2), 0), "field"),
                    SeesawError);
  }
}

TEST_SUITE("site_statistics") {
  TEST_CASE("Mott, all-left, superfluid") {
    const HilbertSpace a2 = HilbertSpace::single("atoms", 3);
    const SiteStatistics m = site_statistics(StateVector(a2, twosite::mott(2)), "atoms", 2);
    CHECK(m.imbalance == 0.0);
    CHECK(m.pair_correlation == doctest::Approx(1.0));

    const HilbertSpace a5 = HilbertSpace::single("atoms", 6);
    const SiteStatistics l = site_statistics(StateVector(a5, twosite::all_left(5)), "atoms", 5);
    CHECK(l.imbalance == doctest::Approx(5.0));
    CHECK(l.pair_correlation == 0.0);

    // (1/2)(b_l^+ + b_r^+)^2 |0> = (|2,0> + sqrt2 |1,1> + |0,2>) / 2.
    Ket sf(3);
    sf << 0.5, std::sqrt(0.5), 0.5;
    CHECK((twosite::superfluid(2) - sf).norm() < 1e-15);
    const SiteStatistics s = site_statistics(StateVector(a2, sf), "atoms", 2);
    CHECK(s.imbalance == 0.0);
    CHECK(s.pair_correlation == doctest::Approx(0.5));
  }

  TEST_CASE("superfluid amplitudes are binomial for larger N") {
    for (int N : {3, 6, 9}) {
      const Ket sf = twosite::superfluid(N);
      for (int k = 0; k <= N; ++k) {
        CHECK(std::abs(sf(k) - std::sqrt(oracle::binomial(N, k) / std::pow(2.0, N))) < 1e-14);
      }
      const SiteStatistics s = site_statistics(StateVector(HilbertSpace::single("atoms", N + 1), sf), "atoms", N);
      CHECK(s.imbalance == 0.0);  // exact cancellation
    }
  }

  TEST_CASE("joint atom-field states and wrong sector size") {
    const HilbertSpace s({{"atoms", 3}, {"field", 4}});
    const StateVector psi = StateVector::product(s, {twosite::all_right(2), coherent_amplitudes(0.3, 4, 1e-3)});
    CHECK(site_statistics(psi, "atoms", 2).imbalance == doctest::Approx(-2.0));
    CHECK(site_statistics(DensityMatrix::from_pure(psi), "atoms", 2).imbalance == doctest::Approx(-2.0));
    CHECK_THROWS_AS(site_statistics(psi, "atoms", 3), SeesawError);
  }

  TEST_CASE("mirrored populations give exactly zero imbalance") {
    RVector p(5);
    p << 0.1 / 3.0, 0.3, 1.0 - 2.0 * (0.1 / 3.0 + 0.3), 0.3, 0.1 / 3.0;
    CHECK(site_statistics_from_populations(p).imbalance == 0.0);
  }

  TEST_CASE("pair correlation decays from the Mott start at Fig. 4 parameters") {
    const TwoSiteParams p;
    const CavityModel m = build_twosite_hamiltonian(p);
    const StateVector psi0 = StateVector::product(twosite_space(p), {twosite::mott(2), fock_amplitudes(0, 16)});
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 40.0;
    cfg.record_stride = 500;
    const TrajectoryRecord r = integrate_lindblad(m.hamiltonian, m.jumps(), DensityMatrix::from_pure(psi0), cfg,
                                                  twosite_observables(p));
    const auto pc = r.real("pair_correlation");
    CHECK(pc.front() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < pc.size(); ++i) CHECK(pc[i] < pc[i - 1]);
  }
}

TEST_SUITE("spatial_statistics") {
  TEST_CASE("oscillator ground state: mean 0, variance 1/2") {
    const StateVector g = StateVector::product(HilbertSpace({{"x", 10}, {"phi", 3}}),
                                               {fock_amplitudes(0, 10), fock_amplitudes(0, 3)});
    const SpatialStatistics s = spatial_statistics(g, "x");
    CHECK(std::abs(s.mean_x) < 1e-15);
    CHECK(s.var_x == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("wave packet at kx = -pi/2: circular mean -pi/2, <sin> near -1") {
    const FullSpaceParams p;
    const double width = std::pow(p.recoil_ratio / (2.0 * std::abs(p.V0)), 0.25);
    const Ket packet = plane_wave::wave_packet(p.n_momentum, -std::numbers::pi / 2.0, width);
    const StateVector psi = StateVector::product(fullspace_space(p), {packet, fock_amplitudes(0, p.photon_cutoff)});
    const SpatialStatistics s = spatial_statistics(psi, "motion");
    CHECK(s.mean_x == doctest::Approx(-std::numbers::pi / 2.0).epsilon(1e-10));
    // Gaussian density of variance width^2 / 2: <sin> = -exp(-width^2 / 4).
    CHECK(s.mean_sin_kx == doctest::Approx(-std::exp(-width * width / 4.0)).epsilon(1e-5));
    CHECK(s.var_x == doctest::Approx(width * width / 2.0).epsilon(1e-3));
  }

  TEST_CASE("flat wavefunction has <sin kx> = 0") {
    const FullSpaceParams p;
    const StateVector psi = StateVector::product(
        fullspace_space(p), {plane_wave::flat(p.n_momentum), fock_amplitudes(0, p.photon_cutoff)});
    CHECK(std::abs(spatial_statistics(psi, "motion").mean_sin_kx) < 1e-15);
  }

  TEST_CASE("unsupported factor kind") {
    CHECK_THROWS_AS(spatial_statistics(coherent_state(1.0, 10), "field"), SeesawError);
  }
}

TEST_SUITE("observable sets") {
  TEST_CASE("names are unique; non-complex operators must be Hermitian") {
    const HilbertSpace s = HilbertSpace::single("field", 4);
    ObservableSet o;
    o.add_operator("n", embed(s, "field", number_operator(4)));
    CHECK_THROWS_AS(o.add_operator("n", embed(s, "field", number_operator(4))), SeesawError);
    CHECK_THROWS_AS(o.add_operator("a", embed(s, "field", annihilation(4))), SeesawError);
    o.add_operator("a", embed(s, "field", annihilation(4)), true);
    CHECK(o.contains("a"));
    CHECK(o.all_linear());
    o.add(negativity_observable("neg", "field"));
    CHECK_FALSE(o.all_linear());
  }

  TEST_CASE("Hermitian observables have negligible imaginary parts") {
    std::mt19937_64 rng(4);
    const TwoSiteParams p;
    const ObservableSet o = twosite_observables(p);
    const StateVector psi(twosite_space(p), oracle::random_ket(twosite_space(p).dim(), rng));
    for (const auto& obs : o.items()) {
      if (!obs.is_complex) CHECK(std::abs(obs.on_state(psi).imag()) < 1e-10);
    }
  }

  TEST_CASE("state and density evaluations agree") {
    std::mt19937_64 rng(6);
    FullSpaceParams p;
    p.n_momentum = 11;
    p.photon_cutoff = 3;
    const ObservableSet o = fullspace_observables(p);
    const StateVector psi(fullspace_space(p), oracle::random_ket(fullspace_space(p).dim(), rng));
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    for (const auto& obs : o.items()) {
      CHECK(std::abs(obs.on_state(psi) - obs.on_density(rho)) < 1e-9);
    }
  }
}
