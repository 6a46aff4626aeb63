#include "seesaw/initial_states.hpp"

#include <cmath>

namespace seesaw {

StateVector seesaw_product_ground(const SeesawParams& p) {
  return StateVector::product(seesaw_space(p),
                              {fock_amplitudes(0, p.cutoff_x), fock_amplitudes(0, p.cutoff_phi)});
}

namespace twosite {

namespace {

// sqrt(C(N, n)), bitwise symmetric under n -> N - n so that balanced states
// stay exactly balanced.
double sqrt_binomial(int N, int n) {
  const int lo = std::min(n, N - n), hi = N - lo;
  return std::exp(0.5 * (std::lgamma(N + 1.0) - std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)));
}

void require_atoms(int N) {
  if (N < 1) throw SeesawError("two-site state: N must be >= 1");
}

}  // namespace

Ket superfluid(int N) {
  require_atoms(N);
  Ket v(N + 1);
  const double scale = std::pow(2.0, -0.5 * N);
  for (int k = 0; k <= N; ++k) v(k) = sqrt_binomial(N, N - k) * scale;
  return v;
}

Ket mott(int N) {
  require_atoms(N);
  if (N % 2 != 0) throw SeesawError("Mott state needs an even atom number");
  Ket v = Ket::Zero(N + 1);
  v(N / 2) = 1.0;
  return v;
}

Ket all_left(int N) {
  require_atoms(N);
  Ket v = Ket::Zero(N + 1);
  v(0) = 1.0;
  return v;
}

Ket all_right(int N) {
  require_atoms(N);
  Ket v = Ket::Zero(N + 1);
  v(N) = 1.0;
  return v;
}

Ket tilted_superfluid(int N, double imbalance) {
  require_atoms(N);
  if (std::abs(imbalance) > N) throw SeesawError("tilted_superfluid: |imbalance| exceeds N");
  const double p_left = 0.5 * (1.0 + imbalance / N);
  Ket v(N + 1);
  for (int k = 0; k <= N; ++k) {
    const int n_left = N - k;
    v(k) = sqrt_binomial(N, n_left) * std::pow(p_left, 0.5 * n_left) *
           std::pow(1.0 - p_left, 0.5 * k);
  }
  return v / v.norm();
}

}  // namespace twosite

namespace plane_wave {

Ket flat(Index n_momentum) {
  Ket v = Ket::Zero(n_momentum);
  v(n_momentum / 2) = 1.0;
  return v;
}

Ket wave_packet(Index n_momentum, double center, double width) {
  if (!(width > 0.0)) throw SeesawError("wave_packet: width must be > 0");
  const Index n_max = n_momentum / 2;
  Ket v(n_momentum);
  for (Index j = 0; j < n_momentum; ++j) {
    const double n = static_cast<double>(j - n_max);
    v(j) = std::exp(-0.5 * n * n * width * width) * std::exp(Complex(0.0, -n * center));
  }
  return v / v.norm();
}

}  // namespace plane_wave

Complex fullspace_steady_field(const FullSpaceParams& p, double mean_sin) {
  return -kI * p.pump_coupling() * mean_sin / (p.kappa - kI * (p.Delta_c - p.U0));
}

Complex twosite_steady_field(const TwoSiteParams& p, double imbalance) {
  return -kI * p.Jtilde * imbalance / (p.kappa - kI * p.dressed_detuning());
}

}  // namespace seesaw
