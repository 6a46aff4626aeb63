#pragma once

#include "seesaw/operator.hpp"
#include "seesaw/state.hpp"

#include <vector>

// Units throughout: hbar = 1, energies and rates in units of the cavity decay
// rate kappa (the seesaw toy model is dimensionless), lengths in 1/k.

namespace seesaw {

// Factor labels shared by every model.
inline const std::string kFieldLabel = "field";
inline const std::string kAtomsLabel = "atoms";
inline const std::string kMotionLabel = "motion";
inline const std::string kSeesawX = "x";
inline const std::string kSeesawPhi = "phi";

// ---------------------------------------------------------------- seesaw ---

struct SeesawParams {
  double omega_x = 1.0;
  double omega_phi = 3.0;
  double J = 16.0;
  Index cutoff_x = 40;
  Index cutoff_phi = 40;

  void validate() const;
};

enum class Stability { stable, marginal, unstable };
const char* to_string(Stability s);

// Classical stability of the balanced seesaw: unstable iff J > omega_x omega_phi,
// marginal within 1e-12 relative of the boundary.
Stability classify_seesaw_stability(double omega_x, double omega_phi, double J);

HilbertSpace seesaw_space(const SeesawParams& p);

// omega_x a_x^+ a_x + omega_phi a_phi^+ a_phi - (J/4)(a_phi^+ + a_phi)(a_x^+ + a_x)
SparseOperator build_seesaw_hamiltonian(const SeesawParams& p);

// ------------------------------------------------------- two-site lattice ---

struct TwoSiteParams {
  double J = 0.01;
  double Jtilde = 1.6;
  double U0 = -2.0;
  double Delta_c = -6.0;
  double kappa = 1.0;
  int N_atoms = 2;
  Index photon_cutoff = 16;

  void validate() const;
  // Delta_c - U0 N: detuning of the cavity dressed by all N atoms.
  double dressed_detuning() const { return Delta_c - U0 * N_atoms; }
};

// Hamiltonian plus the single cavity-loss jump operator sqrt(2 kappa) a.
struct CavityModel {
  SparseOperator hamiltonian;
  SparseOperator jump;

  std::vector<SparseOperator> jumps() const { return {jump}; }
};

// Fixed-N two-site sector, dimension N + 1. Basis index k holds
// |n_l = N - k, n_r = k>, so k = 0 is "all atoms left".
namespace twosite {
Index left_occupation(int N, Index k);
SparseMatrix imbalance(int N);       // n_l - n_r
SparseMatrix hopping(int N);         // b_l^+ b_r + b_r^+ b_l
SparseMatrix pair_occupation(int N); // n_l n_r
SparseMatrix left_number(int N);
SparseMatrix right_number(int N);
}  // namespace twosite

HilbertSpace twosite_space(const TwoSiteParams& p);

// H = J(b_l^+ b_r + h.c.) - (Delta_c - U0 N) a^+ a + Jtilde (a + a^+)(n_l - n_r)
CavityModel build_twosite_hamiltonian(const TwoSiteParams& p);

// Bad-cavity field a = -i Jtilde / (kappa - i(Delta_c - U0 N)) (n_l - n_r) on
// the atomic sector alone.
SparseOperator eliminated_field_operator(const TwoSiteParams& p);

// ------------------------------------------------- single atom, full space ---

struct FullSpaceParams {
  double V0 = -6.7;
  double U0 = -1.7;
  double Delta_c = -12.0;
  double kappa = 1.0;
  double recoil_ratio = 1.0 / 20.0;  // hbar k^2 / (m kappa)
  Index n_momentum = 31;             // plane waves e^{i n k x}, |n| <= n_momentum / 2
  Index photon_cutoff = 6;

  void validate() const;
  Index n_max() const { return n_momentum / 2; }
  double pump_coupling() const;  // sqrt(V0 U0), positive root
};

namespace plane_wave {
SparseMatrix shift_up(Index n_momentum);  // e^{ikx}: |n> -> |n+1>, edge mode dropped
SparseMatrix sin_kx(Index n_momentum);
SparseMatrix cos_kx(Index n_momentum);
SparseMatrix kinetic(Index n_momentum, double recoil_ratio);  // (recoil_ratio / 2) n^2
SparseMatrix lattice(Index n_momentum, double V0);            // V0 sin^2(kx)
}  // namespace plane_wave

HilbertSpace fullspace_space(const FullSpaceParams& p);

// p^2/2m + V0 sin^2(kx) - (Delta_c - U0) a^+ a + sqrt(V0 U0) sin(kx)(a + a^+)
// in a truncated plane-wave basis over one wavelength.
CavityModel build_fullspace_hamiltonian(const FullSpaceParams& p);

// -------------------------------------------------- Wannier-type couplings ---

struct WannierData {
  double J;               // <w_l| p^2/2m + V0 sin^2 |w_r>
  double Jtilde;          // <w_l| sqrt(U0 V0) sin(kx) |w_l>; the right well carries -Jtilde
  double gaussian_width;  // harmonic ground-state width, units of 1/k
  double onsite_energy;   // <w_l| p^2/2m + V0 sin^2 |w_l>, dropped by the two-site model
};

// Harmonic Gaussians at kx = +pi/2 (left) and -pi/2 (right), periodized over
// one wavelength and Loewdin-orthogonalized, then integrated numerically.
WannierData compute_wannier_couplings(double V0, double U0, double recoil_ratio);

// Two-site parameters with J and Jtilde taken from the lattice.
TwoSiteParams twosite_from_lattice(double V0, double U0, double Delta_c, double recoil_ratio,
                                   int N_atoms, Index photon_cutoff, double kappa = 1.0);

}  // namespace seesaw
