#include "seesaw/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace seesaw {

namespace {

SparseMatrix diagonal(const std::vector<double>& values) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) t.emplace_back(static_cast<Index>(i), static_cast<Index>(i), values[i]);
  }
  SparseMatrix m(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix quadrature_sum(Index dim) {  // a + a^+
  return annihilation(dim) + creation(dim);
}

}  // namespace

// ---------------------------------------------------------------- seesaw ---

void SeesawParams::validate() const {
  if (!(omega_x > 0.0)) throw SeesawError("omega_x must be > 0");
  if (!(omega_phi > 0.0)) throw SeesawError("omega_phi must be > 0");
  if (cutoff_x < 2) throw SeesawError("cutoff_x must be >= 2");
  if (cutoff_phi < 2) throw SeesawError("cutoff_phi must be >= 2");
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::marginal: return "marginal";
    case Stability::unstable: return "unstable";
  }
  return "?";
}

Stability classify_seesaw_stability(double omega_x, double omega_phi, double J) {
  if (!(omega_x > 0.0) || !(omega_phi > 0.0)) {
    throw SeesawError("classify_seesaw_stability: frequencies must be positive");
  }
  const double threshold = omega_x * omega_phi;
  if (std::abs(J - threshold) <= 1e-12 * threshold) return Stability::marginal;
  return J > threshold ? Stability::unstable : Stability::stable;
}

HilbertSpace seesaw_space(const SeesawParams& p) {
  p.validate();
  return HilbertSpace({{kSeesawX, p.cutoff_x}, {kSeesawPhi, p.cutoff_phi}});
}

SparseOperator build_seesaw_hamiltonian(const SeesawParams& p) {
  const HilbertSpace space = seesaw_space(p);
  SparseOperator h = p.omega_x * embed(space, kSeesawX, number_operator(p.cutoff_x));
  h += p.omega_phi * embed(space, kSeesawPhi, number_operator(p.cutoff_phi));
  h -= (p.J / 4.0) * tensor_product_op(space, {{kSeesawX, quadrature_sum(p.cutoff_x)},
                                               {kSeesawPhi, quadrature_sum(p.cutoff_phi)}});
  return h;
}

// ------------------------------------------------------- two-site lattice ---

void TwoSiteParams::validate() const {
  if (!(kappa > 0.0)) throw SeesawError("kappa must be > 0");
  if (N_atoms < 1) throw SeesawError("N_atoms must be >= 1");
  if (photon_cutoff < 2) throw SeesawError("photon_cutoff must be >= 2");
}

namespace twosite {

Index left_occupation(int N, Index k) { return N - k; }

SparseMatrix imbalance(int N) {
  std::vector<double> d(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) d[k] = static_cast<double>(N - 2 * k);
  return diagonal(d);
}

SparseMatrix left_number(int N) {
  std::vector<double> d(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) d[k] = static_cast<double>(N - k);
  return diagonal(d);
}

SparseMatrix right_number(int N) {
  std::vector<double> d(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) d[k] = static_cast<double>(k);
  return diagonal(d);
}

SparseMatrix pair_occupation(int N) {
  std::vector<double> d(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) d[k] = static_cast<double>((N - k) * k);
  return diagonal(d);
}

SparseMatrix hopping(int N) {
  // b_l^+ b_r |n_l, n_r> = sqrt((n_l + 1) n_r) |n_l + 1, n_r - 1>, i.e. k -> k - 1.
  std::vector<Triplet> t;
  for (int k = 1; k <= N; ++k) {
    const double amp = std::sqrt(static_cast<double>((N - k + 1) * k));
    t.emplace_back(k - 1, k, amp);
    t.emplace_back(k, k - 1, amp);
  }
  SparseMatrix m(N + 1, N + 1);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace twosite

HilbertSpace twosite_space(const TwoSiteParams& p) {
  p.validate();
  return HilbertSpace({{kAtomsLabel, p.N_atoms + 1}, {kFieldLabel, p.photon_cutoff}});
}

CavityModel build_twosite_hamiltonian(const TwoSiteParams& p) {
  const HilbertSpace space = twosite_space(p);
  const int N = p.N_atoms;
  SparseOperator h = p.J * embed(space, kAtomsLabel, twosite::hopping(N));
  h -= p.dressed_detuning() * embed(space, kFieldLabel, number_operator(p.photon_cutoff));
  h += p.Jtilde * tensor_product_op(space, {{kAtomsLabel, twosite::imbalance(N)},
                                            {kFieldLabel, quadrature_sum(p.photon_cutoff)}});
  SparseOperator jump =
      std::sqrt(2.0 * p.kappa) * embed(space, kFieldLabel, annihilation(p.photon_cutoff));
  return {std::move(h), std::move(jump)};
}

SparseOperator eliminated_field_operator(const TwoSiteParams& p) {
  if (!(p.kappa > 0.0)) throw SeesawError("eliminated_field_operator: kappa must be > 0");
  if (p.N_atoms < 1) throw SeesawError("eliminated_field_operator: N_atoms must be >= 1");
  const Complex prefactor = -kI * p.Jtilde / (p.kappa - kI * p.dressed_detuning());
  return prefactor * SparseOperator(HilbertSpace::single(kAtomsLabel, p.N_atoms + 1),
                                    twosite::imbalance(p.N_atoms));
}

// ------------------------------------------------- single atom, full space ---

void FullSpaceParams::validate() const {
  if (!(kappa > 0.0)) throw SeesawError("kappa must be > 0");
  if (V0 * U0 < 0.0) throw SeesawError("V0 * U0 must be >= 0 (sqrt(V0 U0) must be real)");
  if (!(recoil_ratio > 0.0)) throw SeesawError("recoil_ratio must be > 0");
  if (n_momentum < 9 || n_momentum % 2 == 0) throw SeesawError("n_momentum must be odd and >= 9");
  if (photon_cutoff < 2) throw SeesawError("photon_cutoff must be >= 2");
}

double FullSpaceParams::pump_coupling() const { return std::sqrt(V0 * U0); }

namespace plane_wave {

SparseMatrix shift_up(Index n_momentum) {
  std::vector<Triplet> t;
  for (Index j = 0; j + 1 < n_momentum; ++j) t.emplace_back(j + 1, j, 1.0);
  SparseMatrix m(n_momentum, n_momentum);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix sin_kx(Index n_momentum) {
  const SparseMatrix up = shift_up(n_momentum);
  // (e^{ikx} - e^{-ikx}) / 2i: <n+1|sin|n> = -i/2, <n-1|sin|n> = +i/2
  return SparseMatrix((up - SparseMatrix(up.adjoint())) * Complex(0.0, -0.5));
}

SparseMatrix cos_kx(Index n_momentum) {
  const SparseMatrix up = shift_up(n_momentum);
  return SparseMatrix((up + SparseMatrix(up.adjoint())) * Complex(0.5));
}

SparseMatrix kinetic(Index n_momentum, double recoil_ratio) {
  const Index n_max = n_momentum / 2;
  std::vector<double> d(static_cast<std::size_t>(n_momentum));
  for (Index j = 0; j < n_momentum; ++j) {
    const double n = static_cast<double>(j - n_max);
    d[j] = 0.5 * recoil_ratio * n * n;
  }
  return diagonal(d);
}

SparseMatrix lattice(Index n_momentum, double V0) {
  // sin^2 = 1/2 - (e^{2ikx} + e^{-2ikx}) / 4
  const SparseMatrix up = shift_up(n_momentum);
  const SparseMatrix up2 = up * up;
  SparseMatrix m = 0.5 * V0 * local_identity(n_momentum);
  m -= (0.25 * V0) * (up2 + SparseMatrix(up2.adjoint()));
  m.prune(Complex(0.0));
  return m;
}

}  // namespace plane_wave

HilbertSpace fullspace_space(const FullSpaceParams& p) {
  p.validate();
  return HilbertSpace({{kMotionLabel, p.n_momentum}, {kFieldLabel, p.photon_cutoff}});
}

CavityModel build_fullspace_hamiltonian(const FullSpaceParams& p) {
  const HilbertSpace space = fullspace_space(p);
  const Index nm = p.n_momentum;
  SparseOperator h = embed(space, kMotionLabel,
                           SparseMatrix(plane_wave::kinetic(nm, p.recoil_ratio) +
                                        plane_wave::lattice(nm, p.V0)));
  h -= (p.Delta_c - p.U0) * embed(space, kFieldLabel, number_operator(p.photon_cutoff));
  h += p.pump_coupling() * tensor_product_op(space, {{kMotionLabel, plane_wave::sin_kx(nm)},
                                                     {kFieldLabel, quadrature_sum(p.photon_cutoff)}});
  SparseOperator jump =
      std::sqrt(2.0 * p.kappa) * embed(space, kFieldLabel, annihilation(p.photon_cutoff));
  return {std::move(h), std::move(jump)};
}

// -------------------------------------------------- Wannier-type couplings ---

WannierData compute_wannier_couplings(double V0, double U0, double recoil_ratio) {
  if (!(V0 < 0.0)) throw SeesawError("compute_wannier_couplings: V0 must be negative");
  if (!(U0 < 0.0)) throw SeesawError("compute_wannier_couplings: U0 must be negative");
  if (!(recoil_ratio > 0.0)) throw SeesawError("compute_wannier_couplings: recoil_ratio must be > 0");
  if (std::abs(V0) < recoil_ratio) {
    std::ostringstream os;
    os << "compute_wannier_couplings: lattice depth |V0| = " << std::abs(V0)
       << " is below recoil_ratio = " << recoil_ratio << "; harmonic wells are not valid";
    throw SeesawError(os.str());
  }
  constexpr double pi = std::numbers::pi;
  // Near kx = +-pi/2: V0 sin^2 ~ V0 + |V0| y^2, kinetic -(r/2) d^2/dy^2.
  const double sigma = std::pow(recoil_ratio / (2.0 * std::abs(V0)), 0.25);

  constexpr int grid = 4096;
  constexpr int images = 4;
  const double h = 2.0 * pi / grid;
  const double centers[2] = {pi / 2.0, -pi / 2.0};  // left, right

  Eigen::MatrixXd g(grid, 2), hg(grid, 2);
  Eigen::VectorXd sin_grid(grid);
  for (int j = 0; j < grid; ++j) {
    const double xi = -pi + h * j;
    sin_grid(j) = std::sin(xi);
    const double potential = V0 * sin_grid(j) * sin_grid(j);
    for (int w = 0; w < 2; ++w) {
      double value = 0.0, second = 0.0;
      for (int k = -images; k <= images; ++k) {
        const double y = xi - centers[w] - 2.0 * pi * k;
        const double e = std::exp(-y * y / (2.0 * sigma * sigma));
        value += e;
        second += (y * y / std::pow(sigma, 4) - 1.0 / (sigma * sigma)) * e;
      }
      g(j, w) = value;
      hg(j, w) = -0.5 * recoil_ratio * second + potential * value;
    }
  }
  for (int w = 0; w < 2; ++w) {
    const double norm = std::sqrt(h * g.col(w).squaredNorm());
    g.col(w) /= norm;
    hg.col(w) /= norm;
  }

  const Eigen::Matrix2d overlap = h * g.transpose() * g;
  const Eigen::Matrix2d energy = h * g.transpose() * hg;
  const Eigen::Matrix2d sine = h * g.transpose() * sin_grid.asDiagonal() * g;

  // Symmetric orthogonalization S^{-1/2} of the 2x2 overlap [[1, s], [s, 1]].
  const double s = overlap(0, 1);
  const double plus = 1.0 / std::sqrt(1.0 + s), minus = 1.0 / std::sqrt(1.0 - s);
  Eigen::Matrix2d inv_sqrt;
  inv_sqrt << 0.5 * (plus + minus), 0.5 * (plus - minus), 0.5 * (plus - minus),
      0.5 * (plus + minus);

  const Eigen::Matrix2d e_orth = inv_sqrt * energy * inv_sqrt;
  const Eigen::Matrix2d s_orth = inv_sqrt * sine * inv_sqrt;

  WannierData out{};
  out.J = e_orth(0, 1);
  out.Jtilde = std::sqrt(U0 * V0) * s_orth(0, 0);
  out.gaussian_width = sigma;
  out.onsite_energy = e_orth(0, 0);
  return out;
}

TwoSiteParams twosite_from_lattice(double V0, double U0, double Delta_c, double recoil_ratio,
                                   int N_atoms, Index photon_cutoff, double kappa) {
  const WannierData w = compute_wannier_couplings(V0, U0, recoil_ratio);
  TwoSiteParams p;
  p.J = w.J;
  p.Jtilde = w.Jtilde;
  p.U0 = U0;
  p.Delta_c = Delta_c;
  p.kappa = kappa;
  p.N_atoms = N_atoms;
  p.photon_cutoff = photon_cutoff;
  p.validate();
  return p;
}

}  // namespace seesaw
