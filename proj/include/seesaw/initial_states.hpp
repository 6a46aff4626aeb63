#pragma once

#include "seesaw/models.hpp"
#include "seesaw/state.hpp"

namespace seesaw {

// Product of the two uncoupled oscillator ground states.
StateVector seesaw_product_ground(const SeesawParams& p);

// Atomic amplitudes over the fixed-N two-site basis.
namespace twosite {
Ket superfluid(int N);  // (b_l^+ + b_r^+)^N |0> / sqrt(2^N N!)
Ket mott(int N);        // |N/2, N/2>; N must be even
Ket all_left(int N);
Ket all_right(int N);
// Each atom in sqrt(p)|l> + sqrt(1-p)|r> with p chosen so <n_l - n_r> = imbalance.
Ket tilted_superfluid(int N, double imbalance);
}  // namespace twosite

// Motional amplitudes over the plane-wave ladder.
namespace plane_wave {
Ket flat(Index n_momentum);  // the n = 0 mode
// Periodized Gaussian of amplitude width `width` centred at kx = center.
Ket wave_packet(Index n_momentum, double center, double width);
}  // namespace plane_wave

// Field amplitude radiated in steady state by a frozen atomic distribution
// with <sin kx> = mean_sin: -i sqrt(V0 U0) <sin kx> / (kappa - i(Delta_c - U0)).
Complex fullspace_steady_field(const FullSpaceParams& p, double mean_sin);

// Two-site analogue with imbalance D = <n_l - n_r>.
Complex twosite_steady_field(const TwoSiteParams& p, double imbalance);

}  // namespace seesaw
