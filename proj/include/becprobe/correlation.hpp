#pragma once

#include <array>

#include "becprobe/thermo.hpp"

// One-body density matrix rho1(r) and pair distribution of the ideal gas,
// both in the infinite-volume long-wavelength form and as an exact discrete
// mode sum over a periodic cubic box.

namespace becprobe {

// rho1(r) = (z/lambda^2) * exp(-kappa*r/2) / r  (+ n0 below the transition).
// Throws std::domain_error at r <= 0: the long-wavelength kernel has a 1/r
// singularity there; the true diagonal is rho1(0) = n.
double rho1_continuum(const ThermoState& s, double r);

// g(r) = 1 + (rho1(r)/n)^2.
double pair_distribution(const ThermoState& s, double r);

struct BoxSpec {
  double box_length;  // L [cm]
  int l_max;          // spherical cutoff: modes with |l|^2 > l_max^2 dropped
};

struct ModeSumResult {
  double value;            // rho1(r) [cm^-3]
  bool cutoff_sufficient;  // occupation at the cutoff < 1e-12 * peak occupation
};

// rho1(r) = (1/V) * sum_l N_l * cos(2*pi*l.r/L) over integer triples l with
// |l|^2 <= l_max^2, N_l = 1/(z^{-1} exp(pi*lambda^2*|l|^2/L^2) - 1).
// Deterministic at any thread count: per-slab partial sums are merged in a
// fixed order with compensated summation.
ModeSumResult rho1_mode_sum(const ThermoState& s, const BoxSpec& box,
                            const std::array<double, 3>& r);

// Single-threaded reference of the same accumulation; bit-identical to
// rho1_mode_sum by construction.
ModeSumResult rho1_mode_sum_serial(const ThermoState& s, const BoxSpec& box,
                                   const std::array<double, 3>& r);

// Smallest l_max whose cutoff-shell occupation is below 1e-12 of the peak.
int suggested_l_max(const ThermoState& s, double box_length);

}  // namespace becprobe
