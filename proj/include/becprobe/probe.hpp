#pragma once

#include <array>
#include <complex>
#include <utility>

#include "becprobe/integrals.hpp"
#include "becprobe/thermo.hpp"

// Two-qubit probe pair weakly coupled to the local particle number in two
// spheres A and B. Everything is driven by three moments of the local number
// operators; the entanglement measures reduce to closed forms in them, and an
// explicit 4x4 density matrix + eigensolver route is kept for cross-checking.

namespace becprobe {

struct Moments {
  double qa;    // <n_A> = n * Omega (A and B identical by symmetry)
  double qa2;   // <n_A^2> = n*Omega + (n*Omega)^2 + I_AA
  double qaqb;  // <n_A n_B> = (n*Omega)^2 + I_AB
};

Moments compute_moments(const ThermoState& s, const RegionSpec& region);

// Dimensionless coupling gamma * <n_A>. The probe model is only meaningful
// when this is small; build_probe_state rejects >= 1.
double coupling_parameter(const Moments& m, double gamma);

// 4x4 Hermitian matrix in the product basis {|00>, |10>, |01>, |11>},
// row-major.
struct HermMat4 {
  std::array<std::complex<double>, 16> a{};

  std::complex<double>& at(int r, int c) { return a[4 * r + c]; }
  const std::complex<double>& at(int r, int c) const { return a[4 * r + c]; }
  double trace_real() const;
};

// Normalized post-interaction probe state:
//   diag(1, G^2 qa2, G^2 qa2, 0) / Nrm, with coherences
//   <00|rho|10> = -i G qa, <00|rho|01> = -i G qa, <10|rho|01> = G^2 qaqb,
//   Nrm = 1 + 2 G^2 qa2. gamma = 0 gives the pure vacuum |00><00|.
// Throws std::domain_error when coupling_parameter >= 1.
HermMat4 build_probe_state(const Moments& m, double gamma);

// Removes the |00> component and renormalizes; returns the projected state
// and the click probability 2 G^2 qa2 / (1 + 2 G^2 qa2).
// Throws std::domain_error when the click probability is 0 (gamma = 0).
std::pair<HermMat4, double> project_out_vacuum(const HermMat4& rho);

// <ij| rho^{T_B} |kl> = <il| rho |kj>; an involution.
HermMat4 partial_transpose_b(const HermMat4& rho);

// Eigenvalues of the 8x8 real-symmetric embedding [[Re, -Im], [Im, Re]],
// ascending; every eigenvalue of the Hermitian matrix appears twice.
// Cyclic Jacobi, converged to off-diagonal norm < 1e-14 * scale.
std::array<double, 8> embedded_eigenvalues(const HermMat4& m);

// |sum of negative eigenvalues| of the partial transpose.
double negativity_eigen(const HermMat4& rho);

// Closed form of the same quantity for the vacuum-projected state:
// qaqb / (2 * qa2).
double negativity_analytic(const Moments& m);

// Click probability 2 G^2 qa2 / (1 + 2 G^2 qa2).
double interaction_probability(const Moments& m, double gamma);

// Probability-weighted entanglement E = G^2 qaqb / (1 + 2 G^2 qa2)
// = interaction_probability * negativity_analytic.
double weighted_entanglement(const Moments& m, double gamma);

// Distinguishability baseline for two classical sources of visibility eps:
// E_F(eps) = eps^2 (1-eps)^2 / (1 - eps^2). Throws std::domain_error for
// eps < 0 or eps >= 1.
double false_entanglement(double eps);

}  // namespace becprobe
