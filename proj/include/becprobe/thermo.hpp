#pragma once

// Thermodynamics of the uniform ideal Bose gas in reduced-temperature form.
// All lengths are in cm, densities in cm^-3. t = T/T_c throughout.

namespace becprobe {

struct ThermoOptions {
  // true: use the rounded literature value 2.612 for zeta(3/2); false: the
  // full double-precision constant. The choice feeds BOTH the thermal
  // wavelength and the fugacity relation; switching only one of the two would
  // make the t<=1 and t>1 branches disagree at the transition.
  bool paper_constants = true;

  double zeta_three_halves() const;
};

struct GasSpec {
  double density;    // total number density n [cm^-3]
  double n_total;    // total particle number N (finite-size fugacity below t=1)
  double t_reduced;  // t = T/T_c
};

struct ThermoState {
  double t;       // reduced temperature
  double z;       // fugacity, 0 <= z < 1
  // Exact complement 1 - z. Below the transition z = N0/(N0+1) sits ~1e-6
  // from 1, so forming 1 - z from the stored z loses ~log10(N0) digits;
  // anything dividing by 1 - z (kappa, mode occupations) must use this field.
  double one_minus_z;
  double lambda;  // thermal de Broglie wavelength [cm]
  double kappa;   // inverse correlation length, kappa = 2*sqrt(4*pi*(1-z))/lambda
  double n0;      // condensate density [cm^-3]; 0 for t >= 1
  double n0_occupation;  // condensate occupation N0 = N*(1 - t^{3/2}); 0 for t >= 1
  double n;       // total density [cm^-3], copied from the spec
};

// g_{3/2}(z) = sum_{l>=1} z^l / l^{3/2} on [0, 1]. Uses the direct series for
// z <= 0.999 and a small-alpha expansion (z = e^{-alpha}) above it.
double polylog_three_halves(double z);

namespace detail {
// Direct series with a geometric tail bound; valid on [0, 1) but slow near 1.
double g32_series(double z);
// Expansion of g_{3/2}(e^{-alpha}) about alpha = 0; accurate for z >= 0.995.
double g32_robinson(double z);
}  // namespace detail

// Solves g_{3/2}(z) = zeta * t^{-3/2} for z on (0,1) by bisection; t > 1 only.
// Relative tolerance 1e-12 on the bracket.
double solve_fugacity(double t, const ThermoOptions& opt = {});

// lambda = (zeta/n)^{1/3} * t^{-1/2}.
double thermal_wavelength(double density, double t, const ThermoOptions& opt = {});

// n0 = n * (1 - t^{3/2}) for t <= 1, else 0.
double ground_state_density(double density, double t);

// Full state. t <= 1 uses the finite-size condensate branch
// (N0 = N*(1-t^{3/2}), z = N0/(N0+1)); t > 1 solves the fugacity relation.
// Throws std::domain_error on non-positive density, t, or n_total < 1.
ThermoState build_thermo_state(const GasSpec& gas, const ThermoOptions& opt = {});

}  // namespace becprobe
