#include "becprobe/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace becprobe {

namespace {

constexpr double kZeta32Full = 2.6123753486854883;
constexpr double kZeta32Rounded = 2.612;

// zeta(3/2 - k) for k = 0..8; coefficients of the small-alpha expansion of
// g_{3/2}(e^{-alpha}). Nine terms keep the expansion below double rounding
// for z >= 0.995.
constexpr double kRobinsonZeta[9] = {
    2.6123753486854883,      -1.4603545088095868,
    -0.20788622497735457,    -0.025485201889833036,
    0.0085169287778503305,   0.0044410113354794320,
    -0.0030916692472158338,  -0.0026714580198992246,
    0.0027467679395368688,
};

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

double ThermoOptions::zeta_three_halves() const {
  return paper_constants ? kZeta32Rounded : kZeta32Full;
}

namespace detail {

double g32_series(double z) {
  if (z == 0.0) return 0.0;
  // Kahan-compensated forward sum; all terms positive.
  double sum = 0.0, comp = 0.0;
  double zp = 1.0;
  for (long l = 1; l <= 3000000; ++l) {
    zp *= z;
    const double dl = static_cast<double>(l);
    const double term = zp / (dl * std::sqrt(dl));
    const double y = term - comp;
    const double tmp = sum + y;
    comp = (tmp - sum) - y;
    sum = tmp;
    // Geometric tail bound: sum_{m>l} z^m/m^{3/2} < z^{l+1}/((l+1)^{3/2}(1-z)).
    const double dl1 = dl + 1.0;
    const double tail = zp * z / (dl1 * std::sqrt(dl1) * (1.0 - z));
    if (tail < 1e-16 * sum) return sum;
  }
  throw std::runtime_error("g32_series: no convergence (z too close to 1)");
}

double g32_robinson(double z) {
  const double alpha = -std::log(z);
  double result = -2.0 * std::sqrt(kPi * alpha);
  double mk = 1.0;  // (-alpha)^k / k!
  for (int k = 0; k < 9; ++k) {
    result += kRobinsonZeta[k] * mk;
    mk *= -alpha / static_cast<double>(k + 1);
  }
  return result;
}

}  // namespace detail

double polylog_three_halves(double z) {
  if (!(z >= 0.0) || z > 1.0)
    throw std::domain_error("polylog_three_halves: z must be in [0, 1]");
  if (z <= 0.999) return detail::g32_series(z);
  return detail::g32_robinson(z);
}

double solve_fugacity(double t, const ThermoOptions& opt) {
  if (!(t > 1.0))
    throw std::domain_error("solve_fugacity: defined for t > 1 only");
  const double target = opt.zeta_three_halves() * std::pow(t, -1.5);
  // g_{3/2} is strictly increasing and target < g_{3/2}(1), so the root is
  // bracketed by [0, 1]. Bisection to machine precision (contract: 1e-12).
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-17 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (polylog_three_halves(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double thermal_wavelength(double density, double t, const ThermoOptions& opt) {
  if (!(density > 0.0))
    throw std::domain_error("thermal_wavelength: density must be positive");
  if (!(t > 0.0)) throw std::domain_error("thermal_wavelength: t must be positive");
  return std::cbrt(opt.zeta_three_halves() / density) / std::sqrt(t);
}

double ground_state_density(double density, double t) {
  if (!(density > 0.0))
    throw std::domain_error("ground_state_density: density must be positive");
  if (!(t > 0.0)) throw std::domain_error("ground_state_density: t must be positive");
  if (t >= 1.0) return 0.0;
  return density * (1.0 - std::pow(t, 1.5));
}

ThermoState build_thermo_state(const GasSpec& gas, const ThermoOptions& opt) {
  if (!(gas.density > 0.0))
    throw std::domain_error("build_thermo_state: density must be positive");
  if (!(gas.t_reduced > 0.0))
    throw std::domain_error("build_thermo_state: t_reduced must be positive");
  if (!(gas.n_total >= 1.0))
    throw std::domain_error("build_thermo_state: n_total must be >= 1");

  ThermoState s{};
  s.t = gas.t_reduced;
  s.n = gas.density;
  double one_minus_z;
  if (gas.t_reduced <= 1.0) {
    const double depletion = 1.0 - std::pow(gas.t_reduced, 1.5);
    s.n0_occupation = gas.n_total * depletion;
    s.z = s.n0_occupation / (s.n0_occupation + 1.0);
    // Exact complement: forming 1 - z directly cancels away ~log10(N0) digits.
    one_minus_z = 1.0 / (s.n0_occupation + 1.0);
    s.n0 = gas.density * depletion;
  } else {
    s.z = solve_fugacity(gas.t_reduced, opt);
    one_minus_z = 1.0 - s.z;
    s.n0_occupation = 0.0;
    s.n0 = 0.0;
  }
  s.one_minus_z = one_minus_z;
  s.lambda = thermal_wavelength(gas.density, gas.t_reduced, opt);
  s.kappa = 2.0 * std::sqrt(4.0 * kPi * one_minus_z) / s.lambda;
  return s;
}

}  // namespace becprobe
