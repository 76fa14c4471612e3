#include "becprobe/integrals.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

#include "becprobe/correlation.hpp"

namespace becprobe {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
// Below this kappa*R the direct brackets have lost enough leading digits that
// even __float128 headroom is wasted; the cancelled series is exact there.
constexpr double kSeriesSwitch = 1e-2;

void check_region(const RegionSpec& region) {
  if (!(region.radius > 0.0))
    throw std::domain_error("RegionSpec: radius must be positive");
}
}  // namespace

double RegionSpec::omega() const {
  return 4.0 / 3.0 * kPi * radius * radius * radius;
}

namespace detail {

// A(x)/x^4 with A(x) = 1 - 2x^2 + (8/3)x^3 - (1+2x)e^{-2x}. The bracket
// cancels to O(x^4): at x = 1e-3 roughly 12 leading digits die, so the
// arithmetic runs in __float128 (~34 digits) and the quotient is returned
// rounded once to double.
double aa_scaled_direct(double x) {
  const __float128 X = x;
  const __float128 A = 1 - 2 * X * X + (__float128(8) / 3) * X * X * X -
                       (1 + 2 * X) * expq(-2 * X);
  return static_cast<double>(A / (X * X * X * X));
}

// sum_{m>=0} (-2)^{m+4} (m+3) x^m / (m+4)!; equals A(x)/x^4 with the kappa
// powers cancelled term by term, so it is finite at x = 0 (value 2).
double aa_scaled_series(double x) {
  double term = 2.0;  // m = 0
  double sum = 0.0, comp = 0.0;
  for (int m = 0; m < 200; ++m) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    term *= -2.0 * x * static_cast<double>(m + 4) /
            (static_cast<double>(m + 3) * static_cast<double>(m + 5));
  }
  return sum;
}

// B(x)/x^5 with B(x) = 4 - x^2 + x^3/3 - (4+4x+x^2)e^{-x}; cancels to O(x^5).
double prime_scaled_direct(double x) {
  const __float128 X = x;
  const __float128 B = 4 - X * X + X * X * X / 3 -
                       (4 + 4 * X + X * X) * expq(-X);
  return static_cast<double>(B / (X * X * X * X * X));
}

// sum_{m>=0} (-1)^m (m+4)(m+1) x^m / (m+5)!; B(x)/x^5 cancelled, value 1/30
// at x = 0.
double prime_scaled_series(double x) {
  double term = 4.0 / 120.0;  // m = 0
  double sum = 0.0, comp = 0.0;
  for (int m = 0; m < 200; ++m) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    term *= -x * static_cast<double>(m + 5) * static_cast<double>(m + 2) /
            (static_cast<double>(m + 4) * static_cast<double>(m + 1) *
             static_cast<double>(m + 6));
  }
  return sum;
}

}  // namespace detail

double i1_aa_above(const ThermoState& s, const RegionSpec& region) {
  check_region(region);
  const double x = s.kappa * region.radius;
  const double scaled =
      x < kSeriesSwitch ? detail::aa_scaled_series(x) : detail::aa_scaled_direct(x);
  const double R = region.radius;
  const double l2 = s.lambda * s.lambda;
  return 2.0 * kPi * kPi * s.z * s.z * (R * R) * (R * R) / (l2 * l2) * scaled;
}

double i1_prime(const ThermoState& s, const RegionSpec& region) {
  check_region(region);
  const double x = s.kappa * region.radius;
  const double scaled = x < kSeriesSwitch ? detail::prime_scaled_series(x)
                                          : detail::prime_scaled_direct(x);
  const double R = region.radius;
  const double R5 = (R * R) * (R * R) * R;
  return 128.0 * kPi * kPi * s.z * R5 / (s.lambda * s.lambda) * scaled;
}

double i1_aa(const ThermoState& s, const RegionSpec& region) {
  double total = i1_aa_above(s, region);
  if (s.n0 > 0.0) {
    const double om = region.omega();
    total += s.n0 * s.n0 * om * om + s.n0 * i1_prime(s, region);
  }
  return total;
}

double i1_ab(const ThermoState& s, const RegionSpec& region) {
  check_region(region);
  const double om = region.omega();
  if (!region.l_ab) {
    // Infinitely separated spheres: only the condensate plateau correlates.
    return s.n0 > 0.0 ? s.n0 * s.n0 * om * om : 0.0;
  }
  const double d = *region.l_ab;
  if (!(d > 2.0 * region.radius))
    throw std::invalid_argument(
        "i1_ab: sphere separation must exceed the diameter 2R");
  const double rho = rho1_continuum(s, d);
  return om * om * rho * rho;
}

}  // namespace becprobe
