#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "becprobe/correlation.hpp"
#include "becprobe/integrals.hpp"
#include "becprobe/thermo.hpp"
#include "doctest.h"

using namespace becprobe;

namespace {

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::fabs(b);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("sphere volume") {
  const RegionSpec r{1e-4, std::nullopt};
  CHECK(rel_close(r.omega(), 4.188790204786391e-12, 1e-15));
}

TEST_CASE("direct bracket and cancelled series agree") {
  // The direct brackets lose ~12 leading digits at x = 1e-3 in double; the
  // __float128 evaluation must track the series to 1e-9 across the whole
  // switch region (it actually agrees to ~1e-13).
  for (int i = 0; i <= 200; ++i) {
    const double x = 1e-3 * std::pow(100.0, i / 200.0);  // log grid to 1e-1
    CHECK(rel_close(detail::aa_scaled_direct(x), detail::aa_scaled_series(x), 1e-9));
    CHECK(rel_close(detail::prime_scaled_direct(x), detail::prime_scaled_series(x),
                    1e-9));
  }
}

TEST_CASE("series values at x = 0") {
  CHECK(detail::aa_scaled_series(0.0) == 2.0);
  CHECK(detail::prime_scaled_series(0.0) == 4.0 / 120.0);
}

TEST_CASE("small-kappa limits") {
  // As kappa*R -> 0: I_AA> -> 4 pi^2 z^2 R^4 / lambda^4 and
  // I' -> (64/15) pi^2 z R^5 / lambda^2.
  ThermoState s = build_thermo_state({1e14, 1e6, 0.99});
  s.kappa = 1e-8 / 1e-4;  // force kappa*R = 1e-8
  const RegionSpec region{1e-4, std::nullopt};
  const double R = region.radius;
  const double lim_aa = 4.0 * kPi * kPi * s.z * s.z * std::pow(R, 4) /
                        std::pow(s.lambda, 4);
  const double lim_pr = 64.0 / 15.0 * kPi * kPi * s.z * std::pow(R, 5) /
                        (s.lambda * s.lambda);
  CHECK(rel_close(i1_aa_above(s, region), lim_aa, 1e-7));
  CHECK(rel_close(i1_prime(s, region), lim_pr, 1e-7));
}

TEST_CASE("self integral frozen values") {
  const RegionSpec region{1e-4, std::nullopt};
  // Above the transition only the thermal term survives. Frozen from a
  // 40-digit evaluation, itself checked against direct numerical quadrature
  // of the pair-distance integral.
  const ThermoState s13 = build_thermo_state({1e14, 1e6, 1.3});
  CHECK(s13.n0 == 0.0);
  CHECK(rel_close(i1_aa(s13, region), 1234.1502287276862, 1e-11));

  const ThermoState s05 = build_thermo_state({1e14, 1e6, 0.5});
  CHECK(rel_close(i1_prime(s05, region), 2.3708830075740176e-10, 1e-11));
  CHECK(rel_close(i1_aa(s05, region), 89909.24014759567, 1e-11));
  // kappa*R = 0.021 here: exercises the direct (__float128) branch.
  CHECK(s05.kappa * region.radius > 1e-2);
}

TEST_CASE("self integral decreases with t above the transition") {
  const RegionSpec region{1e-4, std::nullopt};
  double prev = 1e300;
  for (double t : {1.1, 1.2, 1.3, 1.5, 1.7, 2.0}) {
    const double v = i1_aa_above(build_thermo_state({1e14, 1e6, t}), region);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("cross integral") {
  const ThermoState s05 = build_thermo_state({1e14, 1e6, 0.5});
  const ThermoState s12 = build_thermo_state({1e14, 1e6, 1.2});
  const RegionSpec infinite{1e-4, std::nullopt};
  // Infinite separation: condensate plateau only.
  CHECK(rel_close(i1_ab(s05, infinite), 73323.3911393182, 1e-11));
  CHECK(i1_ab(s12, infinite) == 0.0);

  // Finite separation: constant-distance approximation Omega^2 rho1(d)^2.
  const double d = 10.0 * s12.lambda;
  const RegionSpec finite{1e-9, d};
  const double expect = finite.omega() * finite.omega() *
                        rho1_continuum(s12, d) * rho1_continuum(s12, d);
  CHECK(rel_close(i1_ab(s12, finite), expect, 1e-14));

  CHECK_THROWS_AS(i1_ab(s12, RegionSpec{1e-4, 1.5e-4}), std::invalid_argument);
  CHECK_THROWS_AS(i1_ab(s12, RegionSpec{1e-4, 2e-4}), std::invalid_argument);
}

TEST_CASE("oracle matches the closed self integral above the transition") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 1.3});
  const RegionSpec region{1e-4, std::nullopt};
  const double closed = i1_aa(s, region);
  const McEstimate mc = mc_oracle(s, region, OracleTarget::on_site, 200000, 3);
  CHECK(mc.std_error > 0.0);
  CHECK(std::fabs(mc.value - closed) < 3.0 * mc.std_error);
  CHECK(mc.std_error < 0.02 * closed);  // sane variance for 2e5 samples
}

TEST_CASE("oracle decomposition below the transition") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 0.8});
  const RegionSpec region{1e-4, std::nullopt};
  const McDecomposition d = mc_oracle_decomposed(s, region, 200000, 5);

  const double om = region.omega();
  CHECK(std::fabs(d.total.value - i1_aa(s, region)) < 3.0 * d.total.std_error);
  CHECK(std::fabs(d.thermal_sq.value - i1_aa_above(s, region)) <
        3.0 * d.thermal_sq.std_error);
  CHECK(std::fabs(d.condensate_cross.value - s.n0 * i1_prime(s, region)) <
        3.0 * d.condensate_cross.std_error);
  // The condensate term integrates a constant kernel: pure sampler geometry,
  // so it doubles as the sphere-sampler self-test.
  CHECK(std::fabs(d.condensate_sq.value - s.n0 * s.n0 * om * om) <
        3.0 * d.condensate_sq.std_error);
  // Streams share every sample, so the parts sum to the total up to rounding.
  const double parts =
      d.thermal_sq.value + d.condensate_cross.value + d.condensate_sq.value;
  CHECK(rel_close(parts, d.total.value, 1e-12));
}

TEST_CASE("oracle cross estimates") {
  const ThermoState s12 = build_thermo_state({1e14, 1e6, 1.2});
  const ThermoState s05 = build_thermo_state({1e14, 1e6, 0.5});

  // Infinite separation is exact, with zero spread.
  const RegionSpec infinite{1e-4, std::nullopt};
  const McEstimate above = mc_oracle(s12, infinite, OracleTarget::cross, 100, 9);
  CHECK(above.value == 0.0);
  CHECK(above.std_error == 0.0);
  const McEstimate below = mc_oracle(s05, infinite, OracleTarget::cross, 100, 9);
  const double om = infinite.omega();
  CHECK(below.value == s05.n0 * s05.n0 * om * om);
  CHECK(below.std_error == 0.0);

  // Finite separation, small spheres: the constant-distance approximation is
  // exact to ~1e-8 here, far under the Monte Carlo resolution.
  const RegionSpec finite{1e-9, 10.0 * s12.lambda};
  const double closed = i1_ab(s12, finite);
  const McEstimate mc = mc_oracle(s12, finite, OracleTarget::cross, 200000, 11);
  CHECK(mc.std_error > 0.0);
  CHECK(std::fabs(mc.value - closed) < 3.0 * mc.std_error);
}

TEST_CASE("oracle determinism") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 1.2});
  const RegionSpec region{1e-4, std::nullopt};
  const McEstimate a = mc_oracle(s, region, OracleTarget::on_site, 70000, 123);
  const McEstimate b = mc_oracle(s, region, OracleTarget::on_site, 70000, 123);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  const McEstimate c = mc_oracle(s, region, OracleTarget::on_site, 70000, 124);
  CHECK(a.value != c.value);
}

TEST_CASE("oracle input validation") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 1.2});
  CHECK_THROWS_AS(
      mc_oracle(s, RegionSpec{1e-4, std::nullopt}, OracleTarget::on_site, 0, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      mc_oracle(s, RegionSpec{1e-4, 1.5e-4}, OracleTarget::cross, 100, 1),
      std::invalid_argument);
}
