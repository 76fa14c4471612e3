#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdint>

#include "becprobe/probe.hpp"
#include "becprobe/thermo.hpp"
#include "doctest.h"

using namespace becprobe;

namespace {

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::fabs(b);
}

// Deterministic generator for the property-style cases (SplitMix64).
struct Gen {
  std::uint64_t s;
  explicit Gen(std::uint64_t seed) : s(seed) {}
  double next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = s;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x = x ^ (x >> 31);
    return ((x >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  }
};

Moments random_moments(Gen& g) {
  // qa log-uniform over [1e-2, 1e3]; correlations in the physical region
  // qa2 = qa + qa^2 + I_AA, qaqb = qa^2 + I_AB with I_AA >= 0 and
  // 0 <= I_AB <= qa + I_AA. The upper bound keeps the state positive
  // (equivalently the negativity at most 1/2).
  const double qa = 1e-2 * std::pow(1e5, g.next());
  const double iaa = qa * qa * g.next();
  const double iab = (qa + iaa) * g.next();
  return {qa, qa + qa * qa + iaa, qa * qa + iab};
}

const double kGamma = 2.4e-5;
const RegionSpec kRegion{1e-4, std::nullopt};

}  // namespace

TEST_CASE("moments at a reference point") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 1.5});
  const Moments m = compute_moments(s, kRegion);
  CHECK(rel_close(m.qa, 1e14 * kRegion.omega(), 1e-15));
  CHECK(m.qa2 > m.qa + m.qa * m.qa);  // bunching adds a positive piece
  CHECK(m.qaqb == m.qa * m.qa);       // infinite separation above T_c
  CHECK(rel_close(coupling_parameter(m, kGamma), 0.010053096491487338, 1e-13));
}

TEST_CASE("probe state structure") {
  const ThermoState s = build_thermo_state({1e14, 1e6, 1.5});
  const Moments m = compute_moments(s, kRegion);
  const HermMat4 rho = build_probe_state(m, kGamma);

  CHECK(std::fabs(rho.trace_real() - 1.0) < 1e-15);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(rho.at(r, c) == std::conj(rho.at(c, r)));

  const double g2 = kGamma * kGamma;
  const double nrm = 1.0 + 2.0 * g2 * m.qa2;
  CHECK(rho.at(3, 3) == std::complex<double>(0.0, 0.0));
  CHECK(rho.at(1, 1) == rho.at(2, 2));
  CHECK(rho.at(0, 1) == std::complex<double>(0.0, -kGamma * m.qa / nrm));
  CHECK(rho.at(0, 2) == rho.at(0, 1));
  CHECK(rho.at(1, 2) == std::complex<double>(g2 * m.qaqb / nrm, 0.0));

  // Positive semidefinite: the embedded spectrum may dip below zero only by
  // rounding.
  const auto ev = embedded_eigenvalues(rho);
  CHECK(ev.front() > -1e-12);
  double sum = 0.0;
  for (double e : ev) sum += e;
  CHECK(std::fabs(sum - 2.0) < 1e-12);  // doubled trace
}

TEST_CASE("partial transpose is an involution") {
  Gen g(7);
  for (int i = 0; i < 20; ++i) {
    const Moments m = random_moments(g);
    const double gamma = 0.9 / m.qa * g.next();
    const HermMat4 rho = build_probe_state(m, gamma);
    const HermMat4 twice = partial_transpose_b(partial_transpose_b(rho));
    for (int k = 0; k < 16; ++k) CHECK(twice.a[k] == rho.a[k]);
  }
}

TEST_CASE("eigensolver on a known spectrum") {
  // Block diag([[2, i], [-i, 2]], 5, 7): eigenvalues {1, 3, 5, 7}.
  HermMat4 m;
  m.at(0, 0) = 2.0;
  m.at(0, 1) = std::complex<double>(0.0, 1.0);
  m.at(1, 0) = std::complex<double>(0.0, -1.0);
  m.at(1, 1) = 2.0;
  m.at(2, 2) = 5.0;
  m.at(3, 3) = 7.0;
  const auto ev = embedded_eigenvalues(m);
  const double want[8] = {1, 1, 3, 3, 5, 5, 7, 7};
  for (int i = 0; i < 8; ++i) CHECK(std::fabs(ev[i] - want[i]) < 1e-13);
}

TEST_CASE("analytic negativity matches the eigensolver") {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Moments m = random_moments(g);
    const double gamma = 0.9 / m.qa * g.next();
    const HermMat4 rho = build_probe_state(m, gamma);
    const auto [projected, prob] = project_out_vacuum(rho);
    CHECK(std::fabs(prob - interaction_probability(m, gamma)) < 1e-14);
    const double analytic = negativity_analytic(m);
    CHECK(analytic <= 0.5);
    CHECK(std::fabs(negativity_eigen(projected) - analytic) <= 1e-12);
  }
}

TEST_CASE("weighted entanglement factorizes") {
  Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    const Moments m = random_moments(g);
    const double gamma = 0.9 / m.qa * g.next();
    const double e = weighted_entanglement(m, gamma);
    const double product =
        interaction_probability(m, gamma) * negativity_analytic(m);
    CHECK(std::fabs(e - product) <= 1e-12 * std::fabs(product));
  }
}

TEST_CASE("weighted entanglement frozen values") {
  // gamma = 2.4e-5, R = 1e-4 cm, n = 1e14 cm^-3, N = 1e6, infinite
  // separation. Frozen from a 40-digit pipeline evaluation.
  const ThermoState s15 = build_thermo_state({1e14, 1e6, 1.5});
  const Moments m15 = compute_moments(s15, kRegion);
  CHECK(rel_close(weighted_entanglement(m15, kGamma), 0.00010104416973812985,
                  1e-12));
  CHECK(rel_close(interaction_probability(m15, kGamma), 0.0002036251929098013,
                  1e-12));

  const ThermoState s05 = build_thermo_state({1e14, 1e6, 0.5});
  const Moments m05 = compute_moments(s05, kRegion);
  CHECK(rel_close(weighted_entanglement(m05, kGamma), 0.00014325515942550544,
                  1e-12));
}

TEST_CASE("negativity saturates at one half for strong local bunching") {
  // In the deep-degeneracy limit qa2 -> qa + 2 qa^2 and qaqb -> 2 qa^2,
  // so the negativity becomes qa / (1 + 2 qa) -> 1/2 from below.
  double prev_gap = 1.0;
  for (double q : {1e2, 1e3, 1e4}) {
    const Moments m{q, q + 2.0 * q * q, 2.0 * q * q};
    const double neg = negativity_analytic(m);
    CHECK(rel_close(neg, q / (1.0 + 2.0 * q), 1e-14));
    const double gap = 0.5 - neg;
    CHECK(gap > 0.0);
    CHECK(gap < 1.0 / q);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("distinguishability baseline") {
  CHECK(false_entanglement(0.5) == 1.0 / 12.0);
  CHECK(rel_close(false_entanglement(0.01), 9.801980198019801e-05, 1e-15));
  CHECK(false_entanglement(0.0) == 0.0);
  CHECK_THROWS_AS(false_entanglement(1.0), std::domain_error);
  CHECK_THROWS_AS(false_entanglement(1.5), std::domain_error);
  CHECK_THROWS_AS(false_entanglement(-0.1), std::domain_error);
}

TEST_CASE("degenerate couplings") {
  const Moments m{100.0, 100.0 + 100.0 * 100.0 * 1.5, 9000.0};

  // gamma = 0: pure vacuum builds fine, projecting it out is an error.
  const HermMat4 vac = build_probe_state(m, 0.0);
  CHECK(vac.at(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(vac.at(1, 1) == std::complex<double>(0.0, 0.0));
  CHECK(weighted_entanglement(m, 0.0) == 0.0);
  CHECK_THROWS_AS(project_out_vacuum(vac), std::domain_error);

  // Expansion parameter >= 1 or a negative coupling is rejected.
  CHECK_THROWS_AS(build_probe_state(m, 0.01), std::domain_error);  // eps = 1
  CHECK_THROWS_AS(build_probe_state(m, 0.02), std::domain_error);
  CHECK_THROWS_AS(build_probe_state(m, -1e-6), std::domain_error);
}
