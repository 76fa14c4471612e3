#include "becprobe/correlation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace becprobe {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double rho1_continuum(const ThermoState& s, double r) {
  if (!(r > 0.0))
    throw std::domain_error(
        "rho1_continuum: r must be positive (the long-wavelength kernel is "
        "singular at r = 0; the exact diagonal is n)");
  const double thermal =
      s.z / (s.lambda * s.lambda) * std::exp(-0.5 * s.kappa * r) / r;
  return thermal + s.n0;
}

double pair_distribution(const ThermoState& s, double r) {
  const double ratio = rho1_continuum(s, r) / s.n;
  return 1.0 + ratio * ratio;
}

namespace {

// Thermal occupation of mode l as a function of the squared integer index
// S = |l|^2: N(S) = z / (exp(pi lambda^2 S / L^2) - z). The denominator is
// formed as expm1(...) + (1 - z) so the S = 0 term keeps full precision when
// z hugs 1 (it reduces to exactly z / (1 - z) = N0 there).
double occupation(const ThermoState& s, double beta_unit, long S) {
  const double em1 = std::expm1(beta_unit * static_cast<double>(S));
  return s.z / (em1 + s.one_minus_z);
}

struct SumSetup {
  std::vector<double> occ;               // occ[S] for S <= l_max^2, else absent
  std::vector<double> cos_t[3], sin_t[3];  // phase tables per axis, index l + l_max
  int l_max;
  long s_max;
};

SumSetup prepare(const ThermoState& s, const BoxSpec& box,
                 const std::array<double, 3>& r) {
  if (!(box.box_length > 0.0))
    throw std::domain_error("rho1_mode_sum: box_length must be positive");
  if (box.l_max < 0)
    throw std::domain_error("rho1_mode_sum: l_max must be >= 0");

  SumSetup su;
  su.l_max = box.l_max;
  su.s_max = static_cast<long>(box.l_max) * box.l_max;
  const double beta_unit =
      kPi * s.lambda * s.lambda / (box.box_length * box.box_length);
  su.occ.resize(su.s_max + 1);
  for (long S = 0; S <= su.s_max; ++S) su.occ[S] = occupation(s, beta_unit, S);

  for (int a = 0; a < 3; ++a) {
    su.cos_t[a].resize(2 * box.l_max + 1);
    su.sin_t[a].resize(2 * box.l_max + 1);
    for (int l = -box.l_max; l <= box.l_max; ++l) {
      const double phase = 2.0 * kPi * static_cast<double>(l) * r[a] / box.box_length;
      su.cos_t[a][l + box.l_max] = std::cos(phase);
      su.sin_t[a][l + box.l_max] = std::sin(phase);
    }
  }
  return su;
}

// One lx slab, summed in a fixed (ly, lz) order; plain accumulation so the
// result is identical no matter which thread runs the slab.
double slab_sum(const SumSetup& su, int lx) {
  const int M = su.l_max;
  const double cx = su.cos_t[0][lx + M], sx = su.sin_t[0][lx + M];
  const long sx2 = static_cast<long>(lx) * lx;
  double partial = 0.0;
  for (int ly = -M; ly <= M; ++ly) {
    const long sy2 = sx2 + static_cast<long>(ly) * ly;
    if (sy2 > su.s_max) continue;
    const double cy = su.cos_t[1][ly + M], sy = su.sin_t[1][ly + M];
    // (cx + i sx)(cy + i sy) = cxy + i sxy
    const double cxy = cx * cy - sx * sy;
    const double sxy = cx * sy + sx * cy;
    const int lz_hi = static_cast<int>(std::floor(std::sqrt(
        static_cast<double>(su.s_max - sy2))));
    for (int lz = -lz_hi; lz <= lz_hi; ++lz) {
      const long S = sy2 + static_cast<long>(lz) * lz;
      partial += su.occ[S] * (cxy * su.cos_t[2][lz + M] - sxy * su.sin_t[2][lz + M]);
    }
  }
  return partial;
}

ModeSumResult finish(const ThermoState& s, const BoxSpec& box,
                     const std::vector<double>& partials) {
  // Merge slab partials in slab order with compensated summation: the total
  // does not depend on how slabs were scheduled.
  double sum = 0.0, comp = 0.0;
  for (double p : partials) {
    const double y = p - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double V = box.box_length * box.box_length * box.box_length;
  ModeSumResult out;
  out.value = sum / V;
  const double peak = s.z / s.one_minus_z;
  if (peak <= 0.0) {
    out.cutoff_sufficient = true;  // z = 0: nothing occupies any mode
  } else {
    const double beta_unit =
        kPi * s.lambda * s.lambda / (box.box_length * box.box_length);
    const long s_cut = static_cast<long>(box.l_max) * box.l_max;
    out.cutoff_sufficient = occupation(s, beta_unit, s_cut) < 1e-12 * peak;
  }
  return out;
}

}  // namespace

ModeSumResult rho1_mode_sum(const ThermoState& s, const BoxSpec& box,
                            const std::array<double, 3>& r) {
  const SumSetup su = prepare(s, box, r);
  std::vector<double> partials(2 * box.l_max + 1);
#pragma omp parallel for schedule(static)
  for (int is = 0; is <= 2 * box.l_max; ++is)
    partials[is] = slab_sum(su, is - box.l_max);
  return finish(s, box, partials);
}

ModeSumResult rho1_mode_sum_serial(const ThermoState& s, const BoxSpec& box,
                                   const std::array<double, 3>& r) {
  const SumSetup su = prepare(s, box, r);
  std::vector<double> partials(2 * box.l_max + 1);
  for (int is = 0; is <= 2 * box.l_max; ++is)
    partials[is] = slab_sum(su, is - box.l_max);
  return finish(s, box, partials);
}

int suggested_l_max(const ThermoState& s, double box_length) {
  if (!(box_length > 0.0))
    throw std::domain_error("suggested_l_max: box_length must be positive");
  const double peak = s.z / s.one_minus_z;
  if (peak <= 0.0) return 0;
  const double beta_unit =
      kPi * s.lambda * s.lambda / (box_length * box_length);
  for (int l = 1; l <= 1000000; ++l) {
    const long S = static_cast<long>(l) * l;
    if (occupation(s, beta_unit, S) < 1e-12 * peak) return l;
  }
  throw std::runtime_error("suggested_l_max: cutoff beyond 1e6 modes per axis");
}

}  // namespace becprobe
