#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "becprobe/integrals.hpp"
#include "becprobe/rng.hpp"

namespace becprobe {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
// Samples per accumulation block. Blocks are summed independently (in any
// thread order) and merged in block order, so the estimate is bit-identical
// at any thread count.
constexpr std::uint64_t kBlock = 65536;
// Counters reserved per sample; on_site and cross both consume 10.
constexpr std::uint64_t kCountersPerSample = 16;

struct Vec3 {
  double x, y, z;
};

// Thermal part of rho1 (no condensate offset).
double thermal_kernel(const ThermoState& s, double r) {
  return s.z / (s.lambda * s.lambda) * std::exp(-0.5 * s.kappa * r) / r;
}

// Two Box-Muller draws -> three standard normals (fourth discarded).
Vec3 gaussian_triple(const CounterRng& rng, std::uint64_t base) {
  const double u1 = rng.uniform(base);
  const double u2 = rng.uniform(base + 1);
  const double u3 = rng.uniform(base + 2);
  const double u4 = rng.uniform(base + 3);
  const double r1 = std::sqrt(-2.0 * std::log(u1));
  const double r2 = std::sqrt(-2.0 * std::log(u3));
  return {r1 * std::cos(2.0 * kPi * u2), r1 * std::sin(2.0 * kPi * u2),
          r2 * std::cos(2.0 * kPi * u4)};
}

Vec3 isotropic_direction(const CounterRng& rng, std::uint64_t base) {
  const Vec3 g = gaussian_triple(rng, base);
  const double n2 = g.x * g.x + g.y * g.y + g.z * g.z;
  if (n2 == 0.0) return {1.0, 0.0, 0.0};  // u = 1 three times; p ~ 2^-159
  const double inv = 1.0 / std::sqrt(n2);
  return {g.x * inv, g.y * inv, g.z * inv};
}

// Uniform point in a ball of radius R: cube-root radius x isotropic direction.
// Consumes counters base .. base+4.
Vec3 ball_point(const CounterRng& rng, std::uint64_t base, double R) {
  const double rad = R * std::cbrt(rng.uniform(base));
  const Vec3 d = isotropic_direction(rng, base + 1);
  return {rad * d.x, rad * d.y, rad * d.z};
}

struct Acc {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  // Chan's pairwise merge; applied in fixed block order.
  void merge(const Acc& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double d = o.mean - mean;
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    m2 += o.m2 + d * d * na * nb / nt;
    mean += d * nb / nt;
    n += o.n;
  }
};

McEstimate to_estimate(const Acc& a) {
  if (a.n < 2) return {a.mean, 0.0};
  const double var = a.m2 / static_cast<double>(a.n - 1);
  return {a.mean, std::sqrt(var / static_cast<double>(a.n))};
}

// On-site sample i: point X uniform in the sphere, pair distance u uniform on
// (0, 2R], direction isotropic; weight = Omega * 2R * 4 pi u^2 * 1{X+u inside}.
// The naive (X, Y) estimator has infinite variance from the 1/r^2 kernel;
// this pair-distance form is bounded.
struct OnSiteDraw {
  double weight;   // geometric weight including the indicator
  double thermal;  // thermal kernel at the drawn distance
};

OnSiteDraw draw_on_site(const CounterRng& rng, std::uint64_t i,
                        const ThermoState& s, double R) {
  const std::uint64_t base = i * kCountersPerSample;
  const Vec3 X = ball_point(rng, base, R);
  const double u = 2.0 * R * rng.uniform(base + 5);
  const Vec3 dir = isotropic_direction(rng, base + 6);
  const double px = X.x + u * dir.x;
  const double py = X.y + u * dir.y;
  const double pz = X.z + u * dir.z;
  const bool inside = px * px + py * py + pz * pz <= R * R;
  const double omega = 4.0 / 3.0 * kPi * R * R * R;
  const double w = inside ? omega * 2.0 * R * 4.0 * kPi * u * u : 0.0;
  return {w, thermal_kernel(s, u)};
}

}  // namespace

McEstimate mc_oracle(const ThermoState& s, const RegionSpec& region,
                     OracleTarget target, std::uint64_t samples,
                     std::uint64_t seed) {
  if (!(region.radius > 0.0))
    throw std::domain_error("mc_oracle: radius must be positive");
  const double R = region.radius;
  const double omega = region.omega();

  if (target == OracleTarget::cross) {
    if (!region.l_ab) {
      // Infinite separation: the integrand is the constant n0^2; exact.
      const double v = s.n0 > 0.0 ? s.n0 * s.n0 * omega * omega : 0.0;
      return {v, 0.0};
    }
    if (!(*region.l_ab > 2.0 * R))
      throw std::invalid_argument(
          "mc_oracle: sphere separation must exceed the diameter 2R");
  }
  if (samples == 0)
    throw std::invalid_argument("mc_oracle: samples must be >= 1");

  const CounterRng rng{seed};
  const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<Acc> accs(nblocks);
  const double d = target == OracleTarget::cross ? *region.l_ab : 0.0;

#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    Acc a;
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t hi = std::min(samples, lo + kBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      double val;
      if (target == OracleTarget::on_site) {
        const OnSiteDraw dr = draw_on_site(rng, i, s, R);
        const double rho = dr.thermal + s.n0;
        val = dr.weight * rho * rho;
      } else {
        const std::uint64_t base = i * kCountersPerSample;
        const Vec3 X = ball_point(rng, base, R);
        const Vec3 Y = ball_point(rng, base + 5, R);
        const double dx = X.x - (Y.x + d);
        const double dy = X.y - Y.y;
        const double dz = X.z - Y.z;
        const double sep = std::sqrt(dx * dx + dy * dy + dz * dz);
        const double rho = thermal_kernel(s, sep) + s.n0;
        val = omega * omega * rho * rho;
      }
      a.add(val);
    }
    accs[b] = a;
  }

  Acc total;
  for (const Acc& a : accs) total.merge(a);
  return to_estimate(total);
}

McDecomposition mc_oracle_decomposed(const ThermoState& s,
                                     const RegionSpec& region,
                                     std::uint64_t samples,
                                     std::uint64_t seed) {
  if (!(region.radius > 0.0))
    throw std::domain_error("mc_oracle_decomposed: radius must be positive");
  if (samples == 0)
    throw std::invalid_argument("mc_oracle_decomposed: samples must be >= 1");
  const double R = region.radius;
  const CounterRng rng{seed};
  const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::array<Acc, 4>> accs(nblocks);

#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    std::array<Acc, 4> a{};
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t hi = std::min(samples, lo + kBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const OnSiteDraw dr = draw_on_site(rng, i, s, R);
      const double rho = dr.thermal + s.n0;
      a[0].add(dr.weight * rho * rho);
      a[1].add(dr.weight * dr.thermal * dr.thermal);
      a[2].add(dr.weight * 2.0 * s.n0 * dr.thermal);
      a[3].add(dr.weight * s.n0 * s.n0);
    }
    accs[b] = a;
  }

  std::array<Acc, 4> total{};
  for (const auto& a : accs)
    for (int k = 0; k < 4; ++k) total[k].merge(a[k]);
  return {to_estimate(total[0]), to_estimate(total[1]), to_estimate(total[2]),
          to_estimate(total[3])};
}

}  // namespace becprobe
