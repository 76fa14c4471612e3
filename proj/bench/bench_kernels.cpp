// Timing harness for the two heavy kernels: the box mode sum and the Monte
// Carlo oracle, single thread vs all threads, with a bitwise equality check
// (the accumulation order is thread-count independent by design).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "becprobe/correlation.hpp"
#include "becprobe/integrals.hpp"
#include "becprobe/thermo.hpp"

using namespace becprobe;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  const double n = 1e14, N = 1e6;
  const ThermoState st = build_thermo_state({n, N, 1.2});
  const double L = std::cbrt(N / n);
  const BoxSpec box{L, suggested_l_max(st, L)};
  const std::array<double, 3> r = {st.lambda, 0.0, 0.0};

  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("mode sum: L = %.6g cm, l_max = %d\n", L, box.l_max);

  auto t0 = std::chrono::steady_clock::now();
  const ModeSumResult serial = rho1_mode_sum_serial(st, box, r);
  const double serial_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const ModeSumResult parallel = rho1_mode_sum(st, box, r);
  const double parallel_ms = ms_since(t0);

  std::printf("  serial   %8.1f ms  value %.12e\n", serial_ms, serial.value);
  std::printf("  parallel %8.1f ms  value %.12e  speedup %.2fx  bitwise %s\n",
              parallel_ms, parallel.value, serial_ms / parallel_ms,
              serial.value == parallel.value ? "equal" : "DIFFERENT");

  const RegionSpec region{1e-4, std::nullopt};
  const std::uint64_t samples = 2000000;
  std::printf("mc oracle: on-site, %llu samples\n",
              static_cast<unsigned long long>(samples));

  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  t0 = std::chrono::steady_clock::now();
  const McEstimate one = mc_oracle(st, region, OracleTarget::on_site, samples, 7);
  const double one_ms = ms_since(t0);

  omp_set_num_threads(max_threads);
  t0 = std::chrono::steady_clock::now();
  const McEstimate all = mc_oracle(st, region, OracleTarget::on_site, samples, 7);
  const double all_ms = ms_since(t0);

  std::printf("  1 thread  %8.1f ms  value %.12e +- %.3e\n", one_ms, one.value,
              one.std_error);
  std::printf("  %d thread  %8.1f ms  value %.12e  speedup %.2fx  bitwise %s\n",
              max_threads, all_ms, all.value, one_ms / all_ms,
              one.value == all.value ? "equal" : "DIFFERENT");
  return 0;
}
