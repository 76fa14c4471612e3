#include "becprobe/probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace becprobe {

Moments compute_moments(const ThermoState& s, const RegionSpec& region) {
  Moments m;
  m.qa = s.n * region.omega();
  m.qa2 = m.qa + m.qa * m.qa + i1_aa(s, region);
  m.qaqb = m.qa * m.qa + i1_ab(s, region);
  return m;
}

double coupling_parameter(const Moments& m, double gamma) {
  return gamma * m.qa;
}

double HermMat4::trace_real() const {
  return a[0].real() + a[5].real() + a[10].real() + a[15].real();
}

HermMat4 build_probe_state(const Moments& m, double gamma) {
  if (!(gamma >= 0.0))
    throw std::domain_error("build_probe_state: gamma must be >= 0");
  if (coupling_parameter(m, gamma) >= 1.0)
    throw std::domain_error(
        "build_probe_state: coupling gamma*<n_A> must be < 1");
  const double g2 = gamma * gamma;
  const double nrm = 1.0 + 2.0 * g2 * m.qa2;
  HermMat4 rho;
  rho.at(0, 0) = 1.0 / nrm;
  rho.at(1, 1) = g2 * m.qa2 / nrm;
  rho.at(2, 2) = g2 * m.qa2 / nrm;
  rho.at(0, 1) = std::complex<double>(0.0, -gamma * m.qa / nrm);
  rho.at(0, 2) = std::complex<double>(0.0, -gamma * m.qa / nrm);
  rho.at(1, 0) = std::conj(rho.at(0, 1));
  rho.at(2, 0) = std::conj(rho.at(0, 2));
  rho.at(1, 2) = g2 * m.qaqb / nrm;
  rho.at(2, 1) = g2 * m.qaqb / nrm;
  // |11> needs two interactions on each side; absent at this order.
  return rho;
}

std::pair<HermMat4, double> project_out_vacuum(const HermMat4& rho) {
  // Click probability as the non-vacuum diagonal weight: 1 - rho00 would
  // cancel to ~1e-7 relative error when the probability is ~1e-9.
  const double p =
      rho.at(1, 1).real() + rho.at(2, 2).real() + rho.at(3, 3).real();
  if (!(p > 0.0))
    throw std::domain_error(
        "project_out_vacuum: click probability is 0 (pure vacuum state)");
  HermMat4 out;
  for (int r = 1; r < 4; ++r)
    for (int c = 1; c < 4; ++c) out.at(r, c) = rho.at(r, c) / p;
  return {out, p};
}

HermMat4 partial_transpose_b(const HermMat4& rho) {
  // Basis index i = a + 2b for |a b>; <ab| rho^{T_B} |a'b'> = <ab'| rho |a'b>.
  auto idx = [](int a, int b) { return a + 2 * b; };
  HermMat4 out;
  for (int i = 0; i < 4; ++i) {
    const int ai = i & 1, bi = i >> 1;
    for (int j = 0; j < 4; ++j) {
      const int aj = j & 1, bj = j >> 1;
      out.at(i, j) = rho.at(idx(ai, bj), idx(aj, bi));
    }
  }
  return out;
}

std::array<double, 8> embedded_eigenvalues(const HermMat4& m) {
  // [[Re, -Im], [Im, Re]] is real symmetric with each eigenvalue doubled.
  double C[8][8];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double re = m.at(r, c).real();
      const double im = m.at(r, c).imag();
      C[r][c] = re;
      C[r][c + 4] = -im;
      C[r + 4][c] = im;
      C[r + 4][c + 4] = re;
    }
  }
  double frob2 = 0.0;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) frob2 += C[r][c] * C[r][c];
  const double frob = std::sqrt(frob2);

  std::array<double, 8> eig{};
  if (frob == 0.0) return eig;

  // Cyclic Jacobi; quadratic convergence, a handful of sweeps for 8x8.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < 8; ++p)
      for (int q = p + 1; q < 8; ++q) off2 += 2.0 * C[p][q] * C[p][q];
    if (std::sqrt(off2) <= 1e-14 * frob) break;
    for (int p = 0; p < 8; ++p) {
      for (int q = p + 1; q < 8; ++q) {
        const double apq = C[p][q];
        if (apq == 0.0) continue;
        const double theta = (C[q][q] - C[p][p]) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 8; ++k) {  // columns
          const double akp = C[k][p], akq = C[k][q];
          C[k][p] = c * akp - s * akq;
          C[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 8; ++k) {  // rows
          const double apk = C[p][k], aqk = C[q][k];
          C[p][k] = c * apk - s * aqk;
          C[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  for (int k = 0; k < 8; ++k) eig[k] = C[k][k];
  std::sort(eig.begin(), eig.end());
  return eig;
}

double negativity_eigen(const HermMat4& rho) {
  const std::array<double, 8> eig = embedded_eigenvalues(partial_transpose_b(rho));
  double neg = 0.0;
  for (double e : eig)
    if (e < 0.0) neg += e;
  return -neg / 2.0;  // embedding doubles every eigenvalue
}

double negativity_analytic(const Moments& m) {
  return m.qaqb / (2.0 * m.qa2);
}

double interaction_probability(const Moments& m, double gamma) {
  const double g2 = gamma * gamma;
  return 2.0 * g2 * m.qa2 / (1.0 + 2.0 * g2 * m.qa2);
}

double weighted_entanglement(const Moments& m, double gamma) {
  const double g2 = gamma * gamma;
  return g2 * m.qaqb / (1.0 + 2.0 * g2 * m.qa2);
}

double false_entanglement(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0)
    throw std::domain_error("false_entanglement: eps must be in [0, 1)");
  return eps * eps * (1.0 - eps) * (1.0 - eps) / (1.0 - eps * eps);
}

}  // namespace becprobe
