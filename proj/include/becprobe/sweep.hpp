#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "becprobe/integrals.hpp"

// Parameter sweep over (t, n): configuration parsing, the deterministic
// parallel driver, CSV serialization, and the SVG heatmap renderer.

namespace becprobe {

// Configuration / validation failure. what() lists every violation found,
// one per line, not just the first.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SweepConfig {
  double t_min = 0.2;
  double t_max = 2.0;
  int t_steps = 61;
  std::vector<double> densities;     // filled from densities= or density_min/max/steps
  double radius = 1e-4;              // R [cm]
  std::optional<double> gamma;       // required; no default
  double n_total = 1e6;
  std::optional<double> l_ab;        // nullopt = infinite separation
  std::uint64_t oracle_samples = 0;  // 0 disables the Monte Carlo columns
  std::uint64_t seed = 1;
  bool paper_constants = true;
  int workers = 0;                   // 0 = all available threads
  std::string out_csv = "sweep.csv";
  std::string out_svg;               // empty = no heatmap

  std::vector<double> t_grid() const;  // t_steps points, linear in [t_min, t_max]
};

// Parses `key = value` lines ('#' comments, blank lines ignored) and
// validates ranges. Unknown keys, unparseable values, and range violations
// are all collected and reported together in one ConfigError.
SweepConfig parse_config(const std::string& text);

// Default densities when the config gives none: 41 points linear on
// [1e13, 2e14].
std::vector<double> default_density_grid();

struct ResultRecord {
  double t, n, z, lambda, kappa, n0;
  double i_aa, i_ab;
  double qa, qa2, qaqb;
  double negativity, interaction_probability, weighted_entanglement;
  double e_false_baseline;  // E_F(gamma * n * Omega)
  std::optional<McEstimate> oracle_aa, oracle_ab;
  std::string warnings;  // semicolon-separated; empty when clean
};

// Evaluates every grid point; t-major order (all densities for t[0], then
// t[1], ...). Points are independent and run in parallel; per-point oracle
// randomness is derived from (seed, flat point index), and records land in a
// preallocated slot each, so output is identical at any worker count.
// Per-point coupling violations become row warnings, never aborts.
std::vector<ResultRecord> run_sweep(const SweepConfig& cfg);

// Evaluates one (t, n) point with the same per-point logic; `index` seeds the
// oracle exactly as the matching sweep position would.
ResultRecord evaluate_point(const SweepConfig& cfg, double t, double density,
                            std::uint64_t index);

// 17-significant-digit CSV (round-trips to the same bits), LF line ends.
extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> parse_csv(std::istream& in);

// SVG heatmap of weighted_entanglement over the (t, n) plane. The records
// must form a complete rectangular grid in (t, n); otherwise throws
// std::invalid_argument naming the first missing/duplicate cell. Byte output
// is a pure function of the record values.
std::string render_heatmap(const std::vector<ResultRecord>& records);

}  // namespace becprobe
