// Command-line front end: sweep / point / validate / baseline.
// Exit codes: 0 success, 1 configuration error, 2 numerical error,
// 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "becprobe/correlation.hpp"
#include "becprobe/probe.hpp"
#include "becprobe/rng.hpp"
#include "becprobe/sweep.hpp"

namespace {

using namespace becprobe;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config_path, out_path, svg_path;
  std::uint64_t seed = 0;
  std::uint64_t oracle_samples = 0;
  int workers = 0;
  bool paper_constants = true;
  CLI::Option *o_config = nullptr, *o_out = nullptr, *o_svg = nullptr,
              *o_seed = nullptr, *o_samples = nullptr, *o_workers = nullptr,
              *o_paper = nullptr;

  void attach(CLI::App* cmd) {
    o_config = cmd->add_option("--config", config_path, "configuration file");
    o_out = cmd->add_option("--out", out_path, "CSV output path");
    o_svg = cmd->add_option("--svg", svg_path, "SVG heatmap output path");
    o_seed = cmd->add_option("--seed", seed, "base RNG seed");
    o_samples = cmd->add_option("--oracle-samples", oracle_samples,
                                "Monte Carlo samples per point (0 disables)");
    o_workers = cmd->add_option("--workers", workers, "worker threads (0 = all)")
                    ->check(CLI::NonNegativeNumber);
    o_paper = cmd->add_option("--paper-constants", paper_constants,
                              "use the rounded 2.612 constant (true/false)");
  }

  // Config file first, then flags override whatever they set.
  SweepConfig load() const {
    std::string text;
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config file: " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    SweepConfig cfg = parse_config(text);
    if (o_out->count()) cfg.out_csv = out_path;
    if (o_svg->count()) cfg.out_svg = svg_path;
    if (o_seed->count()) cfg.seed = seed;
    if (o_samples->count()) cfg.oracle_samples = oracle_samples;
    if (o_workers->count()) cfg.workers = workers;
    if (o_paper->count()) cfg.paper_constants = paper_constants;
    return cfg;
  }
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

int cmd_sweep(const CommonFlags& flags) {
  const SweepConfig cfg = flags.load();
  const std::vector<ResultRecord> records = run_sweep(cfg);
  std::ostringstream csv;
  write_csv(csv, records);
  write_file(cfg.out_csv, csv.str());
  std::cout << "wrote " << records.size() << " records to " << cfg.out_csv
            << "\n";
  if (!cfg.out_svg.empty()) {
    write_file(cfg.out_svg, render_heatmap(records));
    std::cout << "wrote heatmap to " << cfg.out_svg << "\n";
  }
  return 0;
}

int cmd_point(const CommonFlags& flags, double t, double n) {
  const SweepConfig cfg = flags.load();
  const ResultRecord rec = evaluate_point(cfg, t, n, 0);
  write_csv(std::cout, {rec});
  return 0;
}

// Self-contained Monte Carlo cross-check of the closed-form integrals on a
// fixed (t, n) grid: on-site spheres of R = 1e-4 cm and cross spheres of
// R = 1e-9 cm at separation 10*lambda. Exit 2 when any cell deviates by more
// than 3 standard errors.
int cmd_validate(const CommonFlags& flags) {
  const double ts[] = {0.5, 0.8, 1.2, 1.5, 2.0};
  const double ns[] = {2e13, 4e13, 6e13, 8e13, 1e14};
  const std::uint64_t samples =
      flags.o_samples->count() && flags.oracle_samples > 0
          ? flags.oracle_samples
          : 1000000;
  const std::uint64_t seed = flags.o_seed->count() ? flags.seed : 1;
  const ThermoOptions topt{flags.o_paper->count() ? flags.paper_constants : true};

  double worst = 0.0;
  std::uint64_t idx = 0;
  std::printf("%-8s %-5s %-8s %-14s %-14s %-12s %s\n", "target", "t", "n",
              "closed", "mc", "stderr", "nsig");
  for (double t : ts) {
    for (double n : ns) {
      const ThermoState st = build_thermo_state({n, 1e6, t}, topt);

      const RegionSpec on_site{1e-4, std::nullopt};
      const double closed_aa = i1_aa(st, on_site);
      const McEstimate mc_aa = mc_oracle(st, on_site, OracleTarget::on_site,
                                         samples, derive_seed(seed, 2 * idx));
      const double nsig_aa =
          mc_aa.std_error > 0.0
              ? std::fabs(mc_aa.value - closed_aa) / mc_aa.std_error
              : (mc_aa.value == closed_aa ? 0.0 : 1e300);
      worst = std::max(worst, nsig_aa);
      std::printf("on-site  %-5g %-8g %-14.8g %-14.8g %-12.4g %.2f\n", t, n,
                  closed_aa, mc_aa.value, mc_aa.std_error, nsig_aa);

      const RegionSpec cross{1e-9, 10.0 * st.lambda};
      const double closed_ab = i1_ab(st, cross);
      const McEstimate mc_ab = mc_oracle(st, cross, OracleTarget::cross,
                                         samples, derive_seed(seed, 2 * idx + 1));
      const double nsig_ab =
          mc_ab.std_error > 0.0
              ? std::fabs(mc_ab.value - closed_ab) / mc_ab.std_error
              : (mc_ab.value == closed_ab ? 0.0 : 1e300);
      worst = std::max(worst, nsig_ab);
      std::printf("cross    %-5g %-8g %-14.8g %-14.8g %-12.4g %.2f\n", t, n,
                  closed_ab, mc_ab.value, mc_ab.std_error, nsig_ab);
      ++idx;
    }
  }
  std::printf("worst |mc - closed| / stderr = %.2f (threshold 3)\n", worst);
  if (worst > 3.0) {
    std::fprintf(stderr, "validate: Monte Carlo disagrees with closed forms\n");
    return 2;
  }
  return 0;
}

int cmd_baseline(const std::vector<double>& eps_list) {
  std::printf("eps,e_false\n");
  for (double eps : eps_list)
    std::printf("%.17g,%.17g\n", eps, false_entanglement(eps));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "becprobe: particle-number entanglement between two localized probes "
      "in an ideal Bose gas across the condensation transition"};
  app.require_subcommand(1);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate the (t, n) grid, write CSV and optional SVG heatmap");
  CommonFlags sweep_flags;
  sweep_flags.attach(sweep_cmd);

  CLI::App* point_cmd =
      app.add_subcommand("point", "evaluate one (t, n) point, print one CSV record");
  CommonFlags point_flags;
  point_flags.attach(point_cmd);
  double pt_t = 0.0, pt_n = 0.0;
  point_cmd->add_option("--t", pt_t, "reduced temperature T/T_c")->required();
  point_cmd->add_option("--n", pt_n, "density [cm^-3]")->required();

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Monte Carlo cross-check of the closed-form integrals");
  CommonFlags validate_flags;
  validate_flags.attach(validate_cmd);

  CLI::App* baseline_cmd = app.add_subcommand(
      "baseline", "print the distinguishability baseline E_F(eps)");
  std::vector<double> eps_list = {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
  baseline_cmd->add_option("--eps", eps_list, "visibility values to tabulate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are configuration errors
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags);
    if (point_cmd->parsed()) return cmd_point(point_flags, pt_t, pt_n);
    if (validate_cmd->parsed()) return cmd_validate(validate_flags);
    if (baseline_cmd->parsed()) return cmd_baseline(eps_list);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error:\n" << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
