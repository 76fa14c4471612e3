#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "becprobe/probe.hpp"
#include "becprobe/rng.hpp"
#include "becprobe/sweep.hpp"

namespace becprobe {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

ResultRecord evaluate_point(const SweepConfig& cfg, double t, double density,
                            std::uint64_t index) {
  const ThermoOptions topt{cfg.paper_constants};
  const ThermoState st = build_thermo_state({density, cfg.n_total, t}, topt);
  const RegionSpec region{cfg.radius, cfg.l_ab};
  const double gamma = cfg.gamma.value();

  ResultRecord r{};
  r.t = t;
  r.n = density;
  r.z = st.z;
  r.lambda = st.lambda;
  r.kappa = st.kappa;
  r.n0 = st.n0;
  r.i_aa = i1_aa(st, region);
  r.i_ab = i1_ab(st, region);

  Moments m;
  m.qa = st.n * region.omega();
  m.qa2 = m.qa + m.qa * m.qa + r.i_aa;
  m.qaqb = m.qa * m.qa + r.i_ab;
  r.qa = m.qa;
  r.qa2 = m.qa2;
  r.qaqb = m.qaqb;

  r.negativity = negativity_analytic(m);
  r.interaction_probability = interaction_probability(m, gamma);
  r.weighted_entanglement = weighted_entanglement(m, gamma);

  const double eps = coupling_parameter(m, gamma);
  if (eps >= 1.0) {
    // Keep every numeric field finite; the warning marks the row as invalid.
    r.e_false_baseline = 0.0;
    r.warnings = "coupling gamma*<nA> = " + fmt6(eps) +
                 " >= 1: probe expansion invalid at this point";
  } else {
    r.e_false_baseline = false_entanglement(eps);
    if (eps > 0.1)
      r.warnings = "coupling gamma*<nA> = " + fmt6(eps) +
                   " > 0.1: weak-coupling truncation marginal";
  }

  if (cfg.oracle_samples > 0) {
    r.oracle_aa = mc_oracle(st, region, OracleTarget::on_site,
                            cfg.oracle_samples, derive_seed(cfg.seed, 2 * index));
    r.oracle_ab = mc_oracle(st, region, OracleTarget::cross, cfg.oracle_samples,
                            derive_seed(cfg.seed, 2 * index + 1));
  }
  return r;
}

std::vector<ResultRecord> run_sweep(const SweepConfig& cfg) {
  const std::vector<double> ts = cfg.t_grid();
  const std::vector<double>& ds = cfg.densities;
  const long long total = static_cast<long long>(ts.size()) *
                          static_cast<long long>(ds.size());
  std::vector<ResultRecord> records(total);
  std::vector<std::string> failures(total);
  const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();

  // t-major flat index; each point writes its own preallocated slot, so the
  // record order (and any derived file) is independent of scheduling.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long k = 0; k < total; ++k) {
    const double t = ts[static_cast<size_t>(k) / ds.size()];
    const double n = ds[static_cast<size_t>(k) % ds.size()];
    try {
      records[k] = evaluate_point(cfg, t, n, static_cast<std::uint64_t>(k));
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  }

  for (long long k = 0; k < total; ++k) {
    if (!failures[k].empty()) {
      const double t = ts[static_cast<size_t>(k) / ds.size()];
      const double n = ds[static_cast<size_t>(k) % ds.size()];
      throw std::runtime_error("sweep point t = " + fmt6(t) + ", n = " + fmt6(n) +
                               ": " + failures[k]);
    }
  }
  return records;
}

const char* const kCsvHeader =
    "t,n,z,lambda,kappa,n0,i_aa,i_ab,qa,qa2,qaqb,negativity,"
    "interaction_probability,weighted_entanglement,e_false_baseline,"
    "oracle_i_aa,oracle_i_aa_stderr,oracle_i_ab,oracle_i_ab_stderr,warnings";

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << kCsvHeader << '\n';
  for (const ResultRecord& r : records) {
    out << fmt17(r.t) << ',' << fmt17(r.n) << ',' << fmt17(r.z) << ','
        << fmt17(r.lambda) << ',' << fmt17(r.kappa) << ',' << fmt17(r.n0) << ','
        << fmt17(r.i_aa) << ',' << fmt17(r.i_ab) << ',' << fmt17(r.qa) << ','
        << fmt17(r.qa2) << ',' << fmt17(r.qaqb) << ',' << fmt17(r.negativity)
        << ',' << fmt17(r.interaction_probability) << ','
        << fmt17(r.weighted_entanglement) << ',' << fmt17(r.e_false_baseline)
        << ',';
    if (r.oracle_aa)
      out << fmt17(r.oracle_aa->value) << ',' << fmt17(r.oracle_aa->std_error);
    else
      out << ',';
    out << ',';
    if (r.oracle_ab)
      out << fmt17(r.oracle_ab->value) << ',' << fmt17(r.oracle_ab->std_error);
    else
      out << ',';
    out << ',';
    // Warnings never contain commas (semicolons separate clauses); enforce.
    std::string w = r.warnings;
    for (char& c : w)
      if (c == ',') c = ';';
    out << w << '\n';
  }
}

namespace {

std::vector<std::string> split_line(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double field_double(const std::string& s, int lineno) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::runtime_error("parse_csv: line " + std::to_string(lineno) +
                             ": bad numeric field '" + s + "'");
  return v;
}

}  // namespace

std::vector<ResultRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("parse_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("parse_csv: unexpected header: " + line);

  std::vector<ResultRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 20)
      throw std::runtime_error("parse_csv: line " + std::to_string(lineno) +
                               ": expected 20 fields, got " +
                               std::to_string(f.size()));
    ResultRecord r{};
    r.t = field_double(f[0], lineno);
    r.n = field_double(f[1], lineno);
    r.z = field_double(f[2], lineno);
    r.lambda = field_double(f[3], lineno);
    r.kappa = field_double(f[4], lineno);
    r.n0 = field_double(f[5], lineno);
    r.i_aa = field_double(f[6], lineno);
    r.i_ab = field_double(f[7], lineno);
    r.qa = field_double(f[8], lineno);
    r.qa2 = field_double(f[9], lineno);
    r.qaqb = field_double(f[10], lineno);
    r.negativity = field_double(f[11], lineno);
    r.interaction_probability = field_double(f[12], lineno);
    r.weighted_entanglement = field_double(f[13], lineno);
    r.e_false_baseline = field_double(f[14], lineno);
    if (!f[15].empty() || !f[16].empty())
      r.oracle_aa = McEstimate{field_double(f[15], lineno), field_double(f[16], lineno)};
    if (!f[17].empty() || !f[18].empty())
      r.oracle_ab = McEstimate{field_double(f[17], lineno), field_double(f[18], lineno)};
    r.warnings = f[19];
    records.push_back(r);
  }
  return records;
}

}  // namespace becprobe
