#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "becprobe/sweep.hpp"

namespace becprobe {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno != 0) return false;
  if (v < -2147483647L || v > 2147483647L) return false;
  out = static_cast<int>(v);
  return true;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtoull(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && errno == 0;
}

bool parse_bool(const std::string& s, bool& out) {
  const std::string v = lower(s);
  if (v == "true" || v == "1") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) {
    if (i == 0)
      g[i] = lo;
    else if (i == steps - 1)
      g[i] = hi;
    else
      g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return g;
}

}  // namespace

std::vector<double> SweepConfig::t_grid() const {
  return linear_grid(t_min, t_max, t_steps);
}

std::vector<double> default_density_grid() { return linear_grid(1e13, 2e14, 41); }

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::vector<std::string> errors;
  auto err = [&errors](int lineno, const std::string& msg) {
    errors.push_back("line " + std::to_string(lineno) + ": " + msg);
  };

  bool saw_densities = false, saw_dmin = false, saw_dmax = false,
       saw_dsteps = false, saw_gamma = false;
  double dmin = 0.0, dmax = 0.0;
  int dsteps = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err(lineno, "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      err(lineno, "empty key or value");
      continue;
    }

    auto need_double = [&](double& out) {
      if (!parse_double(val, out)) err(lineno, key + ": '" + val + "' is not a finite number");
    };
    auto need_int = [&](int& out) {
      if (!parse_int(val, out)) err(lineno, key + ": '" + val + "' is not an integer");
    };
    auto need_u64 = [&](std::uint64_t& out) {
      if (!parse_u64(val, out))
        err(lineno, key + ": '" + val + "' is not a non-negative integer");
    };

    if (key == "t_min") {
      need_double(cfg.t_min);
    } else if (key == "t_max") {
      need_double(cfg.t_max);
    } else if (key == "t_steps") {
      need_int(cfg.t_steps);
    } else if (key == "densities") {
      saw_densities = true;
      cfg.densities.clear();
      for (const std::string& piece : split(val, ',')) {
        double d;
        if (!parse_double(trim(piece), d))
          err(lineno, "densities: '" + trim(piece) + "' is not a finite number");
        else
          cfg.densities.push_back(d);
      }
    } else if (key == "density_min") {
      saw_dmin = true;
      if (!parse_double(val, dmin)) err(lineno, "density_min: not a finite number");
    } else if (key == "density_max") {
      saw_dmax = true;
      if (!parse_double(val, dmax)) err(lineno, "density_max: not a finite number");
    } else if (key == "density_steps") {
      saw_dsteps = true;
      if (!parse_int(val, dsteps)) err(lineno, "density_steps: not an integer");
    } else if (key == "R") {
      need_double(cfg.radius);
    } else if (key == "gamma") {
      double g;
      if (!parse_double(val, g)) {
        err(lineno, "gamma: '" + val + "' is not a finite number");
      } else {
        cfg.gamma = g;
        saw_gamma = true;
      }
    } else if (key == "N_total") {
      need_double(cfg.n_total);
    } else if (key == "L_AB") {
      if (lower(val) == "infinite") {
        cfg.l_ab.reset();
      } else {
        double d;
        if (!parse_double(val, d))
          err(lineno, "L_AB: expected a number or 'infinite', got '" + val + "'");
        else
          cfg.l_ab = d;
      }
    } else if (key == "oracle_samples") {
      need_u64(cfg.oracle_samples);
    } else if (key == "seed") {
      need_u64(cfg.seed);
    } else if (key == "paper_constants") {
      if (!parse_bool(val, cfg.paper_constants))
        err(lineno, "paper_constants: expected true/false, got '" + val + "'");
    } else if (key == "workers") {
      need_int(cfg.workers);
    } else if (key == "out") {
      cfg.out_csv = val;
    } else if (key == "svg") {
      cfg.out_svg = val;
    } else {
      err(lineno, "unknown key '" + key + "'");
    }
  }

  // Density source: exactly one of the explicit list or the min/max/steps trio.
  const bool trio_any = saw_dmin || saw_dmax || saw_dsteps;
  if (saw_densities && trio_any) {
    errors.push_back(
        "give either densities or density_min/density_max/density_steps, not both");
  } else if (trio_any) {
    if (!(saw_dmin && saw_dmax && saw_dsteps)) {
      errors.push_back(
          "density_min, density_max and density_steps must be given together");
    } else {
      if (!(dmin > 0.0)) errors.push_back("density_min must be positive");
      if (!(dmax > dmin)) errors.push_back("density_max must exceed density_min");
      if (dsteps < 2) errors.push_back("density_steps must be >= 2");
      if (errors.empty() || (dmin > 0.0 && dmax > dmin && dsteps >= 2))
        cfg.densities = linear_grid(dmin, dmax, dsteps);
    }
  } else if (!saw_densities) {
    cfg.densities = default_density_grid();
  }

  // Range checks; every violation is reported, not just the first.
  if (!(cfg.t_min > 0.0)) errors.push_back("t_min must be positive");
  if (cfg.t_max == cfg.t_min)
    errors.push_back("t_min and t_max are equal; the sweep needs a nondegenerate interval");
  else if (!(cfg.t_max > cfg.t_min))
    errors.push_back("t_max must exceed t_min");
  if (cfg.t_steps < 2) errors.push_back("t_steps must be >= 2");
  if (saw_densities) {
    if (cfg.densities.empty()) errors.push_back("densities: list is empty");
    for (double d : cfg.densities)
      if (!(d > 0.0)) {
        errors.push_back("densities: all entries must be positive");
        break;
      }
  }
  if (!(cfg.radius > 0.0)) errors.push_back("R must be positive");
  if (!saw_gamma)
    errors.push_back("missing required key: gamma");
  else if (!(*cfg.gamma >= 0.0))
    errors.push_back("gamma must be >= 0");
  if (!(cfg.n_total >= 1.0)) errors.push_back("N_total must be >= 1");
  if (cfg.l_ab && !(*cfg.l_ab > 2.0 * cfg.radius)) {
    std::ostringstream o;
    o << "L_AB = " << *cfg.l_ab << " must exceed the probe diameter 2R = "
      << 2.0 * cfg.radius;
    errors.push_back(o.str());
  }
  if (cfg.workers < 0) errors.push_back("workers must be >= 0");

  if (!errors.empty()) {
    std::string joined;
    for (size_t i = 0; i < errors.size(); ++i) {
      if (i) joined += '\n';
      joined += errors[i];
    }
    throw ConfigError(joined);
  }
  return cfg;
}

}  // namespace becprobe
