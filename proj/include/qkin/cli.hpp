//! @file cli.hpp
//! @brief Batch front-end machinery: argument/config-file parsing, the
//!        verify/sweep/kernel runners, deterministic CSV emission, and the
//!        optional SVG plot. The binary in tools/ is a thin wrapper.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 usage/config error,
//! 3 I/O error.

#ifndef QKIN_CLI_HPP
#define QKIN_CLI_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qkin/angular.hpp"
#include "qkin/hilbert.hpp"
#include "qkin/kinematics.hpp"
#include "qkin/limits.hpp"
#include "qkin/schwinger.hpp"

namespace qkin::cli {

enum ExitCode : int { exit_ok = 0, exit_invariant_failure = 1, exit_usage_error = 2, exit_io_error = 3, exit_internal_error = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { verify, sweep, kernel };

struct RunConfig {
  Command command = Command::verify;
  std::vector<std::size_t> ns = {51, 101, 201, 401};
  std::vector<double> deltas = {1.0};
  double p0 = 1.0;
  double q0 = 1.0;
  double m0 = 1.0;
  double theta0 = 1.0;
  TestStateSpec state = TestStateSpec::gaussian();
  bool angular = false;
  bool emit_plot = false;
  std::string out_path;  // empty: verify reports to stdout; sweep/kernel get defaults
};

inline const char* usage_text() {
  return "usage: qkin (verify|sweep|kernel) [options]\n"
         "  --n LIST        odd dimensions, comma separated (default 51,101,201,401)\n"
         "  --delta LIST    scaling exponents in [0,2) (default 1.0)\n"
         "  --p0 R --q0 R   momentum/position units (default 1)\n"
         "  --m0 R --theta0 R  angular units (default 1)\n"
         "  --state S       gaussian | uniform | basis:IDX | plane:IDX (default gaussian)\n"
         "  --sigma R       gaussian width in q0 units (default 1)\n"
         "  --angular       kernel subcommand: use the angle/angular-momentum kernel\n"
         "  --out PATH      output file (default: sweep.csv / kernel.csv; verify prints)\n"
         "  --plot          sweep subcommand: also emit an SVG plot next to the CSV\n"
         "  --config PATH   flat key = value file; command-line flags win\n";
}

// --- parsing ----------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + key + ": not a real number: '" + value + "'");
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + key + ": not an integer: '" + value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("--" + key + ": not a boolean: '" + value + "'");
}

//! Keys accepted both as --flags and in the config file.
inline bool known_key(const std::string& k) {
  static const char* keys[] = {"n", "delta", "p0", "q0", "m0", "theta0", "state", "sigma", "angular", "out", "plot"};
  for (const char* key : keys)
    if (k == key) return true;
  return false;
}

inline void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "n") {
    std::vector<std::size_t> ns;
    for (const auto& tok : split(value, ',')) {
      const std::int64_t v = parse_int(key, trim(tok));
      if (v < 1) throw UsageError("--n: dimensions must be positive, got " + tok);
      if (v % 2 == 0) throw UsageError("--n: even dimension " + tok + " is not supported (odd N only)");
      ns.push_back(static_cast<std::size_t>(v));
    }
    if (ns.empty()) throw UsageError("--n: empty list");
    config.ns = std::move(ns);
  } else if (key == "delta") {
    std::vector<double> ds;
    for (const auto& tok : split(value, ',')) {
      const double v = parse_real(key, trim(tok));
      if (!(v >= 0.0 && v < 2.0)) throw UsageError("--delta: value " + tok + " outside [0, 2)");
      ds.push_back(v);
    }
    if (ds.empty()) throw UsageError("--delta: empty list");
    config.deltas = std::move(ds);
  } else if (key == "p0" || key == "q0" || key == "m0" || key == "theta0" || key == "sigma") {
    const double v = parse_real(key, value);
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--" + key + " must be positive and finite");
    if (key == "p0") config.p0 = v;
    else if (key == "q0") config.q0 = v;
    else if (key == "m0") config.m0 = v;
    else if (key == "theta0") config.theta0 = v;
    else config.state.sigma = v;
  } else if (key == "state") {
    if (value == "gaussian") {
      config.state.kind = TestStateKind::gaussian;
    } else if (value == "uniform") {
      config.state.kind = TestStateKind::uniform;
    } else if (value.rfind("basis:", 0) == 0) {
      config.state.kind = TestStateKind::basis;
      config.state.label_index = parse_int(key, value.substr(6));
    } else if (value.rfind("plane:", 0) == 0) {
      config.state.kind = TestStateKind::plane_wave;
      config.state.label_index = parse_int(key, value.substr(6));
    } else {
      throw UsageError("--state: expected gaussian | uniform | basis:IDX | plane:IDX, got '" + value + "'");
    }
  } else if (key == "angular") {
    config.angular = parse_bool(key, value);
  } else if (key == "plot") {
    config.emit_plot = parse_bool(key, value);
  } else if (key == "out") {
    config.out_path = value;
  } else {
    throw UsageError("unknown option '--" + key + "'");
  }
}

//! Flat `key = value` lines; '#' starts a comment; blank lines ignored.
inline std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config file '" + path + "' line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!known_key(key))
      throw UsageError("config file '" + path + "' line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

}  // namespace detail

//! Resolves command-line tokens (argv[1..]) plus the optional config file
//! into a RunConfig. Flags override config-file keys, which override
//! defaults.
inline RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("missing command (verify|sweep|kernel)");
  RunConfig config;
  if (args[0] == "verify") config.command = Command::verify;
  else if (args[0] == "sweep") config.command = Command::sweep;
  else if (args[0] == "kernel") config.command = Command::kernel;
  else throw UsageError("unknown command '" + args[0] + "'");

  // collect flag tokens in order; remember the config file if given
  std::vector<std::pair<std::string, std::string>> flags;
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& tok = args[i];
    if (tok.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + tok + "'");
    const std::string key = tok.substr(2);
    if (key == "angular" || key == "plot") {
      flags.emplace_back(key, "true");
      continue;
    }
    if (i + 1 >= args.size()) throw UsageError("--" + key + " requires a value");
    const std::string value = args[++i];
    if (key == "config") {
      config_path = value;
    } else if (detail::known_key(key)) {
      flags.emplace_back(key, value);
    } else {
      throw UsageError("unknown option '--" + key + "'");
    }
  }

  if (!config_path.empty())
    for (const auto& [k, v] : detail::load_config_file(config_path)) detail::apply_key(config, k, v);
  for (const auto& [k, v] : flags) detail::apply_key(config, k, v);

  if (config.out_path.empty() && config.command == Command::sweep) config.out_path = "sweep.csv";
  if (config.out_path.empty() && config.command == Command::kernel) config.out_path = "kernel.csv";
  return config;
}

// --- output formatting -------------------------------------------------------

namespace detail {

//! Shortest-faithful decimal rendering: 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace detail

//! Serializes a sorted ConvergenceTable: header N,delta,metric,value,aux;
//! 17-significant-digit decimals; LF newlines; byte-deterministic.
inline std::string render_csv(const ConvergenceTable& table) {
  require(table.is_sorted(), "convergence table must be sorted before emission");
  std::string out = "N,delta,metric,value,aux\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += detail::fmt17(row.delta);
    out += ',';
    out += row.metric;
    out += ',';
    out += detail::fmt17(row.value);
    out += ',';
    if (row.aux) out += detail::fmt17(*row.aux);
    out += '\n';
  }
  return out;
}

inline void emit_csv(const ConvergenceTable& table, const std::string& path) { detail::write_file(path, render_csv(table)); }

// --- verify ------------------------------------------------------------------

struct VerifyMetric {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

namespace detail {

//! Deterministic (j, l) exponent sample for dimensions too large for the
//! full grid.
inline std::vector<std::pair<std::int64_t, std::int64_t>> weyl_sample(std::size_t n, std::size_t count) {
  std::mt19937_64 rng(0x716b696e00ULL ^ static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL);
  const auto span = static_cast<std::uint64_t>(4 * n + 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> sample;
  sample.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::int64_t>(rng() % span) - static_cast<std::int64_t>(2 * n);
    const auto l = static_cast<std::int64_t>(rng() % span) - static_cast<std::int64_t>(2 * n);
    sample.emplace_back(j, l);
  }
  return sample;
}

//! max |A^dag A - I| for the structured unitary forms, computed through the
//! representation (A^dag A is diagonal for diagonal and shift forms).
inline double unitarity_residual(const LinearOperator& op) {
  double worst = 0.0;
  auto scan = [&worst](const std::vector<complexd>& values) {
    for (const auto& z : values) worst = std::max(worst, std::abs(std::norm(z) - 1.0));
  };
  if (const auto* u = std::get_if<UDiagonal>(&op.repr())) scan(u->values);
  else if (const auto* v = std::get_if<VDiagonal>(&op.repr())) scan(v->values);
  else if (const auto* s = std::get_if<PhasedCyclicShift>(&op.repr())) scan(s->phases);
  else require(false, "unitarity residual expects a structured operator");
  return worst;
}

}  // namespace detail

//! The verify metrics at one dimension: Weyl-relation residual (full grid
//! for N <= 33, 100 deterministic samples above), unitarity of U and V,
//! exactness of U^N = V^N = 1 (0 when exact), and the mutual-unbiasedness
//! residual max | |<v_k|u_n>|^2 - 1/N |.
inline std::vector<VerifyMetric> verify_metrics(std::size_t n) {
  require_odd_dimension(n);
  const SchwingerPair pair = build_pair(n);
  std::vector<VerifyMetric> metrics;

  std::vector<std::pair<std::int64_t, std::int64_t>> sample;
  if (n <= 33) {
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
      for (std::int64_t l = 0; l < static_cast<std::int64_t>(n); ++l) sample.emplace_back(j, l);
  } else {
    sample = detail::weyl_sample(n, 100);
  }
  const WeylReport weyl = verify_weyl(pair, sample);
  metrics.push_back({"weyl_residual[n=" + std::to_string(n) + "]", weyl.max_residual, 1e-12, weyl.max_residual <= 1e-12});

  const double unit = std::max(detail::unitarity_residual(pair.u), detail::unitarity_residual(pair.v));
  metrics.push_back({"unitarity_residual[n=" + std::to_string(n) + "]", unit, 1e-12, unit <= 1e-12});

  const bool exact = pair_power(pair, PairOperator::u, static_cast<std::int64_t>(n)).is_identity() &&
                     pair_power(pair, PairOperator::v, static_cast<std::int64_t>(n)).is_identity();
  metrics.push_back({"un_vn_exact[n=" + std::to_string(n) + "]", exact ? 0.0 : 1.0, 0.0, exact});

  PhaseTable tab(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  double mub = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t m = 0;
    for (std::size_t c = 0; c < n; ++c) {
      mub = std::max(mub, std::abs(std::norm(tab.w[m]) * inv_n - inv_n));
      m += k;
      if (m >= n) m -= n;
    }
  }
  metrics.push_back({"mub_residual[n=" + std::to_string(n) + "]", mub, 1e-13, mub <= 1e-13});
  return metrics;
}

//! Line-oriented report: metric<TAB>value<TAB>threshold<TAB>pass|fail.
inline std::string render_verify_report(const std::vector<VerifyMetric>& metrics) {
  std::string out;
  for (const auto& m : metrics) {
    out += m.name;
    out += '\t';
    out += detail::fmt17(m.value);
    out += '\t';
    out += detail::fmt17(m.threshold);
    out += '\t';
    out += m.pass ? "pass" : "fail";
    out += '\n';
  }
  return out;
}

// --- kernel ------------------------------------------------------------------

//! Overlap-kernel CSV: one row per in-range index pair, per dimension.
inline std::string render_kernel_csv(const RunConfig& config) {
  std::string out = config.angular ? "N,j_theta,j_m,error\n" : "N,j_q,j_p,error\n";
  for (const std::size_t n : config.ns) {
    const auto h = static_cast<std::int64_t>((n - 1) / 2);
    for (std::int64_t a = -h; a <= h; ++a) {
      for (std::int64_t b = -h; b <= h; ++b) {
        double err = 0.0;
        if (config.angular) {
          err = kernel_point_error(n, AngularConfig{n, config.m0, config.theta0}, a, b);
        } else {
          err = cartesian_kernel_point_error(n, KinematicsConfig{n, config.deltas.front(), config.p0, config.q0}, a, b);
        }
        out += std::to_string(n);
        out += ',';
        out += std::to_string(a);
        out += ',';
        out += std::to_string(b);
        out += ',';
        out += detail::fmt17(err);
        out += '\n';
      }
    }
  }
  return out;
}

// --- plot ---------------------------------------------------------------------

//! Minimal static log-log SVG of metric value against N, one polyline per
//! (metric, delta) series. Data stays in the CSV; this is a convenience.
inline std::string render_plot_svg(const ConvergenceTable& table) {
  const double width = 720.0, height = 540.0;
  const double left = 80.0, right = 690.0, top = 40.0, bottom = 480.0;

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool have = false;
  for (const auto& row : table.rows) {
    if (!(row.value > 0.0) || !std::isfinite(row.value)) continue;
    const double x = std::log10(static_cast<double>(row.n));
    const double y = std::log10(row.value);
    if (!have) {
      xmin = xmax = x;
      ymin = ymax = y;
      have = true;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!have || xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) + "\" y2=\"" + num(bottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top) +
         "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(bottom + 36) + "\" font-size=\"13\">log10 N</text>\n";
  svg += "<text x=\"14\" y=\"" + num((top + bottom) / 2) + "\" font-size=\"13\" transform=\"rotate(-90 14 " +
         num((top + bottom) / 2) + ")\">log10 value</text>\n";
  svg += "<text x=\"" + num(left) + "\" y=\"" + num(bottom + 16) + "\" font-size=\"11\">" + num(xmin) + "</text>\n";
  svg += "<text x=\"" + num(right - 20) + "\" y=\"" + num(bottom + 16) + "\" font-size=\"11\">" + num(xmax) + "</text>\n";
  svg += "<text x=\"" + num(left - 42) + "\" y=\"" + num(bottom) + "\" font-size=\"11\">" + num(ymin) + "</text>\n";
  svg += "<text x=\"" + num(left - 42) + "\" y=\"" + num(top + 8) + "\" font-size=\"11\">" + num(ymax) + "</text>\n";

  std::size_t series = 0;
  std::size_t i = 0;
  while (i < table.rows.size()) {
    std::size_t j = i;
    while (j < table.rows.size() && table.rows[j].metric == table.rows[i].metric && table.rows[j].delta == table.rows[i].delta)
      ++j;
    const char* color = palette[series % (sizeof(palette) / sizeof(palette[0]))];
    std::string points;
    for (std::size_t r = i; r < j; ++r) {
      const auto& row = table.rows[r];
      if (!(row.value > 0.0) || !std::isfinite(row.value)) continue;
      const double px = sx(std::log10(static_cast<double>(row.n)));
      const double py = sy(std::log10(row.value));
      points += num(px) + "," + num(py) + " ";
      svg += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    if (!points.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
      svg += "<text x=\"" + num(right - 150) + "\" y=\"" + num(top + 16.0 * static_cast<double>(series + 1)) +
             "\" font-size=\"12\" fill=\"" + std::string(color) + "\">" + table.rows[i].metric +
             " delta=" + num(table.rows[i].delta) + "</text>\n";
    }
    ++series;
    i = j;
  }
  svg += "</svg>\n";
  return svg;
}

// --- run ----------------------------------------------------------------------

//! Executes a resolved RunConfig. Artifacts land on disk; human-readable
//! output goes to `out`, failures to `diag`. Returns the process exit code.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  switch (config.command) {
    case Command::verify: {
      std::vector<VerifyMetric> all;
      for (const std::size_t n : config.ns) {
        const auto metrics = verify_metrics(n);
        all.insert(all.end(), metrics.begin(), metrics.end());
      }
      const std::string report = render_verify_report(all);
      if (config.out_path.empty()) out << report;
      else detail::write_file(config.out_path, report);
      for (const auto& m : all) {
        if (!m.pass) {
          diag << "qkin: invariant failure: " << m.name << " = " << detail::fmt17(m.value) << " exceeds "
               << detail::fmt17(m.threshold) << "\n";
          return exit_invariant_failure;
        }
      }
      return exit_ok;
    }
    case Command::sweep: {
      if (config.angular) throw UsageError("--angular applies to the kernel subcommand, not sweep");
      for (const double d : config.deltas)
        if (d == 0.0) throw UsageError("--delta 0 has no Cartesian commutator sweep; use the angular kernel instead");
      const ConvergenceTable table = commutator_sweep(config.ns, config.deltas, config.state, config.p0, config.q0);
      emit_csv(table, config.out_path);
      if (config.emit_plot) detail::write_file(config.out_path + ".svg", render_plot_svg(table));
      return exit_ok;
    }
    case Command::kernel: {
      detail::write_file(config.out_path, render_kernel_csv(config));
      return exit_ok;
    }
  }
  return exit_internal_error;
}

//! Entry point used by the tool binary: maps exceptions onto the exit-code
//! contract.
inline int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
    std::cout << usage_text();
    return exit_ok;
  }
  try {
    const RunConfig config = parse_config(args);
    return run(config, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "qkin: " << e.what() << "\n" << usage_text();
    return exit_usage_error;
  } catch (const IoError& e) {
    std::cerr << "qkin: " << e.what() << "\n";
    return exit_io_error;
  } catch (const std::exception& e) {
    std::cerr << "qkin: internal error: " << e.what() << "\n";
    return exit_internal_error;
  }
}

}  // namespace qkin::cli

#endif  // QKIN_CLI_HPP
