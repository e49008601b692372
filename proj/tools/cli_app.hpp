#ifndef CHIBAG_TOOLS_CLI_APP_HPP
#define CHIBAG_TOOLS_CLI_APP_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chibag/chibag.hpp"

namespace chibag::cli {

enum class Command { coeffs, table, verify_ball, verify_cylinder, verify_identities };
enum class Format { csv, json };

/// Bad flags, bad grids, unwritable output.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BallCutoffs {
  double mu_max = 100.0;
  std::optional<int> n_max;
  double t_min = 0.02;
  double t_max = 0.3;
  int n_samples = 20;
  int K = 5;
};

struct CylinderGrid {
  std::vector<double> omegas{0.5, 1.3, 2.0};
  std::vector<double> ts{0.1, 0.25};
  std::vector<double> ss{1.5, 2.5};
};

struct Tolerances {
  double identities = 1e-11;
  double cylinder = 1e-8;
  double a1_rel = 0.01;
  double a2_abs = 0.01;
  double a1_spread_factor = 3.0;
};

struct RunConfig {
  Command command = Command::coeffs;
  std::vector<int> ms{2};
  std::vector<double> thetas{0.0};
  Format format = Format::csv;
  std::string out;  // empty: stdout
  BallCutoffs ball;
  CylinderGrid cylinder;
  Tolerances tol;
};

/// "start:stop:step" (inclusive, step > 0) or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& text) {
  auto number = [&text](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + s + "' in grid '" + text + "'");
    }
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> out;
  if (sep == ':') {
    if (parts.size() != 3) throw ConfigError("range grid must be start:stop:step, got '" + text + "'");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0)) throw ConfigError("grid step must be > 0 in '" + text + "'");
    if (stop < start) throw ConfigError("grid stop is below start in '" + text + "'");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      double v = start + static_cast<double>(i) * step;
      v = std::round(v * 1e12) / 1e12;  // 0.30000000000000004 -> 0.3
      out.push_back(v == 0.0 ? 0.0 : v);
    }
  } else {
    for (const auto& p : parts) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("empty grid '" + text + "'");
  return out;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.ms.empty()) throw ConfigError("--m: at least one dimension required");
  for (int m : cfg.ms)
    if (m < 2 || m > 12 || m % 2 != 0)
      throw ConfigError("--m: dimensions must be even and in [2, 12], got " + std::to_string(m));
  if (cfg.thetas.empty()) throw ConfigError("--theta: empty grid");
  const auto& b = cfg.ball;
  if (!(b.mu_max > 0.0)) throw ConfigError("--mu-max must be > 0");
  if (b.n_max && *b.n_max < 0) throw ConfigError("--n-max must be >= 0");
  if (!(b.t_min > 0.0) || !(b.t_max > b.t_min) || b.t_max > 0.5)
    throw ConfigError("--t-min/--t-max must satisfy 0 < t_min < t_max <= 0.5");
  if (b.K < 1) throw ConfigError("--K must be >= 1");
  if (b.n_samples < b.K + 3) throw ConfigError("--n-samples must be at least K + 3");
  for (double t : cfg.cylinder.ts)
    if (!(t > 0.0)) throw ConfigError("--t values must be > 0");
  for (double s : cfg.cylinder.ss)
    if (!(s > -1.0)) throw ConfigError("--s values must be > -1");
  for (double w : cfg.cylinder.omegas)
    if (w == 0.0) throw ConfigError("--omega values must be nonzero");
}

/// Parse argv into a RunConfig. Returns nullopt after --help (exit 0);
/// throws ConfigError on bad input.
inline std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Chiral bag heat-kernel coefficients and their numerical checks", "chibag"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string m_list = "2";
  std::string theta_grid = "0";
  std::string format = "csv";
  std::string omega_list = "0.5,1.3,2.0";
  std::string t_list = "0.1,0.25";
  std::string s_list = "1.5,2.5";
  int n_max = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", m_list, "even dimensions, e.g. 2,4,6")->capture_default_str();
    sub->add_option("--theta", theta_grid, "start:stop:step or comma list")->capture_default_str();
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  auto ball = [&](CLI::App* sub) {
    sub->add_option("--mu-max", cfg.ball.mu_max, "root cutoff")->envname("CHIBAG_MU_MAX")->capture_default_str();
    sub->add_option("--n-max", n_max, "angular momentum cutoff (default: all contributing)")->envname("CHIBAG_N_MAX");
    sub->add_option("--t-min", cfg.ball.t_min, "smallest fit time")->envname("CHIBAG_T_MIN")->capture_default_str();
    sub->add_option("--t-max", cfg.ball.t_max, "largest fit time")->envname("CHIBAG_T_MAX")->capture_default_str();
    sub->add_option("--n-samples", cfg.ball.n_samples, "geometric t samples")->envname("CHIBAG_N_SAMPLES")->capture_default_str();
    sub->add_option("--K", cfg.ball.K, "highest fitted coefficient")->envname("CHIBAG_K")->capture_default_str();
    sub->add_option("--tol-a1", cfg.tol.a1_rel, "relative a1 tolerance")->capture_default_str();
    sub->add_option("--tol-a2", cfg.tol.a2_abs, "absolute a2 tolerance")->capture_default_str();
  };

  auto* coeffs = app.add_subcommand("coeffs", "all constants and ball coefficients per (theta, m)");
  auto* table = app.add_subcommand("table", "coefficient table, one row per (theta, m)");
  auto* vball = app.add_subcommand("verify-ball", "spectral fit of a1, a2 on the unit ball");
  auto* vcyl = app.add_subcommand("verify-cylinder", "per-mode cylinder integral identities");
  auto* vid = app.add_subcommand("verify-identities", "hypergeometric and coefficient identities");
  for (auto* sub : {coeffs, table, vball, vcyl, vid}) common(sub);
  ball(vball);
  vcyl->add_option("--omega", omega_list, "mode eigenvalues")->capture_default_str();
  vcyl->add_option("--t", t_list, "heat times")->capture_default_str();
  vcyl->add_option("--s", s_list, "exponents of the t-integral")->capture_default_str();
  vcyl->add_option("--tol", cfg.tol.cylinder, "residual tolerance")->capture_default_str();
  vid->add_option("--tol", cfg.tol.identities, "residual tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (coeffs->parsed()) cfg.command = Command::coeffs;
  if (table->parsed()) cfg.command = Command::table;
  if (vball->parsed()) cfg.command = Command::verify_ball;
  if (vcyl->parsed()) cfg.command = Command::verify_cylinder;
  if (vid->parsed()) cfg.command = Command::verify_identities;

  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.ms.clear();
  for (double v : parse_grid(m_list)) {
    if (v != std::floor(v)) throw ConfigError("--m: dimensions must be integers");
    cfg.ms.push_back(static_cast<int>(v));
  }
  cfg.thetas = parse_grid(theta_grid);
  if (n_max >= 0) cfg.ball.n_max = n_max;
  cfg.cylinder.omegas = parse_grid(omega_list);
  cfg.cylinder.ts = parse_grid(t_list);
  cfg.cylinder.ss = parse_grid(s_list);
  validate(cfg);
  return cfg;
}

/// Report table; cells are numbers, integers, strings or flags.
struct Table {
  using Cell = std::variant<double, long long, std::string, bool>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&os](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              os << format_number(v);
            } else if constexpr (std::is_same_v<V, bool>) {
              os << (v ? "true" : "false");
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

inline void write_json(const Table& t, std::ostream& os) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v)) {
                obj[t.columns[i]] = std::stod(format_number(v));
              } else {
                obj[t.columns[i]] = nullptr;
              }
            } else {
              obj[t.columns[i]] = v;
            }
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << '\n';
}

struct Report {
  Table table;
  bool pass = true;
};

inline const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols{"theta", "m",  "c1", "c2", "c3", "c4",
                                             "c5",    "c6", "c7", "d1", "d2", "d3",
                                             "d4",    "a1_ball", "a2_ball", "a1_eta"};
  return cols;
}

inline Report coefficient_report(const RunConfig& cfg, bool with_ball_form) {
  Report r;
  r.table.columns = table_columns();
  if (with_ball_form)
    for (const char* c : {"d1_ball", "d2_ball", "d3_ball"}) r.table.columns.emplace_back(c);
  for (double theta : cfg.thetas) {
    for (int m : cfg.ms) {
      const auto c = universal_constants(theta, m);
      const auto d = eta_constants(theta, m, EtaSource::cylinder_form);
      const auto a = ball_heat_coefficients(theta, m);
      std::vector<Table::Cell> row{theta, static_cast<long long>(m), c.c1, c.c2, c.c3, c.c4, c.c5,
                                   c.c6,  c.c7,  d.d1(), d.d2(), d.d3(), d.d4(), a.a1, a.a2,
                                   a1_eta_ball(theta, m)};
      if (with_ball_form) {
        const auto b = eta_constants(theta, m, EtaSource::ball_form);
        row.insert(row.end(), {b.d1(), b.d2(), b.d3()});
      }
      r.table.rows.push_back(std::move(row));
    }
  }
  return r;
}

inline Report ball_report(const RunConfig& cfg) {
  Report r;
  r.table.columns = {"theta",   "m",        "n_max",     "a1_fit",    "a1_closed", "a1_error",
                     "a2_fit",  "a2_closed", "a2_error", "a1_spread", "a2_spread", "fit_rms",
                     "condition", "pass"};
  const auto ts = geometric_grid(cfg.ball.t_min, cfg.ball.t_max, cfg.ball.n_samples);
  for (double theta : cfg.thetas) {
    for (int m : cfg.ms) {
      const auto spec = compute_ball_spectrum(theta, m, cfg.ball.mu_max, {cfg.ball.n_max, true});
      std::vector<HeatTraceSample> samples;
      for (double t : ts) samples.push_back(heat_trace(spec, t));
      const auto fit = fit_heat_coefficients(samples, m, cfg.ball.K);
      const auto closed = ball_heat_coefficients(theta, m);
      const double a1 = fit.coeffs.at(1);
      const double a2 = fit.coeffs.size() > 2 ? fit.coeffs[2] : std::nan("");
      const double spread1 = fit.spread.at(1);
      const double spread2 = fit.spread.size() > 2 ? fit.spread[2] : std::nan("");
      // a1 vanishes at theta = 0; there the fit must be zero within its spread.
      const bool a1_ok = closed.a1 == 0.0
                             ? std::abs(a1) < cfg.tol.a1_spread_factor * spread1
                             : std::abs(a1 - closed.a1) <= cfg.tol.a1_rel * std::abs(closed.a1);
      const bool a2_ok = std::abs(a2 - closed.a2) <= cfg.tol.a2_abs;
      const double a1_err = closed.a1 == 0.0 ? std::abs(a1) : std::abs(a1 - closed.a1) / std::abs(closed.a1);
      r.table.rows.push_back({theta, static_cast<long long>(m), static_cast<long long>(spec.n_max), a1,
                              closed.a1, a1_err, a2, closed.a2, std::abs(a2 - closed.a2), spread1,
                              spread2, fit.residual, fit.condition_estimate, a1_ok && a2_ok});
      r.pass = r.pass && a1_ok && a2_ok;
    }
  }
  return r;
}

inline Report cylinder_report(const RunConfig& cfg) {
  Report r;
  r.table.columns = {"check", "m", "theta", "omega", "t", "s", "f", "residual", "pass"};
  const double nan = std::nan("");
  auto add = [&](const char* check, int m, double theta, double omega, double t, double s,
                 const char* f, double residual) {
    const bool ok = residual < cfg.tol.cylinder;
    r.table.rows.push_back({std::string(check), static_cast<long long>(m), theta, omega, t, s,
                            std::string(f), residual, ok});
    r.pass = r.pass && ok;
  };
  for (int m : cfg.ms) {
    const auto rep = std::make_shared<const GammaRep>(build_gamma(m));
    for (double theta : cfg.thetas) {
      for (double omega : cfg.cylinder.omegas) {
        for (double t : cfg.cylinder.ts) {
          const auto p = ModeParams::make(omega, theta, t, rep);
          const std::pair<const char*, Matrix> fs[] = {{"identity", rep->identity()},
                                                       {"gamma_tilde", rep->gamma_tilde}};
          for (const auto& [name, f] : fs) {
            add("U1", m, theta, omega, t, nan, name, check_U1_integral(p, f).residual);
            add("U2", m, theta, omega, t, nan, name, check_U2_integral(p, f).residual);
          }
        }
        for (double s : cfg.cylinder.ss)
          add("t_integral", m, theta, omega, nan, s, "", check_t_integral(s, omega, theta).residual);
      }
    }
  }
  return r;
}

inline Report identity_report(const RunConfig& cfg) {
  Report r;
  r.table.columns = {"identity", "max_residual", "worst_theta", "worst_m", "evaluations", "pass"};
  for (const auto& res : run_identity_suite(cfg.thetas, cfg.ms)) {
    const bool ok = res.max_residual < cfg.tol.identities;
    r.table.rows.push_back({res.name, res.max_residual, res.worst_theta,
                            static_cast<long long>(res.worst_m),
                            static_cast<long long>(res.evaluations), ok});
    r.pass = r.pass && ok;
  }
  return r;
}

inline Report build_report(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::coeffs: return coefficient_report(cfg, true);
    case Command::table: return coefficient_report(cfg, false);
    case Command::verify_ball: return ball_report(cfg);
    case Command::verify_cylinder: return cylinder_report(cfg);
    case Command::verify_identities: return identity_report(cfg);
  }
  throw ConfigError("unknown command");
}

inline void write_report(const RunConfig& cfg, const Report& report, std::ostream& stdout_stream) {
  std::ofstream file;
  std::ostream* os = &stdout_stream;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw ConfigError("cannot open --out file '" + cfg.out + "'");
    os = &file;
  }
  if (cfg.format == Format::json) {
    write_json(report.table, *os);
  } else {
    write_csv(report.table, *os);
  }
}

/// Exit status: 0 all within tolerance, 1 tolerance or numerical failure,
/// 2 configuration error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
    if (!cfg) return 0;
  } catch (const ConfigError& e) {
    err << "chibag: " << e.what() << '\n';
    return 2;
  }
  try {
    const auto report = build_report(*cfg);
    write_report(*cfg, report, out);
    if (!report.pass) err << "chibag: tolerance check failed\n";
    return report.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "chibag: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "chibag: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "chibag: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace chibag::cli

#endif  // CHIBAG_TOOLS_CLI_APP_HPP
