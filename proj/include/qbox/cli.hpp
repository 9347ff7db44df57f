#pragma once

#include "qbox/checks.hpp"
#include "qbox/io.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qbox {

// A malformed invocation: reported with the usage text, exit code 2.
// Everything else that throws is a runtime/solver failure, exit code 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double alpha = 0.0;
  bool alpha_set = false;
  double alpha_min = 0.0;
  double alpha_max = 100.0;
  int steps = 201;
  Boundary bc = Boundary::Dirichlet;
  int states = 4;
  int n = 0;  // 0 = per-command default, resolved by parse_args
  int order = 8;
  double sigma = 1.0;
  std::string format;  // "" = per-command default, resolved by parse_args
  std::string out;     // "" = stdout
  std::string state_file;
  double t_max = 1.0;
  int samples = 101;
  std::string fields_file;
  std::string field_kind = "probability";
  std::string potential_file;
};

inline const char* usage_text() {
  return
      "usage: qbox <command> [options]\n"
      "\n"
      "commands:\n"
      "  solve    eigenvalues, wall derivatives and mean positions for one field\n"
      "  scan     sweep the field strength, one row per alpha\n"
      "  verify   run the built-in check suite (exit 1 on any failure)\n"
      "  evolve   evolve an initial state from a CSV file, audit both rate laws\n"
      "  table    hard-wall summary table over alpha in {0, 10, 100}\n"
      "\n"
      "options:\n"
      "  --alpha X        field strength (default 0; verify: 10)\n"
      "  --alpha-min X    scan start (default 0)\n"
      "  --alpha-max X    scan end (default 100)\n"
      "  --steps N        scan sample count (default 201)\n"
      "  --bc c|p|v       walls: hard (c), periodic (p), zero-slope (v)\n"
      "  --states N       number of states / basis size (default 4)\n"
      "  --n N            grid points (default 1001; scan and verify: 501)\n"
      "  --order N        finite-difference order (default 8)\n"
      "  --sigma 0|1      wall term off/on in the rate laws (default 1)\n"
      "  --format F       csv | json | svg (availability varies per command)\n"
      "  --out PATH       write output to a file instead of stdout\n"
      "  --state PATH     evolve: initial state CSV with columns xi,re,im\n"
      "  --t-max X        evolve: final time (default 1)\n"
      "  --samples N      evolve: trajectory rows (default 101)\n"
      "  --fields PATH    evolve: also write a balance-field CSV at t-max\n"
      "  --field-kind K   probability | momentum | momentum_symmetrized | position_mx\n"
      "  --potential PATH tabulated potential CSV (xi,V) instead of --alpha\n"
      "\n"
      "QBOX_THREADS caps the scan worker pool.\n"
      "exit codes: 0 ok, 1 check failure, 2 usage error, 3 runtime failure\n";
}

namespace detail_cli {

inline double parse_double(const std::string& flag, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw UsageError(flag + " needs a number, got '" + v + "'");
  }
  if (pos != v.size()) throw UsageError(flag + " needs a number, got '" + v + "'");
  return x;
}

inline int parse_int(const std::string& flag, const std::string& v) {
  std::size_t pos = 0;
  int x = 0;
  try {
    x = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw UsageError(flag + " needs an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw UsageError(flag + " needs an integer, got '" + v + "'");
  return x;
}

// Writes `text` to cfg.out, or to `fallback` when no path was given.
inline void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
  if (cfg.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + cfg.out);
}

inline Potential make_potential(const RunConfig& cfg, const Grid& g) {
  if (!cfg.potential_file.empty()) return Potential::from_csv(cfg.potential_file, g);
  return cfg.alpha == 0.0 ? Potential::constant(0.0)
                          : Potential::linear_field(cfg.alpha);
}

// Per-state summary shared by `solve` and `table`.
struct StateRow {
  int k = 0;
  double beta = 0, beta_scaled = 0;
  double dpsi_left = 0, dpsi_right = 0;
  double slope_sq_left = 0, slope_sq_right = 0;
  double mean_x = 0;
};

inline StateRow make_state_row(const Grid& g, Boundary bc, const Eigenstate& st,
                               int k) {
  const WaveState ws = make_wave_state(g, bc, st.psi);
  StateRow r;
  r.k = k;
  r.beta = st.beta;
  r.beta_scaled = 4.0 * st.beta / (detail_checks::kPi * detail_checks::kPi);
  r.dpsi_left = std::real(ws.dpsi[0]);
  r.dpsi_right = std::real(ws.dpsi[g.n_points - 1]);
  r.slope_sq_left = std::norm(ws.dpsi[0]);
  r.slope_sq_right = std::norm(ws.dpsi[g.n_points - 1]);
  r.mean_x = mean_position(g, ws);
  return r;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline int scan_worker_count(int jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QBOX_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end && *end == '\0' && cap >= 1) hw = std::min<unsigned>(hw, unsigned(cap));
  }
  return int(std::min<unsigned>(hw, unsigned(jobs)));
}

}  // namespace detail_cli

inline RunConfig parse_args(const std::vector<std::string>& args) {
  using detail_cli::parse_double;
  using detail_cli::parse_int;

  if (args.empty()) throw UsageError("no command given");
  RunConfig cfg;
  cfg.command = args[0];
  if (cfg.command == "-h" || cfg.command == "--help") cfg.command = "help";
  const bool known = cfg.command == "solve" || cfg.command == "scan" ||
                     cfg.command == "verify" || cfg.command == "evolve" ||
                     cfg.command == "table" || cfg.command == "help";
  if (!known) throw UsageError("unknown command: " + cfg.command);

  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    const auto next = [&]() -> const std::string& {
      if (i + 1 >= args.size()) throw UsageError(a + " needs a value");
      return args[++i];
    };
    if (a == "--alpha") {
      cfg.alpha = parse_double(a, next());
      cfg.alpha_set = true;
    } else if (a == "--alpha-min") {
      cfg.alpha_min = parse_double(a, next());
    } else if (a == "--alpha-max") {
      cfg.alpha_max = parse_double(a, next());
    } else if (a == "--steps") {
      cfg.steps = parse_int(a, next());
      if (cfg.steps < 2) throw UsageError("--steps must be at least 2");
    } else if (a == "--bc") {
      const std::string& v = next();
      if (v.size() != 1 || (v[0] != 'c' && v[0] != 'p' && v[0] != 'v'))
        throw UsageError("--bc must be one of c, p, v");
      cfg.bc = boundary_from_code(v[0]);
    } else if (a == "--states") {
      cfg.states = parse_int(a, next());
      if (cfg.states < 1) throw UsageError("--states must be at least 1");
    } else if (a == "--n") {
      cfg.n = parse_int(a, next());
      if (cfg.n < 3) throw UsageError("--n must be at least 3");
    } else if (a == "--order") {
      cfg.order = parse_int(a, next());
      if (cfg.order < 2 || cfg.order % 2 != 0)
        throw UsageError("--order must be a positive even number");
    } else if (a == "--sigma") {
      const std::string& v = next();
      if (v != "0" && v != "1") throw UsageError("--sigma must be 0 or 1");
      cfg.sigma = (v == "1") ? 1.0 : 0.0;
    } else if (a == "--format") {
      const std::string& v = next();
      if (v != "csv" && v != "json" && v != "svg")
        throw UsageError("--format must be csv, json or svg");
      cfg.format = v;
    } else if (a == "--out") {
      cfg.out = next();
    } else if (a == "--state") {
      cfg.state_file = next();
    } else if (a == "--t-max") {
      cfg.t_max = parse_double(a, next());
      if (cfg.t_max < 0) throw UsageError("--t-max must be nonnegative");
    } else if (a == "--samples") {
      cfg.samples = parse_int(a, next());
      if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
    } else if (a == "--fields") {
      cfg.fields_file = next();
    } else if (a == "--field-kind") {
      const std::string& v = next();
      if (v != "probability" && v != "momentum" && v != "momentum_symmetrized" &&
          v != "position_mx")
        throw UsageError("--field-kind must be probability, momentum, "
                         "momentum_symmetrized or position_mx");
      cfg.field_kind = v;
    } else if (a == "--potential") {
      cfg.potential_file = next();
    } else if (a == "-h" || a == "--help") {
      cfg.command = "help";
    } else {
      throw UsageError("unknown option: " + a);
    }
  }

  if (cfg.alpha_set && !cfg.potential_file.empty())
    throw UsageError("--alpha and --potential are mutually exclusive");
  if (cfg.n == 0) cfg.n = (cfg.command == "scan" || cfg.command == "verify") ? 501 : 1001;
  if (cfg.format.empty()) cfg.format = (cfg.command == "verify") ? "text" : "csv";
  return cfg;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  using detail_cli::StateRow;

  const Grid g = build_grid(cfg.n, cfg.order);
  const Potential pot = detail_cli::make_potential(cfg, g);
  const auto sol = solve_stationary(g, pot, cfg.bc, cfg.states);

  std::vector<StateRow> rows;
  for (int k = 1; k <= cfg.states; ++k)
    rows.push_back(detail_cli::make_state_row(g, cfg.bc, sol.states[k - 1], k));

  std::ostringstream ss;
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> cells;
    for (const auto& r : rows)
      cells.push_back({double(r.k), r.beta, r.beta_scaled, r.dpsi_left, r.dpsi_right,
                       r.slope_sq_left, r.slope_sq_right, r.mean_x});
    write_csv(ss,
              {"k", "beta", "beta_scaled", "dpsi_left", "dpsi_right", "slope_sq_left",
               "slope_sq_right", "mean_x"},
              cells);
  } else if (cfg.format == "json") {
    JsonWriter jw(ss);
    jw.begin_object();
    jw.key("alpha").value(pot.is_linear_field() ? pot.alpha() : cfg.alpha);
    jw.key("bc").value(std::string(1, boundary_code(cfg.bc)));
    jw.key("n").value(cfg.n);
    jw.key("order").value(cfg.order);
    jw.key("states").begin_array();
    for (const auto& r : rows) {
      jw.begin_object();
      jw.key("k").value(r.k);
      jw.key("beta").value(r.beta);
      jw.key("beta_scaled").value(r.beta_scaled);
      jw.key("dpsi_left").value(r.dpsi_left);
      jw.key("dpsi_right").value(r.dpsi_right);
      jw.key("slope_sq_left").value(r.slope_sq_left);
      jw.key("slope_sq_right").value(r.slope_sq_right);
      jw.key("mean_x").value(r.mean_x);
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    ss << '\n';
  } else {  // svg
    SvgPanel waves, dens;
    waves.title = "eigenfunctions";
    dens.title = "probability densities";
    const std::vector<double> xi = detail_cli::to_std(g.points);
    for (const auto& st : sol.states) {
      SvgSeries w, d;
      w.label = "k=" + std::to_string(&st - sol.states.data() + 1);
      d.label = w.label;
      w.x = xi;
      d.x = xi;
      for (int i = 0; i < g.n_points; ++i) {
        w.y.push_back(st.psi[i]);
        d.y.push_back(0.5 * st.psi[i] * st.psi[i]);
      }
      waves.series.push_back(std::move(w));
      dens.series.push_back(std::move(d));
    }
    write_svg(ss, {waves, dens});
  }
  detail_cli::emit(cfg, out, ss.str());
  return 0;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") throw UsageError("scan writes csv or svg, not json");
  if (!(cfg.alpha_max > cfg.alpha_min))
    throw UsageError("--alpha-max must exceed --alpha-min");
  if (!cfg.potential_file.empty())
    throw UsageError("scan sweeps --alpha; --potential does not apply");

  const Grid g = build_grid(cfg.n, cfg.order);
  const int S = cfg.states;

  struct ScanRow {
    double alpha = 0;
    std::vector<double> beta_scaled, mean_x;
  };
  std::vector<ScanRow> rows(std::size_t(cfg.steps));
  std::atomic<int> cursor{0};
  std::atomic<bool> failed{false};
  std::mutex fail_mx;
  std::string fail_msg;

  const auto work = [&]() {
    for (int i = cursor.fetch_add(1); i < cfg.steps && !failed.load();
         i = cursor.fetch_add(1)) {
      const double a =
          cfg.alpha_min + (cfg.alpha_max - cfg.alpha_min) * i / (cfg.steps - 1.0);
      try {
        const Potential pot =
            a == 0.0 ? Potential::constant(0.0) : Potential::linear_field(a);
        const auto sol = solve_stationary(g, pot, cfg.bc, S);
        ScanRow& r = rows[std::size_t(i)];
        r.alpha = a;
        for (int k = 0; k < S; ++k) {
          const auto sr = detail_cli::make_state_row(g, cfg.bc, sol.states[k], k + 1);
          r.beta_scaled.push_back(sr.beta_scaled);
          r.mean_x.push_back(sr.mean_x);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(fail_mx);
        if (fail_msg.empty())
          fail_msg = "scan failed at alpha=" + format_number(a) + ": " + e.what();
        failed.store(true);
        return;
      }
    }
  };

  const int workers = detail_cli::scan_worker_count(cfg.steps);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error(fail_msg);

  std::ostringstream ss;
  if (cfg.format == "csv") {
    std::vector<std::string> header{"alpha"};
    for (int k = 1; k <= S; ++k) header.push_back("beta_scaled_" + std::to_string(k));
    for (int k = 1; k <= S; ++k) header.push_back("mean_x_" + std::to_string(k));
    std::vector<std::vector<double>> cells;
    for (const auto& r : rows) {
      std::vector<double> c{r.alpha};
      c.insert(c.end(), r.beta_scaled.begin(), r.beta_scaled.end());
      c.insert(c.end(), r.mean_x.begin(), r.mean_x.end());
      cells.push_back(std::move(c));
    }
    write_csv(ss, header, cells);
  } else {  // svg
    SvgPanel ev, mx;
    ev.title = "scaled eigenvalues vs field strength";
    mx.title = "mean position vs field strength";
    for (int k = 0; k < S; ++k) {
      SvgSeries a, b;
      a.label = "k=" + std::to_string(k + 1);
      b.label = a.label;
      for (const auto& r : rows) {
        a.x.push_back(r.alpha);
        a.y.push_back(r.beta_scaled[std::size_t(k)]);
        b.x.push_back(r.alpha);
        b.y.push_back(r.mean_x[std::size_t(k)]);
      }
      ev.series.push_back(std::move(a));
      mx.series.push_back(std::move(b));
    }
    write_svg(ss, {ev, mx});
  }
  detail_cli::emit(cfg, out, ss.str());
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "csv" || cfg.format == "svg")
    throw UsageError("verify reports text (default) or json");
  if (!cfg.potential_file.empty())
    throw UsageError("verify uses the built-in field; --potential does not apply");

  const double alpha = cfg.alpha_set ? cfg.alpha : 10.0;
  const VerifyReport rep = run_verify_suite(cfg.n, cfg.order, alpha);

  const bool json_to_stdout = (cfg.format == "json" && cfg.out.empty());
  if (!json_to_stdout) {
    char line[160];
    for (const auto& c : rep.checks) {
      const char* tag = c.pass ? "ok   " : (c.expected_fail ? "xfail" : "FAIL ");
      std::snprintf(line, sizeof line, "%s %-36s residual=%-13.6g bound=%g\n", tag,
                    c.name.c_str(), c.residual, c.bound);
      out << line;
      if (!c.note.empty()) out << "      (" << c.note << ")\n";
    }
    int xfails = 0;
    for (const auto& c : rep.checks) xfails += c.expected_fail ? 1 : 0;
    out << rep.checks.size() << " checks, " << xfails << " expected failure(s), "
        << rep.failures() << " unexpected failure(s)\n";
  }

  if (cfg.format == "json" || !cfg.out.empty()) {
    std::ostringstream ss;
    JsonWriter jw(ss);
    jw.begin_object();
    jw.key("config").begin_object();
    jw.key("n").value(cfg.n);
    jw.key("order").value(cfg.order);
    jw.key("alpha").value(alpha);
    jw.end_object();
    jw.key("checks").begin_array();
    for (const auto& c : rep.checks) {
      jw.begin_object();
      jw.key("name").value(c.name);
      jw.key("residual").value(c.residual);
      jw.key("bound").value(c.bound);
      jw.key("pass").value(c.pass);
      jw.key("expected_fail").value(c.expected_fail);
      jw.key("note").value(c.note);
      jw.end_object();
    }
    jw.end_array();
    jw.key("stationary").begin_array();
    for (std::size_t i = 0; i < rep.stationary.size(); ++i) {
      const EhrenfestReport& r = rep.stationary[i];
      jw.begin_object();
      jw.key("k").value(int(i / 2) + 1);
      jw.key("mean_x").value(r.mean_x);
      jw.key("mean_p_re").value(std::real(r.mean_p));
      jw.key("mean_p_im").value(std::imag(r.mean_p));
      jw.key("dpdt").value(r.dpdt);
      jw.key("wall_term").value(r.wall_term);
      jw.key("sigma").value(r.sigma);
      jw.key("residual").value(r.residual);
      jw.end_object();
    }
    jw.end_array();
    jw.key("failures").value(rep.failures());
    jw.end_object();
    ss << '\n';
    detail_cli::emit(cfg, out, ss.str());
  }
  return rep.failures() ? 1 : 0;
}

inline int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "csv") throw UsageError("evolve writes csv only");
  if (cfg.state_file.empty()) throw UsageError("evolve needs --state FILE");

  const Grid g = build_grid(cfg.n, cfg.order);

  // Initial state: CSV with columns xi, re, im on exactly this grid.
  std::ifstream f(cfg.state_file);
  if (!f) throw std::runtime_error("cannot open state file: " + cfg.state_file);
  std::vector<double> xs, re, im;
  std::string linebuf;
  while (std::getline(f, linebuf)) {
    if (linebuf.empty()) continue;
    double a = 0, b = 0, c = 0;
    if (std::sscanf(linebuf.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3) {
      if (xs.empty()) continue;  // header row
      throw std::runtime_error("bad row in state file: " + linebuf);
    }
    xs.push_back(a);
    re.push_back(b);
    im.push_back(c);
  }
  if (int(xs.size()) != g.n_points)
    throw std::runtime_error("state file has " + std::to_string(xs.size()) +
                             " rows but the grid has " + std::to_string(g.n_points) +
                             " points (set --n to match)");
  for (int i = 0; i < g.n_points; ++i)
    if (std::abs(xs[std::size_t(i)] - g.points[i]) > 1e-12)
      throw std::runtime_error("state file grid mismatch at row " + std::to_string(i));

  Eigen::VectorXcd psi0(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    psi0[i] = std::complex<double>(re[std::size_t(i)], im[std::size_t(i)]);
  const double nrm2 = norm_squared(g, psi0);
  if (nrm2 < 1e-12) throw std::runtime_error("state has (near) zero norm");
  psi0 /= std::sqrt(nrm2);

  const Potential pot = detail_cli::make_potential(cfg, g);
  const auto sol = solve_stationary(g, pot, cfg.bc, cfg.states);
  const Evolution ev(g, project(g, sol, psi0));

  std::vector<std::vector<double>> cells;
  for (int i = 0; i < cfg.samples; ++i) {
    const double t = cfg.t_max * i / (cfg.samples - 1.0);
    const LawAudit a = ev.audit_at(t, pot, cfg.sigma);
    cells.push_back({a.t, a.mean_x, std::real(a.mean_p), std::imag(a.mean_p),
                     a.dxdt_direct, a.dxdt_law, a.dpdt_direct, a.dpdt_law, a.sigma});
  }
  std::ostringstream ss;
  write_csv(ss,
            {"t", "mean_x", "mean_p_re", "mean_p_im", "dxdt_direct", "dxdt_ehrenfest",
             "dpdt_direct", "dpdt_ehrenfest", "sigma"},
            cells);
  detail_cli::emit(cfg, out, ss.str());

  if (!cfg.fields_file.empty()) {
    const WaveState ws = ev.state_at(cfg.t_max);
    BalanceField b;
    if (cfg.field_kind == "probability")
      b = probability_balance(g, ws);
    else if (cfg.field_kind == "momentum")
      b = momentum_balance_plain(g, ws, pot);
    else if (cfg.field_kind == "momentum_symmetrized")
      b = momentum_balance(g, ws, pot);
    else
      b = position_moment_balance(g, ws);
    std::vector<std::vector<double>> fc;
    for (int i = 0; i < g.n_points; ++i)
      fc.push_back({g.points[i], b.density[i], std::real(b.flux[i]),
                    std::real(b.production[i]), std::real(b.residual[i])});
    std::ostringstream fs;
    write_csv(fs, {"xi", "density", "flux", "production", "residual"}, fc);
    std::ofstream ff(cfg.fields_file, std::ios::binary);
    if (!ff) throw std::runtime_error("cannot open field file: " + cfg.fields_file);
    ff << fs.str();
  }
  return 0;
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "csv") throw UsageError("table writes csv only");
  if (!cfg.potential_file.empty())
    throw UsageError("table sweeps --alpha; --potential does not apply");

  std::vector<double> alphas{0.0, 10.0, 100.0};
  if (cfg.alpha_set) alphas = {cfg.alpha};

  std::vector<std::vector<double>> cells;
  const Grid g = build_grid(cfg.n, cfg.order);
  for (double a : alphas) {
    const Potential pot =
        a == 0.0 ? Potential::constant(0.0) : Potential::linear_field(a);
    const auto sol = solve_stationary(g, pot, Boundary::Dirichlet, cfg.states);
    for (int k = 1; k <= cfg.states; ++k) {
      const auto r = detail_cli::make_state_row(g, Boundary::Dirichlet,
                                                sol.states[k - 1], k);
      const double force_balance = 0.5 * (r.slope_sq_right - r.slope_sq_left);
      cells.push_back({a, double(r.k), r.beta, r.beta_scaled, r.dpsi_left,
                       r.dpsi_right, r.slope_sq_left, r.slope_sq_right,
                       force_balance, r.mean_x});
    }
  }
  std::ostringstream ss;
  write_csv(ss,
            {"alpha", "k", "beta", "beta_scaled", "dpsi_left", "dpsi_right",
             "slope_sq_left", "slope_sq_right", "force_balance", "mean_x"},
            cells);
  detail_cli::emit(cfg, out, ss.str());
  return 0;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_text();
    return 2;
  }
  if (cfg.command == "help") {
    out << usage_text();
    return 0;
  }
  try {
    if (cfg.command == "solve") return cmd_solve(cfg, out);
    if (cfg.command == "scan") return cmd_scan(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "evolve") return cmd_evolve(cfg, out);
    return cmd_table(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_text();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qbox
