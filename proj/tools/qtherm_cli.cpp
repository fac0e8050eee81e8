// Command-line front end: probe states, Fisher information, sweeps,
// optimization, figure datasets and Monte Carlo Cramer-Rao checks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qtherm/dataset.hpp"
#include "qtherm/mc.hpp"
#include "qtherm/metrics.hpp"
#include "qtherm/optimize.hpp"
#include "qtherm/probe.hpp"
#include "qtherm/sweep.hpp"
#include "qtherm/version.hpp"

namespace {

using namespace qtherm;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;  // result carries a numerical warning flag
constexpr int kExitUsage = 2;      // validation / usage error

struct ModelFlags {
  std::string beta = "1", theta = "0", phi = "0", tau = "0", gamma = "0";
  std::string dec_a = "0", dec_b = "0";
  double tail_eps = 1e-14;
  int n_cap = 4096;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beta", beta, "inverse temperature (dimensionless)");
    cmd->add_option("--theta", theta, "preparation polar angle (accepts pi tokens)");
    cmd->add_option("--phi", phi, "preparation phase");
    cmd->add_option("--tau", tau, "interaction time");
    cmd->add_option("--gamma", gamma, "detuning");
    cmd->add_option("--a", dec_a, "decoherence exponent");
    cmd->add_option("--b", dec_b, "decoherence scale (0 = unitary)");
    cmd->add_option("--tail-eps", tail_eps, "truncation tail bound");
    cmd->add_option("--n-cap", n_cap, "hard Fock cutoff");
  }

  ModelParams resolve() const {
    ModelParams p;
    p.beta = parse_real_token(beta);
    p.theta = parse_real_token(theta);
    p.phi = parse_real_token(phi);
    p.tau = parse_real_token(tau);
    p.gamma = parse_real_token(gamma);
    p.dec_a = parse_real_token(dec_a);
    p.dec_b = parse_real_token(dec_b);
    p.trunc.tail_eps = tail_eps;
    p.trunc.n_cap = n_cap;
    p.validate();
    return p;
  }
};

std::filesystem::path resolve_output(const std::string& given,
                                     const std::string& fallback) {
  std::filesystem::path out = given.empty() ? fallback : given;
  if (out.is_relative()) {
    if (const char* dir = std::getenv("QTHERM_OUT_DIR")) out = dir / out;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << text;
}

FileFormat parse_format(const std::string& f) {
  if (f == "csv") return FileFormat::csv;
  if (f == "json") return FileFormat::json;
  throw std::domain_error("unknown format: " + f);
}

void print_probe(const ProbeState& ps) {
  const BlochVector bv = bloch(ps);
  std::cout << "rho_ee      = " << format_double(ps.rho_ee) << "\n"
            << "rho_eg      = " << format_double(ps.rho_eg.real()) << " "
            << (ps.rho_eg.imag() < 0 ? "- " : "+ ")
            << format_double(std::abs(ps.rho_eg.imag())) << "i\n"
            << "d_rho_ee    = " << format_double(ps.d_rho_ee) << "\n"
            << "d_rho_eg    = " << format_double(ps.d_rho_eg.real()) << " "
            << (ps.d_rho_eg.imag() < 0 ? "- " : "+ ")
            << format_double(std::abs(ps.d_rho_eg.imag())) << "i\n"
            << "bloch r     = (" << format_double(bv.r[0]) << ", "
            << format_double(bv.r[1]) << ", " << format_double(bv.r[2]) << ")\n"
            << "bloch dr    = (" << format_double(bv.dr[0]) << ", "
            << format_double(bv.dr[1]) << ", " << format_double(bv.dr[2])
            << ")\n"
            << "n_used      = " << ps.n_used << "\n"
            << "truncated   = " << (ps.truncated ? "yes" : "no") << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"qubit thermometry toolkit"};
  app.set_version_flag("--version", std::string("qtherm ") + kVersion);
  app.set_config("--config", "", "read defaults from an INI file");
  app.require_subcommand(1);

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "print the probe state");
  ModelFlags probe_flags;
  probe_flags.attach(probe_cmd);

  // fi / qfi
  auto* fi_cmd = app.add_subcommand("fi", "Fisher information of the population measurement");
  ModelFlags fi_flags;
  fi_flags.attach(fi_cmd);
  long fi_shots = 1;
  fi_cmd->add_option("--shots", fi_shots, "sample size M for the Cramer-Rao bound");

  auto* qfi_cmd = app.add_subcommand("qfi", "quantum Fisher information");
  ModelFlags qfi_flags;
  qfi_flags.attach(qfi_cmd);
  long qfi_shots = 1;
  qfi_cmd->add_option("--shots", qfi_shots, "sample size M for the quantum bound");

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "maximize FI/QFI over the interaction time");
  ModelFlags opt_flags;
  opt_flags.attach(opt_cmd);
  std::string opt_obj = "fi", opt_lo = "0", opt_hi;
  double opt_tol = 1e-6;
  int opt_coarse = 2001;
  opt_cmd->add_option("--objective", opt_obj, "fi|qfi|pe");
  opt_cmd->add_option("--tau-min", opt_lo, "search interval lower end");
  opt_cmd->add_option("--tau-max", opt_hi, "search interval upper end");
  opt_cmd->add_option("--tol", opt_tol, "argument tolerance");
  opt_cmd->add_option("--coarse", opt_coarse, "coarse bracketing points");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate FI/QFI/p_e over parameter grids");
  ModelFlags sweep_flags;
  sweep_flags.attach(sweep_cmd);
  std::string sweep_obj = "fi";
  std::map<std::string, std::string> grid_flags;
  sweep_cmd->add_option("--objective", sweep_obj, "fi|qfi|pe");
  for (const char* ax : {"beta", "tau", "theta", "gamma", "b"}) {
    grid_flags[ax] = "";
    sweep_cmd->add_option("--" + std::string(ax) + "-grid", grid_flags[ax],
                          "grid lo:hi:count[:log]");
  }
  std::string sweep_out, sweep_fmt = "csv";
  sweep_cmd->add_option("--output,-o", sweep_out, "output file");
  sweep_cmd->add_option("--format", sweep_fmt, "csv|json");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "emit a named figure dataset");
  std::string fig_name;
  fig_cmd->add_option("name", fig_name, "fig1a|fig1b|fig2|fig3|fig4a|fig4b|fig5a|fig5b")
      ->required();
  std::string fig_out, fig_fmt = "csv", fig_tau_max;
  int fig_points = 0;
  fig_cmd->add_option("--output,-o", fig_out, "output file");
  fig_cmd->add_option("--format", fig_fmt, "csv|json");
  fig_cmd->add_option("--tau-max", fig_tau_max, "override the tau axis upper end");
  fig_cmd->add_option("--points", fig_points, "override the number of samples");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo maximum-likelihood Cramer-Rao check");
  ModelFlags est_flags;
  est_flags.attach(est_cmd);
  long est_shots = 10000;
  int est_reps = 300;
  std::uint64_t est_seed = 0;
  std::string est_window, est_out, est_fmt = "csv";
  est_cmd->add_option("--shots", est_shots, "measurements per repetition (M)");
  est_cmd->add_option("--reps", est_reps, "independent repetitions (R)");
  est_cmd->add_option("--seed", est_seed, "master RNG seed");
  est_cmd->add_option("--window", est_window, "MLE window lo:hi (default beta/4:4*beta)");
  est_cmd->add_option("--output,-o", est_out, "write per-repetition estimates");
  est_cmd->add_option("--format", est_fmt, "csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (probe_cmd->parsed()) {
      const ProbeState ps = probe_state_decohered(probe_flags.resolve());
      print_probe(ps);
      return ps.truncated ? kExitNumerical : kExitOk;
    }

    if (fi_cmd->parsed() || qfi_cmd->parsed()) {
      const bool quantum = qfi_cmd->parsed();
      const ModelFlags& flags = quantum ? qfi_flags : fi_flags;
      const long shots = quantum ? qfi_shots : fi_shots;
      const ProbeState ps = probe_state_decohered(flags.resolve());
      const FisherReport rep = fisher_report(ps);
      const double info = quantum ? rep.qfi : rep.fi;
      std::cout << (quantum ? "qfi  = " : "fi   = ") << format_double(info)
                << "\n"
                << (quantum ? "qcrb = " : "crb  = ")
                << format_double(cramer_rao_bound(info, shots)) << "\n";
      if (rep.degenerate) std::cout << "flag = degenerate (maximally mixed)\n";
      if (rep.pure) std::cout << "flag = pure\n";
      return ps.truncated ? kExitNumerical : kExitOk;
    }

    if (opt_cmd->parsed()) {
      OptimizeRequest req;
      req.objective = objective_from_name(opt_obj);
      req.fixed = opt_flags.resolve();
      req.tau_lo = parse_real_token(opt_lo);
      req.tau_hi = opt_hi.empty()
                       ? (req.fixed.dec_b > 0.0 ? 4.0 : 2.0) * std::numbers::pi
                       : parse_real_token(opt_hi);
      req.tol = opt_tol;
      req.coarse_points = opt_coarse;
      const OptimumResult res = maximize_over_time(req);
      std::cout << "tau_max     = " << format_double(res.arg) << "\n"
                << "value       = " << format_double(res.value) << "\n"
                << "evaluations = " << res.evaluations << "\n"
                << "bracket     = [" << format_double(res.bracket.first) << ", "
                << format_double(res.bracket.second) << "]\n";
      if (res.degenerate) {
        std::cout << "flag        = degenerate optimum (objective is zero)\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      std::vector<Axis> axes;
      for (const char* ax : {"beta", "tau", "theta", "gamma", "b"}) {
        const std::string& spec = grid_flags[ax];
        if (!spec.empty()) axes.push_back({ax, parse_grid_spec(spec)});
      }
      if (axes.empty())
        throw std::domain_error("sweep: give at least one --<param>-grid");
      const SweepTable t =
          sweep(axes, objective_from_name(sweep_obj), sweep_flags.resolve());

      DatasetFile d;
      d.tool_version = kVersion;
      d.params = t.metadata;
      if (axes.size() == 1) {
        d.columns.push_back({axes[0].name, axes[0].grid});
        d.columns.push_back({sweep_obj, t.values});
      } else {
        // flatten: one row per cell, swept axes first
        std::vector<Column> cols;
        for (const auto& ax : axes) cols.push_back({ax.name, {}});
        cols.push_back({sweep_obj, t.values});
        for (std::size_t flat = 0; flat < t.values.size(); ++flat) {
          std::size_t rem = flat;
          for (std::size_t k = axes.size(); k-- > 0;) {
            const std::size_t len = axes[k].grid.size();
            cols[k].values.push_back(axes[k].grid[rem % len]);
            rem /= len;
          }
        }
        for (auto& c : cols) d.columns.push_back(std::move(c));
      }
      const auto out = resolve_output(sweep_out, "sweep.csv");
      write_file(out, serialize(d, parse_format(sweep_fmt)));
      std::cout << out.string() << "\n";
      return kExitOk;
    }

    if (fig_cmd->parsed()) {
      FigureOverrides ov;
      if (!fig_tau_max.empty()) ov.tau_max = parse_real_token(fig_tau_max);
      if (fig_points > 0) ov.points = fig_points;
      const DatasetFile d = make_figure(fig_name, ov);
      const auto out = resolve_output(
          fig_out, fig_name + (fig_fmt == "json" ? ".json" : ".csv"));
      write_file(out, serialize(d, parse_format(fig_fmt)));
      std::cout << out.string() << "\n";
      return kExitOk;
    }

    if (est_cmd->parsed()) {
      ExperimentSpec spec;
      spec.true_params = est_flags.resolve();
      spec.shots = est_shots;
      spec.reps = est_reps;
      spec.seed = est_seed;
      if (est_window.empty()) {
        spec.beta_window = {spec.true_params.beta / 4.0,
                            4.0 * spec.true_params.beta};
      } else {
        const auto sep = est_window.find(':');
        if (sep == std::string::npos)
          throw std::domain_error("--window expects lo:hi");
        spec.beta_window = {parse_real_token(est_window.substr(0, sep)),
                            parse_real_token(est_window.substr(sep + 1))};
      }
      const EstimationReport rep = run_experiment(spec);
      for (const auto& [k, v] : rep.metadata)
        std::cout << "# " << k << " = " << v << "\n";
      std::cout << "mean          = " << format_double(rep.mean) << "\n"
                << "variance      = " << format_double(rep.variance) << "\n"
                << "cr_ratio      = " << format_double(rep.cr_ratio) << "\n"
                << "boundary_hits = " << rep.boundary_hits << "\n"
                << "failures      = " << rep.failures << "\n";
      if (!est_out.empty()) {
        DatasetFile d;
        d.tool_version = kVersion;
        d.params = rep.metadata;
        std::vector<double> idx(rep.estimates.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = double(i);
        d.columns.push_back({"rep", idx});
        d.columns.push_back({"beta_hat", rep.estimates});
        write_file(resolve_output(est_out, est_out),
                   serialize(d, parse_format(est_fmt)));
      }
      return (rep.failures > 0 || rep.boundary_hits > 0) ? kExitNumerical
                                                         : kExitOk;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
