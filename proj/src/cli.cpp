#include "shamanskii/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shamanskii/analysis.hpp"
#include "shamanskii/problems.hpp"
#include "shamanskii/report.hpp"
#include "shamanskii/solver.hpp"

namespace shamanskii::cli {

namespace {

std::string sci(double v, const char *fmt = "%.6e") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

struct SolverFlags {
  double tol = 10 * std::numeric_limits<double>::epsilon();
  int max_outer = 100;
  bool inner_early_exit = false;
  std::string format = "table";

  void attach(CLI::App &cmd) {
    cmd.add_option("--tol", tol, "Residual tolerance (default 10*eps)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-outer", max_outer, "Cap on outer iterations")
        ->check(CLI::PositiveNumber);
    cmd.add_flag("--inner-early-exit", inner_early_exit,
                 "Stop an inner sweep once the residual meets the tolerance");
    cmd.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
  }

  SolverConfig<double> config(int m) const {
    SolverConfig<double> cfg;
    cfg.m = m;
    cfg.tol = tol;
    cfg.max_outer = max_outer;
    cfg.inner_early_exit = inner_early_exit;
    return cfg;
  }
};

std::string render(SuiteReport const &report, std::string const &format) {
  if (format == "csv") return report::render_csv(report);
  if (format == "json") return report::render_json(report);
  return report::render_table(report);
}

int cmd_run(std::string const &name, int m, SolverFlags const &flags,
            bool verbose, std::ostream &out) {
  const Problem<double> p = registry_get(name);
  const auto trace = solve(p, flags.config(m));
  const SuiteCell cell = make_cell(p, m, trace);

  if (flags.format == "table") {
    out << "problem " << p.name << " (dim " << p.dim << ") m=" << m
        << " tol=" << sci(flags.tol, "%.6g") << '\n';
    if (verbose) {
      for (std::size_t k = 0; k < trace.residual_norms.size(); ++k) {
        out << "  outer " << k << " residual "
            << sci(static_cast<double>(trace.residual_norms[k])) << '\n';
      }
    }
    auto rho = report::displayed_rho(cell.rho);
    out << "status=" << to_string(trace.status) << " it_inv=" << trace.it_inv
        << " it_tot=" << trace.it_tot
        << " final_residual=" << sci(cell.final_residual)
        << " rho=" << (rho ? sci(*rho, "%.4f") : std::string("NA")) << '\n';
    if (!trace.message.empty()) {
      out << "note: " << trace.message << '\n';
    }
  } else {
    SuiteReport single;
    single.problems = {p.name};
    single.ms = {m};
    single.cells = {cell};
    out << render(single, flags.format);
  }
  return trace.converged() ? kExitOk : kExitNumerical;
}

int cmd_suite(std::vector<std::string> const &names, std::vector<int> const &ms,
              SolverFlags const &flags, bool parallel, std::ostream &out) {
  // m is overridden per cell.
  const SuiteReport report = run_suite(names, ms, flags.config(1), parallel);
  out << render(report, flags.format);
  return report.all_converged() ? kExitOk : kExitNumerical;
}

int cmd_list_problems(std::ostream &out) {
  for (auto const &name : registry_names()) {
    const auto p = registry_get(name);
    out << p.name << "  dim=" << p.dim << "  " << p.description << '\n';
  }
  return kExitOk;
}

}  // namespace

int check_jacobians(std::vector<Problem<double>> const &problems,
                    JacobianCheckOptions const &options, std::ostream &out) {
  bool all_ok = true;
  for (auto const &p : problems) {
    const JacobianCheck check = check_jacobian(p, options);
    double worst = 0.0;
    std::size_t skipped = 0;
    for (auto const &pt : check.points) {
      if (pt.skipped) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, pt.max_abs_error);
    }
    auto const &at_start = check.points.front();
    out << p.name << ": points=" << check.points.size()
        << " skipped=" << skipped << " x0_error="
        << (at_start.skipped ? std::string("skipped") : sci(at_start.max_abs_error, "%.3e"))
        << " max_error=" << sci(worst, "%.3e") << ' '
        << (check.passed() ? "PASS" : "FAIL") << '\n';
    for (std::size_t k = 0; k < check.points.size(); ++k) {
      auto const &pt = check.points[k];
      if (pt.skipped) {
        out << "  point " << k << " skipped: " << *pt.skipped << '\n';
      } else if (!pt.passed) {
        out << "  point " << k << " entry (" << pt.row << "," << pt.col
            << ") error " << sci(pt.max_abs_error, "%.3e") << " exceeds "
            << sci(pt.bound, "%.3e") << '\n';
      }
    }
    all_ok = all_ok && check.passed();
  }
  return all_ok ? kExitOk : kExitNumerical;
}

int run(std::vector<std::string> const &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Shamanskii m-method solver and benchmark harness",
               "shamanskii"};
  app.require_subcommand(1);

  auto *run_cmd = app.add_subcommand("run", "Solve one benchmark problem");
  std::string problem;
  int m = 1;
  bool verbose = false;
  SolverFlags run_flags;
  run_cmd->add_option("--problem", problem, "Problem name (a-e)")->required();
  run_cmd->add_option("--m", m, "Inner steps per factorization")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--verbose,-v", verbose, "Print the residual of every outer iterate");
  run_flags.attach(*run_cmd);

  auto *suite_cmd = app.add_subcommand("suite", "Run the benchmark grid");
  std::vector<std::string> names = registry_names();
  std::vector<int> ms = {1, 2, 3, 4};
  bool parallel = false;
  SolverFlags suite_flags;
  suite_cmd->add_option("--problems", names, "Comma-separated problem names")
      ->delimiter(',');
  suite_cmd->add_option("--ms", ms, "Comma-separated m values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  suite_cmd->add_flag("--parallel", parallel, "Solve cells concurrently");
  suite_flags.attach(*suite_cmd);

  auto *check_cmd = app.add_subcommand(
      "check-jacobians", "Compare analytic and finite-difference Jacobians");
  std::vector<std::string> check_names = registry_names();
  JacobianCheckOptions check_options;
  check_cmd->add_option("--problems", check_names, "Comma-separated problem names")
      ->delimiter(',');
  check_cmd->add_option("--step", check_options.h, "Central-difference step h")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--points", check_options.perturbed_points,
                        "Perturbed points per problem")
      ->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--seed", check_options.seed, "Perturbation seed");

  auto *list_cmd = app.add_subcommand("list-problems", "List the benchmark problems");

  try {
    // CLI11 consumes the vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(problem, m, run_flags, verbose, out);
    if (suite_cmd->parsed()) return cmd_suite(names, ms, suite_flags, parallel, out);
    if (check_cmd->parsed()) {
      std::vector<Problem<double>> problems;
      for (auto const &n : check_names) problems.push_back(registry_get(n));
      return check_jacobians(problems, check_options, out);
    }
    if (list_cmd->parsed()) return cmd_list_problems(out);
  } catch (UnknownProblem const &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (std::invalid_argument const &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace shamanskii::cli
