#ifndef SHAMANSKII_ANALYSIS_HPP_
#define SHAMANSKII_ANALYSIS_HPP_

#include <cmath>
#include <concepts>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shamanskii/linalg.hpp"
#include "shamanskii/problems.hpp"
#include "shamanskii/solver.hpp"

namespace shamanskii {

enum class CocNaReason {
  None,
  NotConverged,
  TooFewIterates,
  ZeroDifference,
  DegenerateRatio,
};

inline std::string_view to_string(CocNaReason r) {
  switch (r) {
    case CocNaReason::None: return "";
    case CocNaReason::NotConverged: return "run did not converge";
    case CocNaReason::TooFewIterates: return "fewer than four outer iterates";
    case CocNaReason::ZeroDifference: return "consecutive iterates coincide";
    case CocNaReason::DegenerateRatio: return "equal consecutive differences";
  }
  return "";
}

template <std::floating_point Scalar>
struct CocReport {
  std::optional<Scalar> rho;
  /// x^(j-3) .. x^(j), empty when fewer than four iterates exist.
  std::vector<Vector<Scalar>> points_used;
  /// ||x^(j-2)-x^(j-3)||, ||x^(j-1)-x^(j-2)||, ||x^(j)-x^(j-1)||
  std::vector<Scalar> diffs;
  CocNaReason reason = CocNaReason::None;
  SolveStatus status = SolveStatus::Converged;

  bool available() const { return rho.has_value(); }
};

/// rho = log(d2/d1) / log(d1/d0) for successive difference norms d0, d1, d2.
template <std::floating_point Scalar>
Scalar coc_from_differences(Scalar d0, Scalar d1, Scalar d2) {
  return std::log(d2 / d1) / std::log(d1 / d0);
}

/**
 * Computational order of convergence from the last four outer iterates.
 *
 * NA (rho empty) when the run failed, when fewer than four outer iterates
 * exist (it_inv <= 2), when two consecutive iterates coincide, or when two
 * consecutive differences are equal so the denominator vanishes.
 */
template <std::floating_point Scalar>
CocReport<Scalar> estimate_coc(SolveTrace<Scalar> const &trace) {
  CocReport<Scalar> report;
  report.status = trace.status;
  if (trace.status != SolveStatus::Converged) {
    report.reason = CocNaReason::NotConverged;
    return report;
  }
  auto const &xs = trace.outer_iterates;
  if (xs.size() < 4) {
    report.reason = CocNaReason::TooFewIterates;
    return report;
  }
  report.points_used.assign(xs.end() - 4, xs.end());
  for (std::size_t k = 1; k < 4; ++k) {
    report.diffs.push_back(
        norm2(report.points_used[k] - report.points_used[k - 1]));
  }
  auto const &d = report.diffs;
  if (d[0] == 0 || d[1] == 0 || d[2] == 0) {
    report.reason = CocNaReason::ZeroDifference;
    return report;
  }
  if (d[1] == d[0]) {
    report.reason = CocNaReason::DegenerateRatio;
    return report;
  }
  report.rho = coc_from_differences(d[0], d[1], d[2]);
  return report;
}

/// One (problem, m) entry of a benchmark grid.
struct SuiteCell {
  std::string problem;
  int m = 1;
  int it_inv = 0;
  int it_tot = 0;
  std::optional<double> rho;
  SolveStatus status = SolveStatus::Converged;
  double final_residual = 0.0;
};

struct SuiteReport {
  std::vector<std::string> problems;
  std::vector<int> ms;
  /// Problem-major: cells[i * ms.size() + k] is (problems[i], ms[k]).
  std::vector<SuiteCell> cells;

  SuiteCell const &at(std::size_t problem_index, std::size_t m_index) const {
    return cells.at(problem_index * ms.size() + m_index);
  }
  bool all_converged() const {
    for (auto const &c : cells) {
      if (c.status != SolveStatus::Converged) return false;
    }
    return true;
  }
};

template <std::floating_point Scalar>
SuiteCell make_cell(Problem<Scalar> const &p, int m,
                    SolveTrace<Scalar> const &trace) {
  SuiteCell cell;
  cell.problem = p.name;
  cell.m = m;
  cell.it_inv = trace.it_inv;
  cell.it_tot = trace.it_tot;
  cell.status = trace.status;
  cell.final_residual = static_cast<double>(trace.final_residual());
  if (auto coc = estimate_coc(trace); coc.rho) {
    cell.rho = static_cast<double>(*coc.rho);
  }
  return cell;
}

/**
 * Solves every (problem, m) pair with `cfg` (its m is overridden) and
 * attaches the order estimate. Failures stay in their cell. With
 * `parallel` each cell runs as its own task; ordering is unaffected.
 * Throws UnknownProblem or std::invalid_argument before any solve runs.
 */
template <std::floating_point Scalar = double>
SuiteReport run_suite(std::vector<std::string> const &names,
                      std::vector<int> const &ms,
                      SolverConfig<Scalar> const &cfg, bool parallel = false) {
  std::vector<Problem<Scalar>> problems;
  problems.reserve(names.size());
  for (auto const &name : names) {
    problems.push_back(registry_get<Scalar>(name));
  }
  for (int m : ms) {
    SolverConfig<Scalar> c = cfg;
    c.m = m;
    c.validate();
  }

  SuiteReport report;
  report.problems = names;
  report.ms = ms;

  auto run_cell = [&cfg](Problem<Scalar> const &p, int m) {
    SolverConfig<Scalar> c = cfg;
    c.m = m;
    return make_cell(p, m, solve(p, c));
  };

  if (!parallel) {
    for (auto const &p : problems) {
      for (int m : ms) {
        report.cells.push_back(run_cell(p, m));
      }
    }
    return report;
  }

  std::vector<std::future<SuiteCell>> pending;
  for (auto const &p : problems) {
    for (int m : ms) {
      pending.push_back(std::async(std::launch::async, run_cell, std::cref(p), m));
    }
  }
  for (auto &f : pending) {
    report.cells.push_back(f.get());
  }
  return report;
}

}  // namespace shamanskii

#endif  // SHAMANSKII_ANALYSIS_HPP_
