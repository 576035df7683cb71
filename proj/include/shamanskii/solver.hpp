#ifndef SHAMANSKII_SOLVER_HPP_
#define SHAMANSKII_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "shamanskii/errors.hpp"
#include "shamanskii/linalg.hpp"
#include "shamanskii/problem.hpp"

namespace shamanskii {

enum class SolveStatus {
  Converged,
  MaxIterations,
  SingularJacobian,
  NonFiniteIterate,
  DomainViolation,
};

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::SingularJacobian: return "SingularJacobian";
    case SolveStatus::NonFiniteIterate: return "NonFiniteIterate";
    case SolveStatus::DomainViolation: return "DomainViolation";
  }
  return "Unknown";
}

template <std::floating_point Scalar>
struct SolverConfig {
  /// Frozen-Jacobian inner steps per factorization; m = 1 is Newton.
  int m = 1;
  /// Stop once ||F(x)||_2 <= tol at an outer iterate.
  Scalar tol = 10 * std::numeric_limits<Scalar>::epsilon();
  int max_outer = 100;
  /// Leave the inner sweep as soon as the residual meets tol.
  bool inner_early_exit = false;
  /// Cap on it_tot; m * max_outer when unset.
  std::optional<int> max_total;
  bool record_inner = false;

  int effective_max_total() const { return max_total.value_or(m * max_outer); }

  void validate() const {
    if (m < 1) throw std::invalid_argument("SolverConfig: m must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (max_outer < 1) {
      throw std::invalid_argument("SolverConfig: max_outer must be >= 1");
    }
    if (max_total && *max_total < 1) {
      throw std::invalid_argument("SolverConfig: max_total must be >= 1");
    }
  }
};

/**
 * History of one run.
 *
 * outer_iterates[k] is x^(k) and residual_norms[k] = ||F(x^(k))||_2, so both
 * hold it_inv + 1 entries. A residual that could not be evaluated is stored
 * as +inf. On a failure inside a sweep the last finite inner iterate closes
 * the trace.
 */
template <std::floating_point Scalar>
struct SolveTrace {
  std::vector<Vector<Scalar>> outer_iterates;
  std::vector<Scalar> residual_norms;
  /// Every accepted inner iterate, only with SolverConfig::record_inner.
  std::vector<Vector<Scalar>> inner_iterates;
  int it_inv = 0;
  int it_tot = 0;
  int jacobian_evaluations = 0;
  int factorizations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::string message;

  Vector<Scalar> const &solution() const { return outer_iterates.back(); }
  Scalar final_residual() const { return residual_norms.back(); }
  bool converged() const { return status == SolveStatus::Converged; }
};

template <std::floating_point Scalar>
struct OuterStep {
  Vector<Scalar> x;
  Scalar residual_norm;
  int inner_count;
};

namespace detail {

template <std::floating_point Scalar>
Scalar recorded_norm(Vector<Scalar> const &rhs) {
  const Scalar r = norm2(rhs);
  return std::isfinite(r) ? r : std::numeric_limits<Scalar>::infinity();
}

template <std::floating_point Scalar>
struct Sweep {
  Vector<Scalar> x;
  Vector<Scalar> rhs;
  int steps = 0;
  bool factored = false;
  std::optional<SolveStatus> failure;
  std::string message;
  std::exception_ptr error;

  void fail(SolveStatus status, std::exception_ptr e, std::string what) {
    failure = status;
    error = std::move(e);
    message = std::move(what);
  }
};

struct SweepLimits {
  int steps;
  bool early_exit;
  bool record_inner;
};

/**
 * One outer iteration: J(x) is evaluated and factored once, then up to
 * `limits.steps` updates x <- x - U \ (L \ F(x)) reuse the factors.
 * `rhs` must equal F(x) on entry. Failures stop the sweep at the last
 * accepted inner iterate and are reported, not thrown.
 */
template <std::floating_point Scalar>
Sweep<Scalar> outer_sweep(Problem<Scalar> const &p, Vector<Scalar> const &x,
                          Vector<Scalar> const &rhs, SweepLimits limits,
                          Scalar tol, SolveTrace<Scalar> *trace) {
  Sweep<Scalar> s;
  s.x = x;
  s.rhs = rhs;

  LuFactors<Scalar> factors;
  try {
    if (trace) ++trace->jacobian_evaluations;
    const DenseMatrix<Scalar> jac = evaluate_jacobian(p, x);
    factors = lu_factor(jac);
  } catch (SingularMatrix const &e) {
    s.fail(SolveStatus::SingularJacobian, std::current_exception(), e.what());
    return s;
  } catch (NonFiniteInput const &e) {
    s.fail(SolveStatus::NonFiniteIterate, std::current_exception(), e.what());
    return s;
  } catch (shamanskii::DomainViolation const &e) {
    s.fail(SolveStatus::DomainViolation, std::current_exception(), e.what());
    return s;
  }
  s.factored = true;
  if (trace) ++trace->factorizations;

  for (int k = 0; k < limits.steps; ++k) {
    Vector<Scalar> next = s.x - lu_solve(factors, s.rhs);
    if (!next.allFinite()) {
      const char *what = "inner step produced a non-finite iterate";
      s.fail(SolveStatus::NonFiniteIterate,
             std::make_exception_ptr(NonFiniteIterate(what)), what);
      return s;
    }
    Vector<Scalar> next_rhs;
    try {
      next_rhs = evaluate_f(p, next);
    } catch (shamanskii::DomainViolation const &e) {
      s.fail(SolveStatus::DomainViolation, std::current_exception(), e.what());
      return s;
    }
    if (!next_rhs.allFinite()) {
      const char *what = "residual is non-finite at an inner iterate";
      s.fail(SolveStatus::NonFiniteIterate,
             std::make_exception_ptr(NonFiniteIterate(what)), what);
      return s;
    }
    s.x = std::move(next);
    s.rhs = std::move(next_rhs);
    ++s.steps;
    if (trace && limits.record_inner) {
      trace->inner_iterates.push_back(s.x);
    }
    if (limits.early_exit && norm2(s.rhs) <= tol) {
      break;
    }
  }
  return s;
}

}  // namespace detail

/**
 * Shamanskii m-method.
 *
 * Each outer iteration factors J at the current outer iterate and performs
 * m chord steps with the frozen factors; convergence is tested on the
 * residual of the outer iterates only (unless inner_early_exit is set).
 * Numerical failures end the run with a terminal status and keep the
 * partial trace. Throws std::invalid_argument for an invalid config and
 * DimensionMismatch when the start point does not fit the problem.
 */
template <std::floating_point Scalar>
SolveTrace<Scalar> solve(Problem<Scalar> const &p,
                         SolverConfig<Scalar> const &cfg) {
  cfg.validate();
  if (p.start.size() != p.dim) {
    throw DimensionMismatch("solve: start point of '" + p.name +
                            "' does not match its dimension");
  }

  SolveTrace<Scalar> trace;
  const int max_total = cfg.effective_max_total();

  Vector<Scalar> x = p.start;
  Vector<Scalar> rhs;
  trace.outer_iterates.push_back(x);
  try {
    rhs = evaluate_f(p, x);
  } catch (shamanskii::DomainViolation const &e) {
    trace.residual_norms.push_back(std::numeric_limits<Scalar>::infinity());
    trace.status = SolveStatus::DomainViolation;
    trace.message = e.what();
    return trace;
  }
  trace.residual_norms.push_back(detail::recorded_norm(rhs));
  if (!x.allFinite() || !rhs.allFinite()) {
    trace.status = SolveStatus::NonFiniteIterate;
    trace.message = "non-finite start point or residual";
    return trace;
  }

  Scalar res = trace.residual_norms.back();
  while (res > cfg.tol) {
    if (trace.it_inv >= cfg.max_outer || trace.it_tot >= max_total) {
      trace.status = SolveStatus::MaxIterations;
      trace.message = "iteration cap reached";
      return trace;
    }
    const detail::SweepLimits limits{std::min(cfg.m, max_total - trace.it_tot),
                                     cfg.inner_early_exit, cfg.record_inner};
    auto sweep = detail::outer_sweep(p, x, rhs, limits, cfg.tol, &trace);
    if (!sweep.factored) {
      trace.status = *sweep.failure;
      trace.message = std::move(sweep.message);
      return trace;
    }
    ++trace.it_inv;
    trace.it_tot += sweep.steps;
    x = std::move(sweep.x);
    rhs = std::move(sweep.rhs);
    res = norm2(rhs);
    trace.outer_iterates.push_back(x);
    trace.residual_norms.push_back(res);
    if (sweep.failure) {
      trace.status = *sweep.failure;
      trace.message = std::move(sweep.message);
      return trace;
    }
  }
  trace.status = SolveStatus::Converged;
  return trace;
}

/// solve() with m forced to 1.
template <std::floating_point Scalar>
SolveTrace<Scalar> newton_solve(Problem<Scalar> const &p,
                                SolverConfig<Scalar> cfg) {
  cfg.m = 1;
  return solve(p, cfg);
}

/**
 * A single outer iteration from x with m frozen-Jacobian steps. Unlike
 * solve(), failures are thrown: SingularMatrix, NonFiniteIterate,
 * DomainViolation, NonFiniteInput or DimensionMismatch.
 */
template <std::floating_point Scalar>
OuterStep<Scalar> outer_step(Problem<Scalar> const &p,
                             std::type_identity_t<Vector<Scalar>> const &x, int m) {
  if (m < 1) throw std::invalid_argument("outer_step: m must be >= 1");
  const Vector<Scalar> rhs = evaluate_f(p, x);
  if (!rhs.allFinite()) {
    throw NonFiniteIterate("outer_step: residual is non-finite at x");
  }
  auto sweep = detail::outer_sweep<Scalar>(
      p, x, rhs, detail::SweepLimits{m, false, false}, Scalar(0), nullptr);
  if (sweep.error) {
    std::rethrow_exception(sweep.error);
  }
  return {sweep.x, norm2(sweep.rhs), sweep.steps};
}

}  // namespace shamanskii

#endif  // SHAMANSKII_SOLVER_HPP_
