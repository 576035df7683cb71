#ifndef SHAMANSKII_PROBLEM_HPP_
#define SHAMANSKII_PROBLEM_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "shamanskii/errors.hpp"
#include "shamanskii/linalg.hpp"

namespace shamanskii {

/**
 * A square nonlinear system F(x) = 0 with its analytic Jacobian
 * J(i,j) = dF_i/dx_j and a default starting point.
 *
 * The callables may throw DomainViolation for inputs outside the real
 * domain of F. They must be pure: identical inputs give identical bits.
 */
template <std::floating_point Scalar>
struct Problem {
  using ResidualFn = std::function<Vector<Scalar>(Vector<Scalar> const &)>;
  using JacobianFn =
      std::function<DenseMatrix<Scalar>(Vector<Scalar> const &)>;

  std::string name;
  std::string description;
  Index dim = 0;
  ResidualFn residual;
  JacobianFn jacobian;
  Vector<Scalar> start;
};

namespace detail {

template <std::floating_point Scalar>
void check_input(Problem<Scalar> const &p, Vector<Scalar> const &x,
                 const char *what) {
  if (x.size() != p.dim) {
    throw DimensionMismatch(std::string(what) + ": problem '" + p.name +
                            "' has dimension " + std::to_string(p.dim) +
                            ", got a vector of length " +
                            std::to_string(x.size()));
  }
}

}  // namespace detail

template <std::floating_point Scalar>
Vector<Scalar> evaluate_f(Problem<Scalar> const &p,
                          std::type_identity_t<Vector<Scalar>> const &x) {
  detail::check_input(p, x, "evaluate_f");
  Vector<Scalar> f = p.residual(x);
  if (f.size() != p.dim) {
    throw DimensionMismatch("evaluate_f: residual of '" + p.name +
                            "' returned length " + std::to_string(f.size()));
  }
  return f;
}

template <std::floating_point Scalar>
DenseMatrix<Scalar> evaluate_jacobian(
    Problem<Scalar> const &p, std::type_identity_t<Vector<Scalar>> const &x) {
  detail::check_input(p, x, "evaluate_jacobian");
  DenseMatrix<Scalar> j = p.jacobian(x);
  if (j.rows() != p.dim || j.cols() != p.dim) {
    throw DimensionMismatch("evaluate_jacobian: Jacobian of '" + p.name +
                            "' has the wrong shape");
  }
  return j;
}

/// Central differences, one column per coordinate: (F(x+h e_j) - F(x-h e_j)) / 2h.
template <std::floating_point Scalar>
DenseMatrix<Scalar> fd_jacobian(Problem<Scalar> const &p,
                                std::type_identity_t<Vector<Scalar>> const &x,
                                std::type_identity_t<Scalar> h) {
  detail::check_input(p, x, "fd_jacobian");
  DenseMatrix<Scalar> j(p.dim, p.dim);
  Vector<Scalar> probe = x;
  for (Index c = 0; c < p.dim; ++c) {
    probe(c) = x(c) + h;
    const Vector<Scalar> forward = evaluate_f(p, probe);
    probe(c) = x(c) - h;
    const Vector<Scalar> backward = evaluate_f(p, probe);
    probe(c) = x(c);
    j.col(c) = (forward - backward) / (Scalar(2) * h);
  }
  return j;
}

/// Outcome of comparing the analytic Jacobian against finite differences at one point.
struct JacobianPointCheck {
  std::vector<double> point;
  /// Set when the point (or a perturbation of it) left the domain.
  std::optional<std::string> skipped;
  double max_abs_error = 0.0;
  /// Entry (row, col) attaining max_abs_error.
  Index row = 0;
  Index col = 0;
  double bound = 0.0;
  bool passed = true;
};

struct JacobianCheck {
  std::string problem;
  std::vector<JacobianPointCheck> points;

  bool passed() const {
    for (auto const &pt : points) {
      if (!pt.passed) {
        return false;
      }
    }
    return true;
  }
};

struct JacobianCheckOptions {
  double h = 1e-6;
  /// Accepted error: rel_tol * (1 + ||J||_inf), entrywise max.
  double rel_tol = 1e-5;
  int perturbed_points = 10;
  double radius = 0.1;
  std::uint64_t seed = 20170101;
};

/**
 * Checks the analytic Jacobian at the start point and at
 * `perturbed_points` points drawn uniformly from start + [-radius, radius]^n.
 * Points where evaluation hits a DomainViolation are recorded as skipped.
 */
template <std::floating_point Scalar>
JacobianCheck check_jacobian(Problem<Scalar> const &p,
                             JacobianCheckOptions const &opt = {}) {
  JacobianCheck out;
  out.problem = p.name;

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> dist(-opt.radius, opt.radius);

  std::vector<Vector<Scalar>> points{p.start};
  for (int k = 0; k < opt.perturbed_points; ++k) {
    Vector<Scalar> x = p.start;
    for (Index i = 0; i < x.size(); ++i) {
      x(i) += static_cast<Scalar>(dist(rng));
    }
    points.push_back(std::move(x));
  }

  for (auto const &x : points) {
    JacobianPointCheck pc;
    pc.point.assign(x.data(), x.data() + x.size());
    try {
      const DenseMatrix<Scalar> analytic = evaluate_jacobian(p, x);
      const DenseMatrix<Scalar> numeric =
          fd_jacobian(p, x, static_cast<Scalar>(opt.h));
      const DenseMatrix<Scalar> err = (analytic - numeric).cwiseAbs();
      pc.max_abs_error = static_cast<double>(err.maxCoeff(&pc.row, &pc.col));
      pc.bound = opt.rel_tol * (1.0 + static_cast<double>(norm_inf(analytic)));
      pc.passed = pc.max_abs_error <= pc.bound;
    } catch (DomainViolation const &e) {
      pc.skipped = e.what();
    }
    out.points.push_back(std::move(pc));
  }
  return out;
}

}  // namespace shamanskii

#endif  // SHAMANSKII_PROBLEM_HPP_
