#ifndef SHAMANSKII_LINALG_HPP_
#define SHAMANSKII_LINALG_HPP_

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "shamanskii/errors.hpp"

namespace shamanskii {

using Index = Eigen::Index;

template <std::floating_point Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <std::floating_point Scalar>
using DenseMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VectorXd = Vector<double>;
using MatrixXd = DenseMatrix<double>;

/**
 * Row-pivoted LU factors of a square matrix A: P*A = L*U.
 *
 * `perm[i]` is the row of A that ends up in row i of P*A. `lower` carries
 * the unit diagonal explicitly.
 */
template <std::floating_point Scalar>
struct LuFactors {
  DenseMatrix<Scalar> lower;
  DenseMatrix<Scalar> upper;
  std::vector<Index> perm;

  Index size() const { return upper.rows(); }

  /// P*A for a matrix with the factored matrix's row count.
  template <class Derived>
  DenseMatrix<Scalar> permute_rows(Eigen::MatrixBase<Derived> const &a) const {
    DenseMatrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < size(); ++i) {
      out.row(i) = a.row(perm[static_cast<std::size_t>(i)]);
    }
    return out;
  }
};

template <class Derived>
typename Derived::Scalar norm2(Eigen::MatrixBase<Derived> const &v) {
  return v.norm();
}

/// Maximum absolute row sum; for a vector this is the max-abs entry.
template <class Derived>
typename Derived::Scalar norm_inf(Eigen::MatrixBase<Derived> const &a) {
  if (a.size() == 0) {
    return typename Derived::Scalar(0);
  }
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Pivot threshold below which lu_factor reports a singular matrix.
template <class Derived>
typename Derived::Scalar singularity_threshold(
    Eigen::MatrixBase<Derived> const &a) {
  using Scalar = typename Derived::Scalar;
  return static_cast<Scalar>(a.rows()) *
         std::numeric_limits<Scalar>::epsilon() * norm_inf(a);
}

/**
 * Gaussian elimination with partial pivoting.
 *
 * At step k the row holding the largest |a(i,k)|, i >= k, is swapped into
 * place. A pivot whose magnitude does not exceed n*eps*||A||_inf raises
 * SingularMatrix, so a zero matrix is rejected as well.
 */
template <class Derived>
LuFactors<typename Derived::Scalar> lu_factor(
    Eigen::MatrixBase<Derived> const &a) {
  using Scalar = typename Derived::Scalar;
  const Index n = a.rows();
  if (n == 0 || a.cols() != n) {
    throw DimensionMismatch("lu_factor: matrix is " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) +
                            ", expected non-empty square");
  }
  if (!a.allFinite()) {
    throw NonFiniteInput("lu_factor: matrix contains NaN or Inf");
  }

  const Scalar tau = singularity_threshold(a);
  DenseMatrix<Scalar> work = a;
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});

  for (Index k = 0; k < n; ++k) {
    Index offset = 0;
    const Scalar pivot_abs =
        work.col(k).tail(n - k).cwiseAbs().maxCoeff(&offset);
    const Index p = k + offset;
    if (!(pivot_abs > tau)) {
      throw SingularMatrix(static_cast<std::size_t>(k),
                           static_cast<double>(pivot_abs),
                           static_cast<double>(tau));
    }
    if (p != k) {
      work.row(k).swap(work.row(p));
      std::swap(perm[static_cast<std::size_t>(k)],
                perm[static_cast<std::size_t>(p)]);
    }
    const Index rest = n - k - 1;
    if (rest == 0) {
      break;
    }
    // Multipliers overwrite the eliminated column; rank-1 update of the rest.
    work.col(k).tail(rest) /= work(k, k);
    work.bottomRightCorner(rest, rest).noalias() -=
        work.col(k).tail(rest) * work.row(k).tail(rest);
  }

  LuFactors<Scalar> f;
  f.lower = work.template triangularView<Eigen::StrictlyLower>();
  f.lower.diagonal().setOnes();
  f.upper = work.template triangularView<Eigen::Upper>();
  f.perm = std::move(perm);
  return f;
}

/// Solves A*y = b from the factors of A: y = U \ (L \ (P*b)).
template <std::floating_point Scalar, class Derived>
Vector<Scalar> lu_solve(LuFactors<Scalar> const &f,
                        Eigen::MatrixBase<Derived> const &b) {
  const Index n = f.size();
  if (b.cols() != 1 || b.rows() != n) {
    throw DimensionMismatch("lu_solve: right-hand side has length " +
                            std::to_string(b.rows()) + ", expected " +
                            std::to_string(n));
  }
  Vector<Scalar> y(n);
  for (Index i = 0; i < n; ++i) {
    y(i) = b(f.perm[static_cast<std::size_t>(i)]);
  }
  f.lower.template triangularView<Eigen::UnitLower>().solveInPlace(y);
  f.upper.template triangularView<Eigen::Upper>().solveInPlace(y);
  return y;
}

}  // namespace shamanskii

#endif  // SHAMANSKII_LINALG_HPP_
