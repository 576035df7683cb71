#ifndef SHAMANSKII_PROBLEMS_HPP_
#define SHAMANSKII_PROBLEMS_HPP_

#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include "shamanskii/errors.hpp"
#include "shamanskii/linalg.hpp"
#include "shamanskii/problem.hpp"

// Benchmark systems (a)-(e). Coordinates are zero-based in code; the
// descriptions use the usual one-based x1, x2, ...

namespace shamanskii {
namespace problems {

template <std::floating_point Scalar>
Problem<Scalar> make_a() {
  Problem<Scalar> p;
  p.name = "a";
  p.description = "[x1^2 - 4 x2 + x2^2; 2 x1 - x2^2 - 2], x0 = [1; 0.1]";
  p.dim = 2;
  p.residual = [](Vector<Scalar> const &x) {
    Vector<Scalar> f(2);
    f << x(0) * x(0) - 4 * x(1) + x(1) * x(1),
        2 * x(0) - x(1) * x(1) - 2;
    return f;
  };
  p.jacobian = [](Vector<Scalar> const &x) {
    DenseMatrix<Scalar> j(2, 2);
    j << 2 * x(0), -4 + 2 * x(1),
        2, -2 * x(1);
    return j;
  };
  p.start = Vector<Scalar>(2);
  p.start << Scalar(1), Scalar(0.1);
  return p;
}

template <std::floating_point Scalar>
Problem<Scalar> make_b() {
  Problem<Scalar> p;
  p.name = "b";
  p.description = "[x1^2 + x2^2 - 1; x1^2 - x2^2 + 0.5], x0 = [1; 1]";
  p.dim = 2;
  p.residual = [](Vector<Scalar> const &x) {
    Vector<Scalar> f(2);
    f << x(0) * x(0) + x(1) * x(1) - 1,
        x(0) * x(0) - x(1) * x(1) + Scalar(0.5);
    return f;
  };
  p.jacobian = [](Vector<Scalar> const &x) {
    DenseMatrix<Scalar> j(2, 2);
    j << 2 * x(0), 2 * x(1),
        2 * x(0), -2 * x(1);
    return j;
  };
  p.start = Vector<Scalar>::Ones(2);
  return p;
}

namespace detail {

// x3 is the base of the real power x3^x1 and x2 divides; both must stay
// inside the real domain.
template <std::floating_point Scalar>
void check_domain_c(Vector<Scalar> const &x) {
  if (!(x(2) > 0)) {
    throw DomainViolation("c", 2, "x3 > 0 (base of the real power x3^x1)");
  }
  if (x(1) == 0) {
    throw DomainViolation("c", 1, "x2 != 0 (divisor in 1/x2)");
  }
}

}  // namespace detail

template <std::floating_point Scalar>
Problem<Scalar> make_c() {
  Problem<Scalar> p;
  p.name = "c";
  p.description =
      "[cos(x2) - cos(x1); x3^x1 - 1/x2; exp(x1) - x3^2], x0 = [1; 1; 2]";
  p.dim = 3;
  p.residual = [](Vector<Scalar> const &x) {
    detail::check_domain_c(x);
    Vector<Scalar> f(3);
    f << std::cos(x(1)) - std::cos(x(0)),
        std::pow(x(2), x(0)) - 1 / x(1),
        std::exp(x(0)) - x(2) * x(2);
    return f;
  };
  p.jacobian = [](Vector<Scalar> const &x) {
    detail::check_domain_c(x);
    const Scalar power = std::pow(x(2), x(0));
    DenseMatrix<Scalar> j(3, 3);
    j << std::sin(x(0)), -std::sin(x(1)), 0,
        power * std::log(x(2)), 1 / (x(1) * x(1)), x(0) * std::pow(x(2), x(0) - 1),
        std::exp(x(0)), 0, -2 * x(2);
    return j;
  };
  p.start = Vector<Scalar>(3);
  p.start << Scalar(1), Scalar(1), Scalar(2);
  return p;
}

/// Cyclic products: F_i = x_i x_{i+1} - 1 with x_{n+1} = x_1; n = 31 in the benchmark.
template <std::floating_point Scalar>
Problem<Scalar> make_d(Index n = 31) {
  Problem<Scalar> p;
  p.name = "d";
  p.description = "[x_i x_{i+1} - 1, i = 1..30; x31 x1 - 1], x0 = -2 ones(31,1)";
  p.dim = n;
  p.residual = [n](Vector<Scalar> const &x) {
    Vector<Scalar> f(n);
    for (Index i = 0; i < n; ++i) {
      f(i) = x(i) * x((i + 1) % n) - 1;
    }
    return f;
  };
  p.jacobian = [n](Vector<Scalar> const &x) {
    DenseMatrix<Scalar> j = DenseMatrix<Scalar>::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      const Index next = (i + 1) % n;
      j(i, i) += x(next);
      j(i, next) += x(i);
    }
    return j;
  };
  p.start = Vector<Scalar>::Constant(n, Scalar(-2));
  return p;
}

template <std::floating_point Scalar>
Problem<Scalar> make_e() {
  Problem<Scalar> p;
  p.name = "e";
  p.description = "[x1^2 + x2^2 - 2; exp(x1 - 1) + x2^2 - 2], x0 = [2; 0.5]";
  p.dim = 2;
  p.residual = [](Vector<Scalar> const &x) {
    Vector<Scalar> f(2);
    f << x(0) * x(0) + x(1) * x(1) - 2,
        std::exp(x(0) - 1) + x(1) * x(1) - 2;
    return f;
  };
  p.jacobian = [](Vector<Scalar> const &x) {
    DenseMatrix<Scalar> j(2, 2);
    j << 2 * x(0), 2 * x(1),
        std::exp(x(0) - 1), 2 * x(1);
    return j;
  };
  p.start = Vector<Scalar>(2);
  p.start << Scalar(2), Scalar(0.5);
  return p;
}

}  // namespace problems

inline constexpr std::array<std::string_view, 5> kProblemNames = {"a", "b", "c",
                                                                  "d", "e"};

inline std::vector<std::string> registry_names() {
  return {kProblemNames.begin(), kProblemNames.end()};
}

template <std::floating_point Scalar = double>
Problem<Scalar> registry_get(std::string_view name) {
  if (name == "a") return problems::make_a<Scalar>();
  if (name == "b") return problems::make_b<Scalar>();
  if (name == "c") return problems::make_c<Scalar>();
  if (name == "d") return problems::make_d<Scalar>();
  if (name == "e") return problems::make_e<Scalar>();
  throw UnknownProblem(std::string(name));
}

}  // namespace shamanskii

#endif  // SHAMANSKII_PROBLEMS_HPP_
