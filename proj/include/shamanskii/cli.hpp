#ifndef SHAMANSKII_CLI_HPP_
#define SHAMANSKII_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "shamanskii/problem.hpp"

namespace shamanskii::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs the command line `args` (program name excluded) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run(std::vector<std::string> const &args, std::ostream &out,
        std::ostream &err);

/// Analytic-vs-finite-difference report for the given problems; exit code
/// kExitNumerical when any evaluated point exceeds the bound.
int check_jacobians(std::vector<Problem<double>> const &problems,
                    JacobianCheckOptions const &options, std::ostream &out);

}  // namespace shamanskii::cli

#endif  // SHAMANSKII_CLI_HPP_
