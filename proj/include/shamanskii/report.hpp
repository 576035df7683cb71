#ifndef SHAMANSKII_REPORT_HPP_
#define SHAMANSKII_REPORT_HPP_

#include <optional>
#include <string>

#include "shamanskii/analysis.hpp"

namespace shamanskii::report {

/// rho rounded to the four decimals every rendering shows.
std::optional<double> displayed_rho(std::optional<double> rho);

/// "it_inv (it_tot) rho", with NA for a missing rho and the status appended
/// for a failed cell.
std::string format_cell(SuiteCell const &cell);

/// One row per problem, one column per m.
std::string render_table(SuiteReport const &report);

/// Header `problem,m,it_inv,it_tot,rho,status,final_residual`, LF endings.
std::string render_csv(SuiteReport const &report);

/// Array of flat records; a missing rho is null.
std::string render_json(SuiteReport const &report);

}  // namespace shamanskii::report

#endif  // SHAMANSKII_REPORT_HPP_
