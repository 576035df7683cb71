#include "shamanskii/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace shamanskii::report {

namespace {

std::string printf_double(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string rho_text(std::optional<double> rho) {
  auto shown = displayed_rho(rho);
  return shown ? printf_double("%.4f", *shown) : std::string("NA");
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::optional<double> displayed_rho(std::optional<double> rho) {
  if (!rho || !std::isfinite(*rho)) return std::nullopt;
  return std::round(*rho * 1e4) / 1e4;
}

std::string format_cell(SuiteCell const &cell) {
  std::string s = std::to_string(cell.it_inv) + " (" +
                  std::to_string(cell.it_tot) + ") " + rho_text(cell.rho);
  if (cell.status != SolveStatus::Converged) {
    s += " [" + std::string(to_string(cell.status)) + "]";
  }
  return s;
}

std::string render_table(SuiteReport const &report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{""};
  for (int m : report.ms) header.push_back("m=" + std::to_string(m));
  rows.push_back(header);
  for (std::size_t i = 0; i < report.problems.size(); ++i) {
    std::vector<std::string> row{"(" + report.problems[i] + ")"};
    for (std::size_t k = 0; k < report.ms.size(); ++k) {
      row.push_back(format_cell(report.at(i, k)));
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (auto const &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) line += " | ";
      line += pad(rows[r][c], widths[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
    if (r == 0) {
      std::size_t rule = 0;
      for (auto w : widths) rule += w + 3;
      out << std::string(rule > 3 ? rule - 3 : 0, '-') << '\n';
    }
  }
  return out.str();
}

std::string render_csv(SuiteReport const &report) {
  std::ostringstream out;
  out << "problem,m,it_inv,it_tot,rho,status,final_residual\n";
  for (auto const &c : report.cells) {
    out << c.problem << ',' << c.m << ',' << c.it_inv << ',' << c.it_tot << ','
        << rho_text(c.rho) << ',' << to_string(c.status) << ','
        << printf_double("%.6e", c.final_residual) << '\n';
  }
  return out.str();
}

std::string render_json(SuiteReport const &report) {
  auto records = nlohmann::ordered_json::array();
  for (auto const &c : report.cells) {
    nlohmann::ordered_json rec;
    rec["problem"] = c.problem;
    rec["m"] = c.m;
    rec["it_inv"] = c.it_inv;
    rec["it_tot"] = c.it_tot;
    if (auto rho = displayed_rho(c.rho)) {
      rec["rho"] = *rho;
    } else {
      rec["rho"] = nullptr;
    }
    rec["status"] = std::string(to_string(c.status));
    if (std::isfinite(c.final_residual)) {
      rec["final_residual"] = c.final_residual;
    } else {
      rec["final_residual"] = nullptr;
    }
    records.push_back(std::move(rec));
  }
  return records.dump(2) + "\n";
}

}  // namespace shamanskii::report
