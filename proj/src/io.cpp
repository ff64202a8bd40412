#include "hstw/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hstw/errors.hpp"

namespace hstw {

using nlohmann::json;

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns.at(i);
  }
  throw SolverError(ErrorKind::InvalidParams, "csv: no column '" + name + "'");
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) {
    throw SolverError(ErrorKind::InvalidParams,
                      "cannot write '" + path + "'");
  }
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    out << (j ? "," : "") << table.header[j];
  }
  out << '\n' << std::setprecision(17);
  const std::size_t rows = table.columns.empty() ? 0 : table.columns[0].size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      out << (j ? "," : "") << table.columns[j][i];
    }
    out << '\n';
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SolverError(ErrorKind::InvalidParams, "cannot read '" + path + "'");
  }
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',') && j < t.columns.size()) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        throw SolverError(ErrorKind::InvalidParams,
                          "csv '" + path + "': bad number '" + cell + "'");
      }
      t.columns[j++].push_back(v);
    }
    if (j != t.columns.size()) {
      throw SolverError(ErrorKind::InvalidParams,
                        "csv '" + path + "': ragged row");
    }
  }
  return t;
}

CsvTable profile_table(const WaveProfile& p) {
  return CsvTable{{"x", "n", "c", "p"}, {p.x, p.n, p.c, p.p}};
}

CsvTable snapshot_table(const SimState& s, const Grid1D& g) {
  std::vector<double> H(s.H.begin(), s.H.end());
  return CsvTable{{"x", "n", "c", "p", "H"}, {g.nodes(), s.n, s.c, s.p, H}};
}

CsvTable trace_table(const FrontTrace& trace) {
  CsvTable t{{"t", "x_front"}, {{}, {}}};
  for (const auto& smp : trace.samples) {
    t.columns[0].push_back(smp.t);
    t.columns[1].push_back(smp.x_front);
  }
  return t;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

}  // namespace

json wave_summary_json(const TravelingWave& w) {
  json j;
  j["model"] = to_string(w.model);
  j["solver"] = to_string(w.solver);
  j["sigma"] = finite_or_null(w.sigma);
  j["R"] = finite_or_null(w.R);
  j["x1"] = finite_or_null(w.x1);
  j["c_R_prime"] = finite_or_null(w.c_R_prime);
  j["c0"] = finite_or_null(w.c0);
  j["c0_prime"] = finite_or_null(w.c0_prime);
  j["A"] = finite_or_null(w.A);
  j["alpha"] = finite_or_null(w.alpha);
  j["R_b"] = finite_or_null(w.R_b);
  j["residuals"] = {
      {"root", finite_or_null(w.root_residual)},
      {"fixed_point", finite_or_null(w.fixed_point_residual)},
      {"shooting", finite_or_null(w.shooting_residual)},
  };
  j["other_sigma_roots"] = w.other_sigma_roots;
  return j;
}

json solver_settings_json(const GeneralSolverOptions& o) {
  return json{{"delta", o.delta},
              {"slope_tol", o.slope_tol},
              {"R_tol", o.R_tol},
              {"sigma_lo", o.sigma_lo},
              {"scan_intervals", o.scan_intervals},
              {"fixed_point_rel_tol", o.fixed_point_rel_tol},
              {"n_panels", o.n_panels},
              {"analytic_root_tol", 1e-10}};
}

}  // namespace hstw
