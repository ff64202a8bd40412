#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hstw/general_waves.hpp"
#include "hstw/pde1d.hpp"
#include "hstw/wave.hpp"

namespace hstw {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

// Values are written with 17 significant digits, so reading back is exact.
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

CsvTable profile_table(const WaveProfile& profile);        // x,n,c,p
CsvTable snapshot_table(const SimState& s, const Grid1D& g);  // x,n,c,p,H
CsvTable trace_table(const FrontTrace& trace);              // t,x_front

// Summary of a wave without its profile; NaN fields become null.
nlohmann::json wave_summary_json(const TravelingWave& wave);
nlohmann::json solver_settings_json(const GeneralSolverOptions& opts);

}  // namespace hstw
