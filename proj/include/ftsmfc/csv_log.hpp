#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ftsmfc/simulation.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

// Two-output, two-input logs use the fixed pendulum header; other sizes
// number their channels (y1, y1_meas, ...).
std::string log_csv_header(const SimLog& log);

// 17 significant digits, undefined entries as nan.
void write_log_csv(const SimLog& log, std::ostream& out);
void write_log_csv(const SimLog& log, const std::filesystem::path& path);

// Header t,x_d,theta_d (or t,yd1,...), one row per sample.
void write_trajectory_csv(const std::vector<Vector>& samples, double dt, std::ostream& out);
void write_trajectory_csv(const std::vector<Vector>& samples, double dt, const std::filesystem::path& path);

// Reads columns 1..n of a trajectory file after its header (column 0 is t).
std::vector<Vector> read_trajectory_csv(const std::filesystem::path& path, Index n);

}  // namespace ftsmfc
