#pragma once

#include "robin_fsi/benchmarks.hpp"
#include "robin_fsi/mms.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace robin_fsi {

/// Fixed scientific notation with 10 significant digits; "nan" and "inf" spelled out.
std::string format_number(double v);

void write_rate_table(std::ostream& os, const RateTable& table);

/// Rows ordered by series, time, station.
void write_qoi(std::ostream& os, const std::vector<QoISeries>& series);

struct DiscrepancyRow {
  std::string scheme;
  std::string reference;
  double t;
  double flowrate;
  double pressure;
  double disp;
};
void write_discrepancy(std::ostream& os, const std::vector<DiscrepancyRow>& rows);

struct IterationRow {
  std::string scheme;
  double tau, h, eps, alpha;
  double avg_subiters;
  int max_subiters;
  int steps;
  bool converged;
  std::string note;
};
void write_iterations(std::ostream& os, const std::vector<IterationRow>& rows);

struct StabilityRow {
  double theta, tau;
  int steps;
  double E2, EN, DN, NN;
  double slack;
  double rel_slack;
  double max_energy_ratio;  // sqrt(max_n E^n / E^0) of the large-step run, NaN if not run
  bool holds;
};
void write_stability(std::ostream& os, const std::vector<StabilityRow>& rows);

struct EnergyRow {
  double theta, tau;
  int level;
  double E, D, N;
};
void write_energy(std::ostream& os, const std::vector<EnergyRow>& rows);

/// Writes text to `path` atomically enough for reports (truncate + write); throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace robin_fsi
