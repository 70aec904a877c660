#pragma once

#include "robin_fsi/coupling.hpp"
#include "robin_fsi/problem.hpp"

#include <string>
#include <vector>

namespace robin_fsi {

/// Pressure-pulse-driven half channel with an elastic, spring-supported wall (CGS units).
struct ChannelConfig {
  double length = 5.0;
  double fluid_height = 0.5;
  double solid_thickness = 0.1;
  int nx = 100;
  int fluid_ny = 5;
  int solid_ny = 2;
  Physics phys{1.0, 0.035, 1.1, 1.67785e6, 8.22148e7, 4e6};
  double p_max = 1.333e4;
  double t_max = 0.03;
  double final_time = 0.012;
  double tau = 1e-4;

  /// Throws InvalidArgument on non-positive entries or tau > final_time.
  void validate() const;
};

/// (p_max/2)(1 - cos(2 pi t / t_max)) while the pulse lasts, zero afterwards.
double inlet_pressure(const ChannelConfig& c, double t);

/// Symmetry on the bottom, pulse on the inlet, free outlet, solid clamped at both ends.
FsiSetup channel_setup(const ChannelConfig& c);

/// Integral of u_x over the vertical cut at x through the fluid mesh.
double flowrate(const Discretization& d, const Vector& u, double x);
/// Pressure on the symmetry axis y = 0.
double centerline_pressure(const Discretization& d, const Vector& p, double x);
/// |eta| on the interface y = y_interface.
double interface_displacement(const Discretization& d, const Vector& eta, double x);

struct QoISeries {
  std::string scheme;
  std::vector<double> times;
  std::vector<double> x;
  // [time][station]
  std::vector<std::vector<double>> flowrate;
  std::vector<std::vector<double>> pressure;
  std::vector<std::vector<double>> disp;
};

/// Stations 0.25, 0.5, ..., length - 0.25.
std::vector<double> default_stations(const ChannelConfig& c);

/// Samples a finished run. Velocity and displacement come from the full level at each
/// time; pressure from the theta level nearest to it (ties go to the earlier level).
QoISeries extract_series(const Discretization& d, const TimeSeriesResult& r, double tau,
                         const std::vector<double>& times, const std::vector<double>& stations,
                         const std::string& scheme);

/// Relative l2 discrepancy ||a - b|| / ||b|| per sample time.
struct SeriesDiscrepancy {
  std::vector<double> times;
  std::vector<double> flowrate;
  std::vector<double> pressure;
  std::vector<double> disp;
};
SeriesDiscrepancy compare_series(const QoISeries& a, const QoISeries& b);

struct ChannelRun {
  QoISeries series;
  TimeSeriesResult result;
};
/// Runs one scheme on the channel; alpha is replaced by alpha_opt when requested.
ChannelRun run_channel(const ChannelConfig& c, const Discretization& d, Scheme scheme, SchemeParams params,
                       bool use_alpha_opt, const std::vector<double>& times, SolverCache* cache = nullptr);

}  // namespace robin_fsi
