#include "robin_fsi/benchmarks.hpp"

#include "robin_fsi/mms.hpp"
#include "robin_fsi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace robin_fsi {

void ChannelConfig::validate() const {
  const bool ok = length > 0 && fluid_height > 0 && solid_thickness > 0 && nx > 0 && fluid_ny > 0 &&
                  solid_ny > 0 && phys.rho_f > 0 && phys.mu_f > 0 && phys.rho_s > 0 && phys.mu_s > 0 &&
                  phys.lambda_s > 0 && phys.gamma >= 0 && p_max > 0 && t_max > 0 && final_time > 0 && tau > 0;
  if (!ok) throw InvalidArgument("channel config: lengths, cell counts and constants must be positive");
  if (tau > final_time) throw InvalidArgument("channel config: tau exceeds the final time");
}

double inlet_pressure(const ChannelConfig& c, double t) {
  if (t < 0.0 || t > c.t_max) return 0.0;
  return 0.5 * c.p_max * (1.0 - std::cos(2.0 * std::numbers::pi * t / c.t_max));
}

FsiSetup channel_setup(const ChannelConfig& c) {
  c.validate();
  FsiSetup s;
  s.phys = c.phys;
  s.fluid_mesh = std::make_shared<Mesh>(build_rect_mesh({0.0, 0.0}, {c.length, c.fluid_height}, c.nx, c.fluid_ny,
                                                        {Tag::Symmetry, Tag::FluidOut, Tag::Interface, Tag::FluidIn},
                                                        DomainLabel::Fluid));
  s.solid_mesh = std::make_shared<Mesh>(
      build_rect_mesh({0.0, c.fluid_height}, {c.length, c.solid_thickness}, c.nx, c.solid_ny,
                      {Tag::Interface, Tag::SolidOut, Tag::SolidExt, Tag::SolidIn}, DomainLabel::Solid));
  s.fluid_essential = {{Tag::Symmetry, false, true, {}}};
  s.fluid_traction = {{Tag::FluidIn, [c](Point, Vec2 n, double t) { return -inlet_pressure(c, t) * n; }}};
  s.solid_clamped = {Tag::SolidIn, Tag::SolidOut};
  return s;
}

namespace {

void require_inside(const Mesh& m, double x, const char* what) {
  if (x < m.origin.x - 1e-12 || x > m.origin.x + m.extent.x + 1e-12)
    throw InvalidArgument(std::string(what) + ": station outside the mesh");
}

}  // namespace

double flowrate(const Discretization& d, const Vector& u, double x) {
  const Space& V = *d.fluid_velocity;
  const Mesh& m = V.mesh();
  require_inside(m, x, "flowrate");
  const double hx = m.extent.x / m.nx, hy = m.extent.y / m.ny;
  // Column of the cut; the diagonals of its cells split each cell segment in two.
  const int i = std::clamp(static_cast<int>(std::floor((x - m.origin.x) / hx)), 0, m.nx - 1);
  const double s = (x - m.origin.x) / hx - i;
  const auto rule = line_rule(6);
  double q = 0.0;
  auto segment = [&](double y0, double y1) {
    if (y1 - y0 <= 0.0) return;
    for (const auto& qp : rule) q += qp.weight * (y1 - y0) * evaluate_vector(V, u, {x, y0 + qp.s * (y1 - y0)}).x;
  };
  for (int j = 0; j < m.ny; ++j) {
    const double y0 = m.origin.y + j * hy, y1 = y0 + hy, ym = y0 + s * hy;
    segment(y0, ym);
    segment(ym, y1);
  }
  return q;
}

double centerline_pressure(const Discretization& d, const Vector& p, double x) {
  const Mesh& m = d.fluid_pressure->mesh();
  require_inside(m, x, "centerline_pressure");
  return evaluate_scalar(*d.fluid_pressure, p, {x, m.origin.y});
}

double interface_displacement(const Discretization& d, const Vector& eta, double x) {
  const Mesh& m = d.solid_velocity->mesh();
  require_inside(m, x, "interface_displacement");
  return norm(evaluate_vector(*d.solid_velocity, eta, {x, m.origin.y}));
}

std::vector<double> default_stations(const ChannelConfig& c) {
  std::vector<double> xs;
  for (int k = 1; 0.25 * k < c.length - 1e-12; ++k) xs.push_back(0.25 * k);
  return xs;
}

QoISeries extract_series(const Discretization& d, const TimeSeriesResult& r, double tau,
                         const std::vector<double>& times, const std::vector<double>& stations,
                         const std::string& scheme) {
  QoISeries q;
  q.scheme = scheme;
  q.times = times;
  q.x = stations;
  const int last = static_cast<int>(r.fluid.size()) - 1;
  for (double t : times) {
    const int n = static_cast<int>(std::llround(t / tau));
    if (n < 0 || n > last || std::abs(n * tau - t) > 1e-9 * std::max(1.0, t))
      throw InvalidArgument("extract_series: sample time is not a computed level");
    // Theta level k sits at (k + theta_k) tau; pick the closest, earlier on ties.
    int best = -1;
    double gap = 0.0;
    for (size_t k = 0; k < r.fluid_theta.size(); ++k) {
      const double g = std::abs(r.fluid_theta[k].t - t);
      if (best < 0 || g < gap - 1e-12 * tau) {
        best = static_cast<int>(k);
        gap = g;
      }
    }
    if (best < 0) throw InsufficientHistory("extract_series: no theta levels");
    std::vector<double> fr, pr, ds;
    for (double x : stations) {
      fr.push_back(flowrate(d, r.fluid[n].u, x));
      pr.push_back(centerline_pressure(d, r.fluid_theta[best].p, x));
      ds.push_back(interface_displacement(d, r.solid[n].eta, x));
    }
    q.flowrate.push_back(std::move(fr));
    q.pressure.push_back(std::move(pr));
    q.disp.push_back(std::move(ds));
  }
  return q;
}

namespace {

double rel_l2(const std::vector<double>& a, const std::vector<double>& b, const char* kind) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (den == 0.0) throw InvalidArgument(std::string("compare_series: reference ") + kind + " is identically zero");
  return std::sqrt(num / den);
}

}  // namespace

SeriesDiscrepancy compare_series(const QoISeries& a, const QoISeries& b) {
  if (a.times != b.times || a.x != b.x || a.flowrate.size() != a.times.size() ||
      b.flowrate.size() != b.times.size())
    throw InvalidArgument("compare_series: sample grids differ");
  SeriesDiscrepancy out;
  out.times = a.times;
  for (size_t k = 0; k < a.times.size(); ++k) {
    out.flowrate.push_back(rel_l2(a.flowrate[k], b.flowrate[k], "flowrate"));
    out.pressure.push_back(rel_l2(a.pressure[k], b.pressure[k], "pressure"));
    out.disp.push_back(rel_l2(a.disp[k], b.disp[k], "displacement"));
  }
  return out;
}

ChannelRun run_channel(const ChannelConfig& c, const Discretization& d, Scheme scheme, SchemeParams params,
                       bool use_alpha_opt, const std::vector<double>& times, SolverCache* cache) {
  params.tau = c.tau;
  params.solid_height = c.solid_thickness;
  params.radius = c.fluid_height;
  if (use_alpha_opt) {
    params.alpha = alpha_opt(c.phys, params.solid_height, params.radius, params.tau);
    if (params.alpha_solid) params.alpha_solid = params.alpha;
  }
  RunOptions ro;
  ro.scheme = scheme;
  ro.params = params;
  ro.steps = static_cast<int>(std::llround(c.final_time / c.tau));
  ChannelRun out;
  out.result = run_transient(d, ro, cache);
  out.series = extract_series(d, out.result, c.tau, times, default_stations(c), std::string(scheme_name(scheme)));
  return out;
}

}  // namespace robin_fsi
