#include "robin_fsi/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace robin_fsi {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

namespace {

std::string num(double v) { return format_number(v); }

}  // namespace

void write_rate_table(std::ostream& os, const RateTable& table) {
  os << "level,tau,h,eps,err_eta,err_xi,err_u,rate_eta,rate_xi,rate_u,avg_subiters\n";
  for (const auto& r : table.rows)
    os << r.level << ',' << num(r.tau) << ',' << num(r.h) << ',' << num(r.eps) << ',' << num(r.err_eta) << ','
       << num(r.err_xi) << ',' << num(r.err_u) << ',' << num(r.rate_eta) << ',' << num(r.rate_xi) << ','
       << num(r.rate_u) << ',' << num(r.avg_subiters) << '\n';
}

void write_qoi(std::ostream& os, const std::vector<QoISeries>& series) {
  os << "# pressure_centerline is sampled at the theta level nearest to t (earlier level on ties)\n";
  os << "t,x,flowrate,pressure_centerline,disp_mag,scheme\n";
  for (const auto& s : series)
    for (size_t k = 0; k < s.times.size(); ++k)
      for (size_t i = 0; i < s.x.size(); ++i)
        os << num(s.times[k]) << ',' << num(s.x[i]) << ',' << num(s.flowrate[k][i]) << ',' << num(s.pressure[k][i])
           << ',' << num(s.disp[k][i]) << ',' << s.scheme << '\n';
}

void write_discrepancy(std::ostream& os, const std::vector<DiscrepancyRow>& rows) {
  os << "scheme,reference,t,flowrate,pressure_centerline,disp_mag\n";
  for (const auto& r : rows)
    os << r.scheme << ',' << r.reference << ',' << num(r.t) << ',' << num(r.flowrate) << ',' << num(r.pressure) << ','
       << num(r.disp) << '\n';
}

void write_iterations(std::ostream& os, const std::vector<IterationRow>& rows) {
  os << "scheme,tau,h,eps,alpha,avg_subiters,max_subiters,steps,converged,note\n";
  for (const auto& r : rows)
    os << r.scheme << ',' << num(r.tau) << ',' << num(r.h) << ',' << num(r.eps) << ',' << num(r.alpha) << ','
       << num(r.avg_subiters) << ',' << r.max_subiters << ',' << r.steps << ',' << (r.converged ? 1 : 0) << ','
       << r.note << '\n';
}

void write_stability(std::ostream& os, const std::vector<StabilityRow>& rows) {
  os << "theta,tau,steps,E2,EN,DN,NN,slack,rel_slack,max_energy_ratio,holds\n";
  for (const auto& r : rows)
    os << num(r.theta) << ',' << num(r.tau) << ',' << r.steps << ',' << num(r.E2) << ',' << num(r.EN) << ','
       << num(r.DN) << ',' << num(r.NN) << ',' << num(r.slack) << ',' << num(r.rel_slack) << ','
       << num(r.max_energy_ratio) << ',' << (r.holds ? 1 : 0) << '\n';
}

void write_energy(std::ostream& os, const std::vector<EnergyRow>& rows) {
  os << "theta,tau,level,E,D,N\n";
  for (const auto& r : rows)
    os << num(r.theta) << ',' << num(r.tau) << ',' << r.level << ',' << num(r.E) << ',' << num(r.D) << ','
       << num(r.N) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace robin_fsi
