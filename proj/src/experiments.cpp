#include "robin_fsi/experiments.hpp"

#include "robin_fsi/benchmarks.hpp"
#include "robin_fsi/mms.hpp"
#include "robin_fsi/parallel.hpp"
#include "robin_fsi/report.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>

namespace robin_fsi {

namespace {

class Reporter {
 public:
  Reporter(const RunConfig& c, std::ostream* progress) : dir_(c.output), progress_(progress) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir_ + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& text) {
    std::lock_guard<std::mutex> lock(m_);
    const std::string path = (std::filesystem::path(dir_) / name).string();
    write_file(path, text);
    out_.files.push_back(path);
  }

  void fail(const std::string& msg) {
    std::lock_guard<std::mutex> lock(m_);
    out_.errors.push_back(msg);
    out_.status = kExitNumerical;
  }

  void note(const std::string& msg) {
    std::lock_guard<std::mutex> lock(m_);
    if (progress_) *progress_ << msg << '\n';
  }

  ExperimentOutcome finish() {
    if (!out_.errors.empty()) {
      std::string log;
      for (const auto& e : out_.errors) log += e + '\n';
      write_file((std::filesystem::path(dir_) / "errors.log").string(), log);
      out_.files.push_back((std::filesystem::path(dir_) / "errors.log").string());
    }
    return out_;
  }

 private:
  std::string dir_;
  std::ostream* progress_;
  std::mutex m_;
  ExperimentOutcome out_;
};

int mms_ny(const RunConfig& c, int nx) {
  if (c.fluid_ny > 0) return c.fluid_ny * (nx / c.nx);
  if (nx % 2) throw ConfigError("mesh.nx must be even for the manufactured case (ny = nx / 2)");
  return nx / 2;
}

int step_count(const RunConfig& c, double tau) {
  return c.steps > 0 ? c.steps : static_cast<int>(std::llround(c.final_time / tau));
}

void run_mms(const RunConfig& c, Reporter& rep) {
  ManufacturedCase mc;
  mc.phys = c.phys;
  if (c.fluid_ny > 0 && c.fluid_ny * 2 != c.nx)
    throw ConfigError("mesh.fluid_ny must equal nx / 2 for the manufactured case");
  mms_ny(c, c.nx);
  std::vector<LadderLevel> ladder;
  for (int i = 0; i < c.levels; ++i) {
    const double f = std::ldexp(1.0, -i);
    ladder.push_back({c.params.tau * f, c.nx << i, c.halve_eps ? c.params.eps * f : c.params.eps});
  }
  for (Scheme s : c.schemes) {
    StudyOptions so;
    so.scheme = s;
    so.params = c.params;
    so.use_alpha_opt = c.alpha_opt;
    so.final_time = c.final_time;
    so.squared_eta = c.squared_eta;
    so.traction = c.traction;
    so.threads = worker_count(c.threads);
    so.clamp_solid_sides = c.clamp_solid_sides;
    const std::string name(scheme_name(s));
    rep.note("mms-convergence: " + name);
    try {
      const RateTable t = convergence_study(mc, ladder, so);
      std::ostringstream os;
      write_rate_table(os, t);
      rep.write("rates_" + name + ".csv", os.str());
    } catch (const std::runtime_error& e) {
      rep.fail("mms-convergence " + name + ": " + e.what());
      std::ostringstream os;
      write_rate_table(os, RateTable{});
      rep.write("rates_" + name + ".csv", os.str());
    }
  }
}

void run_channel_experiment(const RunConfig& c, Reporter& rep) {
  ChannelConfig cc;
  cc.phys = c.phys;
  cc.nx = c.nx;
  if (c.fluid_ny > 0) cc.fluid_ny = c.fluid_ny;
  if (c.solid_ny > 0) cc.solid_ny = c.solid_ny;
  cc.tau = c.params.tau;
  cc.final_time = c.steps > 0 ? c.steps * c.params.tau : c.final_time;
  cc.solid_thickness = c.params.solid_height;
  cc.fluid_height = c.params.radius;
  try {
    cc.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const int n = static_cast<int>(std::llround(cc.final_time / cc.tau));
  std::vector<double> times;
  for (int k = 1; k <= 3; ++k) times.push_back(std::llround(k * n / 3.0) * cc.tau);

  const Discretization d(channel_setup(cc));
  std::vector<std::optional<QoISeries>> series(c.schemes.size());
  std::vector<IterationRow> iters(c.schemes.size());
  parallel_for(static_cast<int>(c.schemes.size()), worker_count(c.threads), [&](int i) {
    const Scheme s = c.schemes[i];
    const std::string name(scheme_name(s));
    rep.note("benchmark-channel: " + name);
    SchemeParams p = c.params;
    IterationRow& row = iters[i];
    row = {name, cc.tau, cc.length / cc.nx, p.eps, p.alpha, 0.0, 0, n, true, ""};
    try {
      ChannelRun r = run_channel(cc, d, s, p, c.alpha_opt, times);
      row.alpha = c.alpha_opt ? alpha_opt(cc.phys, cc.solid_thickness, cc.fluid_height, cc.tau) : p.alpha;
      row.avg_subiters = r.result.average_subiters();
      for (const auto& t : r.result.traces) row.max_subiters = std::max(row.max_subiters, t.count);
      series[i] = std::move(r.series);
    } catch (const std::runtime_error& e) {
      row.converged = false;
      row.note = "failed";
      rep.fail("benchmark-channel " + name + ": " + e.what());
    }
  });

  std::vector<QoISeries> done;
  for (auto& s : series)
    if (s) done.push_back(*s);
  std::ostringstream q;
  write_qoi(q, done);
  rep.write("qoi.csv", q.str());

  std::vector<DiscrepancyRow> rows;
  const QoISeries* ref = nullptr;
  for (const auto& s : done)
    if (s.scheme == scheme_name(Scheme::Monolithic)) ref = &s;
  if (ref)
    for (const auto& s : done) {
      if (&s == ref) continue;
      try {
        const SeriesDiscrepancy dsc = compare_series(s, *ref);
        for (size_t k = 0; k < dsc.times.size(); ++k)
          rows.push_back({s.scheme, ref->scheme, dsc.times[k], dsc.flowrate[k], dsc.pressure[k], dsc.disp[k]});
      } catch (const InvalidArgument& e) {
        rep.fail("benchmark-channel compare " + s.scheme + ": " + e.what());
      }
    }
  std::ostringstream dsc;
  write_discrepancy(dsc, rows);
  rep.write("discrepancy.csv", dsc.str());
  std::ostringstream it;
  write_iterations(it, iters);
  rep.write("iterations.csv", it.str());
}

void run_stability(const RunConfig& c, Reporter& rep) {
  ManufacturedCase mc;
  mc.phys = c.phys;
  const Discretization d(unforced_setup(mc, c.nx, mms_ny(c, c.nx), c.clamp_solid_sides));
  const std::vector<double> thetas = c.thetas.empty() ? std::vector<double>{c.params.theta} : c.thetas;
  const int steps = step_count(c, c.params.tau);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<StabilityRow> rows(thetas.size());
  std::vector<std::vector<EnergyRow>> energy(thetas.size());
  parallel_for(static_cast<int>(thetas.size()), worker_count(c.threads), [&](int i) {
    const double th = thetas[i];
    rep.note("stability-check: theta = " + format_number(th));
    StabilityRow& row = rows[i];
    row = {th, c.params.tau, steps, nan, nan, nan, nan, nan, nan, nan, false};
    RunOptions o;
    o.scheme = c.schemes.front();
    o.params = c.params;
    o.params.theta = th;
    o.steps = steps;
    o.traction = c.traction;
    o.compute_energy = true;
    try {
      const TimeSeriesResult r = run_transient(d, o);
      const EnergyBudget& b = *r.energy;
      row.E2 = b.E.front();
      row.EN = b.E.back();
      row.DN = b.D.back();
      row.NN = b.N.back();
      row.slack = b.slack;
      row.rel_slack = row.E2 > 0 ? b.slack / row.E2 : b.slack;
      row.holds = b.slack <= 1e-10 * row.E2;
      for (size_t k = 0; k < b.level.size(); ++k)
        energy[i].push_back({th, c.params.tau, b.level[k], b.E[k], b.D[k], b.N[k]});
      if (c.blowup_tau > 0) {
        o.params.tau = c.blowup_tau;
        o.compute_energy = false;
        const TimeSeriesResult big = run_transient(d, o);
        const double e0 = total_energy(d, big.fluid.front(), big.solid.front());
        double emax = 0.0;
        for (size_t n = 0; n < big.fluid.size(); ++n) emax = std::max(emax, total_energy(d, big.fluid[n], big.solid[n]));
        row.max_energy_ratio = e0 > 0 ? std::sqrt(emax / e0) : 0.0;
        row.holds = row.holds && row.max_energy_ratio <= 2.0;
      }
      if (!row.holds) rep.fail("stability-check theta " + format_number(th) + ": energy bound violated");
    } catch (const std::runtime_error& e) {
      rep.fail("stability-check theta " + format_number(th) + ": " + e.what());
    }
  });
  std::ostringstream s;
  write_stability(s, rows);
  rep.write("stability.csv", s.str());
  std::vector<EnergyRow> all;
  for (const auto& e : energy) all.insert(all.end(), e.begin(), e.end());
  std::ostringstream e;
  write_energy(e, all);
  rep.write("energy.csv", e.str());
}

void run_iteration_count(const RunConfig& c, Reporter& rep) {
  ManufacturedCase mc;
  mc.phys = c.phys;
  const Discretization d(manufactured_setup(mc, c.nx, mms_ny(c, c.nx), c.clamp_solid_sides));
  const double tau = c.params.tau;
  const int steps = step_count(c, tau);
  std::vector<IterationRow> rows(c.schemes.size());
  parallel_for(static_cast<int>(c.schemes.size()), worker_count(c.threads), [&](int i) {
    const Scheme s = c.schemes[i];
    const std::string name(scheme_name(s));
    rep.note("iteration-count: " + name);
    RunOptions o;
    o.scheme = s;
    o.params = c.params;
    if (c.alpha_opt) {
      o.params.alpha = alpha_opt(c.phys, c.params.solid_height, c.params.radius, tau);
      if (o.params.alpha_solid) o.params.alpha_solid = o.params.alpha;
    }
    o.steps = steps;
    o.traction = c.traction;
    o.stop_on_failure = true;  // non-convergence is data here
    IterationRow& row = rows[i];
    row = {name, tau, 1.0 / c.nx, c.params.eps, o.params.alpha, 0.0, 0, steps, true, ""};
    try {
      const TimeSeriesResult r = run_transient(d, o);
      row.avg_subiters = r.average_subiters();
      for (const auto& t : r.traces) row.max_subiters = std::max(row.max_subiters, t.count);
      row.converged = r.completed;
      if (!r.completed) row.note = "does not converge at step " + std::to_string(r.failed_step);
    } catch (const std::runtime_error& e) {
      row.converged = false;
      row.note = "failed";
      rep.fail("iteration-count " + name + ": " + e.what());
    }
  });
  std::ostringstream os;
  write_iterations(os, rows);
  rep.write("iterations.csv", os.str());
}

}  // namespace

ExperimentOutcome run_experiment(const RunConfig& c, std::ostream* progress) {
  if (c.schemes.empty()) throw ConfigError("no scheme selected");
  Reporter rep(c, progress);
  rep.write("effective_config.ini", echo_config(c));
  switch (c.experiment) {
    case Experiment::MmsConvergence: run_mms(c, rep); break;
    case Experiment::BenchmarkChannel: run_channel_experiment(c, rep); break;
    case Experiment::StabilityCheck: run_stability(c, rep); break;
    case Experiment::IterationCount: run_iteration_count(c, rep); break;
  }
  return rep.finish();
}

}  // namespace robin_fsi
