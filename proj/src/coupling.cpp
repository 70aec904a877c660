#include "robin_fsi/coupling.hpp"

#include <cstdio>

namespace robin_fsi {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Alg1: return "alg1";
    case Scheme::Monolithic: return "monolithic";
    case Scheme::RobinNeumann: return "rn";
    case Scheme::RobinRobin: return "rr";
    case Scheme::Loose: return "loose";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Alg1, Scheme::Monolithic, Scheme::RobinNeumann, Scheme::RobinRobin, Scheme::Loose})
    if (scheme_name(s) == name) return s;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

ThetaGuess extrapolate_guess(const FluidState& f_n, const FluidState& f_nm1, const SolidState& s_n,
                             const SolidState& s_nm1, const Vector& p_nm1_theta, const Vector& p_nm2_theta,
                             double theta, double tau) {
  if (f_nm1.u.size() != f_n.u.size() || s_nm1.eta.size() != s_n.eta.size() ||
      p_nm1_theta.size() == 0 || p_nm2_theta.size() != p_nm1_theta.size())
    throw InsufficientHistory("extrapolate_guess: missing history levels");
  ThetaGuess g;
  const double t = f_n.t + theta * tau;
  g.fluid.u = (1.0 + theta) * f_n.u - theta * f_nm1.u;
  g.fluid.p = (1.0 + tau) * p_nm1_theta - tau * p_nm2_theta;
  g.fluid.t = t;
  g.solid.eta = (1.0 + theta) * s_n.eta - theta * s_nm1.eta;
  g.solid.xi = (1.0 + theta) * s_n.xi - theta * s_nm1.xi;
  g.solid.t = t;
  return g;
}

PartitionedSolvers::PartitionedSolvers(const Discretization& d, double theta, double tau, double alpha_fluid,
                                       double alpha_solid)
    : d_(&d),
      theta_(theta),
      tau_(tau),
      alpha_f_(alpha_fluid),
      alpha_s_(alpha_solid),
      solid_(d, theta, tau, alpha_solid),
      fluid_(d, theta, tau, alpha_fluid) {}

namespace {

double relative_increment(const CsrMatrix& M, const Vector& now, const Vector& before) {
  const Vector diff = now - before;
  const double num = std::sqrt(std::max(0.0, diff.dot(M * diff)));
  const double den = std::sqrt(std::max(0.0, now.dot(M * now)));
  return den < 1e-14 ? num : num / den;
}

}  // namespace

SubiterationResult be_subiterate(const PartitionedSolvers& S, const FluidState& f_n, const SolidState& s_n,
                                 const ThetaGuess& guess, const SubiterationOptions& opt) {
  const Discretization& d = S.disc();
  const double theta = S.theta(), tau = S.tau();
  const double af = S.alpha_fluid(), as = S.alpha_solid();
  const double t = f_n.t + theta * tau;

  const FluidStepRhs fr = fluid_step_rhs(d, theta, tau, f_n, t);
  const Vector sr = solid_step_rhs(d, theta, tau, s_n, t);

  FluidState fk = guess.fluid;
  SolidState sk = guess.solid;
  fk.t = sk.t = t;
  // Traction of the guess, measured in the equations of this step.
  Vector lam = guess.traction.size() ? guess.traction
               : opt.traction == TractionMode::Variational
                   ? recover_traction(d, S.fluid().bulk_residual(fr, fk.u, fk.p))
                   : direct_traction(d, fk);

  SubiterationResult res;
  IterationTrace& tr = res.trace;
  for (int k = 0; k < opt.max_subiters; ++k) {
    const Vector uk_trace = d.fluid_trace(fk.u);
    SolidState s1 = S.solid().solve(s_n, sr, as * uk_trace - lam, t);
    const Vector xi_trace = d.solid_trace(s1.xi);
    FluidState f1 = S.fluid().solve(fr, af * xi_trace + lam);
    const Vector u1_trace = d.fluid_trace(f1.u);
    Vector lam1 = opt.traction == TractionMode::Variational ? Vector(lam + af * (xi_trace - u1_trace))
                                                            : direct_traction(d, f1);

    const double iu = relative_increment(d.fluid_mass, f1.u, fk.u);
    const double ix = relative_increment(d.solid_mass, s1.xi, sk.xi);
    const double ie = relative_increment(d.solid_mass, s1.eta, sk.eta);
    tr.inc_u.push_back(iu);
    tr.inc_xi.push_back(ix);
    tr.inc_eta.push_back(ie);
    tr.interface_quantity.push_back(0.5 * af * d.trace_norm_sq(u1_trace - uk_trace) +
                                    0.5 / af * d.trace_norm_sq(lam1 - lam));
    tr.count = k + 1;

    fk = std::move(f1);
    sk = std::move(s1);
    lam = std::move(lam1);
    if (iu < opt.eps && ix < opt.eps && ie < opt.eps) {
      tr.converged = true;
      break;
    }
  }
  if (!tr.converged && !opt.accept_unconverged) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "sub-iterations did not converge in %d iterations (last increments %.3e %.3e %.3e)",
                  tr.count, tr.inc_u.back(), tr.inc_xi.back(), tr.inc_eta.back());
    throw SubiterationFailure(buf, tr);
  }
  res.fluid = std::move(fk);
  res.solid = std::move(sk);
  res.traction = std::move(lam);
  return res;
}

double TimeSeriesResult::average_subiters() const {
  double sum = 0.0;
  int n = 0;
  for (const auto& t : traces)
    if (t.count > 0) {
      sum += t.count;
      ++n;
    }
  return n ? sum / n : 0.0;
}

const PartitionedSolvers& SolverCache::partitioned(double theta, double tau, double alpha_f, double alpha_s) {
  auto& slot = part_[{theta, tau, alpha_f, alpha_s}];
  if (!slot) slot = std::make_unique<PartitionedSolvers>(*d_, theta, tau, alpha_f, alpha_s);
  return *slot;
}

const MonolithicProblem& SolverCache::monolithic(double theta, double tau) {
  auto& slot = mono_[{theta, tau}];
  if (!slot) slot = std::make_unique<MonolithicProblem>(*d_, theta, tau);
  return *slot;
}

SchemeSettings scheme_settings(Scheme s, const SchemeParams& p, TractionMode mode) {
  SchemeSettings out{p.theta, p.alpha, p.solid_alpha(), true, {p.eps, p.max_subiters, false, mode}};
  switch (s) {
    case Scheme::Alg1:
    case Scheme::Monolithic:
      break;
    case Scheme::Loose:
      out.sub.max_subiters = 1;
      out.sub.accept_unconverged = true;
      break;
    case Scheme::RobinRobin:
      out.theta = 1.0;
      break;
    case Scheme::RobinNeumann:
      out.theta = 1.0;
      out.alpha_solid = 0.0;
      break;
  }
  return out;
}

StepResult comparison_step(const PartitionedSolvers& S, const FluidState& f_n, const FluidState& f_nm1,
                           const SolidState& s_n, const SolidState& s_nm1, const FluidState& theta_nm1,
                           const FluidState& theta_nm2, const Vector& lam_nm1, const Vector& lam_nm2,
                           const SubiterationOptions& opt, bool extrapolate) {
  const double theta = S.theta(), tau = S.tau();
  ThetaGuess guess = extrapolate_guess(f_n, f_nm1, s_n, s_nm1, theta_nm1.p, theta_nm2.p, theta, tau);
  if (opt.traction == TractionMode::Variational && lam_nm1.size() && lam_nm2.size() == lam_nm1.size())
    guess.traction = 2.0 * lam_nm1 - lam_nm2;
  SubiterationResult r = be_subiterate(S, f_n, s_n, guess, opt);
  StepResult out;
  out.fluid = extrapolate ? fe_extrapolate(r.fluid, f_n, theta, tau) : r.fluid;
  out.solid = extrapolate ? fe_extrapolate(r.solid, s_n, theta, tau) : r.solid;
  out.fluid.t = out.solid.t = f_n.t + tau;
  out.fluid_theta = std::move(r.fluid);
  out.solid_theta = std::move(r.solid);
  out.traction_theta = std::move(r.traction);
  out.trace = std::move(r.trace);
  return out;
}

TimeSeriesResult run_transient(const Discretization& d, const RunOptions& opt, SolverCache* cache) {
  opt.params.validate();
  if (opt.steps < 1) throw InvalidArgument("run_transient: at least one step is required");
  SolverCache local(d);
  SolverCache& C = cache ? *cache : local;
  const double tau = opt.params.tau;

  TimeSeriesResult r;
  r.fluid.push_back(d.initial_fluid());
  r.solid.push_back(d.initial_solid());

  const SchemeSettings set = scheme_settings(opt.scheme, opt.params, opt.traction);
  for (int n = 0; n < opt.steps; ++n) {
    const double tn = n * tau;
    const bool mono = n < 2 || opt.scheme == Scheme::Monolithic;
    if (mono) {
      const double theta = n < 2 ? 0.5 : opt.params.theta;
      Vector lam;
      auto [f, s] = C.monolithic(theta, tau).solve(r.fluid[n], r.solid[n], tn + theta * tau, &lam);
      r.traction_theta.push_back(std::move(lam));
      FluidState f1 = fe_extrapolate(f, r.fluid[n], theta, tau);
      SolidState s1 = fe_extrapolate(s, r.solid[n], theta, tau);
      f1.t = s1.t = (n + 1) * tau;
      r.fluid_theta.push_back(std::move(f));
      r.solid_theta.push_back(std::move(s));
      r.fluid.push_back(std::move(f1));
      r.solid.push_back(std::move(s1));
      r.theta_of_step.push_back(theta);
      r.traces.emplace_back();
      continue;
    }
    const auto& S = C.partitioned(set.theta, tau, set.alpha_fluid, set.alpha_solid);
    try {
      StepResult st = comparison_step(S, r.fluid[n], r.fluid[n - 1], r.solid[n], r.solid[n - 1],
                                      r.fluid_theta[n - 1], r.fluid_theta[n - 2], r.traction_theta[n - 1],
                                      r.traction_theta[n - 2], set.sub, set.extrapolate);
      r.fluid_theta.push_back(std::move(st.fluid_theta));
      r.solid_theta.push_back(std::move(st.solid_theta));
      r.traction_theta.push_back(std::move(st.traction_theta));
      r.fluid.push_back(std::move(st.fluid));
      r.solid.push_back(std::move(st.solid));
      r.theta_of_step.push_back(set.theta);
      r.traces.push_back(std::move(st.trace));
    } catch (const SubiterationFailure& e) {
      const std::string msg = "step " + std::to_string(n) + ": " + e.what();
      if (!opt.stop_on_failure) throw SubiterationFailure(msg, e.trace);
      r.completed = false;
      r.failure = msg;
      r.failed_step = n;
      r.traces.push_back(e.trace);
      break;
    }
  }
  if (opt.compute_energy && r.completed)
    r.energy = energy_budget(d, r.fluid, r.solid, r.fluid_theta, set.theta, tau);
  return r;
}

}  // namespace robin_fsi
