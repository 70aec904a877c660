#pragma once

#include "robin_fsi/physics.hpp"

#include <functional>
#include <optional>
#include <tuple>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace robin_fsi {

enum class Scheme { Alg1, Monolithic, RobinNeumann, RobinRobin, Loose };

std::string_view scheme_name(Scheme s);
/// Parses "alg1", "monolithic", "rn", "rr", "loose".
Scheme parse_scheme(std::string_view name);

/// Sub-iteration diagnostics of one time step.
struct IterationTrace {
  std::vector<double> inc_u;
  std::vector<double> inc_xi;
  std::vector<double> inc_eta;
  /// (alpha/2)||du||^2_Gamma + (1/(2 alpha))||d(sigma_F n_F)||^2_Gamma per iteration.
  std::vector<double> interface_quantity;
  int count = 0;
  bool converged = false;
};

class SubiterationFailure : public NoConvergence {
 public:
  SubiterationFailure(const std::string& what, IterationTrace trace)
      : NoConvergence(what), trace(std::move(trace)) {}
  IterationTrace trace;
};

/// Iterates at the theta level of one BE step.
struct ThetaGuess {
  FluidState fluid;
  SolidState solid;
  /// sigma_F n_F trace; when empty it is recovered from the guess itself.
  Vector traction;
};

/// (1 + theta) y^n - theta y^{n-1} for u, xi, eta and (1 + tau) p^{n-1+theta} - tau p^{n-2+theta}.
ThetaGuess extrapolate_guess(const FluidState& f_n, const FluidState& f_nm1, const SolidState& s_n,
                             const SolidState& s_nm1, const Vector& p_nm1_theta, const Vector& p_nm2_theta,
                             double theta, double tau);

/// Sub-problem solvers for one (theta, tau, alpha) combination, factorized once.
class PartitionedSolvers {
 public:
  PartitionedSolvers(const Discretization& d, double theta, double tau, double alpha_fluid, double alpha_solid);

  const Discretization& disc() const { return *d_; }
  const SolidSubproblem& solid() const { return solid_; }
  const FluidSubproblem& fluid() const { return fluid_; }
  double theta() const { return theta_; }
  double tau() const { return tau_; }
  double alpha_fluid() const { return alpha_f_; }
  double alpha_solid() const { return alpha_s_; }

 private:
  const Discretization* d_;
  double theta_, tau_, alpha_f_, alpha_s_;
  SolidSubproblem solid_;
  FluidSubproblem fluid_;
};

struct SubiterationOptions {
  double eps = 1e-4;
  int max_subiters = 400;
  /// Return the last iterate instead of throwing when the cap is hit.
  bool accept_unconverged = false;
  TractionMode traction = TractionMode::Variational;
};

struct SubiterationResult {
  FluidState fluid;
  SolidState solid;
  Vector traction;
  IterationTrace trace;
};

/// BE partitioned loop from the given guess to t^n + theta tau.
SubiterationResult be_subiterate(const PartitionedSolvers& S, const FluidState& f_n, const SolidState& s_n,
                                 const ThetaGuess& guess, const SubiterationOptions& opt);

struct RunOptions {
  Scheme scheme = Scheme::Alg1;
  SchemeParams params;
  int steps = 1;
  TractionMode traction = TractionMode::Variational;
  /// Stop (and return what was computed) on sub-iteration failure instead of throwing.
  bool stop_on_failure = false;
  bool compute_energy = false;
};

struct TimeSeriesResult {
  std::vector<FluidState> fluid;        // levels 0..N
  std::vector<SolidState> solid;
  std::vector<FluidState> fluid_theta;  // level n + theta for n = 0..N-1
  std::vector<SolidState> solid_theta;
  std::vector<Vector> traction_theta;   // interface sigma_F n_F at each theta level
  std::vector<double> theta_of_step;    // theta used at each step (bootstrap uses 1/2)
  std::vector<IterationTrace> traces;   // one per step; empty traces for monolithic steps
  std::optional<EnergyBudget> energy;
  bool completed = true;
  std::string failure;
  int failed_step = -1;

  /// Mean sub-iteration count over partitioned steps.
  double average_subiters() const;
};

/// Shared factorizations keyed by scheme parameters; reusable across runs on one discretization.
class SolverCache {
 public:
  explicit SolverCache(const Discretization& d) : d_(&d) {}
  const PartitionedSolvers& partitioned(double theta, double tau, double alpha_f, double alpha_s);
  const MonolithicProblem& monolithic(double theta, double tau);

 private:
  const Discretization* d_;
  std::map<std::tuple<double, double, double, double>, std::unique_ptr<PartitionedSolvers>> part_;
  std::map<std::pair<double, double>, std::unique_ptr<MonolithicProblem>> mono_;
};

/// Time marching: two monolithic bootstrap steps at theta = 1/2, then the selected scheme.
TimeSeriesResult run_transient(const Discretization& d, const RunOptions& opt, SolverCache* cache = nullptr);

/// Effective (theta, alpha_fluid, alpha_solid, subiteration options) of a comparison scheme.
struct SchemeSettings {
  double theta;
  double alpha_fluid;
  double alpha_solid;
  bool extrapolate;  // FE step after the BE solve
  SubiterationOptions sub;
};
SchemeSettings scheme_settings(Scheme s, const SchemeParams& p, TractionMode mode);

/// One step of a comparison scheme from levels n and n-1.
struct StepResult {
  FluidState fluid_theta;
  SolidState solid_theta;
  FluidState fluid;
  SolidState solid;
  Vector traction_theta;
  IterationTrace trace;
};
/// The two previous theta levels supply the pressure and traction guesses.
StepResult comparison_step(const PartitionedSolvers& S, const FluidState& f_n, const FluidState& f_nm1,
                           const SolidState& s_n, const SolidState& s_nm1, const FluidState& theta_nm1,
                           const FluidState& theta_nm2, const Vector& lam_nm1, const Vector& lam_nm2,
                           const SubiterationOptions& opt, bool extrapolate);

}  // namespace robin_fsi
