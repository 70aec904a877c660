#pragma once

#include "robin_fsi/problem.hpp"

#include <memory>
#include <utility>

namespace robin_fsi {

/// Numerical parameters of a time-marching run.
struct SchemeParams {
  double theta = 0.5;
  double alpha = 100.0;  // Robin parameter of the fluid sub-problem
  /// Robin parameter of the solid sub-problem; defaults to `alpha`. Zero gives Neumann data.
  std::optional<double> alpha_solid;
  double eps = 1e-4;
  double tau = 0.02;
  int max_subiters = 400;
  /// Geometry entering the optimal Robin parameter.
  double solid_height = 0.5;
  double radius = 0.5;

  double solid_alpha() const { return alpha_solid.value_or(alpha); }
  /// Throws InvalidArgument unless theta in [1/2, 1] and alpha, eps, tau > 0.
  void validate() const;
};

/// Traction evaluation on the interface.
enum class TractionMode { Variational, Direct };

/// Right-hand side pieces of a fluid step that do not change during sub-iterations.
struct FluidStepRhs {
  Vector velocity;  // rho_F/(theta tau) M u^n + loads
  Vector pressure;  // -(g, q)
  Vector fixed_values;
  double t = 0.0;
};

FluidStepRhs fluid_step_rhs(const Discretization& d, double theta, double tau, const FluidState& prev, double t);
/// rho_S/(theta tau) M xi^n - K eta^n - gamma M eta^n + loads
Vector solid_step_rhs(const Discretization& d, double theta, double tau, const SolidState& prev, double t);

/// Backward-Euler solid step in the velocity unknown with a Robin interface term.
class SolidSubproblem {
 public:
  SolidSubproblem(const Discretization& d, double theta, double tau, double alpha);

  /// `iface` is the pairing-ordered trace of alpha u - sigma_F n_F.
  SolidState solve(const SolidState& prev, const Vector& base_rhs, const Vector& iface, double t) const;

  /// Operator without constraints.
  const CsrMatrix& matrix() const { return op_; }
  const CsrMatrix& constrained_matrix() const { return op_fixed_; }
  /// Assembled rhs (before constraints) for the given interface trace.
  Vector rhs(const Vector& base_rhs, const Vector& iface) const;

 private:
  const Discretization* d_;
  double theta_, tau_, alpha_;
  CsrMatrix op_;
  CsrMatrix op_fixed_;
  std::shared_ptr<LinearSolver> solver_;
};

/// Backward-Euler Stokes step with a Robin interface term.
class FluidSubproblem {
 public:
  FluidSubproblem(const Discretization& d, double theta, double tau, double alpha);

  /// `iface` is the pairing-ordered trace of alpha xi + sigma_F n_F.
  FluidState solve(const FluidStepRhs& rhs, const Vector& iface) const;

  /// Velocity residual A u - B^T p - b of the bulk equations (no Robin term).
  Vector bulk_residual(const FluidStepRhs& rhs, const Vector& u, const Vector& p) const;

  const CsrMatrix& matrix() const { return op_; }
  Vector rhs(const FluidStepRhs& base, const Vector& iface) const;

 private:
  const Discretization* d_;
  double alpha_;
  CsrMatrix bulk_;  // rho_F/(theta tau) M + 2 mu_F K
  CsrMatrix op_;    // saddle matrix including the Robin term
  CsrMatrix op_fixed_;
  std::shared_ptr<LinearSolver> solver_;
};

/// Coupled Backward-Euler step with interface velocity dofs shared between the subdomains.
class MonolithicProblem {
 public:
  MonolithicProblem(const Discretization& d, double theta, double tau);

  /// Optionally returns the consistent-flux interface traction of the fluid solution.
  std::pair<FluidState, SolidState> solve(const FluidState& prev_f, const SolidState& prev_s, double t,
                                          Vector* traction = nullptr) const;

  int size() const { return n_; }

 private:
  const Discretization* d_;
  double theta_, tau_;
  int nu_ = 0, n_ = 0, p_offset_ = 0;
  std::vector<int> solid_map_;
  std::vector<int> fixed_;
  CsrMatrix fluid_bulk_;
  CsrMatrix op_;
  std::shared_ptr<LinearSolver> solver_;
};

/// Consistent-flux traction sigma_F n_F on the interface from a velocity residual functional.
Vector recover_traction(const Discretization& d, const Vector& residual);
/// L2 projection onto the trace space of sigma_F(u, p) n_F evaluated from the adjacent triangles.
Vector direct_traction(const Discretization& d, const FluidState& s);

/// Linear extrapolation y^{n+1} = y^{n+theta}/theta - (1 - theta)/theta y^n.
Vector fe_extrapolate(const Vector& y_theta, const Vector& y_n, double theta);
FluidState fe_extrapolate(const FluidState& theta_level, const FluidState& prev, double theta, double tau);
SolidState fe_extrapolate(const SolidState& theta_level, const SolidState& prev, double theta, double tau);

/// Energy terms along a run, starting from level 2.
struct EnergyBudget {
  std::vector<int> level;
  std::vector<double> E;
  std::vector<double> D;
  std::vector<double> N;
  /// E^N + D^N + N^N - E^2 - F^N; F is only known (zero) for unforced runs.
  double slack = 0.0;
  bool forcing_known = false;
};

double total_energy(const Discretization& d, const FluidState& f, const SolidState& s);

EnergyBudget energy_budget(const Discretization& d, const std::vector<FluidState>& fluid,
                           const std::vector<SolidState>& solid, const std::vector<FluidState>& fluid_theta,
                           double theta, double tau);

}  // namespace robin_fsi
