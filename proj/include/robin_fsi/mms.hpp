#pragma once

#include "robin_fsi/coupling.hpp"
#include "robin_fsi/problem.hpp"

#include <functional>
#include <vector>

namespace robin_fsi {

/// Closed-form solution on the two unit-width strips (0,1)x(0,0.5) and (0,1)x(0.5,1).
///
/// u = eta = xi = a e^t (2 phi, phi) with phi = x(1-x) y(1-y), p = -lambda_S div u.
struct ManufacturedCase {
  Physics phys;
  double amplitude = 1e-3;

  Vec2 u(Point x, double t) const;
  double p(Point x, double t) const;
  Vec2 eta(Point x, double t) const { return u(x, t); }
  Vec2 xi(Point x, double t) const { return u(x, t); }
  /// d u_i / d x_j (identical for eta).
  Mat2 grad_u(Point x, double t) const;

  Vec2 f_fluid(Point x, double t) const;
  double g(Point x, double t) const;
  Vec2 f_solid(Point x, double t) const;

  Mat2 sigma_fluid(Point x, double t) const;
  Mat2 sigma_solid(Point x, double t) const;
};

struct ExactFields {
  Vec2 u;
  double p;
  Vec2 eta;
  Vec2 xi;
};
ExactFields exact_fields(const ManufacturedCase& mc, Point x, double t);

struct ForcingTerms {
  Vec2 f_fluid;
  double g;
  Vec2 f_solid;
};
ForcingTerms forcing_terms(const ManufacturedCase& mc, Point x, double t);

/// Fluid mesh nx x ny on (0,1)x(0,0.5) and a matching solid mesh on (0,1)x(0.5,1).
/// Solid left/right sides carry the exact traction unless clamped.
FsiSetup manufactured_setup(const ManufacturedCase& mc, int nx, int ny, bool clamp_solid_sides = false);
/// Same geometry and boundary types with all loads and boundary data set to zero,
/// started from the manufactured fields at t = 0.
FsiSetup unforced_setup(const ManufacturedCase& mc, int nx, int ny, bool clamp_solid_sides = false);

struct ErrorNorms {
  double eta;
  double xi;
  double u;
};
/// Relative errors at time t. `squared_eta` squares the S-norm ratio.
ErrorNorms error_norms(const Discretization& d, const FluidState& f, const SolidState& s,
                       const ManufacturedCase& mc, double t, bool squared_eta = false);

struct LadderLevel {
  double tau;
  int nx;  // fluid cells in x; ny = nx / 2
  double eps;
  double h() const { return 1.0 / nx; }
};

/// tau = 0.02 / 2^i, h = 0.25 / 2^i; eps fixed or halved with each level.
std::vector<LadderLevel> standard_ladder(int levels, double eps, bool halve_eps = false);

struct RateRow {
  int level = 0;
  double tau = 0, h = 0, eps = 0;
  double err_eta = 0, err_xi = 0, err_u = 0;
  double rate_eta = 0, rate_xi = 0, rate_u = 0;  // NaN on the first row
  double avg_subiters = 0;
};

struct RateTable {
  std::vector<RateRow> rows;
};

struct StudyOptions {
  Scheme scheme = Scheme::Alg1;
  SchemeParams params;
  bool use_alpha_opt = false;
  double final_time = 0.3;
  bool squared_eta = false;
  TractionMode traction = TractionMode::Variational;
  int threads = 1;
  bool clamp_solid_sides = false;
  /// Called once per level with the finished run (from worker threads when threads > 1).
  std::function<void(int level, const Discretization&, const TimeSeriesResult&)> observer;
};

RateTable convergence_study(const ManufacturedCase& mc, const std::vector<LadderLevel>& ladder,
                            const StudyOptions& opt);

/// rho_S H/tau + beta H tau with beta = E / ((1 - nu^2) R^2).
double alpha_opt(const Physics& phys, double solid_height, double radius, double tau);
double youngs_modulus(double mu, double lambda);
double poisson_ratio(double mu, double lambda);

}  // namespace robin_fsi
