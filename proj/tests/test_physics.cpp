#include "doctest.h"

#include "robin_fsi/coupling.hpp"
#include "robin_fsi/mms.hpp"
#include "robin_fsi/physics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace robin_fsi;

namespace {

ManufacturedCase unit_case() { return ManufacturedCase{}; }

Discretization zero_problem(int nx) {
  ManufacturedCase mc;
  mc.amplitude = 0.0;
  return Discretization(unforced_setup(mc, nx, nx / 2));
}

FluidState exact_fluid(const Discretization& d, const ManufacturedCase& mc, double t) {
  return {interpolate([&](Point x, double s) { return mc.u(x, s); }, *d.fluid_velocity, t),
          interpolate([&](Point x, double s) { return mc.p(x, s); }, *d.fluid_pressure, t), t};
}

SolidState exact_solid(const Discretization& d, const ManufacturedCase& mc, double t) {
  return {interpolate([&](Point x, double s) { return mc.eta(x, s); }, *d.solid_velocity, t),
          interpolate([&](Point x, double s) { return mc.xi(x, s); }, *d.solid_velocity, t), t};
}

double free_residual(const Vector& r, const std::vector<int>& fixed) {
  Vector v = r;
  for (int i : fixed) v[i] = 0.0;
  return v.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("scheme parameters are validated") {
  SchemeParams p;
  CHECK_NOTHROW(p.validate());
  p.theta = 0.4;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.theta = 1.01;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SchemeParams{};
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SchemeParams{};
  p.alpha = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("solid step operator is symmetric positive definite") {
  const Discretization d(manufactured_setup(unit_case(), 2, 1));
  for (double theta : {0.5, 0.75, 1.0})
    for (double alpha : {0.0, 25.0, 1e4}) {
      const SolidSubproblem S(d, theta, 0.02, alpha);
      const CsrMatrix& A = S.constrained_matrix();
      CHECK(A.symmetry_defect() < 1e-14);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A.to_dense());
      CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("zero data gives zero states") {
  const Discretization d = zero_problem(4);
  const FluidState f0 = d.initial_fluid();
  const SolidState s0 = d.initial_solid();
  CHECK(f0.u.isZero());
  const SolidSubproblem S(d, 0.5, 0.02, 100.0);
  const SolidState s = S.solve(s0, solid_step_rhs(d, 0.5, 0.02, s0, 0.01), Vector::Zero(d.solid_iface.size()), 0.01);
  CHECK(s.xi.isZero());
  CHECK(s.eta.isZero());
  const FluidSubproblem F(d, 0.5, 0.02, 100.0);
  const FluidState f = F.solve(fluid_step_rhs(d, 0.5, 0.02, f0, 0.01), Vector::Zero(d.fluid_iface.size()));
  CHECK(f.u.isZero());
  CHECK(f.p.isZero());
  const MonolithicProblem M(d, 0.5, 0.02);
  auto [mf, ms] = M.solve(f0, s0, 0.01);
  CHECK(mf.u.isZero());
  CHECK(ms.xi.isZero());
}

TEST_CASE("sub-problem solves satisfy their assembled systems") {
  const ManufacturedCase mc = unit_case();
  const Discretization d(manufactured_setup(mc, 4, 2));
  const double theta = 0.5, tau = 0.02, t = theta * tau, alpha = 100.0;
  const FluidState f0 = exact_fluid(d, mc, 0.0);
  const SolidState s0 = exact_solid(d, mc, 0.0);
  const Vector u_tr = d.fluid_trace(exact_fluid(d, mc, t).u);

  const SolidSubproblem S(d, theta, tau, alpha);
  const Vector base = solid_step_rhs(d, theta, tau, s0, t);
  const Vector iface = alpha * u_tr;
  const SolidState s = S.solve(s0, base, iface, t);
  const Vector rs = S.matrix() * s.xi - S.rhs(base, iface);
  CHECK(free_residual(rs, d.solid_fixed) < 1e-10 * std::max(1.0, S.rhs(base, iface).norm()));
  CHECK((s.eta - s0.eta - theta * tau * s.xi).cwiseAbs().maxCoeff() < 1e-16);

  const FluidSubproblem F(d, theta, tau, alpha);
  const FluidStepRhs fr = fluid_step_rhs(d, theta, tau, f0, t);
  const Vector fi = alpha * d.solid_trace(s.xi);
  const FluidState f = F.solve(fr, fi);
  const int nu = d.fluid_velocity->num_dofs();
  Vector x(F.matrix().rows());
  x << f.u, f.p;
  const Vector rf = F.matrix() * x - F.rhs(fr, fi);
  CHECK(free_residual(rf.head(nu), d.fluid_fixed) < 1e-10 * std::max(1.0, F.rhs(fr, fi).norm()));
  // Discrete mass balance: (q, div u) = (g, q) for every pressure basis function.
  const Vector div = d.divergence * f.u - d.pressure_load(t);
  CHECK(div.cwiseAbs().maxCoeff() < 1e-10 * std::max(1e-3, d.pressure_load(t).cwiseAbs().maxCoeff()));
  // Essential data are imposed exactly.
  for (size_t k = 0; k < d.fluid_fixed.size(); ++k) CHECK(f.u[d.fluid_fixed[k]] == fr.fixed_values[d.fluid_fixed[k]]);
}

TEST_CASE("monolithic step shares the interface velocity") {
  const ManufacturedCase mc = unit_case();
  const Discretization d(manufactured_setup(mc, 4, 2));
  const MonolithicProblem M(d, 0.5, 0.02);
  Vector lam;
  auto [f, s] = M.solve(exact_fluid(d, mc, 0.0), exact_solid(d, mc, 0.0), 0.01, &lam);
  const Vector fu = d.fluid_trace(f.u), sx = d.solid_trace(s.xi);
  CHECK(fu == sx);
  CHECK(lam.size() == fu.size());
  CHECK(lam.allFinite());
}

TEST_CASE("Robin penalty drives the interface velocity to the given data") {
  const ManufacturedCase mc = unit_case();
  const Discretization d(manufactured_setup(mc, 4, 2));
  const double theta = 1.0, tau = 0.02, t = tau;
  const FluidStepRhs fr = fluid_step_rhs(d, theta, tau, exact_fluid(d, mc, 0.0), t);
  const Vector xi = d.solid_trace(exact_solid(d, mc, t).xi);
  double prev = INFINITY;
  for (double alpha : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5}) {
    const FluidSubproblem F(d, theta, tau, alpha);
    const FluidState f = F.solve(fr, alpha * xi);
    const double gap = std::sqrt(d.trace_norm_sq(d.fluid_trace(f.u) - xi));
    CHECK(gap < prev);
    prev = gap;
  }
  // The gap shrinks like 1/alpha.
  CHECK(prev < 1e-4 * std::sqrt(d.trace_norm_sq(xi)));
}

TEST_CASE("traction recovery") {
  SUBCASE("zero solution and zero data") {
    const Discretization d = zero_problem(4);
    const FluidSubproblem F(d, 0.5, 0.02, 10.0);
    const FluidStepRhs fr = fluid_step_rhs(d, 0.5, 0.02, d.initial_fluid(), 0.01);
    const Vector u = Vector::Zero(d.fluid_velocity->num_dofs()), p = Vector::Zero(d.fluid_pressure->num_dofs());
    CHECK(recover_traction(d, F.bulk_residual(fr, u, p)).isZero());
  }
  SUBCASE("uniform pressure gives -n") {
    const Discretization d = zero_problem(4);
    const FluidSubproblem F(d, 0.5, 0.02, 10.0);
    const FluidStepRhs fr = fluid_step_rhs(d, 0.5, 0.02, d.initial_fluid(), 0.01);
    FluidState s{Vector::Zero(d.fluid_velocity->num_dofs()), Vector::Ones(d.fluid_pressure->num_dofs()), 0.01};
    const Vector lam = recover_traction(d, F.bulk_residual(fr, s.u, s.p));
    const Vector dir = direct_traction(d, s);
    const Space& V = *d.fluid_velocity;
    for (size_t k = 0; k < d.fluid_iface.size(); ++k) {
      const int dof = d.fluid_iface[k];
      const double expect = V.component_of(dof) == 1 ? -1.0 : 0.0;
      CHECK(dir[k] == doctest::Approx(expect).epsilon(1e-12));
      // Side walls have n_y = 0, so the y component is exact everywhere.
      if (V.component_of(dof) == 1) CHECK(lam[k] == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }
  SUBCASE("manufactured traction converges at second order") {
    const ManufacturedCase mc = unit_case();
    std::vector<double> err;
    for (int nx : {4, 8, 16}) {
      const Discretization d(manufactured_setup(mc, nx, nx / 2));
      const double tau = 1e-6, t = 0.2;
      const FluidSubproblem F(d, 1.0, tau, 1.0);
      const FluidState ex = exact_fluid(d, mc, t);
      const FluidStepRhs fr = fluid_step_rhs(d, 1.0, tau, exact_fluid(d, mc, t - tau), t);
      const Vector lam = recover_traction(d, F.bulk_residual(fr, ex.u, ex.p));
      const Space& V = *d.fluid_velocity;
      Vector ref(lam.size());
      for (size_t k = 0; k < d.fluid_iface.size(); ++k) {
        const int dof = d.fluid_iface[k];
        const Vec2 tr = mc.sigma_fluid(V.node_coords()[V.node_of(dof)], t) * Vec2{0.0, 1.0};
        ref[k] = tr[V.component_of(dof)];
      }
      err.push_back(std::sqrt(d.trace_norm_sq(lam - ref) / d.trace_norm_sq(ref)));
    }
    CHECK(std::log2(err[0] / err[1]) > 1.5);
    CHECK(std::log2(err[1] / err[2]) > 1.5);
  }
}

TEST_CASE("forward Euler extrapolation") {
  Vector yt(2), yn(2);
  yt << 3, -1;
  yn << 1, 4;
  CHECK(fe_extrapolate(yt, yn, 1.0) == yt);
  CHECK(fe_extrapolate(yt, yn, 0.5)[0] == 5.0);
  CHECK_THROWS_AS(fe_extrapolate(yt, yn, 0.0), InvalidArgument);
  // (y^{n+1} - y^{n+theta}) / ((1 - theta) tau) == (y^{n+theta} - y^n) / (theta tau)
  const double theta = 0.7, tau = 0.03;
  const Vector y1 = fe_extrapolate(yt, yn, theta);
  const Vector lhs = (y1 - yt) / ((1 - theta) * tau), rhs = (yt - yn) / (theta * tau);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("energy budget") {
  SUBCASE("zero history") {
    const Discretization d = zero_problem(4);
    RunOptions o;
    o.scheme = Scheme::Monolithic;
    o.steps = 5;
    o.compute_energy = true;
    const TimeSeriesResult r = run_transient(d, o);
    for (size_t i = 0; i < r.energy->E.size(); ++i) {
      CHECK(r.energy->E[i] == 0.0);
      CHECK(r.energy->D[i] == 0.0);
      CHECK(r.energy->N[i] == 0.0);
    }
  }
  SUBCASE("too short a history") {
    const Discretization d = zero_problem(4);
    CHECK_THROWS_AS(energy_budget(d, {d.initial_fluid()}, {d.initial_solid()}, {}, 0.5, 0.1), InsufficientHistory);
  }
  const ManufacturedCase mc = unit_case();
  const Discretization d(unforced_setup(mc, 4, 2));
  SUBCASE("numerical dissipation vanishes at theta = 1/2") {
    RunOptions o;
    o.scheme = Scheme::Monolithic;
    o.params.theta = 0.5;
    o.steps = 20;
    o.compute_energy = true;
    const TimeSeriesResult r = run_transient(d, o);
    for (double n : r.energy->N) CHECK(n == 0.0);
    CHECK(r.energy->forcing_known);
  }
  SUBCASE("the inequality holds for theta = 0.75 from smooth data") {
    RunOptions o;
    o.scheme = Scheme::Alg1;
    o.params.theta = 0.75;
    o.params.eps = 1e-8;
    o.steps = 100;
    o.compute_energy = true;
    const TimeSeriesResult r = run_transient(d, o);
    const EnergyBudget& b = *r.energy;
    CHECK(b.E.front() > 0.0);
    CHECK(b.slack <= 1e-10 * b.E.front());
    for (size_t i = 1; i < b.E.size(); ++i)
      CHECK(b.E[i] + b.D[i] + b.N[i] <= b.E[i - 1] + b.D[i - 1] + b.N[i - 1] + 1e-10 * b.E.front());
  }
}
