#include "robin_fsi/physics.hpp"

#include "robin_fsi/quadrature.hpp"

#include <algorithm>

namespace robin_fsi {

void SchemeParams::validate() const {
  if (!(theta >= 0.5 && theta <= 1.0)) throw InvalidArgument("theta must lie in [1/2, 1]");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (alpha_solid && !(*alpha_solid >= 0.0)) throw InvalidArgument("solid alpha must be nonnegative");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (max_subiters < 1) throw InvalidArgument("max_subiters must be at least 1");
}

FluidStepRhs fluid_step_rhs(const Discretization& d, double theta, double tau, const FluidState& prev, double t) {
  FluidStepRhs r;
  r.velocity = d.fluid_load(t);
  d.fluid_mass.multiply_add(prev.u, d.phys().rho_f / (theta * tau), r.velocity);
  r.pressure = -d.pressure_load(t);
  r.fixed_values = d.fluid_fixed_values(t);
  r.t = t;
  return r;
}

Vector solid_step_rhs(const Discretization& d, double theta, double tau, const SolidState& prev, double t) {
  const auto& P = d.phys();
  Vector b = d.solid_load(t);
  d.solid_mass.multiply_add(prev.xi, P.rho_s / (theta * tau), b);
  d.solid_elastic.multiply_add(prev.eta, -1.0, b);
  if (P.gamma != 0.0) d.solid_mass.multiply_add(prev.eta, -P.gamma, b);
  return b;
}

namespace {

/// (rho/(theta tau) + gamma theta tau) M + theta tau K
CsrMatrix solid_operator(const Discretization& d, double theta, double tau) {
  const auto& P = d.phys();
  const double tt = theta * tau;
  return linear_combination(P.rho_s / tt + P.gamma * tt, d.solid_mass, tt, d.solid_elastic);
}

}  // namespace

SolidSubproblem::SolidSubproblem(const Discretization& d, double theta, double tau, double alpha)
    : d_(&d), theta_(theta), tau_(tau), alpha_(alpha) {
  const CsrMatrix base = solid_operator(d, theta, tau);
  op_ = alpha != 0.0 ? linear_combination(1.0, base, alpha, d.solid_gamma) : base;
  op_fixed_ = constrain(op_, d.solid_fixed);
  solver_ = std::make_shared<LinearSolver>(op_fixed_);
}

Vector SolidSubproblem::rhs(const Vector& base_rhs, const Vector& iface) const {
  Vector b = base_rhs;
  d_->solid_gamma.multiply_add(d_->scatter_solid(iface), 1.0, b);
  return b;
}

SolidState SolidSubproblem::solve(const SolidState& prev, const Vector& base_rhs, const Vector& iface,
                                  double t) const {
  Vector b = rhs(base_rhs, iface);
  for (int dof : d_->solid_fixed) b[dof] = 0.0;
  SolidState s;
  s.xi = solver_->solve(b);
  s.eta = prev.eta + theta_ * tau_ * s.xi;
  s.t = t;
  return s;
}

namespace {

CsrMatrix saddle(const CsrMatrix& A, const CsrMatrix& B) {
  const int nu = A.rows(), np = B.rows();
  std::vector<Triplet> entries;
  entries.reserve(A.nonzeros() + 2 * B.nonzeros());
  append_triplets(A, 1.0, 0, 0, entries);
  append_triplets(B, -1.0, nu, 0, entries);
  append_triplets(B.transpose(), -1.0, 0, nu, entries);
  return csr_from_triplets(nu + np, nu + np, std::move(entries));
}

}  // namespace

FluidSubproblem::FluidSubproblem(const Discretization& d, double theta, double tau, double alpha)
    : d_(&d), alpha_(alpha) {
  bulk_ = linear_combination(d.phys().rho_f / (theta * tau), d.fluid_mass, 1.0, d.fluid_viscous);
  op_ = saddle(linear_combination(1.0, bulk_, alpha, d.fluid_gamma), d.divergence);
  op_fixed_ = constrain(op_, d.fluid_fixed);
  solver_ = std::make_shared<LinearSolver>(op_fixed_);
}

Vector FluidSubproblem::rhs(const FluidStepRhs& base, const Vector& iface) const {
  const int nu = d_->fluid_velocity->num_dofs();
  Vector b(op_.rows());
  Vector bu = base.velocity;
  d_->fluid_gamma.multiply_add(d_->scatter_fluid(iface), 1.0, bu);
  b.head(nu) = bu;
  b.tail(op_.rows() - nu) = base.pressure;
  return b;
}

FluidState FluidSubproblem::solve(const FluidStepRhs& base, const Vector& iface) const {
  const int nu = d_->fluid_velocity->num_dofs();
  Vector g = Vector::Zero(op_.rows());
  g.head(nu) = base.fixed_values;
  const Vector x = solver_->solve(lift(op_, d_->fluid_fixed, g, rhs(base, iface)));
  FluidState s;
  s.u = x.head(nu);
  s.p = x.tail(op_.rows() - nu);
  s.t = base.t;
  return s;
}

Vector FluidSubproblem::bulk_residual(const FluidStepRhs& base, const Vector& u, const Vector& p) const {
  Vector r = bulk_ * u;
  d_->divergence.transpose().multiply_add(p, -1.0, r);
  r -= base.velocity;
  return r;
}

MonolithicProblem::MonolithicProblem(const Discretization& d, double theta, double tau)
    : d_(&d), theta_(theta), tau_(tau) {
  const int nu = d.fluid_velocity->num_dofs();
  const int ns = d.solid_velocity->num_dofs();
  const int np = d.fluid_pressure->num_dofs();
  nu_ = nu;
  solid_map_.assign(ns, -1);
  for (size_t k = 0; k < d.solid_iface.size(); ++k) solid_map_[d.solid_iface[k]] = d.fluid_iface[k];
  int next = nu;
  for (int i = 0; i < ns; ++i)
    if (solid_map_[i] < 0) solid_map_[i] = next++;
  p_offset_ = next;
  n_ = next + np;

  fluid_bulk_ = linear_combination(d.phys().rho_f / (theta * tau), d.fluid_mass, 1.0, d.fluid_viscous);
  const CsrMatrix solid = solid_operator(d, theta, tau);
  std::vector<Triplet> entries;
  append_triplets(fluid_bulk_, 1.0, 0, 0, entries);
  append_triplets(d.divergence, -1.0, p_offset_, 0, entries);
  append_triplets(d.divergence.transpose(), -1.0, 0, p_offset_, entries);
  for (int r = 0; r < solid.rows(); ++r)
    for (int k = solid.row_ptr()[r]; k < solid.row_ptr()[r + 1]; ++k)
      entries.push_back({solid_map_[r], solid_map_[solid.col_idx()[k]], solid.values()[k]});
  op_ = csr_from_triplets(n_, n_, std::move(entries));

  fixed_ = d.fluid_fixed;
  for (int dof : d.solid_fixed) fixed_.push_back(solid_map_[dof]);
  std::sort(fixed_.begin(), fixed_.end());
  fixed_.erase(std::unique(fixed_.begin(), fixed_.end()), fixed_.end());
  solver_ = std::make_shared<LinearSolver>(constrain(op_, fixed_));
}

std::pair<FluidState, SolidState> MonolithicProblem::solve(const FluidState& prev_f, const SolidState& prev_s,
                                                           double t, Vector* traction) const {
  const Discretization& d = *d_;
  const FluidStepRhs fr = fluid_step_rhs(d, theta_, tau_, prev_f, t);
  const Vector sr = solid_step_rhs(d, theta_, tau_, prev_s, t);
  Vector b = Vector::Zero(n_);
  b.head(nu_) = fr.velocity;
  for (int i = 0; i < static_cast<int>(sr.size()); ++i) b[solid_map_[i]] += sr[i];
  b.tail(n_ - p_offset_) = fr.pressure;

  // Fluid data wins on shared constrained dofs; clamped solid dofs are homogeneous.
  Vector g = Vector::Zero(n_);
  for (int dof : d.solid_fixed) g[solid_map_[dof]] = 0.0;
  for (int dof : d.fluid_fixed) g[dof] = fr.fixed_values[dof];

  const Vector x = solver_->solve(lift(op_, fixed_, g, b));
  FluidState f;
  f.u = x.head(nu_);
  f.p = x.tail(n_ - p_offset_);
  f.t = t;
  SolidState s;
  s.xi.resize(prev_s.xi.size());
  for (int i = 0; i < static_cast<int>(s.xi.size()); ++i) s.xi[i] = x[solid_map_[i]];
  s.eta = prev_s.eta + theta_ * tau_ * s.xi;
  s.t = t;
  if (traction) {
    Vector r = fluid_bulk_ * f.u;
    d.divergence.transpose().multiply_add(f.p, -1.0, r);
    r -= fr.velocity;
    *traction = recover_traction(d, r);
  }
  return {std::move(f), std::move(s)};
}

Vector recover_traction(const Discretization& d, const Vector& residual) {
  return d.solve_trace_mass(d.fluid_trace(residual));
}

Vector direct_traction(const Discretization& d, const FluidState& s) {
  const Space& V = *d.fluid_velocity;
  const Space& Q = *d.fluid_pressure;
  const Mesh& mesh = V.mesh();
  const double mu = d.phys().mu_f;
  Vector r = Vector::Zero(V.num_dofs());
  const auto rule = line_rule(kBoundaryOrder);
  for (int e : mesh.edges_with_tag(Tag::Interface)) {
    const int t = V.boundary_edge_triangle(e);
    const auto& be = mesh.boundary_edges[e];
    const Point p0 = mesh.vertices[be.v[0]], p1 = mesh.vertices[be.v[1]];
    const Vec2 n = mesh.outward_normal(e);
    const double len = mesh.edge_length(e);
    const auto& vn = V.element_nodes(t);
    const auto& qn = Q.element_nodes(t);
    for (const auto& q : rule) {
      const auto bary = barycentric(mesh, t, p0 + q.s * (p1 - p0));
      const auto ev = eval_basis(V, t, bary);
      const auto ep = eval_basis(Q, t, bary);
      Mat2 g;
      double p = 0.0;
      for (int a = 0; a < ev.count; ++a)
        for (int c = 0; c < 2; ++c) {
          const double u = s.u[V.dof(c, vn[a])];
          g.m[c][0] += u * ev.grad[a].x;
          g.m[c][1] += u * ev.grad[a].y;
        }
      for (int a = 0; a < ep.count; ++a) p += s.p[qn[a]] * ep.value[a];
      Mat2 sigma;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sigma.m[i][j] = mu * (g.m[i][j] + g.m[j][i]) - (i == j ? p : 0.0);
      const Vec2 tr = sigma * n;
      const double w = q.weight * len;
      for (int a = 0; a < ev.count; ++a) {
        r[V.dof(0, vn[a])] += w * tr.x * ev.value[a];
        r[V.dof(1, vn[a])] += w * tr.y * ev.value[a];
      }
    }
  }
  return recover_traction(d, r);
}

Vector fe_extrapolate(const Vector& y_theta, const Vector& y_n, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("fe_extrapolate: theta must lie in (0, 1]");
  if (theta == 1.0) return y_theta;
  return y_theta / theta - ((1.0 - theta) / theta) * y_n;
}

FluidState fe_extrapolate(const FluidState& theta_level, const FluidState& prev, double theta, double tau) {
  FluidState s;
  s.u = fe_extrapolate(theta_level.u, prev.u, theta);
  // No pressure lives on full levels; carry the theta-level value for output only.
  s.p = theta_level.p;
  s.t = prev.t + tau;
  return s;
}

SolidState fe_extrapolate(const SolidState& theta_level, const SolidState& prev, double theta, double tau) {
  SolidState s;
  s.eta = fe_extrapolate(theta_level.eta, prev.eta, theta);
  s.xi = fe_extrapolate(theta_level.xi, prev.xi, theta);
  s.t = prev.t + tau;
  return s;
}

namespace {

double quad(const CsrMatrix& A, const Vector& x) { return x.dot(A * x); }

}  // namespace

double total_energy(const Discretization& d, const FluidState& f, const SolidState& s) {
  const auto& P = d.phys();
  double e = 0.5 * P.rho_s * quad(d.solid_mass, s.xi) + 0.5 * quad(d.solid_elastic, s.eta) +
             0.5 * P.rho_f * quad(d.fluid_mass, f.u);
  if (P.gamma != 0.0) e += 0.5 * P.gamma * quad(d.solid_mass, s.eta);
  return e;
}

EnergyBudget energy_budget(const Discretization& d, const std::vector<FluidState>& fluid,
                           const std::vector<SolidState>& solid, const std::vector<FluidState>& fluid_theta,
                           double theta, double tau) {
  if (fluid.size() < 3 || solid.size() != fluid.size())
    throw InsufficientHistory("energy_budget: at least three time levels are required");
  if (fluid_theta.size() + 1 < fluid.size())
    throw InsufficientHistory("energy_budget: missing theta levels");
  const auto& P = d.phys();
  EnergyBudget b;
  double D = 0.0, N = 0.0;
  // Energy identity of the theta step: (y^{k+1} - y^k) . (theta y^{k+1} + (1 - theta) y^k)
  // = (|y^{k+1}|^2 - |y^k|^2)/2 + (theta - 1/2)|y^{k+1} - y^k|^2, so no 1/tau here.
  const double ncoef = (2.0 * theta - 1.0) / 2.0;
  for (size_t n = 2; n < fluid.size(); ++n) {
    if (n > 2) {
      const size_t k = n - 1;
      D += P.mu_f * tau * quad(d.fluid_strain, fluid_theta[k].u);
      if (ncoef != 0.0) {
        const Vector dxi = solid[k + 1].xi - solid[k].xi;
        const Vector deta = solid[k + 1].eta - solid[k].eta;
        const Vector du = fluid[k + 1].u - fluid[k].u;
        double s = P.rho_s * quad(d.solid_mass, dxi) + quad(d.solid_elastic, deta) + P.rho_f * quad(d.fluid_mass, du);
        if (P.gamma != 0.0) s += P.gamma * quad(d.solid_mass, deta);
        N += ncoef * s;
      }
    }
    b.level.push_back(static_cast<int>(n));
    b.E.push_back(total_energy(d, fluid[n], solid[n]));
    b.D.push_back(D);
    b.N.push_back(N);
  }
  b.forcing_known = d.setup().unforced;
  b.slack = b.E.back() + b.D.back() + b.N.back() - b.E.front();
  return b;
}

}  // namespace robin_fsi
