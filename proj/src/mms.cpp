#include "robin_fsi/mms.hpp"

#include "robin_fsi/parallel.hpp"

#include <cmath>
#include <limits>

namespace robin_fsi {

namespace {

struct Poly {
  double c, X, Y, Xp, Yp;
};

Poly poly(double a, Point x, double t) {
  return {a * std::exp(t), x.x * (1.0 - x.x), x.y * (1.0 - x.y), 1.0 - 2.0 * x.x, 1.0 - 2.0 * x.y};
}

Vec2 laplacian_u(const Poly& q) {
  const double l = -2.0 * q.Y - 2.0 * q.X;
  return {2.0 * q.c * l, q.c * l};
}

Vec2 grad_g(const Poly& q) {
  return {q.c * (-4.0 * q.Y + q.Xp * q.Yp), q.c * (2.0 * q.Xp * q.Yp - 2.0 * q.X)};
}

Mat2 stress(const Mat2& g, double mu, double iso) {
  Mat2 s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.m[i][j] = mu * (g.m[i][j] + g.m[j][i]) + (i == j ? iso : 0.0);
  return s;
}

}  // namespace

Vec2 ManufacturedCase::u(Point x, double t) const {
  const Poly q = poly(amplitude, x, t);
  return {2.0 * q.c * q.X * q.Y, q.c * q.X * q.Y};
}

double ManufacturedCase::g(Point x, double t) const {
  const Poly q = poly(amplitude, x, t);
  return q.c * (2.0 * q.Xp * q.Y + q.X * q.Yp);
}

double ManufacturedCase::p(Point x, double t) const { return -phys.lambda_s * g(x, t); }

Mat2 ManufacturedCase::grad_u(Point x, double t) const {
  const Poly q = poly(amplitude, x, t);
  Mat2 m;
  m.m[0] = {2.0 * q.c * q.Xp * q.Y, 2.0 * q.c * q.X * q.Yp};
  m.m[1] = {q.c * q.Xp * q.Y, q.c * q.X * q.Yp};
  return m;
}

Vec2 ManufacturedCase::f_fluid(Point x, double t) const {
  const Poly q = poly(amplitude, x, t);
  const Vec2 lap = laplacian_u(q), gg = grad_g(q);
  return phys.rho_f * u(x, t) - phys.mu_f * (lap + gg) - phys.lambda_s * gg;
}

Vec2 ManufacturedCase::f_solid(Point x, double t) const {
  const Poly q = poly(amplitude, x, t);
  const Vec2 lap = laplacian_u(q), gg = grad_g(q);
  Vec2 f = phys.rho_s * u(x, t) - phys.mu_s * (lap + gg) - phys.lambda_s * gg;
  if (phys.gamma != 0.0) f = f + phys.gamma * eta(x, t);
  return f;
}

Mat2 ManufacturedCase::sigma_fluid(Point x, double t) const {
  return stress(grad_u(x, t), phys.mu_f, -p(x, t));
}

Mat2 ManufacturedCase::sigma_solid(Point x, double t) const {
  return stress(grad_u(x, t), phys.mu_s, phys.lambda_s * g(x, t));
}

ExactFields exact_fields(const ManufacturedCase& mc, Point x, double t) {
  return {mc.u(x, t), mc.p(x, t), mc.eta(x, t), mc.xi(x, t)};
}

ForcingTerms forcing_terms(const ManufacturedCase& mc, Point x, double t) {
  return {mc.f_fluid(x, t), mc.g(x, t), mc.f_solid(x, t)};
}

namespace {

FsiSetup strips(int nx, int ny, bool clamp) {
  if (nx < 1 || ny < 1) throw InvalidArgument("manufactured setup: cell counts must be positive");
  FsiSetup s;
  s.fluid_mesh = std::make_shared<Mesh>(build_rect_mesh(
      {0.0, 0.0}, {1.0, 0.5}, nx, ny, {Tag::FluidWall, Tag::FluidOut, Tag::Interface, Tag::FluidIn},
      DomainLabel::Fluid));
  s.solid_mesh = std::make_shared<Mesh>(build_rect_mesh(
      {0.0, 0.5}, {1.0, 0.5}, nx, ny, {Tag::Interface, Tag::SolidOut, Tag::SolidExt, Tag::SolidIn},
      DomainLabel::Solid));
  if (clamp) s.solid_clamped = {Tag::SolidIn, Tag::SolidOut};
  return s;
}

}  // namespace

FsiSetup manufactured_setup(const ManufacturedCase& mc, int nx, int ny, bool clamp_solid_sides) {
  FsiSetup s = strips(nx, ny, clamp_solid_sides);
  s.phys = mc.phys;
  s.fluid_force = [mc](Point x, double t) { return mc.f_fluid(x, t); };
  s.mass_source = [mc](Point x, double t) { return mc.g(x, t); };
  s.fluid_essential = {{Tag::FluidWall, true, true, [mc](Point x, double t) { return mc.u(x, t); }}};
  const TractionFn fluid_tr = [mc](Point x, Vec2 n, double t) { return mc.sigma_fluid(x, t) * n; };
  s.fluid_traction = {{Tag::FluidIn, fluid_tr}, {Tag::FluidOut, fluid_tr}};
  s.solid_force = [mc](Point x, double t) { return mc.f_solid(x, t); };
  const TractionFn solid_tr = [mc](Point x, Vec2 n, double t) { return mc.sigma_solid(x, t) * n; };
  s.solid_traction = {{Tag::SolidExt, solid_tr}};
  if (!clamp_solid_sides) {
    s.solid_traction.push_back({Tag::SolidIn, solid_tr});
    s.solid_traction.push_back({Tag::SolidOut, solid_tr});
  }
  s.u0 = [mc](Point x, double) { return mc.u(x, 0.0); };
  s.eta0 = [mc](Point x, double) { return mc.eta(x, 0.0); };
  s.xi0 = [mc](Point x, double) { return mc.xi(x, 0.0); };
  return s;
}

FsiSetup unforced_setup(const ManufacturedCase& mc, int nx, int ny, bool clamp_solid_sides) {
  FsiSetup s = strips(nx, ny, clamp_solid_sides);
  s.phys = mc.phys;
  s.fluid_essential = {{Tag::FluidWall, true, true, {}}};
  s.u0 = [mc](Point x, double) { return mc.u(x, 0.0); };
  s.eta0 = [mc](Point x, double) { return mc.eta(x, 0.0); };
  s.xi0 = [mc](Point x, double) { return mc.xi(x, 0.0); };
  s.unforced = true;
  return s;
}

ErrorNorms error_norms(const Discretization& d, const FluidState& f, const SolidState& s,
                       const ManufacturedCase& mc, double t, bool squared_eta) {
  const auto& P = d.phys();
  const Mesh& ms = *d.setup().solid_mesh;
  const Mesh& mf = *d.setup().fluid_mesh;
  const GradFn grad = [&mc](Point x, double tt) { return mc.grad_u(x, tt); };
  const VectorFn xi = [&mc](Point x, double tt) { return mc.xi(x, tt); };
  const VectorFn u = [&mc](Point x, double tt) { return mc.u(x, tt); };
  const double ref_eta = s_norm(ms, grad, t, P.mu_s, P.lambda_s);
  const double ref_xi = l2_norm(ms, xi, t);
  const double ref_u = l2_norm(mf, u, t);
  if (ref_eta == 0.0 || ref_xi == 0.0 || ref_u == 0.0)
    throw InvalidArgument("error_norms: reference norm vanishes");
  ErrorNorms e;
  e.eta = s_error(*d.solid_velocity, s.eta, grad, t, P.mu_s, P.lambda_s) / ref_eta;
  if (squared_eta) e.eta *= e.eta;
  e.xi = l2_error(*d.solid_velocity, s.xi, xi, t) / ref_xi;
  e.u = l2_error(*d.fluid_velocity, f.u, u, t) / ref_u;
  return e;
}

std::vector<LadderLevel> standard_ladder(int levels, double eps, bool halve_eps) {
  if (levels < 1) throw InvalidArgument("standard_ladder: at least one level");
  std::vector<LadderLevel> out;
  for (int i = 0; i < levels; ++i) {
    const double f = std::ldexp(1.0, -i);
    out.push_back({0.02 * f, 4 << i, halve_eps ? eps * f : eps});
  }
  return out;
}

RateTable convergence_study(const ManufacturedCase& mc, const std::vector<LadderLevel>& ladder,
                            const StudyOptions& opt) {
  if (ladder.empty()) throw InvalidArgument("convergence_study: empty ladder");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i].tau < ladder[i - 1].tau) || ladder[i].nx <= ladder[i - 1].nx)
      throw InvalidArgument("convergence_study: ladder must be strictly refining");

  RateTable table;
  table.rows.resize(ladder.size());
  parallel_for(static_cast<int>(ladder.size()), opt.threads, [&](int i) {
    const LadderLevel& L = ladder[i];
    Discretization d(manufactured_setup(mc, L.nx, L.nx / 2, opt.clamp_solid_sides));
    RunOptions ro;
    ro.scheme = opt.scheme;
    ro.params = opt.params;
    ro.params.tau = L.tau;
    ro.params.eps = L.eps;
    if (opt.use_alpha_opt) {
      ro.params.alpha = alpha_opt(mc.phys, ro.params.solid_height, ro.params.radius, L.tau);
      if (ro.params.alpha_solid) ro.params.alpha_solid = ro.params.alpha;
    }
    ro.steps = static_cast<int>(std::llround(opt.final_time / L.tau));
    ro.traction = opt.traction;
    const TimeSeriesResult r = run_transient(d, ro);
    const double T = ro.steps * L.tau;
    const ErrorNorms e = error_norms(d, r.fluid.back(), r.solid.back(), mc, T, opt.squared_eta);
    RateRow& row = table.rows[i];
    row.level = i;
    row.tau = L.tau;
    row.h = L.h();
    row.eps = L.eps;
    row.err_eta = e.eta;
    row.err_xi = e.xi;
    row.err_u = e.u;
    row.avg_subiters = r.average_subiters();
    if (opt.observer) opt.observer(i, d, r);
  });
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < table.rows.size(); ++i) {
    RateRow& row = table.rows[i];
    if (i == 0) {
      row.rate_eta = row.rate_xi = row.rate_u = nan;
      continue;
    }
    const RateRow& prev = table.rows[i - 1];
    const double refine = std::log2(prev.h / row.h);
    row.rate_eta = std::log2(prev.err_eta / row.err_eta) / refine;
    row.rate_xi = std::log2(prev.err_xi / row.err_xi) / refine;
    row.rate_u = std::log2(prev.err_u / row.err_u) / refine;
  }
  return table;
}

double youngs_modulus(double mu, double lambda) { return mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu); }

double poisson_ratio(double mu, double lambda) { return lambda / (2.0 * (lambda + mu)); }

double alpha_opt(const Physics& phys, double solid_height, double radius, double tau) {
  if (!(tau > 0.0) || !(solid_height > 0.0) || !(radius > 0.0))
    throw InvalidArgument("alpha_opt: tau, height and radius must be positive");
  const double E = youngs_modulus(phys.mu_s, phys.lambda_s);
  const double nu = poisson_ratio(phys.mu_s, phys.lambda_s);
  const double beta = E / ((1.0 - nu * nu) * radius * radius);
  return phys.rho_s * solid_height / tau + beta * solid_height * tau;
}

}  // namespace robin_fsi
