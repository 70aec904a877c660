#pragma once

#include "robin_fsi/assembly.hpp"
#include "robin_fsi/common.hpp"
#include "robin_fsi/mesh.hpp"
#include "robin_fsi/space.hpp"
#include "robin_fsi/sparse.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace robin_fsi {

/// Material constants (CGS).
struct Physics {
  double rho_f = 1.0;
  double mu_f = 1.0;
  double rho_s = 1.0;
  double mu_s = 1.0;
  double lambda_s = 1.0;
  double gamma = 0.0;  // spring coefficient of the solid
};

/// Essential condition on the dofs of `tag`. An empty `value` means zero.
struct EssentialBc {
  Tag tag;
  bool x = true;
  bool y = true;
  VectorFn value;
};

struct TractionBc {
  Tag tag;
  TractionFn traction;
};

/// Geometry, loads, boundary and initial data of a linear FSI problem.
struct FsiSetup {
  std::shared_ptr<const Mesh> fluid_mesh;
  std::shared_ptr<const Mesh> solid_mesh;
  Physics phys;

  VectorFn fluid_force;
  ScalarFn mass_source;  // g in div u = g
  std::vector<EssentialBc> fluid_essential;
  std::vector<TractionBc> fluid_traction;

  VectorFn solid_force;
  std::vector<Tag> solid_clamped;  // eta = 0
  std::vector<TractionBc> solid_traction;

  VectorFn u0;
  VectorFn eta0;
  VectorFn xi0;

  /// True when every load and boundary datum vanishes identically.
  bool unforced = false;
};

struct FluidState {
  Vector u;
  Vector p;
  double t = 0.0;
};

struct SolidState {
  Vector eta;
  Vector xi;
  double t = 0.0;
};

/// Interface data on the dofs of one space.
struct TraceField {
  std::vector<int> dofs;
  Vector values;
};

/// Spaces, time-independent matrices and interface bookkeeping shared by all schemes.
class Discretization {
 public:
  explicit Discretization(FsiSetup setup);

  const FsiSetup& setup() const { return setup_; }
  const Physics& phys() const { return setup_.phys; }

  std::shared_ptr<const Space> fluid_velocity;
  std::shared_ptr<const Space> fluid_pressure;
  std::shared_ptr<const Space> solid_velocity;

  CsrMatrix fluid_mass;      // (u, v)
  CsrMatrix fluid_viscous;   // 2 mu_F (D u, D v)
  CsrMatrix fluid_strain;    // (D u, D v)
  CsrMatrix divergence;      // (q, div u)
  CsrMatrix fluid_gamma;     // (u, v)_Gamma
  CsrMatrix solid_mass;      // (xi, phi)
  CsrMatrix solid_elastic;   // a_S(eta, phi)
  CsrMatrix solid_gamma;     // (xi, phi)_Gamma

  /// Interface dofs, paired index-by-index: fluid_iface[k] and solid_iface[k] coincide.
  std::vector<int> fluid_iface;
  std::vector<int> solid_iface;

  /// Constrained velocity dofs of the fluid (sorted) and their data.
  std::vector<int> fluid_fixed;
  /// Clamped solid dofs (sorted).
  std::vector<int> solid_fixed;

  Vector fluid_fixed_values(double t) const;

  /// (f_F, v) plus boundary tractions at time t.
  Vector fluid_load(double t) const;
  /// (g, q) at time t.
  Vector pressure_load(double t) const;
  /// (f_S, phi) plus boundary tractions at time t.
  Vector solid_load(double t) const;

  /// Interface values of a fluid-sized vector.
  Vector fluid_trace(const Vector& full) const;
  /// Interface values of a solid-sized vector, in the pairing order.
  Vector solid_trace(const Vector& full) const;
  /// Scatter pairing-ordered interface values into a zero vector of fluid or solid size.
  Vector scatter_fluid(const Vector& trace) const;
  Vector scatter_solid(const Vector& trace) const;

  /// Interface mass matrix on the pairing-ordered trace (fluid side).
  const CsrMatrix& trace_mass() const { return trace_mass_; }
  /// trace^T M_Gamma trace.
  double trace_norm_sq(const Vector& trace) const;
  /// Solves M_Gamma x = r on the trace.
  Vector solve_trace_mass(const Vector& r) const;

  /// Initial states interpolated from the setup.
  FluidState initial_fluid() const;
  SolidState initial_solid() const;

 private:
  FsiSetup setup_;
  std::vector<std::pair<int, int>> fixed_data_;  // (dof, component) for fluid_fixed
  std::vector<VectorFn> fixed_fn_;
  CsrMatrix trace_mass_;
  std::shared_ptr<LinearSolver> trace_solver_;
};

/// Matrix with constrained rows and columns replaced by identity rows.
CsrMatrix constrain(const CsrMatrix& A, const std::vector<int>& fixed);
/// Right-hand side b - A g on free rows, g on constrained rows.
Vector lift(const CsrMatrix& A, const std::vector<int>& fixed, const Vector& values, const Vector& b);

}  // namespace robin_fsi
