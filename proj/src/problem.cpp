#include "robin_fsi/problem.hpp"

#include <algorithm>
#include <map>

namespace robin_fsi {

namespace {

std::vector<char> mask_of(int n, const std::vector<int>& fixed) {
  std::vector<char> m(n, 0);
  for (int d : fixed) m[d] = 1;
  return m;
}

}  // namespace

CsrMatrix constrain(const CsrMatrix& A, const std::vector<int>& fixed) {
  const auto mask = mask_of(A.rows(), fixed);
  std::vector<Triplet> entries;
  entries.reserve(A.nonzeros());
  for (int r = 0; r < A.rows(); ++r) {
    if (mask[r]) {
      entries.push_back({r, r, 1.0});
      continue;
    }
    for (int k = A.row_ptr()[r]; k < A.row_ptr()[r + 1]; ++k) {
      const int c = A.col_idx()[k];
      if (!mask[c]) entries.push_back({r, c, A.values()[k]});
    }
  }
  return csr_from_triplets(A.rows(), A.cols(), std::move(entries));
}

Vector lift(const CsrMatrix& A, const std::vector<int>& fixed, const Vector& values, const Vector& b) {
  Vector out = b;
  if (fixed.empty()) return out;
  Vector g = Vector::Zero(A.cols());
  for (int d : fixed) g[d] = values[d];
  A.multiply_add(g, -1.0, out);
  for (int d : fixed) out[d] = values[d];
  return out;
}

Discretization::Discretization(FsiSetup setup) : setup_(std::move(setup)) {
  if (!setup_.fluid_mesh || !setup_.solid_mesh) throw InvalidArgument("Discretization: missing mesh");
  const auto& P = setup_.phys;
  fluid_velocity = std::make_shared<Space>(setup_.fluid_mesh, 2, 2);
  fluid_pressure = std::make_shared<Space>(setup_.fluid_mesh, 1, 1);
  solid_velocity = std::make_shared<Space>(setup_.solid_mesh, 2, 2);
  const Space& Vf = *fluid_velocity;
  const Space& Qf = *fluid_pressure;
  const Space& Vs = *solid_velocity;

  fluid_mass = assemble_operator(Vf, Vf, KernelSpec::mass());
  fluid_strain = assemble_operator(Vf, Vf, KernelSpec::sym_grad());
  fluid_viscous = linear_combination(2.0 * P.mu_f, fluid_strain, 0.0, fluid_strain);
  divergence = assemble_operator(Vf, Qf, KernelSpec::divergence());
  fluid_gamma = assemble_operator(Vf, Vf, KernelSpec::boundary_mass(Tag::Interface));
  solid_mass = assemble_operator(Vs, Vs, KernelSpec::mass());
  solid_elastic = assemble_operator(Vs, Vs, KernelSpec::elasticity(P.mu_s, P.lambda_s));
  solid_gamma = assemble_operator(Vs, Vs, KernelSpec::boundary_mass(Tag::Interface));

  // Interface node pairing: vertices from the mesh map, midpoints from paired edges.
  const InterfaceMap imap = extract_interface(*setup_.fluid_mesh, *setup_.solid_mesh);
  std::vector<std::pair<int, int>> nodes = imap.vertex_pairs;
  for (const auto& [ef, es] : imap.edge_pairs) {
    const auto nf = Vf.boundary_edge_nodes(ef);
    const auto ns = Vs.boundary_edge_nodes(es);
    nodes.emplace_back(nf[2], ns[2]);
  }
  std::sort(nodes.begin(), nodes.end());
  for (int c = 0; c < 2; ++c)
    for (const auto& [nf, ns] : nodes) {
      fluid_iface.push_back(Vf.dof(c, nf));
      solid_iface.push_back(Vs.dof(c, ns));
    }

  std::map<int, VectorFn> fixed;
  std::map<int, int> fixed_comp;
  for (const auto& bc : setup_.fluid_essential) {
    for (int c = 0; c < 2; ++c) {
      if ((c == 0 && !bc.x) || (c == 1 && !bc.y)) continue;
      for (int d : Vf.tag_dofs(bc.tag, c)) {
        if (fixed.count(d)) continue;
        fixed[d] = bc.value;
        fixed_comp[d] = c;
      }
    }
  }
  for (const auto& [d, fn] : fixed) {
    fluid_fixed.push_back(d);
    fixed_data_.emplace_back(d, fixed_comp[d]);
    fixed_fn_.push_back(fn);
  }

  std::vector<int> clamped;
  for (Tag tag : setup_.solid_clamped)
    for (int c = 0; c < 2; ++c)
      for (int d : Vs.tag_dofs(tag, c)) clamped.push_back(d);
  std::sort(clamped.begin(), clamped.end());
  clamped.erase(std::unique(clamped.begin(), clamped.end()), clamped.end());
  solid_fixed = std::move(clamped);

  std::vector<int> local(Vf.num_dofs(), -1);
  for (int k = 0; k < static_cast<int>(fluid_iface.size()); ++k) local[fluid_iface[k]] = k;
  std::vector<Triplet> entries;
  for (int k = 0; k < static_cast<int>(fluid_iface.size()); ++k) {
    const int r = fluid_iface[k];
    for (int j = fluid_gamma.row_ptr()[r]; j < fluid_gamma.row_ptr()[r + 1]; ++j) {
      const int c = local[fluid_gamma.col_idx()[j]];
      if (c < 0) throw MeshMismatch("Discretization: interface mass couples a non-interface dof");
      entries.push_back({k, c, fluid_gamma.values()[j]});
    }
  }
  const int ni = static_cast<int>(fluid_iface.size());
  trace_mass_ = csr_from_triplets(ni, ni, std::move(entries));
  trace_solver_ = std::make_shared<LinearSolver>(trace_mass_);
}

Vector Discretization::fluid_fixed_values(double t) const {
  Vector g = Vector::Zero(fluid_velocity->num_dofs());
  const auto& X = fluid_velocity->node_coords();
  for (size_t k = 0; k < fixed_data_.size(); ++k) {
    if (!fixed_fn_[k]) continue;
    const auto [d, c] = fixed_data_[k];
    g[d] = fixed_fn_[k](X[fluid_velocity->node_of(d)], t)[c];
  }
  return g;
}

Vector Discretization::fluid_load(double t) const {
  Vector b = assemble_functional(*fluid_velocity, setup_.fluid_force, t);
  for (const auto& bc : setup_.fluid_traction)
    if (bc.traction) b += assemble_boundary_functional(*fluid_velocity, bc.tag, bc.traction, t);
  return b;
}

Vector Discretization::pressure_load(double t) const {
  return assemble_functional(*fluid_pressure, setup_.mass_source, t);
}

Vector Discretization::solid_load(double t) const {
  Vector b = assemble_functional(*solid_velocity, setup_.solid_force, t);
  for (const auto& bc : setup_.solid_traction)
    if (bc.traction) b += assemble_boundary_functional(*solid_velocity, bc.tag, bc.traction, t);
  return b;
}

Vector Discretization::fluid_trace(const Vector& full) const {
  Vector out(fluid_iface.size());
  for (size_t k = 0; k < fluid_iface.size(); ++k) out[k] = full[fluid_iface[k]];
  return out;
}

Vector Discretization::solid_trace(const Vector& full) const {
  Vector out(solid_iface.size());
  for (size_t k = 0; k < solid_iface.size(); ++k) out[k] = full[solid_iface[k]];
  return out;
}

Vector Discretization::scatter_fluid(const Vector& trace) const {
  Vector out = Vector::Zero(fluid_velocity->num_dofs());
  for (size_t k = 0; k < fluid_iface.size(); ++k) out[fluid_iface[k]] = trace[k];
  return out;
}

Vector Discretization::scatter_solid(const Vector& trace) const {
  Vector out = Vector::Zero(solid_velocity->num_dofs());
  for (size_t k = 0; k < solid_iface.size(); ++k) out[solid_iface[k]] = trace[k];
  return out;
}

double Discretization::trace_norm_sq(const Vector& trace) const { return trace.dot(trace_mass_ * trace); }

Vector Discretization::solve_trace_mass(const Vector& r) const { return trace_solver_->solve(r); }

FluidState Discretization::initial_fluid() const {
  FluidState s;
  s.u = setup_.u0 ? interpolate(setup_.u0, *fluid_velocity, 0.0) : Vector::Zero(fluid_velocity->num_dofs());
  s.p = Vector::Zero(fluid_pressure->num_dofs());
  return s;
}

SolidState Discretization::initial_solid() const {
  SolidState s;
  const int n = solid_velocity->num_dofs();
  s.eta = setup_.eta0 ? interpolate(setup_.eta0, *solid_velocity, 0.0) : Vector::Zero(n);
  s.xi = setup_.xi0 ? interpolate(setup_.xi0, *solid_velocity, 0.0) : Vector::Zero(n);
  return s;
}

}  // namespace robin_fsi
