#pragma once

#include "robin_fsi/common.hpp"
#include "robin_fsi/sparse.hpp"
#include "robin_fsi/space.hpp"

namespace robin_fsi {

enum class KernelKind { Mass, SymGrad, Elasticity, Divergence, BoundaryMass };

/// Bilinear form selector.
///
///   Mass:         c (u, v)
///   SymGrad:      c (D(u), D(v))
///   Elasticity:   2 mu (D(u), D(v)) + lambda (div u, div v)
///   Divergence:   c (q, div u), rows = scalar test space, cols = vector trial space
///   BoundaryMass: c (u, v) on edges tagged `tag`
struct KernelSpec {
  KernelKind kind = KernelKind::Mass;
  double coef = 1.0;
  double mu = 0.0;
  double lambda = 0.0;
  Tag tag = Tag::Interface;

  static KernelSpec mass(double c = 1.0) { return {KernelKind::Mass, c}; }
  static KernelSpec sym_grad(double c = 1.0) { return {KernelKind::SymGrad, c}; }
  static KernelSpec elasticity(double mu, double lambda) {
    return {KernelKind::Elasticity, 1.0, mu, lambda};
  }
  static KernelSpec divergence(double c = 1.0) { return {KernelKind::Divergence, c}; }
  static KernelSpec boundary_mass(Tag tag, double c = 1.0) {
    return {KernelKind::BoundaryMass, c, 0.0, 0.0, tag};
  }
};

/// Sparse matrix with rows indexed by `test` dofs and columns by `trial` dofs.
CsrMatrix assemble_operator(const Space& trial, const Space& test, const KernelSpec& kernel);

/// Domain loads (f, v) at time t.
Vector assemble_functional(const Space& test, const VectorFn& f, double t);
Vector assemble_functional(const Space& test, const ScalarFn& f, double t);

/// Boundary loads on edges tagged `tag`. Throws if no edge carries the tag.
Vector assemble_boundary_functional(const Space& test, Tag tag, const TractionFn& h, double t);
Vector assemble_boundary_functional(const Space& test, Tag tag, const ScalarFn& f, double t);

using GradFn = std::function<Mat2(Point, double)>;

double l2_norm(const Space& space, const Vector& coeffs);
/// sqrt(2 mu ||D(eta)||^2 + lambda ||div eta||^2)
double s_norm(const Space& space, const Vector& eta, double mu, double lambda);

/// Quadrature norms of closed-form fields over the mesh of `space`.
double l2_norm(const Mesh& mesh, const VectorFn& f, double t);
double s_norm(const Mesh& mesh, const GradFn& grad, double t, double mu, double lambda);

/// Errors against closed-form fields, evaluated with a high-order rule.
double l2_error(const Space& space, const Vector& coeffs, const VectorFn& exact, double t);
double s_error(const Space& space, const Vector& coeffs, const GradFn& exact_grad, double t,
               double mu, double lambda);

}  // namespace robin_fsi
