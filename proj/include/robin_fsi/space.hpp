#pragma once

#include "robin_fsi/common.hpp"
#include "robin_fsi/mesh.hpp"

#include <array>
#include <map>
#include <memory>
#include <vector>

namespace robin_fsi {

/// Lagrange P1/P2 space, scalar or 2-vector, on a triangular mesh.
///
/// Nodes are the mesh vertices followed (for P2) by edge midpoints. Vector dofs are
/// blocked by component: dof(c, node) = c * num_nodes() + node.
class Space {
 public:
  Space(std::shared_ptr<const Mesh> mesh, int degree, int components);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  int components() const { return components_; }
  int num_nodes() const { return static_cast<int>(node_coords_.size()); }
  int num_dofs() const { return components_ * num_nodes(); }
  int nodes_per_element() const { return degree_ == 1 ? 3 : 6; }

  int dof(int component, int node) const { return component * num_nodes() + node; }
  int node_of(int dof) const { return dof % num_nodes(); }
  int component_of(int dof) const { return dof / num_nodes(); }

  const std::vector<Point>& node_coords() const { return node_coords_; }

  /// Local node order: 3 vertices, then midpoints of edges (0,1), (1,2), (2,0).
  const std::array<int, 6>& element_nodes(int t) const { return element_nodes_[t]; }

  /// Nodes on boundary edge `e`: both endpoints, then the midpoint for P2.
  std::vector<int> boundary_edge_nodes(int e) const;
  /// Triangle owning boundary edge `e`.
  int boundary_edge_triangle(int e) const { return boundary_edge_triangle_[e]; }

  /// Nodes lying on any edge carrying `tag`, sorted ascending.
  const std::vector<int>& tag_nodes(Tag tag) const;
  /// Dofs of component `component` on `tag`, sorted ascending.
  std::vector<int> tag_dofs(Tag tag, int component) const;

  bool shares_mesh_with(const Space& other) const { return mesh_ == other.mesh_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  int components_;
  std::vector<Point> node_coords_;
  std::vector<std::array<int, 6>> element_nodes_;
  std::map<std::pair<int, int>, int> edge_index_;
  std::vector<int> boundary_edge_triangle_;
  std::map<Tag, std::vector<int>> tag_nodes_;
};

/// Basis values and physical gradients of one element at one point.
struct ElementBasis {
  int count = 0;
  std::array<double, 6> value{};
  std::array<Vec2, 6> grad{};
};

/// Basis evaluation at barycentric coordinates `bary` of triangle `t`.
ElementBasis eval_basis(const Space& space, int t, const std::array<double, 3>& bary);

/// Physical point of barycentric coordinates in triangle `t`.
Point map_to_physical(const Mesh& mesh, int t, const std::array<double, 3>& bary);

/// Barycentric coordinates of `p` in triangle `t`.
std::array<double, 3> barycentric(const Mesh& mesh, int t, Point p);

/// Edge basis values at parameter s in [0, 1] along a boundary edge (order of boundary_edge_nodes).
std::array<double, 3> edge_basis(int degree, double s);

/// Discrete field: coefficients in a space at a time stamp.
struct FieldCoeffs {
  std::shared_ptr<const Space> space;
  Vector values;
  double time = 0.0;
};

Vector interpolate(const ScalarFn& f, const Space& space, double t);
Vector interpolate(const VectorFn& f, const Space& space, double t);
FieldCoeffs interpolate_field(const VectorFn& f, std::shared_ptr<const Space> space, double t);

double evaluate_scalar(const Space& space, const Vector& coeffs, Point p);
Vec2 evaluate_vector(const Space& space, const Vector& coeffs, Point p);
/// Gradient tensor g.m[i][j] = d u_i / d x_j of a vector field.
Mat2 evaluate_vector_gradient(const Space& space, const Vector& coeffs, Point p);

/// Writes `dof_index,x,y,value` lines.
void write_field_csv(const Space& space, const Vector& coeffs, std::ostream& os);

}  // namespace robin_fsi
