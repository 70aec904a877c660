#pragma once

#include "robin_fsi/common.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace robin_fsi {

/// Boundary segment labels for the fluid and solid rectangles.
enum class Tag : int {
  FluidIn,
  FluidOut,
  FluidWall,  // essential (Dirichlet) velocity boundary
  Symmetry,   // u_y = 0, zero tangential traction
  Interface,
  SolidIn,
  SolidOut,
  SolidExt,
};

std::string_view tag_name(Tag tag);

enum class DomainLabel { Fluid, Solid };

/// Tag assignment for the four sides of an axis-aligned rectangle.
struct SideTags {
  Tag bottom;
  Tag right;
  Tag top;
  Tag left;
};

struct BoundaryEdge {
  std::array<int, 2> v;  // ordered so the domain lies to the left
  Tag tag;
};

/// Structured triangulation of a rectangle. Immutable after construction.
class Mesh {
 public:
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  DomainLabel domain_label = DomainLabel::Fluid;
  double h = 0.0;

  Point origin;
  Vec2 extent;
  int nx = 0;
  int ny = 0;

  double triangle_area(int t) const;
  double total_area() const;

  double edge_length(int e) const;
  Vec2 outward_normal(int e) const;

  /// Indices of boundary edges carrying `tag`.
  std::vector<int> edges_with_tag(Tag tag) const;
  bool has_tag(Tag tag) const;

  /// Triangle containing `p` (closed, with a small tolerance), if any.
  std::optional<int> locate(Point p) const;
};

Mesh build_rect_mesh(Point origin, Vec2 extent, int nx, int ny, SideTags layout,
                     DomainLabel label = DomainLabel::Fluid);

/// Vertex and edge correspondence along the shared interface.
struct InterfaceMap {
  std::vector<std::pair<int, int>> vertex_pairs;  // (fluid vertex, solid vertex)
  std::vector<std::pair<int, int>> edge_pairs;    // (fluid boundary edge, solid boundary edge)
};

InterfaceMap extract_interface(const Mesh& fluid, const Mesh& solid);

/// Debug dump: `v x y`, `t i j k`, `e i j TAG` lines.
void write_mesh_dump(const Mesh& mesh, std::ostream& os);

}  // namespace robin_fsi
