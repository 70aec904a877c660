#include "robin_fsi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace robin_fsi {

std::string_view tag_name(Tag tag) {
  switch (tag) {
    case Tag::FluidIn: return "FluidIn";
    case Tag::FluidOut: return "FluidOut";
    case Tag::FluidWall: return "FluidWall";
    case Tag::Symmetry: return "Symmetry";
    case Tag::Interface: return "Interface";
    case Tag::SolidIn: return "SolidIn";
    case Tag::SolidOut: return "SolidOut";
    case Tag::SolidExt: return "SolidExt";
  }
  return "Unknown";
}

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Point a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t) sum += triangle_area(t);
  return sum;
}

double Mesh::edge_length(int e) const {
  const auto& edge = boundary_edges[e];
  return norm(vertices[edge.v[1]] - vertices[edge.v[0]]);
}

Vec2 Mesh::outward_normal(int e) const {
  const auto& edge = boundary_edges[e];
  const Vec2 d = vertices[edge.v[1]] - vertices[edge.v[0]];
  const double len = norm(d);
  return {d.y / len, -d.x / len};
}

std::vector<int> Mesh::edges_with_tag(Tag tag) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(boundary_edges.size()); ++e)
    if (boundary_edges[e].tag == tag) out.push_back(e);
  return out;
}

bool Mesh::has_tag(Tag tag) const {
  return std::any_of(boundary_edges.begin(), boundary_edges.end(),
                     [tag](const BoundaryEdge& e) { return e.tag == tag; });
}

std::optional<int> Mesh::locate(Point p) const {
  const double hx = extent.x / nx, hy = extent.y / ny;
  const double tol = 1e-10;
  const int ci = static_cast<int>(std::floor((p.x - origin.x) / hx));
  const int cj = static_cast<int>(std::floor((p.y - origin.y) / hy));
  for (int dj = 0; dj <= 1; ++dj) {
    for (int di = 0; di <= 1; ++di) {
      // Try the nominal cell first, then the lower/left neighbours for points on cell edges.
      const int i = std::clamp(ci - di, 0, nx - 1);
      const int j = std::clamp(cj - dj, 0, ny - 1);
      for (int k = 0; k < 2; ++k) {
        const int t = 2 * (j * nx + i) + k;
        const auto& tri = triangles[t];
        const Point a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
        const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
        const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
        const double l0 = 1.0 - l1 - l2;
        if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return t;
      }
    }
  }
  return std::nullopt;
}

Mesh build_rect_mesh(Point origin, Vec2 extent, int nx, int ny, SideTags layout, DomainLabel label) {
  if (nx < 1 || ny < 1) throw InvalidArgument("build_rect_mesh: cell counts must be >= 1");
  if (!(extent.x > 0.0) || !(extent.y > 0.0))
    throw InvalidArgument("build_rect_mesh: extents must be positive");

  Mesh mesh;
  mesh.domain_label = label;
  mesh.origin = origin;
  mesh.extent = extent;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.h = extent.x / nx;

  const double hx = extent.x / nx, hy = extent.y / ny;
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

  mesh.vertices.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    // Exact end coordinates so that neighbouring rectangles share bit-identical vertices.
    const double y = (j == ny) ? origin.y + extent.y : origin.y + j * hy;
    for (int i = 0; i <= nx; ++i) {
      const double x = (i == nx) ? origin.x + extent.x : origin.x + i * hx;
      mesh.vertices.push_back({x, y});
    }
  }

  mesh.triangles.reserve(2 * static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  for (int i = 0; i < nx; ++i) mesh.boundary_edges.push_back({{vid(i, 0), vid(i + 1, 0)}, layout.bottom});
  for (int j = 0; j < ny; ++j) mesh.boundary_edges.push_back({{vid(nx, j), vid(nx, j + 1)}, layout.right});
  for (int i = nx; i > 0; --i) mesh.boundary_edges.push_back({{vid(i, ny), vid(i - 1, ny)}, layout.top});
  for (int j = ny; j > 0; --j) mesh.boundary_edges.push_back({{vid(0, j), vid(0, j - 1)}, layout.left});

  return mesh;
}

namespace {

std::vector<int> interface_vertices(const Mesh& mesh) {
  std::vector<int> verts;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != Tag::Interface) continue;
    verts.push_back(e.v[0]);
    verts.push_back(e.v[1]);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace

InterfaceMap extract_interface(const Mesh& fluid, const Mesh& solid) {
  const auto fv = interface_vertices(fluid);
  const auto sv = interface_vertices(solid);
  if (fv.empty() || sv.empty()) throw MeshMismatch("extract_interface: a mesh has no Interface edges");
  if (fv.size() != sv.size()) throw MeshMismatch("extract_interface: interface vertex counts differ");

  const double scale = std::max({1.0, fluid.extent.x, fluid.extent.y});
  const double tol = 1e-12 * scale;

  InterfaceMap map;
  std::map<int, int> fluid_to_solid;
  std::vector<bool> used(sv.size(), false);
  for (int f : fv) {
    const Point pf = fluid.vertices[f];
    bool found = false;
    for (size_t k = 0; k < sv.size(); ++k) {
      if (used[k]) continue;
      const Point ps = solid.vertices[sv[k]];
      if (std::abs(pf.x - ps.x) <= tol && std::abs(pf.y - ps.y) <= tol) {
        used[k] = true;
        map.vertex_pairs.emplace_back(f, sv[k]);
        fluid_to_solid[f] = sv[k];
        found = true;
        break;
      }
    }
    if (!found) throw MeshMismatch("extract_interface: interface vertex sets do not coincide");
  }

  for (int ef = 0; ef < static_cast<int>(fluid.boundary_edges.size()); ++ef) {
    const auto& edge_f = fluid.boundary_edges[ef];
    if (edge_f.tag != Tag::Interface) continue;
    const int a = fluid_to_solid.at(edge_f.v[0]);
    const int b = fluid_to_solid.at(edge_f.v[1]);
    bool found = false;
    for (int es = 0; es < static_cast<int>(solid.boundary_edges.size()); ++es) {
      const auto& edge_s = solid.boundary_edges[es];
      if (edge_s.tag != Tag::Interface) continue;
      if ((edge_s.v[0] == a && edge_s.v[1] == b) || (edge_s.v[0] == b && edge_s.v[1] == a)) {
        map.edge_pairs.emplace_back(ef, es);
        found = true;
        break;
      }
    }
    if (!found) throw MeshMismatch("extract_interface: interface edges do not coincide");
  }
  return map;
}

void write_mesh_dump(const Mesh& mesh, std::ostream& os) {
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", v.x, v.y);
    os << buf;
  }
  for (const auto& t : mesh.triangles) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges)
    os << "e " << e.v[0] << ' ' << e.v[1] << ' ' << tag_name(e.tag) << '\n';
}

}  // namespace robin_fsi
