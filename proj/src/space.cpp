#include "robin_fsi/space.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace robin_fsi {

namespace {

constexpr std::array<std::array<int, 2>, 3> kLocalEdges{{{0, 1}, {1, 2}, {2, 0}}};

std::pair<int, int> sorted_pair(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

Space::Space(std::shared_ptr<const Mesh> mesh, int degree, int components)
    : mesh_(std::move(mesh)), degree_(degree), components_(components) {
  if (!mesh_) throw InvalidArgument("Space: null mesh");
  if (degree_ != 1 && degree_ != 2) throw InvalidArgument("Space: degree must be 1 or 2");
  if (components_ != 1 && components_ != 2) throw InvalidArgument("Space: components must be 1 or 2");

  const Mesh& m = *mesh_;
  node_coords_ = m.vertices;
  const int nv = static_cast<int>(m.vertices.size());

  std::map<std::pair<int, int>, int> edge_triangle;
  element_nodes_.resize(m.triangles.size());
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const auto& tri = m.triangles[t];
    auto& nodes = element_nodes_[t];
    nodes.fill(-1);
    for (int k = 0; k < 3; ++k) nodes[k] = tri[k];
    for (int k = 0; k < 3; ++k) {
      const auto key = sorted_pair(tri[kLocalEdges[k][0]], tri[kLocalEdges[k][1]]);
      edge_triangle.try_emplace(key, t);
      if (degree_ == 2) {
        auto [it, inserted] = edge_index_.try_emplace(key, static_cast<int>(node_coords_.size()));
        if (inserted) {
          const Point a = m.vertices[key.first], b = m.vertices[key.second];
          node_coords_.push_back(0.5 * (a + b));
        }
        nodes[3 + k] = it->second;
      }
    }
  }
  (void)nv;

  boundary_edge_triangle_.resize(m.boundary_edges.size());
  for (int e = 0; e < static_cast<int>(m.boundary_edges.size()); ++e) {
    const auto& be = m.boundary_edges[e];
    const auto it = edge_triangle.find(sorted_pair(be.v[0], be.v[1]));
    if (it == edge_triangle.end()) throw InvalidArgument("Space: boundary edge not in any triangle");
    boundary_edge_triangle_[e] = it->second;
  }

  std::map<Tag, std::set<int>> tag_sets;
  for (int e = 0; e < static_cast<int>(m.boundary_edges.size()); ++e) {
    auto& set = tag_sets[m.boundary_edges[e].tag];
    for (int n : boundary_edge_nodes(e)) set.insert(n);
  }
  for (auto& [tag, set] : tag_sets) tag_nodes_[tag] = std::vector<int>(set.begin(), set.end());
}

std::vector<int> Space::boundary_edge_nodes(int e) const {
  const auto& be = mesh_->boundary_edges[e];
  std::vector<int> nodes{be.v[0], be.v[1]};
  if (degree_ == 2) nodes.push_back(edge_index_.at(sorted_pair(be.v[0], be.v[1])));
  return nodes;
}

const std::vector<int>& Space::tag_nodes(Tag tag) const {
  static const std::vector<int> empty;
  const auto it = tag_nodes_.find(tag);
  return it == tag_nodes_.end() ? empty : it->second;
}

std::vector<int> Space::tag_dofs(Tag tag, int component) const {
  if (component < 0 || component >= components_) throw InvalidArgument("Space::tag_dofs: bad component");
  std::vector<int> out;
  for (int n : tag_nodes(tag)) out.push_back(dof(component, n));
  return out;
}

Point map_to_physical(const Mesh& mesh, int t, const std::array<double, 3>& bary) {
  const auto& tri = mesh.triangles[t];
  Point p;
  for (int k = 0; k < 3; ++k) p = p + bary[k] * mesh.vertices[tri[k]];
  return p;
}

std::array<double, 3> barycentric(const Mesh& mesh, int t, Point p) {
  const auto& tri = mesh.triangles[t];
  const Point a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
  const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

ElementBasis eval_basis(const Space& space, int t, const std::array<double, 3>& l) {
  const Mesh& m = space.mesh();
  const auto& tri = m.triangles[t];
  const Point a = m.vertices[tri[0]], b = m.vertices[tri[1]], c = m.vertices[tri[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const std::array<Vec2, 3> gl{Vec2{(b.y - c.y) / det, (c.x - b.x) / det},
                               Vec2{(c.y - a.y) / det, (a.x - c.x) / det},
                               Vec2{(a.y - b.y) / det, (b.x - a.x) / det}};
  ElementBasis eb;
  if (space.degree() == 1) {
    eb.count = 3;
    for (int k = 0; k < 3; ++k) {
      eb.value[k] = l[k];
      eb.grad[k] = gl[k];
    }
    return eb;
  }
  eb.count = 6;
  for (int k = 0; k < 3; ++k) {
    eb.value[k] = l[k] * (2.0 * l[k] - 1.0);
    eb.grad[k] = (4.0 * l[k] - 1.0) * gl[k];
  }
  for (int k = 0; k < 3; ++k) {
    const int i = kLocalEdges[k][0], j = kLocalEdges[k][1];
    eb.value[3 + k] = 4.0 * l[i] * l[j];
    eb.grad[3 + k] = 4.0 * (l[i] * gl[j] + l[j] * gl[i]);
  }
  return eb;
}

std::array<double, 3> edge_basis(int degree, double s) {
  if (degree == 1) return {1.0 - s, s, 0.0};
  return {(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)};
}

Vector interpolate(const ScalarFn& f, const Space& space, double t) {
  if (space.components() != 1) throw InvalidArgument("interpolate: scalar function on vector space");
  Vector out(space.num_dofs());
  for (int n = 0; n < space.num_nodes(); ++n) {
    out[n] = f(space.node_coords()[n], t);
    if (!std::isfinite(out[n])) throw InvalidArgument("interpolate: non-finite value");
  }
  return out;
}

Vector interpolate(const VectorFn& f, const Space& space, double t) {
  if (space.components() != 2) throw InvalidArgument("interpolate: vector function on scalar space");
  Vector out(space.num_dofs());
  for (int n = 0; n < space.num_nodes(); ++n) {
    const Vec2 v = f(space.node_coords()[n], t);
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InvalidArgument("interpolate: non-finite value");
    out[space.dof(0, n)] = v.x;
    out[space.dof(1, n)] = v.y;
  }
  return out;
}

FieldCoeffs interpolate_field(const VectorFn& f, std::shared_ptr<const Space> space, double t) {
  Vector v = interpolate(f, *space, t);
  return {std::move(space), std::move(v), t};
}

namespace {

int locate_or_throw(const Mesh& mesh, Point p) {
  const auto t = mesh.locate(p);
  if (!t) throw InvalidArgument("evaluate: point outside mesh");
  return *t;
}

}  // namespace

double evaluate_scalar(const Space& space, const Vector& coeffs, Point p) {
  const int t = locate_or_throw(space.mesh(), p);
  const auto eb = eval_basis(space, t, barycentric(space.mesh(), t, p));
  const auto& nodes = space.element_nodes(t);
  double v = 0.0;
  for (int k = 0; k < eb.count; ++k) v += eb.value[k] * coeffs[nodes[k]];
  return v;
}

Vec2 evaluate_vector(const Space& space, const Vector& coeffs, Point p) {
  const int t = locate_or_throw(space.mesh(), p);
  const auto eb = eval_basis(space, t, barycentric(space.mesh(), t, p));
  const auto& nodes = space.element_nodes(t);
  Vec2 v;
  for (int k = 0; k < eb.count; ++k) {
    v.x += eb.value[k] * coeffs[space.dof(0, nodes[k])];
    v.y += eb.value[k] * coeffs[space.dof(1, nodes[k])];
  }
  return v;
}

Mat2 evaluate_vector_gradient(const Space& space, const Vector& coeffs, Point p) {
  const int t = locate_or_throw(space.mesh(), p);
  const auto eb = eval_basis(space, t, barycentric(space.mesh(), t, p));
  const auto& nodes = space.element_nodes(t);
  Mat2 g;
  for (int k = 0; k < eb.count; ++k) {
    for (int c = 0; c < 2; ++c) {
      const double u = coeffs[space.dof(c, nodes[k])];
      g.m[c][0] += u * eb.grad[k].x;
      g.m[c][1] += u * eb.grad[k].y;
    }
  }
  return g;
}

void write_field_csv(const Space& space, const Vector& coeffs, std::ostream& os) {
  os << "dof_index,x,y,value\n";
  char buf[128];
  for (int d = 0; d < space.num_dofs(); ++d) {
    const Point p = space.node_coords()[space.node_of(d)];
    std::snprintf(buf, sizeof buf, "%d,%.9e,%.9e,%.9e\n", d, p.x, p.y, coeffs[d]);
    os << buf;
  }
}

}  // namespace robin_fsi
