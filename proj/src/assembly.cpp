#include "robin_fsi/assembly.hpp"

#include "robin_fsi/quadrature.hpp"

namespace robin_fsi {

namespace {

void check_same_mesh(const Space& a, const Space& b) {
  if (!a.shares_mesh_with(b)) throw InvalidArgument("assemble_operator: spaces live on different meshes");
}

double sym_grad_product(Vec2 ga, int c, Vec2 gb, int d) {
  return 0.5 * ((c == d ? dot(ga, gb) : 0.0) + ga[d] * gb[c]);
}

CsrMatrix assemble_domain(const Space& trial, const Space& test, const KernelSpec& k) {
  const Mesh& mesh = trial.mesh();
  const auto rule = triangle_rule(kMatrixOrder);
  const int ct = trial.components(), cv = test.components();
  const int na = trial.nodes_per_element(), nb = test.nodes_per_element();

  std::vector<Triplet> entries;
  entries.reserve(mesh.triangles.size() * na * nb * ct * cv);
  std::vector<double> local(static_cast<size_t>(na * ct * nb * cv));

  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    std::fill(local.begin(), local.end(), 0.0);
    const double area = mesh.triangle_area(t);
    for (const auto& q : rule) {
      const auto ea = eval_basis(trial, t, q.bary);
      const auto eb = eval_basis(test, t, q.bary);
      const double w = q.weight * area;
      for (int b = 0; b < nb; ++b)
        for (int d = 0; d < cv; ++d)
          for (int a = 0; a < na; ++a)
            for (int c = 0; c < ct; ++c) {
              double v = 0.0;
              switch (k.kind) {
                case KernelKind::Mass:
                  v = c == d ? k.coef * ea.value[a] * eb.value[b] : 0.0;
                  break;
                case KernelKind::SymGrad:
                  v = k.coef * sym_grad_product(ea.grad[a], c, eb.grad[b], d);
                  break;
                case KernelKind::Elasticity:
                  v = 2.0 * k.mu * sym_grad_product(ea.grad[a], c, eb.grad[b], d) +
                      k.lambda * ea.grad[a][c] * eb.grad[b][d];
                  break;
                case KernelKind::Divergence:
                  v = k.coef * ea.grad[a][c] * eb.value[b];
                  break;
                case KernelKind::BoundaryMass:
                  break;
              }
              local[((b * cv + d) * na + a) * ct + c] += w * v;
            }
    }
    const auto& tn = trial.element_nodes(t);
    const auto& vn = test.element_nodes(t);
    for (int b = 0; b < nb; ++b)
      for (int d = 0; d < cv; ++d)
        for (int a = 0; a < na; ++a)
          for (int c = 0; c < ct; ++c) {
            const double v = local[((b * cv + d) * na + a) * ct + c];
            if (v != 0.0) entries.push_back({test.dof(d, vn[b]), trial.dof(c, tn[a]), v});
          }
  }
  return csr_from_triplets(test.num_dofs(), trial.num_dofs(), std::move(entries));
}

CsrMatrix assemble_boundary(const Space& trial, const Space& test, const KernelSpec& k) {
  const Mesh& mesh = trial.mesh();
  const auto edges = mesh.edges_with_tag(k.tag);
  if (edges.empty()) throw InvalidArgument("assemble_operator: no boundary edge carries the requested tag");
  const auto rule = line_rule(kBoundaryOrder);
  std::vector<Triplet> entries;
  // Only the edge nodes are nonzero on the edge; using the edge basis keeps the pattern exact.
  for (int e : edges) {
    const auto tn = trial.boundary_edge_nodes(e);
    const auto vn = test.boundary_edge_nodes(e);
    const double len = mesh.edge_length(e);
    for (const auto& q : rule) {
      const auto ea = edge_basis(trial.degree(), q.s);
      const auto eb = edge_basis(test.degree(), q.s);
      const double w = q.weight * len * k.coef;
      for (size_t b = 0; b < vn.size(); ++b)
        for (size_t a = 0; a < tn.size(); ++a) {
          const double v = w * ea[a] * eb[b];
          if (v == 0.0) continue;
          for (int c = 0; c < trial.components(); ++c)
            entries.push_back({test.dof(c, vn[b]), trial.dof(c, tn[a]), v});
        }
    }
  }
  return csr_from_triplets(test.num_dofs(), trial.num_dofs(), std::move(entries));
}

}  // namespace

CsrMatrix assemble_operator(const Space& trial, const Space& test, const KernelSpec& kernel) {
  check_same_mesh(trial, test);
  switch (kernel.kind) {
    case KernelKind::Mass:
      if (trial.components() != test.components())
        throw InvalidArgument("mass kernel: component counts differ");
      return assemble_domain(trial, test, kernel);
    case KernelKind::SymGrad:
    case KernelKind::Elasticity:
      if (trial.components() != 2 || test.components() != 2)
        throw InvalidArgument("gradient kernels need vector spaces");
      return assemble_domain(trial, test, kernel);
    case KernelKind::Divergence:
      if (trial.components() != 2 || test.components() != 1)
        throw InvalidArgument("divergence kernel maps a vector trial space to a scalar test space");
      return assemble_domain(trial, test, kernel);
    case KernelKind::BoundaryMass:
      if (trial.components() != test.components())
        throw InvalidArgument("boundary mass kernel: component counts differ");
      return assemble_boundary(trial, test, kernel);
  }
  throw InvalidArgument("assemble_operator: unknown kernel");
}

Vector assemble_functional(const Space& test, const VectorFn& f, double t) {
  if (test.components() != 2) throw InvalidArgument("assemble_functional: vector data needs a vector space");
  const Mesh& mesh = test.mesh();
  Vector out = Vector::Zero(test.num_dofs());
  if (!f) return out;
  const auto rule = triangle_rule(kDataOrder);
  for (int tri = 0; tri < static_cast<int>(mesh.triangles.size()); ++tri) {
    const double area = mesh.triangle_area(tri);
    const auto& nodes = test.element_nodes(tri);
    for (const auto& q : rule) {
      const Vec2 v = f(map_to_physical(mesh, tri, q.bary), t);
      const auto eb = eval_basis(test, tri, q.bary);
      const double w = q.weight * area;
      for (int b = 0; b < eb.count; ++b) {
        out[test.dof(0, nodes[b])] += w * v.x * eb.value[b];
        out[test.dof(1, nodes[b])] += w * v.y * eb.value[b];
      }
    }
  }
  return out;
}

Vector assemble_functional(const Space& test, const ScalarFn& f, double t) {
  if (test.components() != 1) throw InvalidArgument("assemble_functional: scalar data needs a scalar space");
  const Mesh& mesh = test.mesh();
  Vector out = Vector::Zero(test.num_dofs());
  if (!f) return out;
  const auto rule = triangle_rule(kDataOrder);
  for (int tri = 0; tri < static_cast<int>(mesh.triangles.size()); ++tri) {
    const double area = mesh.triangle_area(tri);
    const auto& nodes = test.element_nodes(tri);
    for (const auto& q : rule) {
      const double v = f(map_to_physical(mesh, tri, q.bary), t);
      const auto eb = eval_basis(test, tri, q.bary);
      for (int b = 0; b < eb.count; ++b) out[nodes[b]] += q.weight * area * v * eb.value[b];
    }
  }
  return out;
}

namespace {

struct EdgeBasis {
  int count;
  std::array<double, 3> value;
};

template <typename Fn>
void boundary_loop(const Space& test, Tag tag, Fn&& body) {
  const Mesh& mesh = test.mesh();
  const auto edges = mesh.edges_with_tag(tag);
  if (edges.empty())
    throw InvalidArgument("assemble_boundary_functional: no edge tagged " + std::string(tag_name(tag)));
  const auto rule = line_rule(kBoundaryOrder);
  for (int e : edges) {
    const auto& be = mesh.boundary_edges[e];
    const Point p0 = mesh.vertices[be.v[0]], p1 = mesh.vertices[be.v[1]];
    const double len = mesh.edge_length(e);
    const Vec2 n = mesh.outward_normal(e);
    const auto nodes = test.boundary_edge_nodes(e);
    for (const auto& q : rule) {
      const Point x = p0 + q.s * (p1 - p0);
      const EdgeBasis eb{static_cast<int>(nodes.size()), edge_basis(test.degree(), q.s)};
      body(x, n, q.weight * len, eb, nodes);
    }
  }
}

}  // namespace

Vector assemble_boundary_functional(const Space& test, Tag tag, const TractionFn& h, double t) {
  if (test.components() != 2) throw InvalidArgument("assemble_boundary_functional: traction needs a vector space");
  Vector out = Vector::Zero(test.num_dofs());
  boundary_loop(test, tag, [&](Point x, Vec2 n, double w, const EdgeBasis& eb, const auto& nodes) {
    if (!h) return;
    const Vec2 v = h(x, n, t);
    for (int b = 0; b < eb.count; ++b) {
      out[test.dof(0, nodes[b])] += w * v.x * eb.value[b];
      out[test.dof(1, nodes[b])] += w * v.y * eb.value[b];
    }
  });
  return out;
}

Vector assemble_boundary_functional(const Space& test, Tag tag, const ScalarFn& f, double t) {
  if (test.components() != 1) throw InvalidArgument("assemble_boundary_functional: scalar data needs a scalar space");
  Vector out = Vector::Zero(test.num_dofs());
  boundary_loop(test, tag, [&](Point x, Vec2, double w, const EdgeBasis& eb, const auto& nodes) {
    if (!f) return;
    const double v = f(x, t);
    for (int b = 0; b < eb.count; ++b) out[nodes[b]] += w * v * eb.value[b];
  });
  return out;
}

namespace {

struct PointValue {
  Vec2 value;
  Mat2 grad;
};

PointValue eval_at(const Space& space, const Vector& coeffs, int t, const ElementBasis& eb) {
  const auto& nodes = space.element_nodes(t);
  PointValue pv;
  for (int a = 0; a < eb.count; ++a)
    for (int c = 0; c < space.components(); ++c) {
      const double u = coeffs[space.dof(c, nodes[a])];
      pv.value[c] += u * eb.value[a];
      pv.grad.m[c][0] += u * eb.grad[a].x;
      pv.grad.m[c][1] += u * eb.grad[a].y;
    }
  return pv;
}

double energy_density(const Mat2& g, double mu, double lambda) {
  const double d01 = 0.5 * (g.m[0][1] + g.m[1][0]);
  const double dd = g.m[0][0] * g.m[0][0] + g.m[1][1] * g.m[1][1] + 2.0 * d01 * d01;
  const double div = g.m[0][0] + g.m[1][1];
  return 2.0 * mu * dd + lambda * div * div;
}

template <typename Fn>
double integrate(const Mesh& mesh, Fn&& density) {
  const auto rule = triangle_rule(kErrorOrder);
  double sum = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const double area = mesh.triangle_area(t);
    for (const auto& q : rule) sum += q.weight * area * density(t, q.bary);
  }
  return sum;
}

}  // namespace

double l2_norm(const Space& space, const Vector& coeffs) {
  return std::sqrt(integrate(space.mesh(), [&](int t, const std::array<double, 3>& bary) {
    const auto pv = eval_at(space, coeffs, t, eval_basis(space, t, bary));
    return dot(pv.value, pv.value);
  }));
}

double s_norm(const Space& space, const Vector& eta, double mu, double lambda) {
  if (space.components() != 2) throw InvalidArgument("s_norm: vector space required");
  return std::sqrt(integrate(space.mesh(), [&](int t, const std::array<double, 3>& bary) {
    return energy_density(eval_at(space, eta, t, eval_basis(space, t, bary)).grad, mu, lambda);
  }));
}

double l2_norm(const Mesh& mesh, const VectorFn& f, double time) {
  return std::sqrt(integrate(mesh, [&](int t, const std::array<double, 3>& bary) {
    const Vec2 v = f(map_to_physical(mesh, t, bary), time);
    return dot(v, v);
  }));
}

double s_norm(const Mesh& mesh, const GradFn& grad, double time, double mu, double lambda) {
  return std::sqrt(integrate(mesh, [&](int t, const std::array<double, 3>& bary) {
    return energy_density(grad(map_to_physical(mesh, t, bary), time), mu, lambda);
  }));
}

double l2_error(const Space& space, const Vector& coeffs, const VectorFn& exact, double time) {
  const Mesh& mesh = space.mesh();
  return std::sqrt(integrate(mesh, [&](int t, const std::array<double, 3>& bary) {
    const auto pv = eval_at(space, coeffs, t, eval_basis(space, t, bary));
    const Vec2 d = pv.value - exact(map_to_physical(mesh, t, bary), time);
    return dot(d, d);
  }));
}

double s_error(const Space& space, const Vector& coeffs, const GradFn& exact_grad, double time, double mu,
               double lambda) {
  const Mesh& mesh = space.mesh();
  return std::sqrt(integrate(mesh, [&](int t, const std::array<double, 3>& bary) {
    const auto pv = eval_at(space, coeffs, t, eval_basis(space, t, bary));
    const Mat2 ge = exact_grad(map_to_physical(mesh, t, bary), time);
    Mat2 d;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) d.m[i][j] = pv.grad.m[i][j] - ge.m[i][j];
    return energy_density(d, mu, lambda);
  }));
}

}  // namespace robin_fsi
