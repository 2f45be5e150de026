#include "dampl/mesh.hpp"

#include <cmath>
#include <string>

namespace dampl {

const char* side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
  }
  return "?";
}

Side side_from_name(const std::string& name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  if (name == "bottom") return Side::Bottom;
  if (name == "top") return Side::Top;
  throw ConfigError("unknown boundary side '" + name + "'");
}

std::vector<int> Mesh::side_nodes(Side s) const {
  std::vector<int> out;
  if (dim == 1) {
    if (s == Side::Left) out.push_back(0);
    if (s == Side::Right) out.push_back(nx);
    return out;
  }
  const int w = nx + 1;
  switch (s) {
    case Side::Left:
      for (int j = 0; j <= ny; ++j) out.push_back(j * w);
      break;
    case Side::Right:
      for (int j = 0; j <= ny; ++j) out.push_back(j * w + nx);
      break;
    case Side::Bottom:
      for (int i = 0; i <= nx; ++i) out.push_back(i);
      break;
    case Side::Top:
      for (int i = 0; i <= nx; ++i) out.push_back(ny * w + i);
      break;
  }
  return out;
}

std::vector<std::array<int, 2>> Mesh::side_edges(Side s) const {
  std::vector<std::array<int, 2>> out;
  if (dim == 1) return out;
  const auto ns = side_nodes(s);
  for (size_t k = 0; k + 1 < ns.size(); ++k) out.push_back({ns[k], ns[k + 1]});
  return out;
}

namespace {

void triangle_geometry(const Mesh& m, std::array<int, 3> v, double& area,
                       std::array<std::array<double, 2>, 3>& grads) {
  const auto& a = m.nodes[v[0]];
  const auto& b = m.nodes[v[1]];
  const auto& c = m.nodes[v[2]];
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  area = 0.5 * det;
  // grad of barycentric shape functions
  grads[0] = {(b[1] - c[1]) / det, (c[0] - b[0]) / det};
  grads[1] = {(c[1] - a[1]) / det, (a[0] - c[0]) / det};
  grads[2] = {(a[1] - b[1]) / det, (b[0] - a[0]) / det};
}

}  // namespace

Mesh build_mesh(int dim, double lx, double ly, int nx, int ny, const std::set<Side>& dirichlet_sides) {
  if (dim != 1 && dim != 2) throw ConfigError("mesh dim must be 1 or 2");
  if (nx < 1 || (dim == 2 && ny < 1)) throw ConfigError("subdivisions must be >= 1");
  if (!(lx > 0.0) || (dim == 2 && !(ly > 0.0))) throw ConfigError("extents must be > 0");
  if (dirichlet_sides.empty())
    throw ConfigError("Dirichlet boundary selection is empty; Gamma_D must be nonempty");
  if (dim == 1)
    for (Side s : dirichlet_sides)
      if (s == Side::Bottom || s == Side::Top)
        throw ConfigError("1D meshes only have left/right boundary sides");

  Mesh m;
  m.dim = dim;
  m.lx = lx;
  m.ly = (dim == 2) ? ly : 1.0;
  m.nx = nx;
  m.ny = (dim == 2) ? ny : 1;

  if (dim == 1) {
    const double h = lx / nx;
    for (int i = 0; i <= nx; ++i) m.nodes.push_back({i * h, 0.0});
    for (int i = 0; i < nx; ++i) {
      m.elems.push_back({i, i + 1, -1});
      m.elem_vol.push_back(h);
      std::array<std::array<double, 2>, 3> g{};
      g[0] = {-1.0 / h, 0.0};
      g[1] = {1.0 / h, 0.0};
      g[2] = {0.0, 0.0};
      m.shape_grad.push_back(g);
    }
  } else {
    const double hx = lx / nx;
    const double hy = ly / ny;
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) m.nodes.push_back({i * hx, j * hy});
    const int w = nx + 1;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int n00 = j * w + i, n10 = n00 + 1, n01 = n00 + w, n11 = n01 + 1;
        for (std::array<int, 3> tri : {std::array<int, 3>{n00, n10, n11},
                                       std::array<int, 3>{n00, n11, n01}}) {
          double area;
          std::array<std::array<double, 2>, 3> g;
          triangle_geometry(m, tri, area, g);
          if (!(area > 0.0)) throw ConfigError("degenerate element in mesh construction");
          m.elems.push_back(tri);
          m.elem_vol.push_back(area);
          m.shape_grad.push_back(g);
        }
      }
  }

  m.dirichlet.assign(m.nodes.size(), false);
  for (Side s : dirichlet_sides)
    for (int n : m.side_nodes(s)) m.dirichlet[n] = true;

  m.node_weight.assign(m.nodes.size(), 0.0);
  const int nv = m.verts_per_elem();
  for (int e = 0; e < m.n_elems(); ++e)
    for (int v = 0; v < nv; ++v) m.node_weight[m.elems[e][v]] += m.elem_vol[e] / nv;

  return m;
}

}  // namespace dampl
