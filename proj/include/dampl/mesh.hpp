#ifndef DAMPL_MESH_HPP
#define DAMPL_MESH_HPP

#include <array>
#include <set>
#include <vector>

#include "dampl/error.hpp"

namespace dampl {

enum class Side { Left, Right, Bottom, Top };

const char* side_name(Side s);
Side side_from_name(const std::string& name);

// Structured P1 mesh: 1D interval or 2D rectangle split into triangles.
struct Mesh {
  int dim = 1;
  double lx = 1.0, ly = 1.0;
  int nx = 1, ny = 1;

  std::vector<std::array<double, 2>> nodes;        // (x, y); y = 0 in 1D
  std::vector<std::array<int, 3>> elems;           // 1D: third index = -1
  std::vector<double> elem_vol;                    // length / area
  std::vector<std::array<std::array<double, 2>, 3>> shape_grad;  // per elem, per vertex
  std::vector<bool> dirichlet;                     // per node
  std::vector<double> node_weight;                 // lumped quadrature weight

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_elems() const { return static_cast<int>(elems.size()); }
  int verts_per_elem() const { return dim + 1; }
  double volume() const { return dim == 1 ? lx : lx * ly; }

  std::vector<int> side_nodes(Side s) const;
  // 2D boundary edges of a side as node pairs; empty in 1D.
  std::vector<std::array<int, 2>> side_edges(Side s) const;
};

Mesh build_mesh(int dim, double lx, double ly, int nx, int ny, const std::set<Side>& dirichlet_sides);

}  // namespace dampl

#endif
