#ifndef RMHD_MESH_HPP_
#define RMHD_MESH_HPP_

//! \file mesh.hpp
//! \brief Structured 1D/2D mesh, boundary tags, and the nodal DG field.

#include <cstddef>
#include <functional>
#include <vector>

#include "rmhd/sbp.hpp"
#include "rmhd/types.hpp"

namespace rmhd {

enum class BcType { periodic, outflow, dirichlet, shifted_periodic };

struct BoundaryCondition {
  BcType type = BcType::periodic;
  int shift = 0;  // shifted_periodic only: cell offset along x per y-period
};

struct Mesh {
  int dim = 1;
  int Nx = 1, Ny = 1;
  double xmin = 0.0, xmax = 1.0;
  double ymin = 0.0, ymax = 1.0;
  BoundaryCondition bc_x{};  // left/right pair share a tag
  BoundaryCondition bc_y{};

  double dx() const { return (xmax - xmin) / Nx; }
  double dy() const { return (ymax - ymin) / Ny; }
  int cells() const { return dim == 1 ? Nx : Nx * Ny; }
};

/// Per-cell tensor-product LGL nodal values of the conserved 8-vector.
/// Layout: cell-major, x-node fastest: ((cell*(r+1)+m)*(r+1)+l)*8 in 2D.
struct DGField {
  Mesh mesh;
  int r = 2;
  std::vector<double> a;

  DGField() = default;
  DGField(const Mesh &m, int degree) : mesh(m), r(degree) {
    const int nn = nodes_per_cell();
    a.assign(static_cast<size_t>(m.cells()) * nn * 8, 0.0);
  }

  int n1() const { return r + 1; }
  int nodes_per_cell() const { return mesh.dim == 1 ? n1() : n1() * n1(); }
  size_t total_nodes() const {
    return static_cast<size_t>(mesh.cells()) * nodes_per_cell();
  }

  int cell_index(int i, int j = 0) const {
    return mesh.dim == 1 ? i : j * mesh.Nx + i;
  }
  // 1D node address
  double *node(int i, int l) {
    return a.data() + (static_cast<size_t>(i) * n1() + l) * 8;
  }
  const double *node(int i, int l) const {
    return a.data() + (static_cast<size_t>(i) * n1() + l) * 8;
  }
  // 2D node address, l along x, m along y
  double *node(int i, int j, int l, int m) {
    return a.data() +
           ((static_cast<size_t>(cell_index(i, j)) * n1() + m) * n1() + l) * 8;
  }
  const double *node(int i, int j, int l, int m) const {
    return a.data() +
           ((static_cast<size_t>(cell_index(i, j)) * n1() + m) * n1() + l) * 8;
  }

  State8 get(const double *ptr) const {
    State8 s;
    for (int k = 0; k < 8; ++k) s[k] = ptr[k];
    return s;
  }
  static void put(double *ptr, const State8 &s) {
    for (int k = 0; k < 8; ++k) ptr[k] = s[k];
  }

  double node_x(int i, int l, const QuadratureOperator &op) const {
    return mesh.xmin + (i + 0.5 * (1.0 + op.nodes[l])) * mesh.dx();
  }
  double node_y(int j, int m, const QuadratureOperator &op) const {
    return mesh.ymin + (j + 0.5 * (1.0 + op.nodes[m])) * mesh.dy();
  }
};

/// Nodal interpolation of primitive initial data at the LGL points.
void project_initial(DGField &f, const QuadratureOperator &op,
                     const EosParams &eos,
                     const std::function<PrimitiveState(double, double)> &init);

}  // namespace rmhd

#endif  // RMHD_MESH_HPP_
