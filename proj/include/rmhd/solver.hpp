#ifndef RMHD_SOLVER_HPP_
#define RMHD_SOLVER_HPP_

//! \file solver.hpp
//! \brief Semi-discrete RHS assembly (1D and 2D), CFL time step, SSP-RK3
//!        stepping, and the first-order finite-volume reference solver.

#include <functional>
#include <vector>

#include "rmhd/fluxes.hpp"
#include "rmhd/mesh.hpp"
#include "rmhd/physics.hpp"
#include "rmhd/sbp.hpp"

namespace rmhd {

enum class FluxMode { es_interfaces, ec_everywhere };

/// Per-node recovered quantities reused across the RHS assembly.
struct NodeCache {
  ParameterVector pv;
  State8 cons;
  State8 phi_p;  // Phi'(V)
  State8 F1;     // physical flux, x
  State8 F2;     // physical flux, y (2D only)
  double alpha = 1.0;
  PrimitiveState prim;
};

struct SolverContext {
  Mesh mesh;
  QuadratureOperator op;
  EosParams eos;
  FluxMode flux_mode = FluxMode::es_interfaces;
  int workers = 1;
  // Initial data, needed only when a side is dirichlet (frozen ghosts).
  std::function<PrimitiveState(double, double)> initial;

  // Frozen dirichlet ghost caches (built by setup()).
  std::vector<NodeCache> gx_lo, gx_hi;  // per (j,m); size Ny*(r+1) (1 in 1D)
  std::vector<NodeCache> gy_lo, gy_hi;  // per (i,l); size Nx*(r+1)

  void setup();
};

/// Semi-discrete tendency dU/dt. Dispatches on mesh dimension; throws
/// recovery_error when any nodal state cannot be recovered.
void compute_rhs(const DGField &U, const SolverContext &ctx, DGField &tend);

/// Thin wrappers matching the 1D/2D operation split.
DGField rhs_1d(const DGField &U, const SolverContext &ctx);
DGField rhs_2d(const DGField &U, const SolverContext &ctx);

/// dt = cfl * min(dx, dy) / max nodal signal bound. Throws on empty field.
double compute_dt(const DGField &U, const EosParams &eos, double cfl);

/// One SSP-RK3 step: the limiter pipeline (post_stage) runs after each stage.
template <class RhsFn, class PostFn>
void ssp_rk3_step(DGField &U, double dt, RhsFn &&rhs, PostFn &&post_stage) {
  const size_t n = U.a.size();
  DGField U0 = U;
  DGField k(U.mesh, U.r);
  rhs(U, k);
  for (size_t q = 0; q < n; ++q) U.a[q] = U0.a[q] + dt * k.a[q];
  post_stage(U);
  rhs(U, k);
  for (size_t q = 0; q < n; ++q)
    U.a[q] = 0.75 * U0.a[q] + 0.25 * (U.a[q] + dt * k.a[q]);
  post_stage(U);
  rhs(U, k);
  for (size_t q = 0; q < n; ++q)
    U.a[q] = (1.0 / 3.0) * U0.a[q] + (2.0 / 3.0) * (U.a[q] + dt * k.a[q]);
  post_stage(U);
}

/// First-order Lax-Friedrichs finite-volume profile for 1D reference runs.
struct FvProfile {
  double xmin = 0.0, dx = 0.0;
  std::vector<PrimitiveState> prim;

  const PrimitiveState &at(double x) const {
    int i = static_cast<int>((x - xmin) / dx);
    if (i < 0) i = 0;
    if (i >= static_cast<int>(prim.size()))
      i = static_cast<int>(prim.size()) - 1;
    return prim[static_cast<size_t>(i)];
  }
};

FvProfile fv_reference_solve(
    const std::function<PrimitiveState(double)> &init, double xmin,
    double xmax, const EosParams &eos, int cells, double t_end,
    double cfl = 0.8);

}  // namespace rmhd

#endif  // RMHD_SOLVER_HPP_
