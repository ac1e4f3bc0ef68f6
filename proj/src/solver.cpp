//! \file solver.cpp
//! \brief Flux-differencing RHS assembly, time step, and FV reference solver.

#include "rmhd/solver.hpp"

#include <atomic>
#include <cmath>
#include <cstring>

#include "rmhd/parallel.hpp"

namespace rmhd {

namespace {

NodeCache make_cache(const PrimitiveState &P, const EosParams &eos, int dim) {
  NodeCache c;
  c.prim = P;
  c.pv = make_parameter_vector(P);
  c.cons = prim_to_cons(P, eos).to_array();
  c.phi_p = phi_prime(entropy_variables(P, eos));
  c.F1 = physical_flux(P, eos, 0);
  if (dim == 2) c.F2 = physical_flux(P, eos, 1);
  c.alpha = max_signal_speed(prim_to_cons(P, eos), eos);
  return c;
}

// EC flux in direction 0/1 straight from cached parameter vectors; the y
// variant shuffles the vector components through the x kernel.
State8 ec_from_cache(int dir, const NodeCache &L, const NodeCache &R,
                     const EosParams &eos) {
  if (dir == 0) return ec_flux_x(L.pv, R.pv, eos);
  auto shuffle = [](const ParameterVector &pv) {
    ParameterVector q = pv;
    q.u = {pv.u[1], pv.u[2], pv.u[0]};
    q.b = {pv.b[1], pv.b[2], pv.b[0]};
    return q;
  };
  const State8 F = ec_flux_x(shuffle(L.pv), shuffle(R.pv), eos);
  return {F[IDN], F[IMX + 2], F[IMX + 0], F[IMX + 1],
          F[IEN], F[IBX + 2], F[IBX + 0], F[IBX + 1]};
}

struct IfaceFlux {
  State8 flux;
  double Bn_L = 0.0, Bn_R = 0.0;  // normal magnetic traces for the source
};

IfaceFlux interface_flux(int dir, const NodeCache &L, const NodeCache &R,
                         const SolverContext &ctx) {
  IfaceFlux f;
  f.Bn_L = L.cons[IBX + dir];
  f.Bn_R = R.cons[IBX + dir];
  if (ctx.flux_mode == FluxMode::ec_everywhere) {
    f.flux = ec_from_cache(dir, L, R, ctx.eos);
    return f;
  }
  const State8 &FL = (dir == 0) ? L.F1 : L.F2;
  const State8 &FR = (dir == 0) ? R.F1 : R.F2;
  const double alpha = std::max(L.alpha, R.alpha);
  for (int k = 0; k < 8; ++k)
    f.flux[k] = 0.5 * (FL[k] + FR[k]) - 0.5 * alpha * (R.cons[k] - L.cons[k]);
  return f;
}

void build_caches(const DGField &U, const SolverContext &ctx,
                  std::vector<NodeCache> &cache) {
  const int nn = U.nodes_per_cell();
  const int ncell = U.mesh.cells();
  cache.resize(static_cast<size_t>(ncell) * nn);
  std::atomic<bool> failed{false};
  parallel_for(ncell, ctx.workers, [&](int lo, int hi) {
    for (int c = lo; c < hi; ++c) {
      for (int q = 0; q < nn; ++q) {
        const double *ptr = U.a.data() + (static_cast<size_t>(c) * nn + q) * 8;
        ConservedState Uq = ConservedState::from_array(U.get(ptr));
        auto P = try_cons_to_prim(Uq, ctx.eos);
        if (!P) {
          failed.store(true, std::memory_order_relaxed);
          continue;
        }
        cache[static_cast<size_t>(c) * nn + q] =
            make_cache(*P, ctx.eos, U.mesh.dim);
      }
    }
  });
  if (failed.load())
    throw recovery_error("compute_rhs: nodal primitive recovery failed");
}

inline int clampi(int v, int lo, int hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

void SolverContext::setup() {
  const int n1 = op.r + 1;
  auto frozen = [&](double x, double y) {
    if (!initial)
      throw physics_error("SolverContext: dirichlet side needs initial data");
    return make_cache(initial(x, y), eos, mesh.dim);
  };
  gx_lo.clear();
  gx_hi.clear();
  gy_lo.clear();
  gy_hi.clear();
  if (mesh.bc_x.type == BcType::dirichlet) {
    if (mesh.dim == 1) {
      gx_lo.push_back(frozen(mesh.xmin, 0.0));
      gx_hi.push_back(frozen(mesh.xmax, 0.0));
    } else {
      DGField probe(mesh, op.r);
      for (int j = 0; j < mesh.Ny; ++j)
        for (int m = 0; m < n1; ++m) {
          const double y = probe.node_y(j, m, op);
          gx_lo.push_back(frozen(mesh.xmin, y));
          gx_hi.push_back(frozen(mesh.xmax, y));
        }
      // de-interleave: even entries are lo, odd are hi
      std::vector<NodeCache> lo2, hi2;
      for (size_t q = 0; q + 1 < gx_lo.size() + 1; q += 2) {
        lo2.push_back(gx_lo[q]);
        hi2.push_back(gx_lo[q + 1]);
      }
      gx_lo.swap(lo2);
      gx_hi.swap(hi2);
    }
  }
  if (mesh.dim == 2 && mesh.bc_y.type == BcType::dirichlet) {
    DGField probe(mesh, op.r);
    for (int i = 0; i < mesh.Nx; ++i)
      for (int l = 0; l < n1; ++l) {
        const double x = probe.node_x(i, l, op);
        gy_lo.push_back(frozen(x, mesh.ymin));
        gy_hi.push_back(frozen(x, mesh.ymax));
      }
  }
}

namespace {

// ---------------------------------------------------------------- 1D RHS --

void rhs_1d_impl(const DGField &U, const SolverContext &ctx, DGField &tend) {
  const int Nx = U.mesh.Nx;
  const int n1 = U.n1();
  const int r = U.r;
  const double dx = U.mesh.dx();
  const QuadratureOperator &op = ctx.op;

  std::vector<NodeCache> cache;
  build_caches(U, ctx, cache);
  auto C = [&](int i, int l) -> const NodeCache & {
    return cache[static_cast<size_t>(i) * n1 + l];
  };

  // Interface fluxes, k = 0..Nx.
  std::vector<IfaceFlux> ifx(static_cast<size_t>(Nx) + 1);
  auto left_of = [&](int k) -> const NodeCache & {
    if (k > 0) return C(k - 1, r);
    switch (ctx.mesh.bc_x.type) {
      case BcType::periodic: return C(Nx - 1, r);
      case BcType::outflow: return C(0, 0);
      case BcType::dirichlet: return ctx.gx_lo[0];
      default: throw physics_error("rhs_1d: unsupported x boundary");
    }
  };
  auto right_of = [&](int k) -> const NodeCache & {
    if (k < Nx) return C(k, 0);
    switch (ctx.mesh.bc_x.type) {
      case BcType::periodic: return C(0, 0);
      case BcType::outflow: return C(Nx - 1, r);
      case BcType::dirichlet: return ctx.gx_hi[0];
      default: throw physics_error("rhs_1d: unsupported x boundary");
    }
  };
  parallel_for(Nx + 1, ctx.workers, [&](int lo, int hi) {
    for (int k = lo; k < hi; ++k)
      ifx[k] = interface_flux(0, left_of(k), right_of(k), ctx);
  });

  tend.a.assign(U.a.size(), 0.0);
  parallel_for(Nx, ctx.workers, [&](int clo, int chi) {
    for (int i = clo; i < chi; ++i) {
      auto T = [&](int l) { return tend.node(i, l); };
      // volume flux differencing: off-diagonal pairs once, diagonal from the
      // cached physical flux (the flux is symmetric and consistent)
      for (int l = 0; l < n1; ++l) {
        for (int p = 0; p < l; ++p) {
          const State8 F = ec_from_cache(0, C(i, p), C(i, l), ctx.eos);
          const double cl = -(4.0 / dx) * op.d(l, p);
          const double cp = -(4.0 / dx) * op.d(p, l);
          double *tl = T(l);
          double *tp = T(p);
          for (int k = 0; k < 8; ++k) {
            tl[k] += cl * F[k];
            tp[k] += cp * F[k];
          }
        }
        const double cd = -(4.0 / dx) * op.d(l, l);
        double *tl = T(l);
        for (int k = 0; k < 8; ++k) tl[k] += cd * C(i, l).F1[k];
      }
      // volume source: -(2/dx) Phi'(V_l) * sum_p D_lp Bx_p
      for (int l = 0; l < n1; ++l) {
        double dBx = 0.0;
        for (int p = 0; p < n1; ++p) dBx += op.d(l, p) * C(i, p).cons[IBX];
        const double cs = -(2.0 / dx) * dBx;
        double *tl = T(l);
        for (int k = 0; k < 8; ++k) tl[k] += cs * C(i, l).phi_p[k];
      }
      // interface correction and source, left node (tau=-1) and right (+1)
      {
        const IfaceFlux &fl = ifx[i];
        const double c0 = (2.0 / dx) * (-1.0 / op.weights[0]);
        const double jmp = C(i, 0).cons[IBX] - fl.Bn_L;
        double *t0 = T(0);
        for (int k = 0; k < 8; ++k)
          t0[k] += c0 * (C(i, 0).F1[k] - fl.flux[k] +
                         0.5 * jmp * C(i, 0).phi_p[k]);
      }
      {
        const IfaceFlux &fr = ifx[i + 1];
        const double cr = (2.0 / dx) * (1.0 / op.weights[r]);
        const double jmp = fr.Bn_R - C(i, r).cons[IBX];
        double *tr = T(r);
        for (int k = 0; k < 8; ++k)
          tr[k] += cr * (C(i, r).F1[k] - fr.flux[k] -
                         0.5 * jmp * C(i, r).phi_p[k]);
      }
    }
  });
}

// ---------------------------------------------------------------- 2D RHS --

void rhs_2d_impl(const DGField &U, const SolverContext &ctx, DGField &tend) {
  const int Nx = U.mesh.Nx, Ny = U.mesh.Ny;
  const int n1 = U.n1();
  const int r = U.r;
  const double dx = U.mesh.dx(), dy = U.mesh.dy();
  const QuadratureOperator &op = ctx.op;

  std::vector<NodeCache> cache;
  build_caches(U, ctx, cache);
  const int nn = n1 * n1;
  auto C = [&](int i, int j, int l, int m) -> const NodeCache & {
    return cache[(static_cast<size_t>(j * Nx + i) * n1 + m) * n1 + l];
  };

  // x interfaces: index ((k*Ny + j)*n1 + m), k = 0..Nx
  std::vector<IfaceFlux> ifx(static_cast<size_t>(Nx + 1) * Ny * n1);
  auto xiface = [&](int k, int j, int m) -> IfaceFlux & {
    return ifx[(static_cast<size_t>(k) * Ny + j) * n1 + m];
  };
  auto x_left = [&](int k, int j, int m) -> const NodeCache & {
    if (k > 0) return C(k - 1, j, r, m);
    switch (ctx.mesh.bc_x.type) {
      case BcType::periodic: return C(Nx - 1, j, r, m);
      case BcType::outflow: return C(0, j, 0, m);
      case BcType::dirichlet: return ctx.gx_lo[static_cast<size_t>(j) * n1 + m];
      default: throw physics_error("rhs_2d: unsupported x boundary");
    }
  };
  auto x_right = [&](int k, int j, int m) -> const NodeCache & {
    if (k < Nx) return C(k, j, 0, m);
    switch (ctx.mesh.bc_x.type) {
      case BcType::periodic: return C(0, j, 0, m);
      case BcType::outflow: return C(Nx - 1, j, r, m);
      case BcType::dirichlet: return ctx.gx_hi[static_cast<size_t>(j) * n1 + m];
      default: throw physics_error("rhs_2d: unsupported x boundary");
    }
  };
  parallel_for(Nx + 1, ctx.workers, [&](int klo, int khi) {
    for (int k = klo; k < khi; ++k)
      for (int j = 0; j < Ny; ++j)
        for (int m = 0; m < n1; ++m)
          xiface(k, j, m) = interface_flux(0, x_left(k, j, m),
                                           x_right(k, j, m), ctx);
  });

  // y interfaces: index ((k*Nx + i)*n1 + l), k = 0..Ny
  std::vector<IfaceFlux> ify(static_cast<size_t>(Ny + 1) * Nx * n1);
  auto yiface = [&](int k, int i, int l) -> IfaceFlux & {
    return ify[(static_cast<size_t>(k) * Nx + i) * n1 + l];
  };
  const int yshift = ctx.mesh.bc_y.shift;
  auto y_below = [&](int k, int i, int l) -> const NodeCache & {
    if (k > 0) return C(i, k - 1, l, r);
    switch (ctx.mesh.bc_y.type) {
      case BcType::periodic: return C(i, Ny - 1, l, r);
      case BcType::outflow: return C(i, 0, l, 0);
      case BcType::dirichlet: return ctx.gy_lo[static_cast<size_t>(i) * n1 + l];
      case BcType::shifted_periodic:
        return C(clampi(i + yshift, 0, Nx - 1), Ny - 1, l, r);
    }
    throw physics_error("rhs_2d: unsupported y boundary");
  };
  auto y_above = [&](int k, int i, int l) -> const NodeCache & {
    if (k < Ny) return C(i, k, l, 0);
    switch (ctx.mesh.bc_y.type) {
      case BcType::periodic: return C(i, 0, l, 0);
      case BcType::outflow: return C(i, Ny - 1, l, r);
      case BcType::dirichlet: return ctx.gy_hi[static_cast<size_t>(i) * n1 + l];
      case BcType::shifted_periodic:
        return C(clampi(i - yshift, 0, Nx - 1), 0, l, 0);
    }
    throw physics_error("rhs_2d: unsupported y boundary");
  };
  parallel_for(Ny + 1, ctx.workers, [&](int klo, int khi) {
    for (int k = klo; k < khi; ++k)
      for (int i = 0; i < Nx; ++i)
        for (int l = 0; l < n1; ++l)
          yiface(k, i, l) = interface_flux(1, y_below(k, i, l),
                                           y_above(k, i, l), ctx);
  });

  tend.a.assign(U.a.size(), 0.0);
  const int ncell = Nx * Ny;
  parallel_for(ncell, ctx.workers, [&](int clo, int chi) {
    for (int c = clo; c < chi; ++c) {
      const int i = c % Nx;
      const int j = c / Nx;
      auto T = [&](int l, int m) {
        return tend.a.data() + ((static_cast<size_t>(c) * n1 + m) * n1 + l) * 8;
      };
      // x-direction volume terms, row by row
      for (int m = 0; m < n1; ++m) {
        for (int l = 0; l < n1; ++l) {
          for (int p = 0; p < l; ++p) {
            const State8 F = ec_from_cache(0, C(i, j, p, m), C(i, j, l, m),
                                           ctx.eos);
            const double cl = -(4.0 / dx) * op.d(l, p);
            const double cp = -(4.0 / dx) * op.d(p, l);
            double *tl = T(l, m);
            double *tp = T(p, m);
            for (int k = 0; k < 8; ++k) {
              tl[k] += cl * F[k];
              tp[k] += cp * F[k];
            }
          }
          const double cd = -(4.0 / dx) * op.d(l, l);
          double *tl = T(l, m);
          for (int k = 0; k < 8; ++k) tl[k] += cd * C(i, j, l, m).F1[k];
          double dBx = 0.0;
          for (int p = 0; p < n1; ++p)
            dBx += op.d(l, p) * C(i, j, p, m).cons[IBX];
          const double cs = -(2.0 / dx) * dBx;
          for (int k = 0; k < 8; ++k) tl[k] += cs * C(i, j, l, m).phi_p[k];
        }
      }
      // y-direction volume terms, column by column
      for (int l = 0; l < n1; ++l) {
        for (int m = 0; m < n1; ++m) {
          for (int q = 0; q < m; ++q) {
            const State8 F = ec_from_cache(1, C(i, j, l, q), C(i, j, l, m),
                                           ctx.eos);
            const double cm = -(4.0 / dy) * op.d(m, q);
            const double cq = -(4.0 / dy) * op.d(q, m);
            double *tm = T(l, m);
            double *tq = T(l, q);
            for (int k = 0; k < 8; ++k) {
              tm[k] += cm * F[k];
              tq[k] += cq * F[k];
            }
          }
          const double cd = -(4.0 / dy) * op.d(m, m);
          double *tm = T(l, m);
          for (int k = 0; k < 8; ++k) tm[k] += cd * C(i, j, l, m).F2[k];
          double dBy = 0.0;
          for (int q = 0; q < n1; ++q)
            dBy += op.d(m, q) * C(i, j, l, q).cons[IBY];
          const double cs = -(2.0 / dy) * dBy;
          for (int k = 0; k < 8; ++k) tm[k] += cs * C(i, j, l, m).phi_p[k];
        }
      }
      // x-interface corrections
      for (int m = 0; m < n1; ++m) {
        const IfaceFlux &fl = xiface(i, j, m);
        const double c0 = (2.0 / dx) * (-1.0 / op.weights[0]);
        const double jl = C(i, j, 0, m).cons[IBX] - fl.Bn_L;
        double *t0 = T(0, m);
        for (int k = 0; k < 8; ++k)
          t0[k] += c0 * (C(i, j, 0, m).F1[k] - fl.flux[k] +
                         0.5 * jl * C(i, j, 0, m).phi_p[k]);
        const IfaceFlux &fr = xiface(i + 1, j, m);
        const double cr = (2.0 / dx) * (1.0 / op.weights[r]);
        const double jr = fr.Bn_R - C(i, j, r, m).cons[IBX];
        double *tr = T(r, m);
        for (int k = 0; k < 8; ++k)
          tr[k] += cr * (C(i, j, r, m).F1[k] - fr.flux[k] -
                         0.5 * jr * C(i, j, r, m).phi_p[k]);
      }
      // y-interface corrections
      for (int l = 0; l < n1; ++l) {
        const IfaceFlux &fb = yiface(j, i, l);
        const double c0 = (2.0 / dy) * (-1.0 / op.weights[0]);
        const double jb = C(i, j, l, 0).cons[IBY] - fb.Bn_L;
        double *t0 = T(l, 0);
        for (int k = 0; k < 8; ++k)
          t0[k] += c0 * (C(i, j, l, 0).F2[k] - fb.flux[k] +
                         0.5 * jb * C(i, j, l, 0).phi_p[k]);
        const IfaceFlux &ft = yiface(j + 1, i, l);
        const double ct = (2.0 / dy) * (1.0 / op.weights[r]);
        const double jt = ft.Bn_R - C(i, j, l, r).cons[IBY];
        double *tr = T(l, r);
        for (int k = 0; k < 8; ++k)
          tr[k] += ct * (C(i, j, l, r).F2[k] - ft.flux[k] -
                         0.5 * jt * C(i, j, l, r).phi_p[k]);
      }
    }
  });
  (void)nn;
}

}  // namespace

void compute_rhs(const DGField &U, const SolverContext &ctx, DGField &tend) {
  tend.mesh = U.mesh;
  tend.r = U.r;
  if (U.mesh.dim == 1)
    rhs_1d_impl(U, ctx, tend);
  else
    rhs_2d_impl(U, ctx, tend);
}

DGField rhs_1d(const DGField &U, const SolverContext &ctx) {
  DGField t(U.mesh, U.r);
  rhs_1d_impl(U, ctx, t);
  return t;
}

DGField rhs_2d(const DGField &U, const SolverContext &ctx) {
  DGField t(U.mesh, U.r);
  rhs_2d_impl(U, ctx, t);
  return t;
}

double compute_dt(const DGField &U, const EosParams &eos, double cfl) {
  if (U.a.empty()) throw physics_error("compute_dt: empty field");
  const int nn = U.nodes_per_cell();
  double amax = 0.0;
  for (int c = 0; c < U.mesh.cells(); ++c)
    for (int q = 0; q < nn; ++q) {
      const double *ptr = U.a.data() + (static_cast<size_t>(c) * nn + q) * 8;
      amax = std::max(
          amax, max_signal_speed(ConservedState::from_array(U.get(ptr)), eos));
    }
  const double h =
      U.mesh.dim == 1 ? U.mesh.dx() : std::min(U.mesh.dx(), U.mesh.dy());
  return cfl * h / amax;
}

FvProfile fv_reference_solve(
    const std::function<PrimitiveState(double)> &init, double xmin,
    double xmax, const EosParams &eos, int cells, double t_end, double cfl) {
  const double dx = (xmax - xmin) / cells;
  std::vector<State8> U(cells);
  std::vector<PrimitiveState> P(cells);
  for (int i = 0; i < cells; ++i) {
    P[i] = init(xmin + (i + 0.5) * dx);
    U[i] = prim_to_cons(P[i], eos).to_array();
  }
  std::vector<State8> F(cells + 1);
  std::vector<State8> Fphys(cells);
  double t = 0.0;
  const int workers = 2;
  while (t < t_end) {
    const double dt = std::min(cfl * dx, t_end - t);
    parallel_for(cells, workers, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i)
        Fphys[i] = physical_flux(P[i], eos, 0);
    });
    // local Lax-Friedrichs with the light-speed bound
    auto llf = [&](const State8 &ul, const State8 &fl, const State8 &ur,
                   const State8 &fr) {
      State8 f;
      for (int k = 0; k < 8; ++k)
        f[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * (ur[k] - ul[k]);
      return f;
    };
    F[0] = llf(U[0], Fphys[0], U[0], Fphys[0]);
    F[cells] = llf(U[cells - 1], Fphys[cells - 1], U[cells - 1],
                   Fphys[cells - 1]);
    parallel_for(cells - 1, workers, [&](int lo, int hi) {
      for (int k = lo; k < hi; ++k)
        F[k + 1] = llf(U[k], Fphys[k], U[k + 1], Fphys[k + 1]);
    });
    std::atomic<bool> failed{false};
    parallel_for(cells, workers, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        for (int k = 0; k < 8; ++k)
          U[i][k] -= dt / dx * (F[i + 1][k] - F[i][k]);
        auto prim = try_cons_to_prim(ConservedState::from_array(U[i]), eos);
        if (!prim) {
          failed.store(true, std::memory_order_relaxed);
          continue;
        }
        P[i] = *prim;
      }
    });
    if (failed.load())
      throw recovery_error("fv_reference_solve: recovery failed");
    t += dt;
  }
  FvProfile out;
  out.xmin = xmin;
  out.dx = dx;
  out.prim = std::move(P);
  return out;
}

}  // namespace rmhd
