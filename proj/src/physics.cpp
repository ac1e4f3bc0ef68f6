//! \file physics.cpp
//! \brief RMHD state algebra and primitive recovery.

#include "rmhd/physics.hpp"

#include <algorithm>
#include <cmath>

namespace rmhd {

double lorentz_factor(const Vec3 &v) {
  const double vv = norm2(v);
  if (!(vv < 1.0)) throw physics_error("lorentz_factor: |v|^2 >= 1");
  return 1.0 / std::sqrt(1.0 - vv);
}

AuxiliaryState auxiliaries(const PrimitiveState &P, const EosParams &eos) {
  if (!P.admissible()) throw physics_error("auxiliaries: inadmissible state");
  AuxiliaryState a;
  a.W = lorentz_factor(P.v);
  const double vB = dot(P.v, P.B);
  for (int k = 0; k < 3; ++k) {
    a.u[k] = a.W * P.v[k];
    a.b[k] = P.B[k] / a.W + a.W * P.v[k] * vB;
  }
  a.b0 = a.W * vB;
  a.bsq = norm2(P.B) / (a.W * a.W) + vB * vB;
  a.h = 1.0 + eos.gamma / eos.gm1() * P.p / P.rho;
  a.s = std::log(P.p) - eos.gamma * std::log(P.rho);
  a.pt = P.p + 0.5 * a.bsq;
  return a;
}

ConservedState prim_to_cons(const PrimitiveState &P, const EosParams &eos) {
  const AuxiliaryState a = auxiliaries(P, eos);
  const double BB = norm2(P.B);
  const double vB = dot(P.v, P.B);
  const double wgas = P.rho * a.h * a.W * a.W;  // rho h W^2
  ConservedState U;
  U.D = P.rho * a.W;
  for (int k = 0; k < 3; ++k) U.m[k] = (wgas + BB) * P.v[k] - vB * P.B[k];
  U.E = wgas - a.pt + BB;
  U.B = P.B;
  return U;
}

namespace {

// Recovery residual pieces for xi = rho h W^2, given invariants of U.
struct RecoveryGeometry {
  double D, E, BB, M2, S;  // S = m.B
};

// |v|^2 as a function of xi; also returns d|v|^2/dxi.
inline void velocity_sq(const RecoveryGeometry &g, double xi, double &v2,
                        double &dv2) {
  const double A = xi + g.BB;
  const double N = g.M2 + g.S * g.S * (2.0 * xi + g.BB) / (xi * xi);
  const double dN = -2.0 * g.S * g.S * (1.0 / (xi * xi) + g.BB / (xi * xi * xi));
  v2 = N / (A * A);
  dv2 = dN / (A * A) - 2.0 * N / (A * A * A);
}

}  // namespace

std::optional<PrimitiveState> try_cons_to_prim(const ConservedState &U,
                                               const EosParams &eos) noexcept {
  if (!(U.D > 0.0) || !std::isfinite(U.D) || !std::isfinite(U.E))
    return std::nullopt;
  RecoveryGeometry g;
  g.D = U.D;
  g.E = U.E;
  g.BB = norm2(U.B);
  g.M2 = norm2(U.m);
  g.S = dot(U.m, U.B);

  const double gfac = eos.gm1() / eos.gamma;
  const double scale = std::max({1.0, std::fabs(g.E), g.D, g.BB});
  const double ftol = 1e-12 * scale;

  // f(xi) = xi - p(xi) + |B|^2 - |B|^2/(2W^2) - S^2/(2 xi^2) - E, with
  // p(xi) = (Gamma-1)/Gamma (xi/W^2 - D/W). Evaluable only where |v|^2 < 1.
  auto eval = [&](double xi, double &f, double &df) -> bool {
    if (!(xi > 0.0) || !std::isfinite(xi)) return false;
    double v2, dv2;
    velocity_sq(g, xi, v2, dv2);
    if (!(v2 < 1.0)) return false;
    const double iW2 = 1.0 - v2;
    const double W = 1.0 / std::sqrt(iW2);
    const double p = gfac * (xi * iW2 - g.D / W);
    const double dp = gfac * (iW2 - xi * dv2 + 0.5 * g.D * W * dv2);
    f = xi - p + g.BB - 0.5 * g.BB * iW2 - 0.5 * g.S * g.S / (xi * xi) - g.E;
    df = 1.0 - dp + 0.5 * g.BB * dv2 + g.S * g.S / (xi * xi * xi);
    return true;
  };

  // Bracket the root. The high end is safe for large xi (|v| -> 0 there).
  double hi = std::max({g.E, g.D, 1.0}) + g.BB + std::sqrt(g.M2) + 1.0;
  double fhi, dfhi;
  int guard = 0;
  while (!eval(hi, fhi, dfhi) || fhi < 0.0) {
    hi *= 2.0;
    if (++guard > 120 || !std::isfinite(hi)) return std::nullopt;
  }
  // Walk the low end down until the sign flips or the state turns
  // inadmissible (which also means the root lies above).
  double lo = hi;
  double flo = fhi;
  guard = 0;
  while (true) {
    const double trial = 0.5 * lo;
    double f, df;
    if (!eval(trial, f, df)) break;  // inadmissible side: root is above trial
    lo = trial;
    flo = f;
    if (f < 0.0) break;
    if (++guard > 160) return std::nullopt;
  }
  double lo_b = (flo < 0.0) ? lo : 0.5 * lo;  // inadmissible low side allowed

  // Safeguarded Newton within [lo_b, hi].
  double xi = 0.5 * (lo_b + hi);
  double f = 0.0, df = 1.0;
  bool have = eval(xi, f, df);
  for (int it = 0; it < 200; ++it) {
    if (have && std::fabs(f) <= ftol) break;
    double next;
    if (have && df != 0.0) {
      next = xi - f / df;
      if (!(next > lo_b && next < hi)) next = 0.5 * (lo_b + hi);
    } else {
      next = 0.5 * (lo_b + hi);
    }
    double fn, dfn;
    const bool ok = eval(next, fn, dfn);
    if (ok) {
      if (fn > 0.0)
        hi = next;
      else
        lo_b = next;
    } else {
      lo_b = next;  // not evaluable => below the admissible range
    }
    xi = next;
    f = fn;
    df = dfn;
    have = ok;
    if (hi - lo_b <= 1e-15 * hi && have) break;
  }
  if (!have || std::fabs(f) > 1e3 * ftol) return std::nullopt;

  double v2, dv2;
  velocity_sq(g, xi, v2, dv2);
  if (!(v2 < 1.0)) return std::nullopt;
  const double W = 1.0 / std::sqrt(1.0 - v2);
  PrimitiveState P;
  const double sxi = g.S / xi;
  const double denom = xi + g.BB;
  for (int k = 0; k < 3; ++k) P.v[k] = (U.m[k] + sxi * U.B[k]) / denom;
  P.rho = g.D / W;
  P.p = gfac * (xi / (W * W) - g.D / W);
  P.B = U.B;
  if (!P.admissible()) return std::nullopt;
  return P;
}

PrimitiveState cons_to_prim(const ConservedState &U, const EosParams &eos) {
  auto P = try_cons_to_prim(U, eos);
  if (!P) throw recovery_error("cons_to_prim: recovery failed");
  return *P;
}

EntropyPair entropy_pair(const PrimitiveState &P, const EosParams &eos) {
  const AuxiliaryState a = auxiliaries(P, eos);
  EntropyPair ep;
  ep.eta = -P.rho * a.W * a.s / eos.gm1();
  for (int k = 0; k < 3; ++k) ep.q[k] = P.v[k] * ep.eta;
  return ep;
}

EntropyPair entropy_pair(const ConservedState &U, const EosParams &eos) {
  return entropy_pair(cons_to_prim(U, eos), eos);
}

EntropyVars entropy_variables(const PrimitiveState &P, const EosParams &eos) {
  const AuxiliaryState a = auxiliaries(P, eos);
  const double rp = P.rho / P.p;
  return {(eos.gamma - a.s) / eos.gm1() + rp,
          rp * a.u[0],
          rp * a.u[1],
          rp * a.u[2],
          -rp * a.W,
          rp * a.b[0],
          rp * a.b[1],
          rp * a.b[2]};
}

EntropyVars entropy_variables(const ConservedState &U, const EosParams &eos) {
  return entropy_variables(cons_to_prim(U, eos), eos);
}

double phi(const EntropyVars &V) {
  return -(V[1] * V[5] + V[2] * V[6] + V[3] * V[7]) / V[4];
}

State8 phi_prime(const EntropyVars &V) {
  const double iW = -1.0 / V[4];  // 1/(rho W / p)
  const double vB = phi(V) * iW;
  return {0.0,        V[5] * iW, V[6] * iW, V[7] * iW,
          vB,         V[1] * iW, V[2] * iW, V[3] * iW};
}

double entropy_potential(const PrimitiveState &P, const EosParams &eos,
                         int dir) {
  const AuxiliaryState a = auxiliaries(P, eos);
  return P.rho * P.v[dir] * a.W * (1.0 + 0.5 * a.bsq / P.p);
}

State8 physical_flux(const PrimitiveState &P, const EosParams &eos, int dir) {
  const AuxiliaryState a = auxiliaries(P, eos);
  const double BB = norm2(P.B);
  const double vB = dot(P.v, P.B);
  const double wgas = P.rho * a.h * a.W * a.W;
  Vec3 m;
  for (int k = 0; k < 3; ++k) m[k] = (wgas + BB) * P.v[k] - vB * P.B[k];
  const double vk = P.v[dir];
  const double Bk = P.B[dir];
  State8 F;
  F[IDN] = P.rho * a.W * vk;
  for (int k = 0; k < 3; ++k) {
    F[IMX + k] =
        m[k] * vk - Bk * (P.B[k] / (a.W * a.W) + vB * P.v[k]);
    F[IBX + k] = vk * P.B[k] - Bk * P.v[k];
  }
  F[IMX + dir] += a.pt;
  F[IEN] = m[dir];
  F[IBX + dir] = 0.0;  // v_k B_k - B_k v_k, exactly
  return F;
}

State8 physical_flux(const ConservedState &U, const EosParams &eos, int dir) {
  return physical_flux(cons_to_prim(U, eos), eos, dir);
}

double max_signal_speed(const ConservedState &U, const EosParams &eos) {
  (void)U;
  (void)eos;
  return 1.0;  // light-speed bound, always valid
}

}  // namespace rmhd
