#ifndef RMHD_PHYSICS_HPP_
#define RMHD_PHYSICS_HPP_

//! \file physics.hpp
//! \brief RMHD state algebra: variable conversions, entropy pair and entropy
//!        variables, Godunov-Powell potential, entropy potential, physical
//!        fluxes, and the signal-speed bound.

#include <optional>

#include "rmhd/types.hpp"

namespace rmhd {

/// Lorentz factor W = 1/sqrt(1 - |v|^2). Throws for |v|^2 >= 1.
double lorentz_factor(const Vec3 &v);

AuxiliaryState auxiliaries(const PrimitiveState &P, const EosParams &eos);

ConservedState prim_to_cons(const PrimitiveState &P, const EosParams &eos);

/// Primitive recovery. Solves the scalar equation for xi = rho h W^2 with a
/// safeguarded Newton iteration (bisection fallback), residual tolerance
/// 1e-12 relative, at most 200 iterations. Returns nullopt on failure.
std::optional<PrimitiveState> try_cons_to_prim(const ConservedState &U,
                                               const EosParams &eos) noexcept;

/// Throwing wrapper around try_cons_to_prim.
PrimitiveState cons_to_prim(const ConservedState &U, const EosParams &eos);

/// Entropy pair (eta, q) with eta = -rho W s/(Gamma-1), q_k = v_k eta.
struct EntropyPair {
  double eta;
  Vec3 q;
};
EntropyPair entropy_pair(const PrimitiveState &P, const EosParams &eos);
EntropyPair entropy_pair(const ConservedState &U, const EosParams &eos);

EntropyVars entropy_variables(const PrimitiveState &P, const EosParams &eos);
EntropyVars entropy_variables(const ConservedState &U, const EosParams &eos);

/// Godunov-Powell potential Phi = rho W (v.B)/p, evaluated from the entropy
/// variables: Phi = -(V2 V6 + V3 V7 + V4 V8)/V5.
double phi(const EntropyVars &V);

/// Gradient of Phi with respect to V: (0, b/W, v.B, v). Well defined for any
/// V coming from an admissible state (V5 < 0).
State8 phi_prime(const EntropyVars &V);

/// Entropy potential psi_k = V.F_k + Phi B_k - q_k = rho v_k W (1 + bsq/(2p)).
double entropy_potential(const PrimitiveState &P, const EosParams &eos, int dir);

/// Physical flux F_k, k = dir in {0,1,2}. The component carrying B_k itself
/// is exactly zero.
State8 physical_flux(const PrimitiveState &P, const EosParams &eos, int dir);
State8 physical_flux(const ConservedState &U, const EosParams &eos, int dir);

/// Upper bound on the spectral radius of dF_k/dU + Phi' dB_k/dU. The default
/// returns the light-speed bound 1, valid for every admissible state.
double max_signal_speed(const ConservedState &U, const EosParams &eos);

}  // namespace rmhd

#endif  // RMHD_PHYSICS_HPP_
