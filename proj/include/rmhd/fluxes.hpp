#ifndef RMHD_FLUXES_HPP_
#define RMHD_FLUXES_HPP_

//! \file fluxes.hpp
//! \brief Two-point numerical fluxes: logarithmic mean, the entropy
//!        conservative flux with zero parallel magnetic component, and the
//!        Lax-Friedrichs entropy stable flux.

#include "rmhd/physics.hpp"
#include "rmhd/types.hpp"

namespace rmhd {

/// Logarithmic mean (a_R - a_L)/(ln a_R - ln a_L) with a series expansion
/// near coincident arguments. Requires positive inputs.
double log_mean(double aL, double aR);

/// Per-state parameter vector (rho, beta, u, b) plus the Lorentz factor,
/// the building block of the entropy conservative flux.
struct ParameterVector {
  double rho = 0.0;
  double beta = 0.0;  // rho/p
  Vec3 u{};           // spatial four-velocity
  Vec3 b{};           // spatial magnetic four-vector
  double W = 1.0;
};

ParameterVector make_parameter_vector(const PrimitiveState &P);

/// Pairwise means and derived coefficients entering the closed-form flux.
/// Exposed so the well-definedness property (Dcal > 0) can be tested.
struct FluxPairMeans {
  double rho_log = 0.0;   // logarithmic mean of rho
  double beta_log = 0.0;  // logarithmic mean of beta
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double tau = 0.0;
  double Dcal = 0.0;  // <beta>(<W>^2 - sum <u^k>^2)/<W>, positive for
                      // admissible pairs
};

FluxPairMeans compute_pair_means(const ParameterVector &L,
                                 const ParameterVector &R,
                                 const EosParams &eos);

/// Entropy conservative two-point flux in direction dir (0=x, 1=y, 2=z).
/// Symmetric, consistent, with the dir-parallel magnetic component exactly
/// zero. The y/z variants permute the states through the x kernel.
State8 ec_flux(int dir, const ConservedState &UL, const ConservedState &UR,
               const EosParams &eos);
State8 ec_flux(int dir, const PrimitiveState &PL, const PrimitiveState &PR,
               const EosParams &eos);

/// x-direction kernel on precomputed parameter vectors (solver hot path).
State8 ec_flux_x(const ParameterVector &L, const ParameterVector &R,
                 const EosParams &eos);

/// Test helper: [V]^T F^EC - [psi_dir] + [Phi]<B_dir>, which an entropy
/// conservative flux drives to zero.
double ec_condition_residual(int dir, const ConservedState &UL,
                             const ConservedState &UR, const EosParams &eos);
double flux_condition_residual(int dir, const PrimitiveState &PL,
                               const PrimitiveState &PR, const State8 &flux,
                               const EosParams &eos);

/// Lax-Friedrichs entropy stable flux with alpha = max of the two states'
/// signal-speed bounds.
State8 es_flux(int dir, const ConservedState &UL, const ConservedState &UR,
               const EosParams &eos);
State8 es_flux(int dir, const PrimitiveState &PL, const PrimitiveState &PR,
               const EosParams &eos);

}  // namespace rmhd

#endif  // RMHD_FLUXES_HPP_
