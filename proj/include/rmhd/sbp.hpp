#ifndef RMHD_SBP_HPP_
#define RMHD_SBP_HPP_

//! \file sbp.hpp
//! \brief Legendre-Gauss-Lobatto quadrature and the summation-by-parts
//!        difference operator for nodal DG of degree r.

#include <vector>

#include "rmhd/types.hpp"

namespace rmhd {

struct QuadratureOperator {
  int r = 0;                    // polynomial degree; r+1 nodes
  std::vector<double> nodes;    // sorted, endpoints -1 and 1
  std::vector<double> weights;  // positive, sum to 2
  std::vector<double> D;        // (r+1)x(r+1) row-major, D_jl = L_l'(xi_j)

  int n() const { return r + 1; }
  double d(int j, int l) const { return D[j * (r + 1) + l]; }
  /// Boundary matrix diagonal: -1 at the left node, +1 at the right, else 0.
  double tau(int l) const { return l == 0 ? -1.0 : (l == r ? 1.0 : 0.0); }
};

/// Build the LGL operator for degree r in [1, 8]. Nodes from Newton on the
/// Legendre derivative with Chebyshev initial guesses; weights
/// 2/(r(r+1) P_r(xi)^2); D from barycentric differentiation.
QuadratureOperator build_operator(int r);

/// Max-entry residual of the SBP identity M D + D^T M - B.
double sbp_residual(const QuadratureOperator &op);

}  // namespace rmhd

#endif  // RMHD_SBP_HPP_
