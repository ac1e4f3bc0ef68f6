//! \file sbp.cpp
//! \brief LGL nodes, weights, and the SBP difference matrix.

#include "rmhd/sbp.hpp"

#include <cmath>

namespace rmhd {

namespace {

// Legendre P_r(x) and P_r'(x) by recurrence.
void legendre(int r, double x, double &P, double &dP) {
  double p0 = 1.0, p1 = x;
  double d0 = 0.0, d1 = 1.0;
  if (r == 0) {
    P = p0;
    dP = d0;
    return;
  }
  for (int n = 1; n < r; ++n) {
    const double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
    const double d2 = ((2 * n + 1) * (p1 + x * d1) - n * d0) / (n + 1);
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  P = p1;
  dP = d1;
}

}  // namespace

QuadratureOperator build_operator(int r) {
  if (r < 1 || r > 8) throw physics_error("build_operator: r out of [1,8]");
  QuadratureOperator op;
  op.r = r;
  const int n = r + 1;
  op.nodes.assign(n, 0.0);
  op.nodes[0] = -1.0;
  op.nodes[r] = 1.0;
  // Interior nodes: roots of P_r'. Newton with P_r'' from the Legendre ODE,
  // Chebyshev-Lobatto starting points, tolerance 1e-15.
  for (int j = 1; j < r; ++j) {
    double x = -std::cos(M_PI * j / r);
    for (int it = 0; it < 100; ++it) {
      double P, dP;
      legendre(r, x, P, dP);
      const double d2P = (2.0 * x * dP - r * (r + 1) * P) / (1.0 - x * x);
      const double step = dP / d2P;
      x -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    op.nodes[j] = x;
  }
  // Symmetrize to kill the last odd rounding.
  for (int j = 0; j < n / 2; ++j) {
    const double s = 0.5 * (op.nodes[j] - op.nodes[r - j]);
    op.nodes[j] = s;
    op.nodes[r - j] = -s;
  }
  if (n % 2 == 1) op.nodes[r / 2] = 0.0;

  op.weights.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double P, dP;
    legendre(r, op.nodes[j], P, dP);
    op.weights[j] = 2.0 / (r * (r + 1) * P * P);
  }

  // Barycentric weights, then D_jl = (w_l/w_j)/(xi_j - xi_l), row sums zero.
  std::vector<double> bw(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (l != j) bw[j] *= (op.nodes[j] - op.nodes[l]);
  for (int j = 0; j < n; ++j) bw[j] = 1.0 / bw[j];

  op.D.assign(n * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      const double v = (bw[l] / bw[j]) / (op.nodes[j] - op.nodes[l]);
      op.D[j * n + l] = v;
      diag -= v;
    }
    op.D[j * n + j] = diag;
  }
  return op;
}

double sbp_residual(const QuadratureOperator &op) {
  const int n = op.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const double md = op.weights[j] * op.d(j, l);
      const double dtm = op.d(l, j) * op.weights[l];
      const double b = (j == l) ? op.tau(j) : 0.0;
      worst = std::max(worst, std::fabs(md + dtm - b));
    }
  }
  return worst;
}

}  // namespace rmhd
