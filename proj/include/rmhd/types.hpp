#ifndef RMHD_TYPES_HPP_
#define RMHD_TYPES_HPP_

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmhd {

using Vec3 = std::array<double, 3>;
using State8 = std::array<double, 8>;

// Conserved component layout: U = (D, mx, my, mz, E, Bx, By, Bz).
enum StateIndex : int {
  IDN = 0,
  IMX = 1,
  IMY = 2,
  IMZ = 3,
  IEN = 4,
  IBX = 5,
  IBY = 6,
  IBZ = 7
};

inline double dot(const Vec3 &a, const Vec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3 &a) { return dot(a, a); }

struct EosParams {
  double gamma = 5.0 / 3.0;  // adiabatic index, must lie in (1, 2]

  bool valid() const { return gamma > 1.0 && gamma <= 2.0; }
  double gm1() const { return gamma - 1.0; }
};

struct PrimitiveState {
  double rho = 0.0;
  Vec3 v{0.0, 0.0, 0.0};
  double p = 0.0;
  Vec3 B{0.0, 0.0, 0.0};

  bool admissible() const {
    return rho > 0.0 && p > 0.0 && norm2(v) < 1.0 && std::isfinite(rho) &&
           std::isfinite(p);
  }
};

struct ConservedState {
  double D = 0.0;
  Vec3 m{0.0, 0.0, 0.0};
  double E = 0.0;
  Vec3 B{0.0, 0.0, 0.0};

  State8 to_array() const { return {D, m[0], m[1], m[2], E, B[0], B[1], B[2]}; }
  static ConservedState from_array(const State8 &a) {
    return {a[IDN], {a[IMX], a[IMY], a[IMZ]}, a[IEN], {a[IBX], a[IBY], a[IBZ]}};
  }
};

// Derived per-point quantities shared by the entropy machinery.
struct AuxiliaryState {
  double W = 1.0;    // Lorentz factor
  Vec3 u{};          // spatial four-velocity, u^k = W v^k
  double b0 = 0.0;   // time component of the magnetic four-vector, W (v.B)
  Vec3 b{};          // spatial magnetic four-vector, B/W + W v (v.B)
  double bsq = 0.0;  // b_alpha b^alpha = |B|^2/W^2 + (v.B)^2
  double h = 0.0;    // specific gas enthalpy
  double s = 0.0;    // thermodynamic entropy ln p - Gamma ln rho
  double pt = 0.0;   // total pressure p + bsq/2
};

using EntropyVars = State8;

class physics_error : public std::runtime_error {
 public:
  explicit physics_error(const std::string &msg) : std::runtime_error(msg) {}
};

class recovery_error : public physics_error {
 public:
  explicit recovery_error(const std::string &msg) : physics_error(msg) {}
};

}  // namespace rmhd

#endif  // RMHD_TYPES_HPP_
