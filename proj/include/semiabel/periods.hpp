#pragma once

#include <array>

#include "semiabel/elliptic.hpp"

namespace semiabel {

/// Point of y^2 = 4x^3 - g2 x - g3, affine or the identity O.
struct EllipticPoint {
  bool infinity = true;
  cplx x{}, y{};

  static EllipticPoint identity() { return {}; }
  static EllipticPoint affine(cplx x, cplx y) { return {false, x, y}; }
  bool is_identity() const { return infinity; }
};

/// A value of a multivalued integral with the winding integers of the chosen
/// branch: m*omega1 + n*omega2 + k*2*pi*i was added to the principal value.
struct BranchedValue {
  cplx value{};
  long long m = 0, n = 0, k = 0;
};

/// First- and second-kind integrals (z, zeta(z)). For O the second component
/// is undefined and at_identity is set.
struct GeneralizedAbelianLog {
  cplx z{};
  cplx w{};
  bool at_identity = false;
};

/// Roots of 4x^3 - g2 x - g3, sorted by decreasing real part.
std::array<cplx, 3> cubic_roots(const CurveInvariants& c);

/// Reduced, oriented lattice whose invariants are (g2, g3). Throws
/// SingularCurve or ConvergenceFailure.
Lattice periods_from_invariants(const CurveInvariants& c);

/// Carlson's symmetric integral R_F for complex arguments off the negative
/// real axis (at most one of them zero).
cplx carlson_rf(cplx x, cplx y, cplx z);

/// |y^2 - (4x^3 - g2 x - g3)| relative to the size of the terms.
double curve_residual(const EllipticPoint& P, const CurveInvariants& c);
bool on_curve(const EllipticPoint& P, const CurveInvariants& c, double rel_tol = 1e-9);

/// (wp(z), wp'(z)), or O for z in the lattice.
EllipticPoint point_from_log(cplx z, const Lattice& L);

/// Principal elliptic logarithm: wp(z) = x, wp'(z) = y, real coordinates of z
/// in [0,1)^2. Throws NotOnCurve.
BranchedValue elliptic_log(const EllipticPoint& P, const Lattice& L);

/// (z, zeta(z)) at the principal logarithm.
GeneralizedAbelianLog generalized_elliptic_log(const EllipticPoint& P, const Lattice& L);

/// Second-kind value after moving the first-kind value to z + m*omega1 + n*omega2.
GeneralizedAbelianLog shift_branch(const GeneralizedAbelianLog& g, long long m, long long n,
                                   const Lattice& L);

}  // namespace semiabel
