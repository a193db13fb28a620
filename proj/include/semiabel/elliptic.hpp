#pragma once

#include "semiabel/lattice.hpp"

namespace semiabel {

struct CurveInvariants {
  cplx g2;
  cplx g3;
};

struct QuasiPeriods {
  cplx eta1;
  cplx eta2;
};

struct ThetaNormalization {
  cplx piA;
};

/// g2 = 60 G4, g3 = 140 G6 from the Eisenstein q-series of the reduced basis.
CurveInvariants eisenstein_invariants(const Lattice& L);

/// g2^3 - 27 g3^2
cplx discriminant(const CurveInvariants& c);
bool is_singular(const CurveInvariants& c);

cplx wp(cplx z, const Lattice& L);
cplx wp_prime(cplx z, const Lattice& L);
cplx zeta_w(cplx z, const Lattice& L);
cplx sigma_w(cplx z, const Lattice& L);

struct WpPair {
  cplx wp;
  cplx wp_prime;
};
WpPair wp_both(cplx z, const Lattice& L);

/// eta_i = 2 zeta(omega_i / 2) in the caller's basis.
QuasiPeriods quasi_periods(const Lattice& L);

/// R-linear quasi-period form: alpha1*eta1 + alpha2*eta2.
cplx eta_linear(cplx z, const Lattice& L);

/// The same form through the closed expression (eta1/omega1) z - 2 pi i Im(z)/c
/// evaluated in the frame where omega1 > 0, then mapped back.
cplx eta_linear_closed_form(cplx z, const Lattice& L);

/// pi*A = eta1*Im(omega2) - pi in the rotated frame (omega1 > 0).
ThetaNormalization theta_normalization(const Lattice& L);

/// theta(z) = sigma(z) exp(-pi A z^2 / (2c)), evaluated in the rotated frame
/// at u*z where u rotates omega1 onto the positive real axis.
cplx theta_normalized(cplx z, const Lattice& L);

/// psi(lambda) exp(pi conj(lambda) (z + lambda/2) / c), the automorphy factor
/// of theta_normalized. Throws NotALatticePoint.
cplx theta_automorphy_factor(cplx lambda, cplx z, const Lattice& L);

/// psi(lambda) exp(eta(lambda) (z + lambda/2)). Throws NotALatticePoint.
cplx sigma_automorphy_factor(cplx lambda, cplx z, const Lattice& L);

/// +1 when m, n are both even, else -1.
inline int psi_sign(long long m, long long n) {
  return ((m + n + m * n) % 2 == 0) ? 1 : -1;
}

}  // namespace semiabel
