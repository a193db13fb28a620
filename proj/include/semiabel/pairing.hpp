#pragma once

#include "semiabel/elliptic.hpp"

namespace semiabel {

struct UnitCircleValue {
  cplx value;
};

// Dual-frame arguments (zstar, lambdastar, qstar) live in Lie E* = C with
// lattice Lambda*; they are pulled back to Lie E by iota(z*) = covolume * z*.

/// exp(2 pi i Im(conj(z) iota(z*)) / c) = exp(2 pi i <z, z*>).
UnitCircleValue weil_pairing(cplx z, cplx zstar, const Lattice& L);

/// The same value through real coordinates: exp(2 pi i (a2 b1 - a1 b2)).
cplx weil_pairing_from_coordinates(cplx z, cplx zstar, const Lattice& L);

/// weil_pairing(p, qstar)^N for N-torsion p, qstar. Throws NotTorsion.
UnitCircleValue torsion_weil_pairing(cplx p, cplx qstar, long long N, const Lattice& L);

/// Factor of automorphy of the Poincare bundle on Lie E x Lie E*:
/// exp(pi (conj(l) m + z conj(m) + conj(l) w) / c), m = iota(lambdastar),
/// w = iota(zstar). Throws NotALatticePoint.
cplx poincare_automorphy(cplx lambda, cplx lambdastar, cplx z, cplx zstar, const Lattice& L);

/// a / conj(a).
cplx poincare_automorphy_a0(cplx lambda, cplx lambdastar, cplx z, cplx zstar,
                            const Lattice& L);

/// exp(2 pi i Im(z conj(m) + conj(l) w) / c), the unitary section factor.
cplx poincare_section_closed_form(cplx lambda, cplx lambdastar, cplx z, cplx zstar,
                                  const Lattice& L);

/// sigma(z+w) / (sigma(z) sigma(w)) exp(-eta(w) z).
cplx f_tilde(cplx w, cplx z, const Lattice& L);

struct RatioValues {
  cplx ratio;         // f~_{w}(z) / f~_{z}(w), w = iota(z*)
  cplx exponential;   // exp(eta(z) w - eta(w) z)
  cplx weil;          // weil_pairing(z, z*)
  cplx coordinates;   // exp(2 pi i (a2 b1 - a1 b2))
  bool ratio_from_sigma = true;
};

/// When z, w or z+w lies in Lambda the sigma quotient is undefined and the
/// ratio is taken from the exponential expression.
RatioValues ratio_f_tilde(cplx z, cplx zstar, const Lattice& L);

/// eta(l) iota(l*) - eta(iota(l*)) l, an element of 2 pi i Z.
cplx hodge_weil(cplx lambda, cplx lambdastar, const Lattice& L);

}  // namespace semiabel
