#include "semiabel/pairing.hpp"

#include <cmath>

#include "semiabel/error.hpp"

namespace semiabel {

namespace {

constexpr double kMember = 1e-8;

void require_primal(cplx lambda, const Lattice& L, long long& m, long long& n) {
  if (!nearest_lattice_point(lambda, L, kMember, m, n)) {
    throw Error(ErrorCode::NotALatticePoint, "not a point of the lattice");
  }
}

bool is_dual_lattice_point(cplx zstar, const Lattice& L, double tol) {
  const RealCoordinates b = dual_coordinates(zstar, L);
  return std::abs(b.alpha1 - std::round(b.alpha1)) <= tol &&
         std::abs(b.alpha2 - std::round(b.alpha2)) <= tol;
}

cplx unit_exp(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

bool near_lattice(cplx z, const Lattice& L) {
  long long m = 0, n = 0;
  return nearest_lattice_point(z, L, 1e-10, m, n);
}

}  // namespace

UnitCircleValue weil_pairing(cplx z, cplx zstar, const Lattice& L) {
  const cplx w = dual_to_primal(zstar, L);
  return {unit_exp(duality_product(z, w) / L.covolume())};
}

cplx weil_pairing_from_coordinates(cplx z, cplx zstar, const Lattice& L) {
  const RealCoordinates a = real_coordinates(z, L);
  const RealCoordinates b = dual_coordinates(zstar, L);
  return unit_exp(a.alpha2 * b.alpha1 - a.alpha1 * b.alpha2);
}

UnitCircleValue torsion_weil_pairing(cplx p, cplx qstar, long long N, const Lattice& L) {
  long long m = 0, n = 0;
  const double dn = static_cast<double>(N);
  if (N < 1 || !nearest_lattice_point(dn * p, L, kMember, m, n) ||
      !is_dual_lattice_point(dn * qstar, L, kMember)) {
    throw Error(ErrorCode::NotTorsion, "arguments are not N-torsion");
  }
  const cplx w = dual_to_primal(qstar, L);
  return {unit_exp(dn * duality_product(p, w) / L.covolume())};
}

cplx poincare_automorphy(cplx lambda, cplx lambdastar, cplx z, cplx zstar, const Lattice& L) {
  long long m = 0, n = 0;
  require_primal(lambda, L, m, n);
  const cplx mu = dual_to_primal(lambdastar, L);
  require_primal(mu, L, m, n);
  const cplx w = dual_to_primal(zstar, L);
  const cplx lb = std::conj(lambda);
  return std::exp(kPi * (lb * mu + z * std::conj(mu) + lb * w) / L.covolume());
}

cplx poincare_automorphy_a0(cplx lambda, cplx lambdastar, cplx z, cplx zstar,
                            const Lattice& L) {
  const cplx a = poincare_automorphy(lambda, lambdastar, z, zstar, L);
  return a / std::conj(a);
}

cplx poincare_section_closed_form(cplx lambda, cplx lambdastar, cplx z, cplx zstar,
                                  const Lattice& L) {
  const cplx mu = dual_to_primal(lambdastar, L);
  const cplx w = dual_to_primal(zstar, L);
  const cplx e = z * std::conj(mu) + std::conj(lambda) * w;
  return unit_exp(e.imag() / L.covolume());
}

cplx f_tilde(cplx w, cplx z, const Lattice& L) {
  return sigma_w(z + w, L) / (sigma_w(z, L) * sigma_w(w, L)) *
         std::exp(-eta_linear(w, L) * z);
}

RatioValues ratio_f_tilde(cplx z, cplx zstar, const Lattice& L) {
  const cplx w = dual_to_primal(zstar, L);
  RatioValues r;
  r.exponential = std::exp(eta_linear(z, L) * w - eta_linear(w, L) * z);
  r.weil = weil_pairing(z, zstar, L).value;
  r.coordinates = weil_pairing_from_coordinates(z, zstar, L);
  if (near_lattice(z, L) || near_lattice(w, L) || near_lattice(z + w, L)) {
    r.ratio = r.exponential;
    r.ratio_from_sigma = false;
  } else {
    r.ratio = f_tilde(w, z, L) / f_tilde(z, w, L);
  }
  return r;
}

cplx hodge_weil(cplx lambda, cplx lambdastar, const Lattice& L) {
  long long m1 = 0, n1 = 0, m2 = 0, n2 = 0;
  require_primal(lambda, L, m1, n1);
  const cplx mu = dual_to_primal(lambdastar, L);
  require_primal(mu, L, m2, n2);
  const QuasiPeriods e = quasi_periods(L);
  const cplx eta_l = static_cast<double>(m1) * e.eta1 + static_cast<double>(n1) * e.eta2;
  const cplx eta_m = static_cast<double>(m2) * e.eta1 + static_cast<double>(n2) * e.eta2;
  return eta_l * mu - eta_m * lambda;
}

}  // namespace semiabel
