#pragma once

// Test-side construction of 1-motives with n points and s extension
// parameters. Each point is exp_G(z, t) for every parameter, or (O, fiber).

#include <cmath>
#include <vector>

#include "semiabel/classifier.hpp"

namespace testmotive {

using semiabel::cplx;

struct Pt {
  cplx z, t;
  bool base_identity = false;
  cplx fiber = 1.0;
};

inline semiabel::OneMotiveElliptic motive(const semiabel::Lattice& L, const std::vector<cplx>& qs,
                                          const std::vector<Pt>& pts) {
  using namespace semiabel;
  OneMotiveElliptic M(L);
  M.curve = eisenstein_invariants(L);
  for (cplx q : qs) {
    M.extension_params.push_back(extension_from_log(q, L));
    M.extension_points.push_back(std::nullopt);
  }
  for (const Pt& p : pts) {
    MotivePoint P;
    if (p.base_identity) {
      P.base = EllipticPoint::identity();
      P.fibers.assign(qs.size(), p.fiber);
    } else {
      for (const ExtensionParam& q : M.extension_params) {
        const SemiAbelianPoint R = exp_G(p.z, p.t, q, L);
        P.base = R.base;
        P.fibers.push_back(R.fiber);
      }
      if (qs.empty()) P.base = point_from_log(p.z, L);
    }
    M.points.push_back(P);
  }
  return M;
}

// Coefficients chosen to avoid small rational and Q(i), Q(rho) relations.
inline cplx gen_q(const semiabel::Lattice& L) {
  return std::sqrt(0.1) * L.omega1() + (semiabel::kPi / 9.0) * L.omega2();
}
inline cplx gen_p(const semiabel::Lattice& L) {
  return (std::sqrt(2.0) - 1.0) * L.omega1() + std::exp(-1.3) * L.omega2();
}
inline const cplx gen_t{0.5772156649015329, 0.1234};

}  // namespace testmotive
