#include "semiabel/table_instances.hpp"

#include <cmath>

namespace semiabel {

OneMotiveElliptic single_motive(const Lattice& L, cplx q, cplx z, cplx t, bool base_identity,
                                cplx fiber) {
  OneMotiveElliptic M(L);
  M.curve = eisenstein_invariants(L);
  const ExtensionParam Q = extension_from_log(q, L);
  M.extension_params = {Q};
  M.extension_points = {std::nullopt};
  MotivePoint P;
  if (base_identity) {
    P.base = EllipticPoint::identity();
    P.fibers = {fiber};
  } else {
    const SemiAbelianPoint R = exp_G(z, t, Q, L);
    P.base = R.base;
    P.fibers = {R.fiber};
  }
  M.points = {P};
  return M;
}

std::vector<TableInstance> dimension_table_instances(const Lattice& L) {
  const cplx w1 = L.omega1(), w2 = L.omega2();
  const cplx q = std::sqrt(0.1) * w1 + (kPi / 9.0) * w2;
  const cplx p = (std::sqrt(2.0) - 1.0) * w1 + std::exp(-1.3) * w2;
  const cplx t{0.577215664901532, 0.1234};
  const auto qqp = quasi_quasi_periods(extension_from_log(q, L), L);
  std::vector<TableInstance> out;
  out.push_back({"Q = omega1/2, R = (O, 1)", 1, single_motive(L, 0.5 * w1, 0, 0, true, 1.0)});
  out.push_back({"Q = omega1/2, R = (O, 2)", 2, single_motive(L, 0.5 * w1, 0, 0, true, 2.0)});
  out.push_back({"p = omega1/3, t = -qqp1/3", 3, single_motive(L, q, w1 / 3.0, -qqp[0] / 3.0)});
  out.push_back({"Q = omega1/2, p and t generic", 4, single_motive(L, 0.5 * w1, p, t)});
  out.push_back({"p = omega1/2, q and t generic", 5, single_motive(L, q, 0.5 * w1, t)});
  const CMInfo cm = detect_cm(L, 1000);
  if (cm.cm) {
    // q = theta' p with theta' purely imaginary in the CM field
    const cplx imag_unit = cm.theta - (-static_cast<double>(cm.b) / 2.0);
    out.push_back({"q = sqrt(D) p, t = 0", 6, single_motive(L, imag_unit * p, p, 0)});
  }
  out.push_back({"q = 2p, t generic", 7, single_motive(L, 2.0 * p, p, t)});
  out.push_back({"p, q independent", 8, single_motive(L, q, p, t)});
  return out;
}

TableTriple dimension_table_triple(int row) {
  static constexpr TableTriple rows[9] = {{-1, -1, -1}, {0, 2, 4}, {1, 3, 5}, {2, 4, 6},
                                          {3, 5, 7},    {3, 5, 7}, {2, 4, -1}, {3, 5, 7},
                                          {5, 7, 9}};
  return rows[row];
}

}  // namespace semiabel
