#include "semiabel/semiabelian.hpp"

#include <cmath>

#include "semiabel/error.hpp"

namespace semiabel {

namespace {

constexpr double kGuard = 1e-10;

bool near_lattice(cplx z, const Lattice& L) {
  long long m = 0, n = 0;
  return nearest_lattice_point(z, L, kGuard, m, n);
}

// Imaginary part in (-pi, pi]; std::log gives -pi on the negative axis with -0.
cplx principal_log(cplx w) {
  cplx l = std::log(w);
  if (l.imag() <= -kPi) l += kTwoPiI;
  return l;
}

}  // namespace

ExtensionParam extension_from_log(cplx q, const Lattice& L) {
  if (near_lattice(q, L)) {
    throw Error(ErrorCode::PoleAtLatticePoint, "extension parameter is the identity");
  }
  return {q, primal_to_dual(q, L)};
}

ExtensionParam extension_from_dual_log(cplx q_star, const Lattice& L) {
  return extension_from_log(dual_to_primal(q_star, L), L);
}

ExtensionParam extension_from_point(const EllipticPoint& Q, const Lattice& L) {
  if (Q.is_identity()) {
    throw Error(ErrorCode::PoleAtLatticePoint, "extension parameter is the identity");
  }
  return extension_from_log(elliptic_log(Q, L).value, L);
}

SectionValue serre_fq(cplx z, const ExtensionParam& q, const Lattice& L) {
  if (near_lattice(z, L)) {
    throw Error(ErrorCode::PoleAtLatticePoint, "f_q has a pole on the lattice");
  }
  if (near_lattice(z + q.q, L)) return {cplx{}, true};
  const cplx v = sigma_w(z + q.q, L) / (sigma_w(z, L) * sigma_w(q.q, L)) *
                 std::exp(-zeta_w(q.q, L) * z);
  return {v, false};
}

std::array<cplx, 2> quasi_quasi_periods(const ExtensionParam& q, const Lattice& L) {
  const QuasiPeriods e = quasi_periods(L);
  const cplx zq = zeta_w(q.q, L);
  return {e.eta1 * q.q - L.omega1() * zq, e.eta2 * q.q - L.omega2() * zq};
}

SemiAbelianPoint exp_G(cplx z, cplx t, const ExtensionParam& q, const Lattice& L) {
  long long m = 0, n = 0;
  if (nearest_lattice_point(z, L, kGuard, m, n)) {
    const auto qqp = quasi_quasi_periods(q, L);
    const cplx shift = static_cast<double>(m) * qqp[0] + static_cast<double>(n) * qqp[1];
    return {EllipticPoint::identity(), std::exp(t + shift)};
  }
  const SectionValue f = serre_fq(z, q, L);
  if (f.zero_of_section) {
    throw Error(ErrorCode::ZeroOfSection, "z = -q: fiber coordinate vanishes");
  }
  const WpPair p = wp_both(z, L);
  return {EllipticPoint::affine(p.wp, p.wp_prime), std::exp(t) * f.value};
}

SemiAbelianLog log_G(const SemiAbelianPoint& R, const ExtensionParam& q, const Lattice& L) {
  if (R.fiber == cplx{}) throw Error(ErrorCode::FiberZero, "fiber coordinate is zero");
  if (R.base.is_identity()) return {BranchedValue{}, BranchedValue{principal_log(R.fiber)}};
  const BranchedValue z = elliptic_log(R.base, L);
  const SectionValue f = serre_fq(z.value, q, L);
  if (f.zero_of_section) {
    throw Error(ErrorCode::ZeroOfSection, "base point is -Q; not in the birational model");
  }
  return {z, BranchedValue{principal_log(R.fiber / f.value)}};
}

GeneralizedSemiAbelianLog generalized_log_G(const SemiAbelianPoint& R, const ExtensionParam& q,
                                            const Lattice& L) {
  const SemiAbelianLog l = log_G(R, q, L);
  if (R.base.is_identity()) return {cplx{}, cplx{}, l.t.value, true};
  return {l.z.value, zeta_w(l.z.value, L), l.t.value, false};
}

bool in_exp_kernel(cplx dz, cplx dt, const ExtensionParam& q, const Lattice& L, double tol) {
  long long m = 0, n = 0;
  if (!nearest_lattice_point(dz, L, tol, m, n)) return false;
  const auto qqp = quasi_quasi_periods(q, L);
  const cplx r = dt + static_cast<double>(m) * qqp[0] + static_cast<double>(n) * qqp[1];
  const double k = std::round(r.imag() / (2.0 * kPi));
  const double scale = std::max(1.0, std::abs(dt));
  return std::abs(r - k * kTwoPiI) <= tol * scale;
}

Matrix PeriodMatrixG::full() const {
  return {{omega_A[0][0], omega_A[0][1], third_kind_column[0]},
          {omega_A[1][0], omega_A[1][1], third_kind_column[1]},
          {cplx{}, cplx{}, two_pi_i}};
}

PeriodMatrixG period_matrix_G(const ExtensionParam& q, const Lattice& L) {
  const QuasiPeriods e = quasi_periods(L);
  const auto qqp = quasi_quasi_periods(q, L);
  PeriodMatrixG out;
  out.omega_A = {{{L.omega1(), e.eta1}, {L.omega2(), e.eta2}}};
  out.third_kind_column = qqp;
  out.two_pi_i = kTwoPiI;
  return out;
}

Matrix period_matrix_G(const std::vector<ExtensionParam>& qs, const Lattice& L) {
  const std::size_t s = qs.size();
  const QuasiPeriods e = quasi_periods(L);
  Matrix m(2 + s, std::vector<cplx>(2 + s));
  m[0][0] = L.omega1();
  m[0][1] = e.eta1;
  m[1][0] = L.omega2();
  m[1][1] = e.eta2;
  for (std::size_t k = 0; k < s; ++k) {
    const auto qqp = quasi_quasi_periods(qs[k], L);
    m[0][2 + k] = qqp[0];
    m[1][2 + k] = qqp[1];
    m[2 + k][2 + k] = kTwoPiI;
  }
  return m;
}

Matrix period_matrix_M(const std::vector<std::vector<cplx>>& generalized_logs,
                       const std::vector<ExtensionParam>& qs, const Lattice& L) {
  const std::size_t n = generalized_logs.size(), s = qs.size();
  const std::size_t dim = n + 2 + s;
  Matrix m(dim, std::vector<cplx>(dim));
  for (std::size_t l = 0; l < n; ++l) {
    if (generalized_logs[l].size() != 2 + s) {
      throw Error(ErrorCode::SchemaError, "generalized logarithm has the wrong length");
    }
    m[l][l] = 1.0;
    for (std::size_t j = 0; j < 2 + s; ++j) m[l][n + j] = generalized_logs[l][j];
  }
  const Matrix g = period_matrix_G(qs, L);
  for (std::size_t i = 0; i < 2 + s; ++i) {
    for (std::size_t j = 0; j < 2 + s; ++j) m[n + i][n + j] = g[i][j];
  }
  return m;
}

}  // namespace semiabel
