#pragma once

#include <array>
#include <vector>

#include "semiabel/periods.hpp"

namespace semiabel {

/// Extension parameter Q in E* = C/Lambda*. q_star is its logarithm in the
/// dual frame, q = covolume * q_star its pull-back to Lie E through iota.
struct ExtensionParam {
  cplx q{};
  cplx q_star{};
};

ExtensionParam extension_from_log(cplx q, const Lattice& L);
ExtensionParam extension_from_dual_log(cplx q_star, const Lattice& L);
/// Q given as a point of E, identified with E* through iota.
ExtensionParam extension_from_point(const EllipticPoint& Q, const Lattice& L);

/// Point of G in the birational model E x C^*.
struct SemiAbelianPoint {
  EllipticPoint base;
  cplx fiber{1.0, 0.0};
};

struct SectionValue {
  cplx value{};
  bool zero_of_section = false;
};

/// f_q(z) = sigma(z+q) / (sigma(z) sigma(q)) exp(-zeta(q) z).
/// Throws PoleAtLatticePoint for z in Lambda; z = -q mod Lambda gives a zero
/// value with the flag set.
SectionValue serre_fq(cplx z, const ExtensionParam& q, const Lattice& L);

/// (eta_1 q - omega_1 zeta(q), eta_2 q - omega_2 zeta(q)).
std::array<cplx, 2> quasi_quasi_periods(const ExtensionParam& q, const Lattice& L);

/// (wp(z), wp'(z), e^t f_q(z)); for z in Lambda the identity of E with the
/// residue-normalised fiber e^{t + qqp(z)}. Throws ZeroOfSection when z = -q.
SemiAbelianPoint exp_G(cplx z, cplx t, const ExtensionParam& q, const Lattice& L);

struct SemiAbelianLog {
  BranchedValue z;
  BranchedValue t;
};

/// Principal logarithm. Throws FiberZero, NotOnCurve, ZeroOfSection.
SemiAbelianLog log_G(const SemiAbelianPoint& R, const ExtensionParam& q, const Lattice& L);

/// First-, second- and third-kind components (z, zeta(z), t).
struct GeneralizedSemiAbelianLog {
  cplx z{}, w{}, t{};
  bool at_identity = false;
};
GeneralizedSemiAbelianLog generalized_log_G(const SemiAbelianPoint& R, const ExtensionParam& q,
                                            const Lattice& L);

/// True when (dz, dt) lies in the kernel lattice of exp_G, generated by
/// (omega_i, -qqp_i) and (0, 2 pi i).
bool in_exp_kernel(cplx dz, cplx dt, const ExtensionParam& q, const Lattice& L, double tol);

using Matrix = std::vector<std::vector<cplx>>;

struct PeriodMatrixG {
  std::array<std::array<cplx, 2>, 2> omega_A;  // rows (omega_j, eta_j)
  std::array<cplx, 2> third_kind_column;        // eta_j q - omega_j zeta(q)
  cplx two_pi_i;

  Matrix full() const;
};

PeriodMatrixG period_matrix_G(const ExtensionParam& q, const Lattice& L);

/// Omega_G for s extension parameters: (2+s) x (2+s).
Matrix period_matrix_G(const std::vector<ExtensionParam>& qs, const Lattice& L);

/// Rows of generalized logarithms (z, zeta(z), t_1..t_s), one per point.
/// Omega_M = [[Id_n, logs], [0, Omega_G]].
Matrix period_matrix_M(const std::vector<std::vector<cplx>>& generalized_logs,
                       const std::vector<ExtensionParam>& qs, const Lattice& L);

}  // namespace semiabel
