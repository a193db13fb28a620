#pragma once

#include <array>
#include <complex>
#include <memory>
#include <mutex>

namespace semiabel {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

namespace detail {

// Analytic constants of a lattice, filled by the elliptic-function module on
// first use. Shared between copies of the same Lattice.
struct AnalyticConstants {
  cplx nome;             // exp(i*pi*tau) of the reduced basis
  cplx theta1_prime0;    // theta_1'(0)
  cplx eta1_reduced;     // 2*zeta(nu1/2)
  cplx eta2_reduced;     // 2*zeta(nu2/2)
  cplx g2, g3;
  cplx eta1, eta2;       // quasi-periods of the caller's basis
};

struct AnalyticCache {
  std::once_flag once;
  AnalyticConstants value;
};

}  // namespace detail

/// Oriented period lattice Z*omega1 + Z*omega2 with Im(omega2/omega1) > 0.
///
/// Alongside the caller's basis the lattice keeps an SL2(Z)-equivalent
/// reduced basis (nu1, nu2) whose ratio lies in the standard modular
/// fundamental domain; series evaluations run in that basis.
class Lattice {
 public:
  cplx omega1() const { return w1_; }
  cplx omega2() const { return w2_; }

  /// True when construction had to negate omega2 to fix the orientation.
  bool orientation_flipped() const { return flipped_; }

  /// Im(conj(omega1)*omega2) > 0, the area of a fundamental parallelogram.
  double covolume() const;

  /// Reduced basis: tau = nu2/nu1 with |tau| >= 1, -1/2 < Re(tau) <= 1/2.
  cplx reduced_omega1() const { return nu1_; }
  cplx reduced_omega2() const { return nu2_; }
  cplx reduced_tau() const { return nu2_ / nu1_; }

  /// Integer matrix M with (omega1, omega2)^T = M * (nu1, nu2)^T.
  const std::array<std::array<long long, 2>, 2>& basis_change() const {
    return to_reduced_;
  }

  detail::AnalyticCache& analytic_cache() const { return *cache_; }

 private:
  friend Lattice make_lattice(cplx w1, cplx w2);
  Lattice() = default;

  cplx w1_{}, w2_{};
  bool flipped_ = false;
  cplx nu1_{}, nu2_{};
  std::array<std::array<long long, 2>, 2> to_reduced_{};
  std::shared_ptr<detail::AnalyticCache> cache_;
};

/// Dual lattice basis with Im(conj(omega_i)*omega_j^*) = [[0,-1],[1,0]].
struct DualLattice {
  cplx omega1_star;
  cplx omega2_star;
};

struct RealCoordinates {
  double alpha1;
  double alpha2;
};

struct FundamentalReduction {
  cplx z0;
  long long m;
  long long n;
};

/// Throws DegenerateLattice when w1, w2 are R-linearly dependent.
Lattice make_lattice(cplx w1, cplx w2);

/// z = z0 + m*omega1 + n*omega2 with real coordinates of z0 in [0,1)^2.
FundamentalReduction reduce_to_fundamental(cplx z, const Lattice& L);

DualLattice dual_lattice(const Lattice& L);

/// <z, z*> = Im(conj(z) * z*).
inline double duality_product(cplx z, cplx zstar) {
  return (std::conj(z) * zstar).imag();
}

/// Real coordinates of z in the basis (omega1, omega2).
RealCoordinates real_coordinates(cplx z, const Lattice& L);

/// Real coordinates of z* in the dual basis (omega1^*, omega2^*).
RealCoordinates dual_coordinates(cplx zstar, const Lattice& L);

/// Coordinates of z in the reduced basis (nu1, nu2).
RealCoordinates reduced_coordinates(cplx z, const Lattice& L);

/// Pull-back of a dual-frame vector to the primal frame: z* -> covolume * z*.
/// Sends omega_i^* to -omega_i, hence Lambda^* onto Lambda.
inline cplx dual_to_primal(cplx zstar, const Lattice& L) {
  return zstar * L.covolume();
}
inline cplx primal_to_dual(cplx z, const Lattice& L) {
  return z / L.covolume();
}

/// Returns (m, n) when z lies within tol*|omega1| of m*omega1 + n*omega2.
bool nearest_lattice_point(cplx z, const Lattice& L, double tol, long long& m,
                           long long& n);

/// Same lattice rotated so that omega1 is real and positive; the rotation
/// factor u (|u| = 1) maps caller-frame vectors z to u*z.
Lattice rotated_lattice(const Lattice& L, cplx* rotation = nullptr);

}  // namespace semiabel
