#include "semiabel/lattice.hpp"

#include <cmath>
#include <string>

#include "semiabel/error.hpp"

namespace semiabel {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kSnap = 1e-12;

double snap(double a) {
  const double r = std::round(a);
  return std::abs(a - r) < kSnap ? r : a;
}

}  // namespace

double Lattice::covolume() const { return (std::conj(w1_) * w2_).imag(); }

Lattice make_lattice(cplx w1, cplx w2) {
  if (w1 == cplx{} || w2 == cplx{} || !std::isfinite(std::abs(w1)) ||
      !std::isfinite(std::abs(w2))) {
    throw Error(ErrorCode::DegenerateLattice, "zero or non-finite period");
  }
  const cplx ratio = w2 / w1;
  if (std::abs(ratio.imag()) <= kDegenerate * std::abs(ratio)) {
    throw Error(ErrorCode::DegenerateLattice, "periods are R-linearly dependent");
  }

  Lattice L;
  L.w1_ = w1;
  L.w2_ = w2;
  if (ratio.imag() < 0) {
    L.w2_ = -w2;
    L.flipped_ = true;
  }

  // Track (nu1, nu2)^T = R * (w1, w2)^T through the reduction.
  long long r00 = 1, r01 = 0, r10 = 0, r11 = 1;
  cplx nu1 = L.w1_, nu2 = L.w2_;
  auto recompute = [&] {
    nu1 = static_cast<double>(r00) * L.w1_ + static_cast<double>(r01) * L.w2_;
    nu2 = static_cast<double>(r10) * L.w1_ + static_cast<double>(r11) * L.w2_;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    const cplx tau = nu2 / nu1;
    const long long shift = std::llround(tau.real());
    if (shift != 0) {
      r10 -= shift * r00;
      r11 -= shift * r01;
      recompute();
    }
    const cplx t2 = nu2 / nu1;
    if (std::abs(t2) < 1.0 - 1e-14) {
      // tau -> -1/tau : (nu1, nu2) -> (nu2, -nu1)
      const long long a = r00, b = r01;
      r00 = r10;
      r01 = r11;
      r10 = -a;
      r11 = -b;
      recompute();
    } else {
      break;
    }
  }
  // Boundary conventions: -1/2 < Re(tau) <= 1/2, and Re(tau) >= 0 on |tau| = 1.
  if ((nu2 / nu1).real() <= -0.5 + 1e-12) {
    r10 += r00;
    r11 += r01;
    recompute();
  }
  {
    const cplx tau = nu2 / nu1;
    if (std::abs(std::abs(tau) - 1.0) < 1e-12 && tau.real() < -1e-12) {
      const long long a = r00, b = r01;
      r00 = r10;
      r01 = r11;
      r10 = -a;
      r11 = -b;
      recompute();
    }
  }
  L.nu1_ = nu1;
  L.nu2_ = nu2;
  // R has determinant 1; its inverse expresses (w1, w2) through (nu1, nu2).
  L.to_reduced_ = {{{r11, -r01}, {-r10, r00}}};
  L.cache_ = std::make_shared<detail::AnalyticCache>();
  return L;
}

RealCoordinates real_coordinates(cplx z, const Lattice& L) {
  const double c = L.covolume();
  const double a2 = (std::conj(L.omega1()) * z).imag() / c;
  const double a1 = (std::conj(z) * L.omega2()).imag() / c;
  return {a1, a2};
}

RealCoordinates reduced_coordinates(cplx z, const Lattice& L) {
  const cplx n1 = L.reduced_omega1(), n2 = L.reduced_omega2();
  const double c = (std::conj(n1) * n2).imag();
  return {(std::conj(z) * n2).imag() / c, (std::conj(n1) * z).imag() / c};
}

RealCoordinates dual_coordinates(cplx zstar, const Lattice& L) {
  // omega_i^* = -omega_i / covolume, so the coordinates of z* are those of
  // -covolume * z* in the primal basis.
  return real_coordinates(-dual_to_primal(zstar, L), L);
}

FundamentalReduction reduce_to_fundamental(cplx z, const Lattice& L) {
  const RealCoordinates a = real_coordinates(z, L);
  const long long m = static_cast<long long>(std::floor(snap(a.alpha1)));
  const long long n = static_cast<long long>(std::floor(snap(a.alpha2)));
  const cplx z0 = z - static_cast<double>(m) * L.omega1() -
                  static_cast<double>(n) * L.omega2();
  return {z0, m, n};
}

DualLattice dual_lattice(const Lattice& L) {
  const double c = L.covolume();
  return {-L.omega1() / c, -L.omega2() / c};
}

bool nearest_lattice_point(cplx z, const Lattice& L, double tol, long long& m,
                           long long& n) {
  const RealCoordinates r = reduced_coordinates(z, L);
  const double a0 = std::round(r.alpha1), b0 = std::round(r.alpha2);
  double best = INFINITY;
  double ba = 0, bb = 0;
  for (int da = -1; da <= 1; ++da) {
    for (int db = -1; db <= 1; ++db) {
      const double a = a0 + da, b = b0 + db;
      const double d = std::abs(z - a * L.reduced_omega1() - b * L.reduced_omega2());
      if (d < best) {
        best = d;
        ba = a;
        bb = b;
      }
    }
  }
  const cplx lambda = ba * L.reduced_omega1() + bb * L.reduced_omega2();
  const RealCoordinates c = real_coordinates(lambda, L);
  m = std::llround(c.alpha1);
  n = std::llround(c.alpha2);
  return best <= tol * std::abs(L.omega1());
}

Lattice rotated_lattice(const Lattice& L, cplx* rotation) {
  const cplx u = std::conj(L.omega1()) / std::abs(L.omega1());
  if (rotation != nullptr) *rotation = u;
  return make_lattice(cplx{std::abs(L.omega1()), 0.0}, u * L.omega2());
}

}  // namespace semiabel
