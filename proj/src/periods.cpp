#include "semiabel/periods.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "semiabel/error.hpp"
#include "semiabel/group_law.hpp"

namespace semiabel {

namespace {

cplx agm(cplx a, cplx b) {
  for (int i = 0; i < 200; ++i) {
    if (std::abs(a - b) <= 1e-15 * std::abs(a)) return 0.5 * (a + b);
    const cplx a1 = 0.5 * (a + b);
    cplx b1 = std::sqrt(a * b);
    if (std::abs(a1 - b1) > std::abs(a1 + b1)) b1 = -b1;
    a = a1;
    b = b1;
  }
  throw Error(ErrorCode::ConvergenceFailure, "AGM did not converge");
}

bool invariants_match(const Lattice& L, const CurveInvariants& c, double tol) {
  const CurveInvariants d = eisenstein_invariants(L);
  const double a2 = std::abs(c.g2), a3 = std::abs(c.g3);
  const double s2 = std::max(a2, std::pow(a3, 2.0 / 3.0));
  const double s3 = std::max(a3, std::pow(a2, 1.5));
  return std::abs(d.g2 - c.g2) <= tol * s2 && std::abs(d.g3 - c.g3) <= tol * s3;
}

std::optional<Lattice> try_periods(cplx e1, cplx e2, cplx e3, bool flip_b,
                                   const CurveInvariants& c) {
  const cplx a = std::sqrt(e1 - e3);
  cplx b = std::sqrt(e1 - e2);
  cplx cc = std::sqrt(e2 - e3);
  if ((std::abs(a - b) > std::abs(a + b)) != flip_b) b = -b;
  const cplx ib = cplx{0.0, 1.0} * b;
  if (std::abs(cc - ib) > std::abs(cc + ib)) cc = -cc;
  if (a + b == cplx{} || cc + ib == cplx{}) return std::nullopt;
  try {
    const cplx w1 = kPi / agm(a, b);
    const cplx w2 = kPi / agm(cc, ib);
    Lattice L = make_lattice(w1, w2);
    if (invariants_match(L, c, 1e-8)) return L;
  } catch (const Error&) {
  }
  return std::nullopt;
}

double point_scale(cplx x, cplx y) {
  return std::max({1.0, std::abs(y), std::pow(std::abs(x), 1.5)});
}

// Newton on wp(z) = x; steps are accepted only when they reduce the residual.
cplx newton_wp(cplx z, cplx x, const Lattice& L) {
  const double scale = std::max(1.0, std::abs(x));
  double res = std::abs(wp(z, L) - x);
  for (int it = 0; it < 60 && res > 1e-16 * scale; ++it) {
    const WpPair p = wp_both(z, L);
    if (p.wp_prime == cplx{}) break;
    cplx step = (p.wp - x) / p.wp_prime;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      try {
        const double r = std::abs(wp(z - step, L) - x);
        if (r < res) {
          z -= step;
          res = r;
          accepted = true;
          break;
        }
      } catch (const Error&) {
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return z;
}

// Chooses between z and -z using the sign of wp'.
std::optional<cplx> finish_log(cplx z, const EllipticPoint& P, const Lattice& L) {
  try {
    z = newton_wp(z, P.x, L);
    WpPair p = wp_both(z, L);
    if (std::abs(p.wp_prime - P.y) > std::abs(p.wp_prime + P.y)) {
      z = -z;
      p.wp_prime = -p.wp_prime;
    }
    const double s = point_scale(P.x, P.y);
    if (std::abs(p.wp - P.x) <= 1e-9 * std::max(1.0, std::abs(P.x)) &&
        std::abs(p.wp_prime - P.y) <= 1e-7 * s) {
      return z;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool on_negative_axis(cplx w) { return w.imag() == 0.0 && w.real() < 0.0; }

}  // namespace

std::array<cplx, 3> cubic_roots(const CurveInvariants& c) {
  // x^3 + p x + q with p = -g2/4, q = -g3/4
  const cplx p = -c.g2 / 4.0, q = -c.g3 / 4.0;
  const cplx d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u3 = -q / 2.0 + d;
  if (std::abs(-q / 2.0 - d) > std::abs(u3)) u3 = -q / 2.0 - d;
  std::array<cplx, 3> r{};
  if (std::abs(u3) == 0.0) return r;
  const cplx u = std::pow(u3, 1.0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    const cplx w = std::polar(1.0, 2.0 * kPi * k / 3.0);
    cplx x = w * u - p / (3.0 * w * u);
    for (int it = 0; it < 4; ++it) {
      const cplx f = 4.0 * x * x * x - c.g2 * x - c.g3;
      const cplx fp = 12.0 * x * x - c.g2;
      if (fp == cplx{}) break;
      x -= f / fp;
    }
    r[k] = x;
  }
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return r;
}

Lattice periods_from_invariants(const CurveInvariants& c) {
  if (is_singular(c)) {
    throw Error(ErrorCode::SingularCurve, "discriminant vanishes");
  }
  const std::array<cplx, 3> e = cubic_roots(c);
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (bool flip : {false, true}) {
    for (const auto& pr : perms) {
      if (auto L = try_periods(e[pr[0]], e[pr[1]], e[pr[2]], flip, c)) {
        return make_lattice(L->reduced_omega1(), L->reduced_omega2());
      }
    }
  }
  throw Error(ErrorCode::ConvergenceFailure, "no AGM branch reproduces the invariants");
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
  const cplx a0 = (x + y + z) / 3.0;
  double q = std::pow(3.0 * 1e-16, -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  const cplx x0 = x, y0 = y;
  cplx a = a0;
  double f = 1.0;
  for (int i = 0; i < 200 && q >= std::abs(a); ++i) {
    const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const cplx lam = sx * sy + sy * sz + sz * sx;
    a = (a + lam) / 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
    q /= 4.0;
    f *= 4.0;
  }
  const cplx X = (a0 - x0) / (f * a), Y = (a0 - y0) / (f * a);
  const cplx Z = -(X + Y);
  const cplx e2 = X * Y - Z * Z, e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double curve_residual(const EllipticPoint& P, const CurveInvariants& c) {
  if (P.is_identity()) return 0.0;
  const cplx rhs = 4.0 * P.x * P.x * P.x - c.g2 * P.x - c.g3;
  const double scale = std::max({1.0, std::norm(P.y), 4.0 * std::pow(std::abs(P.x), 3),
                                 std::abs(c.g2 * P.x), std::abs(c.g3)});
  return std::abs(P.y * P.y - rhs) / scale;
}

bool on_curve(const EllipticPoint& P, const CurveInvariants& c, double rel_tol) {
  return curve_residual(P, c) <= rel_tol;
}

EllipticPoint point_from_log(cplx z, const Lattice& L) {
  long long m = 0, n = 0;
  if (nearest_lattice_point(z, L, 1e-10, m, n)) return EllipticPoint::identity();
  const WpPair p = wp_both(z, L);
  return EllipticPoint::affine(p.wp, p.wp_prime);
}

BranchedValue elliptic_log(const EllipticPoint& P, const Lattice& L) {
  if (P.is_identity()) return {};
  const CurveInvariants c = eisenstein_invariants(L);
  if (!on_curve(P, c)) {
    throw Error(ErrorCode::NotOnCurve, "point does not satisfy the curve equation");
  }
  const std::array<cplx, 3> e = cubic_roots(c);
  std::optional<cplx> z;
  if (std::abs(P.y) <= 1e-7 * point_scale(P.x, P.y)) {
    // wp' vanishes to first order at a half period, so Newton only converges
    // linearly there; match the half periods directly instead.
    const cplx n1 = L.reduced_omega1(), n2 = L.reduced_omega2();
    double best = INFINITY;
    for (const cplx h : {0.5 * n1, 0.5 * n2, 0.5 * (n1 + n2)}) {
      const double d = std::abs(wp(h, L) - P.x);
      if (d < best) {
        best = d;
        z = h;
      }
    }
    if (best > 1e-9 * std::max(1.0, std::abs(P.x))) z.reset();
  }
  const cplx a1 = P.x - e[0], a2 = P.x - e[1], a3 = P.x - e[2];
  if (!z && !on_negative_axis(a1) && !on_negative_axis(a2) && !on_negative_axis(a3)) {
    const cplx z0 = carlson_rf(a1, a2, a3);
    if (std::isfinite(std::abs(z0))) z = finish_log(z0, P, L);
  }
  if (!z) {
    // Grid search over the centred reduced parallelogram.
    const cplx n1 = L.reduced_omega1(), n2 = L.reduced_omega2();
    const int G = 24;
    double best = INFINITY;
    cplx best_z{};
    for (int i = 0; i < G; ++i) {
      for (int j = 0; j < G; ++j) {
        const cplx w = ((i + 0.5) / G - 0.5) * n1 + ((j + 0.5) / G - 0.5) * n2;
        const WpPair p = wp_both(w, L);
        const double d = std::abs(p.wp - P.x) / (1.0 + std::abs(P.x)) +
                         std::abs(p.wp_prime - P.y) / (1.0 + std::abs(P.y));
        if (d < best) {
          best = d;
          best_z = w;
        }
      }
    }
    z = finish_log(best_z, P, L);
  }
  if (!z) throw Error(ErrorCode::ConvergenceFailure, "elliptic logarithm did not converge");
  return {reduce_to_fundamental(*z, L).z0, 0, 0, 0};
}

GeneralizedAbelianLog generalized_elliptic_log(const EllipticPoint& P, const Lattice& L) {
  if (P.is_identity()) return {cplx{}, cplx{}, true};
  const cplx z = elliptic_log(P, L).value;
  return {z, zeta_w(z, L), false};
}

GeneralizedAbelianLog shift_branch(const GeneralizedAbelianLog& g, long long m, long long n,
                                   const Lattice& L) {
  const QuasiPeriods q = quasi_periods(L);
  const double dm = static_cast<double>(m), dn = static_cast<double>(n);
  return {g.z + dm * L.omega1() + dn * L.omega2(), g.w + dm * q.eta1 + dn * q.eta2,
          g.at_identity};
}

EllipticPoint add_points(const EllipticPoint& P, const EllipticPoint& Q,
                         const CurveInvariants& c, double rel_tol) {
  const double scale = std::max({1.0, std::abs(P.x), std::abs(Q.x), std::abs(P.y), std::abs(Q.y)});
  const auto is_zero = [&](cplx v) { return std::abs(v) <= rel_tol * scale; };
  CurvePoint<cplx> a{P.infinity, P.x, P.y}, b{Q.infinity, Q.x, Q.y};
  const CurvePoint<cplx> r = curve_add(a, b, c.g2, is_zero);
  return r.infinity ? EllipticPoint::identity() : EllipticPoint::affine(r.x, r.y);
}

EllipticPoint negate_point(const EllipticPoint& P) {
  return P.infinity ? P : EllipticPoint::affine(P.x, -P.y);
}

}  // namespace semiabel
