#include "semiabel/elliptic.hpp"

#include <cmath>

#include "semiabel/error.hpp"

namespace semiabel {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kSeriesRel = 1e-16;
constexpr double kPoleGuard = 1e-10;
constexpr double kLatticeMember = 1e-8;

// theta_1 and its first three derivatives at v, nome q = exp(log_q).
struct Theta1 {
  cplx t0, t1, t2, t3;
};

Theta1 theta1_all(cplx v, cplx log_q) {
  Theta1 out{};
  double majorant_sum = 0.0;
  const double im_v = std::abs(v.imag());
  for (int n = 0; n < kMaxTerms; ++n) {
    const double h = n + 0.5;
    const double k = 2.0 * n + 1.0;
    const cplx qp = std::exp(log_q * (h * h));
    const double sgn = (n % 2 == 0) ? 2.0 : -2.0;
    const cplx s = std::sin(k * v), c = std::cos(k * v);
    out.t0 += sgn * qp * s;
    out.t1 += sgn * qp * k * c;
    out.t2 -= sgn * qp * k * k * s;
    out.t3 -= sgn * qp * k * k * k * c;
    const double maj = std::abs(qp) * std::exp(k * im_v) * k * k * k;
    majorant_sum += maj;
    if (n > 0 && maj < kSeriesRel * majorant_sum) return out;
  }
  throw Error(ErrorCode::ConvergenceFailure, "theta series did not converge");
}

// Sums (-1)^n (2n+1)^p q^{(n+1/2)^2} for p = 1 and p = 3.
void theta_moments(cplx log_q, cplx& s1, cplx& s3) {
  s1 = s3 = cplx{};
  double maj = 0.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double h = n + 0.5, k = 2.0 * n + 1.0;
    const cplx qp = std::exp(log_q * (h * h));
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    s1 += sgn * k * qp;
    s3 += sgn * k * k * k * qp;
    const double m = std::abs(qp) * k * k * k;
    maj += m;
    if (n > 0 && m < kSeriesRel * maj) return;
  }
  throw Error(ErrorCode::ConvergenceFailure, "theta moment series did not converge");
}

// E4 and E6 as Lambert series in q2 = exp(2 pi i tau).
void eisenstein_e4_e6(cplx log_q2, cplx& e4, cplx& e6) {
  cplx s3{}, s5{};
  double maj = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const cplx qn = std::exp(log_q2 * static_cast<double>(n));
    const cplx lam = qn / (1.0 - qn);
    const double n3 = std::pow(static_cast<double>(n), 3);
    const double n5 = n3 * n * n;
    s3 += n3 * lam;
    s5 += n5 * lam;
    const double m = n5 * std::abs(lam);
    maj += m;
    if (m < kSeriesRel * maj) {
      e4 = 1.0 + 240.0 * s3;
      e6 = 1.0 - 504.0 * s5;
      return;
    }
  }
  throw Error(ErrorCode::ConvergenceFailure, "Eisenstein series did not converge");
}

cplx log_nome(const Lattice& L) { return cplx{0.0, kPi} * L.reduced_tau(); }

const detail::AnalyticConstants& constants(const Lattice& L) {
  detail::AnalyticCache& cache = L.analytic_cache();
  std::call_once(cache.once, [&] {
    detail::AnalyticConstants& k = cache.value;
    const cplx nu1 = L.reduced_omega1(), nu2 = L.reduced_omega2();
    const cplx lq = log_nome(L);
    k.nome = std::exp(lq);
    if (std::abs(k.nome) >= 1.0 - 1e-6) {
      throw Error(ErrorCode::ConvergenceFailure, "nome too close to the unit circle");
    }
    cplx s1, s3;
    theta_moments(lq, s1, s3);
    k.theta1_prime0 = 2.0 * s1;
    k.eta1_reduced = kPi * kPi * s3 / (3.0 * nu1 * s1);
    // eta2 from zeta(nu2/2) directly, independent of the Legendre relation.
    const cplx half = nu2 / 2.0;
    const Theta1 th = theta1_all(kPi * half / nu1, lq);
    k.eta2_reduced = 2.0 * (k.eta1_reduced * half / nu1 + (kPi / nu1) * th.t1 / th.t0);

    cplx e4, e6;
    eisenstein_e4_e6(2.0 * lq, e4, e6);
    const cplx r = kPi / nu1;
    const cplx r2 = r * r;
    k.g2 = r2 * r2 * (4.0 / 3.0) * e4;
    k.g3 = r2 * r2 * r2 * (8.0 / 27.0) * e6;

    const auto& M = L.basis_change();
    k.eta1 = static_cast<double>(M[0][0]) * k.eta1_reduced +
             static_cast<double>(M[0][1]) * k.eta2_reduced;
    k.eta2 = static_cast<double>(M[1][0]) * k.eta1_reduced +
             static_cast<double>(M[1][1]) * k.eta2_reduced;
  });
  return cache.value;
}

// z = z0 + a*nu1 + b*nu2 with z0 in the centred reduced parallelogram.
struct Centred {
  cplx z0;
  long long a, b;
};

Centred centre(cplx z, const Lattice& L) {
  const RealCoordinates r = reduced_coordinates(z, L);
  const long long a = std::llround(r.alpha1), b = std::llround(r.alpha2);
  return {z - static_cast<double>(a) * L.reduced_omega1() -
              static_cast<double>(b) * L.reduced_omega2(),
          a, b};
}

void pole_guard(const Centred& c, const Lattice& L) {
  if (std::abs(c.z0) <= kPoleGuard * std::abs(L.omega1())) {
    throw Error(ErrorCode::PoleAtLatticePoint, "argument is a lattice point");
  }
}

void require_lattice_point(cplx lambda, const Lattice& L, long long& m, long long& n) {
  if (!nearest_lattice_point(lambda, L, kLatticeMember, m, n)) {
    throw Error(ErrorCode::NotALatticePoint, "argument is not in the lattice");
  }
}

}  // namespace

CurveInvariants eisenstein_invariants(const Lattice& L) {
  const auto& k = constants(L);
  return {k.g2, k.g3};
}

cplx discriminant(const CurveInvariants& c) {
  return c.g2 * c.g2 * c.g2 - 27.0 * c.g3 * c.g3;
}

bool is_singular(const CurveInvariants& c) {
  const double a = std::abs(c.g2), b = std::abs(c.g3);
  // homogeneous of weight 12, so the test does not depend on the scale of Lambda
  const double scale = std::max(a * a * a, 27.0 * b * b);
  return scale == 0.0 || std::abs(discriminant(c)) <= 1e-12 * scale;
}

WpPair wp_both(cplx z, const Lattice& L) {
  const auto& k = constants(L);
  const Centred c = centre(z, L);
  pole_guard(c, L);
  const cplx nu1 = L.reduced_omega1();
  const Theta1 th = theta1_all(kPi * c.z0 / nu1, log_nome(L));
  const cplx r1 = th.t1 / th.t0, r2 = th.t2 / th.t0, r3 = th.t3 / th.t0;
  const cplx s = kPi / nu1;
  WpPair out;
  out.wp = -k.eta1_reduced / nu1 + s * s * (r1 * r1 - r2);
  out.wp_prime = s * s * s * (3.0 * r1 * r2 - 2.0 * r1 * r1 * r1 - r3);
  return out;
}

cplx wp(cplx z, const Lattice& L) { return wp_both(z, L).wp; }
cplx wp_prime(cplx z, const Lattice& L) { return wp_both(z, L).wp_prime; }

cplx zeta_w(cplx z, const Lattice& L) {
  const auto& k = constants(L);
  const Centred c = centre(z, L);
  pole_guard(c, L);
  const cplx nu1 = L.reduced_omega1();
  const Theta1 th = theta1_all(kPi * c.z0 / nu1, log_nome(L));
  const cplx z0val = k.eta1_reduced * c.z0 / nu1 + (kPi / nu1) * th.t1 / th.t0;
  return z0val + static_cast<double>(c.a) * k.eta1_reduced +
         static_cast<double>(c.b) * k.eta2_reduced;
}

cplx sigma_w(cplx z, const Lattice& L) {
  const auto& k = constants(L);
  const Centred c = centre(z, L);
  const cplx nu1 = L.reduced_omega1();
  const Theta1 th = theta1_all(kPi * c.z0 / nu1, log_nome(L));
  const cplx s0 = (nu1 / kPi) * std::exp(k.eta1_reduced * c.z0 * c.z0 / (2.0 * nu1)) *
                  th.t0 / k.theta1_prime0;
  if (c.a == 0 && c.b == 0) return s0;
  const cplx lambda = static_cast<double>(c.a) * nu1 +
                      static_cast<double>(c.b) * L.reduced_omega2();
  const cplx eta = static_cast<double>(c.a) * k.eta1_reduced +
                   static_cast<double>(c.b) * k.eta2_reduced;
  return static_cast<double>(psi_sign(c.a, c.b)) *
         std::exp(eta * (c.z0 + lambda / 2.0)) * s0;
}

QuasiPeriods quasi_periods(const Lattice& L) {
  const auto& k = constants(L);
  return {k.eta1, k.eta2};
}

cplx eta_linear(cplx z, const Lattice& L) {
  const QuasiPeriods q = quasi_periods(L);
  const RealCoordinates a = real_coordinates(z, L);
  return a.alpha1 * q.eta1 + a.alpha2 * q.eta2;
}

cplx eta_linear_closed_form(cplx z, const Lattice& L) {
  cplx u;
  const Lattice R = rotated_lattice(L, &u);
  const QuasiPeriods q = quasi_periods(R);
  const cplx w = u * z;
  const cplx val = (q.eta1 / R.omega1()) * w - kTwoPiI * w.imag() / R.covolume();
  // Quasi-periods of u*Lambda are those of Lambda divided by u.
  return u * val;
}

ThetaNormalization theta_normalization(const Lattice& L) {
  const Lattice R = rotated_lattice(L);
  return {quasi_periods(R).eta1 * R.omega2().imag() - kPi};
}

cplx theta_normalized(cplx z, const Lattice& L) {
  cplx u;
  const Lattice R = rotated_lattice(L, &u);
  const cplx piA = quasi_periods(R).eta1 * R.omega2().imag() - kPi;
  const cplx w = u * z;
  return sigma_w(w, R) * std::exp(-piA * w * w / (2.0 * R.covolume()));
}

cplx theta_automorphy_factor(cplx lambda, cplx z, const Lattice& L) {
  long long m = 0, n = 0;
  require_lattice_point(lambda, L, m, n);
  return static_cast<double>(psi_sign(m, n)) *
         std::exp(kPi * std::conj(lambda) * (z + lambda / 2.0) / L.covolume());
}

cplx sigma_automorphy_factor(cplx lambda, cplx z, const Lattice& L) {
  long long m = 0, n = 0;
  require_lattice_point(lambda, L, m, n);
  const QuasiPeriods q = quasi_periods(L);
  const cplx eta = static_cast<double>(m) * q.eta1 + static_cast<double>(n) * q.eta2;
  return static_cast<double>(psi_sign(m, n)) * std::exp(eta * (z + lambda / 2.0));
}

}  // namespace semiabel
