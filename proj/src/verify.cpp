#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "semiabel/error.hpp"
#include "semiabel/job.hpp"
#include "semiabel/pairing.hpp"
#include "semiabel/table_instances.hpp"

namespace semiabel {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  // 53-bit uniform in [0, 1); the mapping is fixed so output is portable.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

struct NamedLattice {
  std::string name;
  Lattice L;
};

std::vector<NamedLattice> suite_lattices(const JobConfig& cfg, Sampler& rng) {
  std::vector<NamedLattice> out;
  out.push_back({"config", lattice_of(cfg.curve)});
  out.push_back({"square", periods_from_invariants({4.0, 0.0})});
  out.push_back({"hexagonal", periods_from_invariants({0.0, 1.0})});
  for (int i = 0; i < 3; ++i) {
    const cplx w1 = std::polar(rng.uniform(0.5, 2.0), rng.uniform(-kPi, kPi));
    const cplx tau{rng.uniform(-0.5, 0.5), rng.uniform(0.2, 5.0)};
    out.push_back({"random" + std::to_string(i + 1), make_lattice(w1, tau * w1)});
  }
  return out;
}

cplx random_point(const Lattice& L, Sampler& rng, double margin = 0.05) {
  const double a = rng.uniform(margin, 1.0 - margin), b = rng.uniform(margin, 1.0 - margin);
  return a * L.omega1() + b * L.omega2();
}

double lattice_distance(cplx z, const Lattice& L) {
  const FundamentalReduction r = reduce_to_fundamental(z, L);
  double best = INFINITY;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::abs(r.z0 - static_cast<double>(i) * L.reduced_omega1() -
                                     static_cast<double>(j) * L.reduced_omega2()));
    }
  }
  return best;
}

struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) {
    for (double r : boost::math::legendre_p_zeros<double>(n)) {
      const double d = boost::math::legendre_p_prime(n, r);
      const double wt = 2.0 / ((1.0 - r * r) * d * d);
      x.push_back(r);
      w.push_back(wt);
      if (r != 0.0) {
        x.push_back(-r);
        w.push_back(wt);
      }
    }
  }
  template <class F>
  cplx segment(cplx a, cplx b, F f) const {
    const cplx h = 0.5 * (b - a), m = 0.5 * (a + b);
    cplx s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(m + x[i] * h);
    return s * h;
  }
};

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double t = std::clamp(((p - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Singular points shift + Lambda within two reduced cells of p.
std::vector<cplx> nearby_singularities(cplx p, cplx shift, const Lattice& L) {
  const cplx base = p - shift - reduce_to_fundamental(p - shift, L).z0 + shift;
  std::vector<cplx> out;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      out.push_back(base + static_cast<double>(i) * L.reduced_omega1() +
                    static_cast<double>(j) * L.reduced_omega2());
    }
  }
  return out;
}

// Integral of dlog f_q = zeta(z+q) - zeta(z) - zeta(q) from z0 to z0 + w,
// in pieces no longer than the shortest period. A piece passing close to a
// zero or pole of f_q is replaced by two segments through an offset midpoint.
cplx contour_dlog_fq(cplx z0, cplx w, const ExtensionParam& q, const Lattice& L,
                     const GaussLegendre& gl) {
  const cplx zq = zeta_w(q.q, L);
  const auto f = [&](cplx z) { return zeta_w(z + q.q, L) - zeta_w(z, L) - zq; };
  const int pieces = static_cast<int>(std::ceil(std::abs(w) / std::abs(L.reduced_omega1())));
  cplx total{};
  for (int k = 0; k < pieces; ++k) {
    const cplx a = z0 + (static_cast<double>(k) / pieces) * w;
    const cplx b = z0 + (static_cast<double>(k + 1) / pieces) * w;
    std::vector<cplx> sing = nearby_singularities(0.5 * (a + b), 0.0, L);
    for (cplx s : nearby_singularities(0.5 * (a + b), -q.q, L)) sing.push_back(s);
    const auto clearance = [&](cplx u, cplx v) {
      double d = INFINITY;
      for (cplx s : sing) d = std::min(d, segment_distance(s, u, v));
      return d;
    };
    const double len = std::abs(b - a);
    if (clearance(a, b) >= 0.1 * len) {
      total += gl.segment(a, b, f);
      continue;
    }
    const cplx normal = cplx{0.0, 1.0} * (b - a) / len;
    cplx best_mid{};
    double best = -1.0;
    for (double s : {0.15, -0.15, 0.3, -0.3}) {
      const cplx mid = 0.5 * (a + b) + s * len * normal;
      const double c = std::min(clearance(a, mid), clearance(mid, b));
      if (c > best) {
        best = c;
        best_mid = mid;
      }
    }
    total += gl.segment(a, best_mid, f) + gl.segment(best_mid, b, f);
  }
  return total;
}

double mod_two_pi_i(cplx r) {
  const double k = std::round(r.imag() / (2.0 * kPi));
  return std::abs(r - k * kTwoPiI);
}

struct Entry {
  std::string name, anchor;
  double tol;
  std::function<double(std::string&)> run;  // returns the max residual
};

}  // namespace

VerificationReport run_verification_suite(const JobConfig& cfg) {
  Sampler rng(cfg.seed);
  const std::vector<NamedLattice> lats = suite_lattices(cfg, rng);
  const GaussLegendre gl(256);

  std::vector<Entry> entries;

  entries.push_back({"legendre_relation", "Legendre relation eta1 omega2 - eta2 omega1 = 2 pi i",
                     1e-9, [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const QuasiPeriods e = quasi_periods(L);
                         m = std::max(m, std::abs(e.eta1 * L.omega2() - e.eta2 * L.omega1() - kTwoPiI));
                       }
                       return m;
                     }});

  entries.push_back({"weierstrass_ode", "wp'^2 = 4 wp^3 - g2 wp - g3 on a 10x10 grid", 1e-9,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const CurveInvariants c = eisenstein_invariants(L);
                         for (int i = 0; i < 10; ++i) {
                           for (int j = 0; j < 10; ++j) {
                             const cplx z = (i / 10.0) * L.reduced_omega1() + (j / 10.0) * L.reduced_omega2();
                             if (lattice_distance(z, L) < 1e-3 * std::abs(L.reduced_omega1())) continue;
                             const WpPair p = wp_both(z, L);
                             const cplx r = p.wp_prime * p.wp_prime - 4.0 * p.wp * p.wp * p.wp +
                                            c.g2 * p.wp + c.g3;
                             // the extra terms keep the measure homogeneous in the scale of Lambda
                             const double norm = 1.0 + std::pow(std::abs(p.wp), 3) +
                                                 std::abs(c.g2 * p.wp) + std::abs(c.g3);
                             m = std::max(m, std::abs(r) / norm);
                           }
                         }
                       }
                       return m;
                     }});

  entries.push_back({"sigma_automorphy", "sigma(z + l) = psi(l) exp(eta(l)(z + l/2)) sigma(z)", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         for (int k = 0; k < 10; ++k) {
                           const cplx z = random_point(L, rng);
                           const long long a = rng.integer(-2, 2), b = rng.integer(-2, 2);
                           const cplx lam = static_cast<double>(a) * L.omega1() + static_cast<double>(b) * L.omega2();
                           const cplx lhs = sigma_w(z + lam, L) / sigma_w(z, L);
                           m = std::max(m, std::abs(lhs / sigma_automorphy_factor(lam, z, L) - 1.0));
                         }
                       }
                       return m;
                     }});

  entries.push_back({"eta_linear_closed_form",
                     "eta(z) = (eta1/omega1) z - 2 pi i Im(z)/c with omega1 real positive", 1e-10,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         for (int k = 0; k < 20; ++k) {
                           const cplx z = (rng.uniform(-2, 2)) * L.omega1() + rng.uniform(-2, 2) * L.omega2();
                           const cplx a = eta_linear(z, L), b = eta_linear_closed_form(z, L);
                           m = std::max(m, std::abs(a - b) / std::max(1.0, std::abs(a)));
                         }
                       }
                       return m;
                     }});

  entries.push_back({"theta_automorphy",
                     "theta(z + l) = psi(l) exp(pi conj(l)(z + l/2)/c) theta(z)", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         for (int k = 0; k < 10; ++k) {
                           const cplx z = random_point(L, rng);
                           const long long a = rng.integer(-2, 2), b = rng.integer(-2, 2);
                           const cplx lam = static_cast<double>(a) * L.omega1() + static_cast<double>(b) * L.omega2();
                           const cplx lhs = theta_normalized(z + lam, L) / theta_normalized(z, L);
                           m = std::max(m, std::abs(lhs / theta_automorphy_factor(lam, z, L) - 1.0));
                         }
                       }
                       return m;
                     }});

  // Three extension parameters per lattice, shared by the f_q entries.
  std::vector<std::vector<ExtensionParam>> qs;
  for (const auto& [n, L] : lats) {
    std::vector<ExtensionParam> v;
    for (int k = 0; k < 3; ++k) v.push_back(extension_from_log(random_point(L, rng, 0.1), L));
    qs.push_back(v);
  }

  entries.push_back({"fq_quasi_periodicity",
                     "f_q(z + omega_i) = exp(eta_i q - omega_i zeta(q)) f_q(z)", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (std::size_t i = 0; i < lats.size(); ++i) {
                         const Lattice& L = lats[i].L;
                         for (const auto& q : qs[i]) {
                           const auto qqp = quasi_quasi_periods(q, L);
                           const cplx z = random_point(L, rng, 0.1);
                           if (lattice_distance(z + q.q, L) < 1e-2 * std::abs(L.omega1())) continue;
                           const cplx f0 = serre_fq(z, q, L).value;
                           const cplx r1 = serre_fq(z + L.omega1(), q, L).value / f0;
                           const cplx r2 = serre_fq(z + L.omega2(), q, L).value / f0;
                           m = std::max({m, std::abs(r1 / std::exp(qqp[0]) - 1.0),
                                         std::abs(r2 / std::exp(qqp[1]) - 1.0)});
                         }
                       }
                       return m;
                     }});

  entries.push_back({"fq_contour_quadrature",
                     "integral of dlog f_q along omega_i = eta_i q - omega_i zeta(q) mod 2 pi i",
                     1e-6, [&](std::string&) {
                       double m = 0;
                       for (std::size_t i = 0; i < lats.size(); ++i) {
                         const Lattice& L = lats[i].L;
                         for (const auto& q : qs[i]) {
                           const auto qqp = quasi_quasi_periods(q, L);
                           const cplx z0 = random_point(L, rng, 0.1);
                           m = std::max(m, mod_two_pi_i(contour_dlog_fq(z0, L.omega1(), q, L, gl) - qqp[0]));
                           m = std::max(m, mod_two_pi_i(contour_dlog_fq(z0, L.omega2(), q, L, gl) - qqp[1]));
                         }
                       }
                       return m;
                     }});

  entries.push_back({"f_tilde_ratio",
                     "f~_w(z)/f~_z(w) = exp(eta(z) w - eta(w) z) = Weil pairing", 1e-9,
                     [&](std::string& detail) {
                       double m = 0;
                       {
                         // k in log(f~ ratio) = 2 pi i k on the basis pairs of the config lattice
                         const Lattice& L = lats.front().L;
                         const DualLattice D = dual_lattice(L);
                         detail = "k on (w_i, w_j*):";
                         for (const cplx w : {L.omega1(), L.omega2()}) {
                           for (const cplx ws : {D.omega1_star, D.omega2_star}) {
                             const cplx k = hodge_weil(w, ws, L) / kTwoPiI;
                             detail += " " + std::to_string(std::llround(k.real()));
                           }
                         }
                       }
                       for (const auto& [n, L] : lats) {
                         const DualLattice D = dual_lattice(L);
                         for (int k = 0; k < 20; ++k) {
                           const cplx z = random_point(L, rng, 0.1);
                           const cplx zs = rng.uniform(0.1, 0.9) * D.omega1_star + rng.uniform(0.1, 0.9) * D.omega2_star;
                           const RatioValues r = ratio_f_tilde(z, zs, L);
                           m = std::max({m, std::abs(r.ratio - r.exponential), std::abs(r.exponential - r.weil),
                                         std::abs(r.weil - r.coordinates)});
                         }
                         for (int a = -1; a <= 1; ++a) {
                           for (int b = -1; b <= 1; ++b) {
                             const cplx lam = static_cast<double>(a) * L.omega1() + static_cast<double>(b) * L.omega2();
                             const cplx ls = static_cast<double>(b) * D.omega1_star - static_cast<double>(a) * D.omega2_star;
                             const RatioValues r = ratio_f_tilde(lam, ls, L);
                             m = std::max({m, std::abs(r.ratio - 1.0), std::abs(r.weil - 1.0)});
                           }
                         }
                       }
                       return m;
                     }});

  entries.push_back({"weil_bimultiplicativity",
                     "W(z1 + z2, z*) = W(z1, z*) W(z2, z*) and symmetrically", 1e-10,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const DualLattice D = dual_lattice(L);
                         for (int k = 0; k < 10; ++k) {
                           const cplx z1 = random_point(L, rng), z2 = random_point(L, rng);
                           const cplx s1 = rng.uniform() * D.omega1_star + rng.uniform() * D.omega2_star;
                           const cplx s2 = rng.uniform() * D.omega1_star + rng.uniform() * D.omega2_star;
                           const auto W = [&](cplx a, cplx b) { return weil_pairing(a, b, L).value; };
                           m = std::max({m, std::abs(W(z1 + z2, s1) - W(z1, s1) * W(z2, s1)),
                                         std::abs(W(z1, s1 + s2) - W(z1, s1) * W(z1, s2))});
                         }
                       }
                       return m;
                     }});

  entries.push_back({"torsion_weil_roots",
                     "N-torsion pairing values are N-th roots of unity, independent of representatives",
                     1e-8, [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const DualLattice D = dual_lattice(L);
                         for (long long N = 2; N <= 5; ++N) {
                           const double dn = static_cast<double>(N);
                           const cplx p = (static_cast<double>(rng.integer(0, N - 1)) * L.omega1() +
                                           static_cast<double>(rng.integer(0, N - 1)) * L.omega2()) / dn;
                           const cplx qs_ = (static_cast<double>(rng.integer(0, N - 1)) * D.omega1_star +
                                             static_cast<double>(rng.integer(0, N - 1)) * D.omega2_star) / dn;
                           const cplx v = torsion_weil_pairing(p, qs_, N, L).value;
                           const cplx v2 = torsion_weil_pairing(p + L.omega1() - 2.0 * L.omega2(),
                                                                qs_ + 3.0 * D.omega2_star, N, L).value;
                           m = std::max({m, std::abs(std::pow(v, static_cast<int>(N)) - 1.0), std::abs(v - v2)});
                         }
                       }
                       return m;
                     }});

  entries.push_back({"hodge_weil_integrality", "eta(l) m - eta(m) l lies in 2 pi i Z", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const DualLattice D = dual_lattice(L);
                         for (cplx lam : {L.omega1(), L.omega2(), L.omega1() - L.omega2()}) {
                           for (cplx ls : {D.omega1_star, D.omega2_star}) {
                             const cplx h = hodge_weil(lam, ls, L) / kTwoPiI;
                             m = std::max(m, std::abs(h - std::round(h.real())));
                           }
                         }
                       }
                       return m;
                     }});

  entries.push_back({"poincare_unitary_factor",
                     "a/conj(a) = exp(2 pi i Im(z conj(m) + conj(l) w)/c)", 1e-9,
                     [&](std::string&) {
                       double m = 0;
                       for (const auto& [n, L] : lats) {
                         const DualLattice D = dual_lattice(L);
                         for (int k = 0; k < 5; ++k) {
                           const cplx lam = static_cast<double>(rng.integer(-2, 2)) * L.omega1() +
                                            static_cast<double>(rng.integer(-2, 2)) * L.omega2();
                           const cplx ls = static_cast<double>(rng.integer(-2, 2)) * D.omega1_star +
                                           static_cast<double>(rng.integer(-2, 2)) * D.omega2_star;
                           const cplx z = random_point(L, rng);
                           const cplx zs = rng.uniform() * D.omega1_star + rng.uniform() * D.omega2_star;
                           m = std::max(m, std::abs(poincare_automorphy_a0(lam, ls, z, zs, L) -
                                                    poincare_section_closed_form(lam, ls, z, zs, L)));
                         }
                       }
                       return m;
                     }});

  entries.push_back({"expg_logg_roundtrip",
                     "log_G(exp_G(z, t)) = (z, t) modulo the kernel lattice", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (std::size_t i = 0; i < lats.size(); ++i) {
                         const Lattice& L = lats[i].L;
                         for (const auto& q : qs[i]) {
                           const auto qqp = quasi_quasi_periods(q, L);
                           for (int k = 0; k < 20; ++k) {
                             const cplx z = rng.uniform(-1.5, 1.5) * L.omega1() + rng.uniform(-1.5, 1.5) * L.omega2();
                             if (lattice_distance(z, L) < 1e-2 * std::abs(L.omega1()) ||
                                 lattice_distance(z + q.q, L) < 1e-2 * std::abs(L.omega1())) {
                               continue;
                             }
                             const cplx t{rng.uniform(-1, 1), rng.uniform(-3, 3)};
                             const SemiAbelianLog lg = log_G(exp_G(z, t, q, L), q, L);
                             long long a = 0, b = 0;
                             const cplx dz = lg.z.value - z;
                             nearest_lattice_point(dz, L, 1e-6, a, b);
                             const cplx lam = static_cast<double>(a) * L.omega1() + static_cast<double>(b) * L.omega2();
                             const cplx r = lg.t.value - t + static_cast<double>(a) * qqp[0] + static_cast<double>(b) * qqp[1];
                             m = std::max({m, std::abs(dz - lam) / std::abs(L.omega1()), mod_two_pi_i(r)});
                           }
                         }
                       }
                       return m;
                     }});

  entries.push_back({"exp_kernel_lattice",
                     "exp_G is trivial on (omega_i, -qqp_i) and (0, 2 pi i)", 1e-8,
                     [&](std::string&) {
                       double m = 0;
                       for (std::size_t i = 0; i < lats.size(); ++i) {
                         const Lattice& L = lats[i].L;
                         for (const auto& q : qs[i]) {
                           const auto qqp = quasi_quasi_periods(q, L);
                           const cplx z = random_point(L, rng, 0.1);
                           if (lattice_distance(z + q.q, L) < 1e-2 * std::abs(L.omega1())) continue;
                           const cplx t{rng.uniform(-1, 1), rng.uniform(-1, 1)};
                           const SemiAbelianPoint R = exp_G(z, t, q, L);
                           const SemiAbelianPoint shifted[3] = {exp_G(z + L.omega1(), t - qqp[0], q, L),
                                                                exp_G(z + L.omega2(), t - qqp[1], q, L),
                                                                exp_G(z, t + kTwoPiI, q, L)};
                           for (const auto& S : shifted) {
                             const double sc = std::max(1.0, std::abs(R.base.x));
                             m = std::max({m, std::abs(S.fiber / R.fiber - 1.0),
                                           std::abs(S.base.x - R.base.x) / sc,
                                           std::abs(S.base.y - R.base.y) / std::pow(sc, 1.5)});
                           }
                           const SemiAbelianPoint O = exp_G(L.omega1(), -qqp[0], q, L);
                           m = std::max(m, O.base.is_identity() ? std::abs(O.fiber - 1.0) : 1.0);
                         }
                       }
                       return m;
                     }});

  entries.push_back({"period_inversion",
                     "invariants of the periods computed from (g2, g3) reproduce (g2, g3)", 1e-9,
                     [&](std::string& detail) {
                       double m = 0, fwd = 0;
                       for (const auto& [n, L] : lats) {
                         const CurveInvariants c = eisenstein_invariants(L);
                         const Lattice L2 = periods_from_invariants(c);
                         const CurveInvariants c2 = eisenstein_invariants(L2);
                         const double s2 = std::max(std::abs(c.g2), std::pow(std::abs(c.g3), 2.0 / 3.0));
                         m = std::max({m, std::abs(c2.g2 - c.g2) / s2,
                                       std::abs(c2.g3 - c.g3) / std::pow(s2, 1.5)});
                         // forward error; large only when the discriminant is tiny
                         for (cplx w : {L2.omega1(), L2.omega2()}) {
                           const RealCoordinates a = real_coordinates(w, L);
                           fwd = std::max({fwd, std::abs(a.alpha1 - std::round(a.alpha1)),
                                           std::abs(a.alpha2 - std::round(a.alpha2))});
                         }
                       }
                       char buf[64];
                       std::snprintf(buf, sizeof buf, "lattice coordinate error %.3g", fwd);
                       detail = buf;
                       return m;
                     }});

  // Dimension table on the square lattice and a lattice without CM.
  struct Classified {
    std::string label;
    int expected_row;
    bool cm;
    std::optional<ClassificationReport> report;
    std::string error;
  };
  std::vector<Classified> classified;
  const Lattice sq = periods_from_invariants({4.0, 0.0});
  const Lattice ncm = periods_from_invariants({2.0, 1.0});
  const bool sq_cm = detect_cm(sq, cfg.settings.max_height).cm;
  const bool ncm_cm = detect_cm(ncm, cfg.settings.max_height).cm;
  for (const auto* Lp : {&sq, &ncm}) {
    auto inst = dimension_table_instances(*Lp);
    if (Lp == &ncm) {
      const cplx p = (std::sqrt(2.0) - 1.0) * ncm.omega1() + std::exp(-1.3) * ncm.omega2();
      inst.push_back({"no CM: q = 2p, t = 0", 7, single_motive(ncm, 2.0 * p, p, 0)});
      inst.push_back({"no CM: q = i p, t = 0", 8, single_motive(ncm, cplx{0.0, 1.0} * p, p, 0)});
    }
    for (auto& ti : inst) {
      Classified c{(Lp == &sq ? "square: " : "no CM: ") + ti.label, ti.expected_row, Lp == &sq, {}, {}};
      try {
        c.report = motivic_galois_dims(ti.motive, cfg.settings);
      } catch (const Error& e) {
        c.error = e.what();
      }
      classified.push_back(std::move(c));
    }
  }

  entries.push_back({"dimension_table",
                     "dimension table rows: (dim UR, dim Gal with CM, dim Gal without CM)", 0.0,
                     [&](std::string& detail) {
                       double bad = 0;
                       if (!sq_cm || ncm_cm) {
                         ++bad;
                         detail += "CM detection on the table lattices failed; ";
                       }
                       for (const auto& c : classified) {
                         const TableTriple t = dimension_table_triple(c.expected_row);
                         const int gal = c.cm ? t.gal_cm : t.gal_non_cm;
                         bool ok = c.report && static_cast<int>(c.report->table_row) == c.expected_row &&
                                   c.report->dim_UR == t.ur && c.report->dim_Gal == gal;
                         if (ok && c.expected_row >= 6 && c.expected_row <= 7) {
                           ok = c.report->deficient == std::optional<bool>(c.expected_row == 6);
                         }
                         if (!ok) {
                           ++bad;
                           detail += c.label + (c.error.empty() ? " mismatched; " : ": " + c.error + "; ");
                         }
                       }
                       return bad;
                     }});

  entries.push_back({"dimension_formula",
                     "dim UR = 2 dim B + dim Z(1), dim Gal = dim UR + dim Gal(A), dim B = dim B_v* + dim B_Q",
                     0.0, [&](std::string& detail) {
                       double bad = 0;
                       for (const auto& c : classified) {
                         if (!c.report) continue;
                         const auto& R = *c.report;
                         if (R.dim_UR != 2 * R.dim_B + R.dim_Z1 || R.dim_Gal != R.dim_UR + R.dim_Gal_A ||
                             R.dim_B != R.dim_B_vstar + R.dim_B_Q) {
                           ++bad;
                           detail += c.label + "; ";
                         }
                       }
                       return bad;
                     }});

  VerificationReport rep;
  for (auto& e : entries) {
    VerificationEntry v{e.name, e.anchor, 0.0, e.tol, false, {}};
    try {
      v.max_residual = e.run(v.detail);
      v.pass = std::isfinite(v.max_residual) && v.max_residual <= e.tol;
    } catch (const Error& err) {
      v.max_residual = INFINITY;
      v.detail = err.what();
    }
    rep.entries.push_back(v);
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  rep.pass = std::all_of(rep.entries.begin(), rep.entries.end(), [](const auto& e) { return e.pass; });
  Json lat_names = Json::array();
  for (const auto& l : lats) {
    lat_names.push_back({{"name", l.name},
                         {"omega1", complex_json(l.L.omega1())},
                         {"omega2", complex_json(l.L.omega2())}});
  }
  rep.environment = {{"seed", cfg.seed},
                     {"tol", cfg.settings.tol},
                     {"n_max", cfg.settings.n_max},
                     {"max_height", cfg.settings.max_height},
                     {"lattices", lat_names},
                     {"quadrature_nodes", static_cast<int>(gl.x.size())}};
  return rep;
}

Json to_json(const VerificationReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"name", e.name},
                       {"anchor", e.anchor},
                       {"max_residual", std::isfinite(e.max_residual) ? Json(e.max_residual) : Json(nullptr)},
                       {"tolerance", e.tolerance},
                       {"pass", e.pass},
                       {"detail", e.detail}});
  }
  return Json{{"entries", entries}, {"environment", r.environment}, {"pass", r.pass}};
}

}  // namespace semiabel
