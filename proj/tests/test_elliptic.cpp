#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <thread>

#include "doctest.h"
#include "oracles.hpp"
#include "semiabel/error.hpp"
#include "semiabel/periods.hpp"

using namespace semiabel;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<Lattice> test_lattices() {
  const double w = oracle::lemniscate_period();
  return {make_lattice(w, cplx{0, w}),
          make_lattice(1.0, std::polar(1.0, oracle::pi / 3)),
          make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9}),
          make_lattice(cplx{0.8, -0.1}, cplx{0.35, 0.2}),
          make_lattice(2.0, cplx{0.31, 4.7})};
}

}  // namespace

TEST_CASE("invariants of the lemniscatic lattice from the quadrature period") {
  const double w = oracle::lemniscate_period();
  CHECK(w == doctest::Approx(2.6220575542921198).epsilon(1e-14));
  const CurveInvariants c = eisenstein_invariants(make_lattice(w, cplx{0, w}));
  CHECK(rel(c.g2, 4.0) < 1e-12);
  CHECK(std::abs(c.g3) < 1e-12);
}

TEST_CASE("hexagonal lattice has g2 = 0") {
  const Lattice L = make_lattice(1.0, std::polar(1.0, oracle::pi / 3));
  const CurveInvariants c = eisenstein_invariants(L);
  CHECK(std::abs(c.g2) < 1e-12 * std::abs(c.g3));
  // real period of y^2 = 4x^3 - 4 from the Beta function
  const double w = oracle::equianharmonic_period();
  CHECK(w == doctest::Approx(oracle::equianharmonic_period_quadrature()).epsilon(1e-13));
  const CurveInvariants c2 = eisenstein_invariants(make_lattice(w, w * std::polar(1.0, oracle::pi / 3)));
  CHECK(std::abs(c2.g2) < 1e-12);
  CHECK(rel(c2.g3, 4.0) < 1e-12);
}

TEST_CASE("invariants are homogeneous") {
  const Lattice L = make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9});
  const cplx s{0.6, -1.1};
  const CurveInvariants a = eisenstein_invariants(L);
  const CurveInvariants b = eisenstein_invariants(make_lattice(s * L.omega1(), s * L.omega2()));
  CHECK(std::abs(b.g2 - a.g2 / std::pow(s, 4)) < 1e-12 * std::abs(b.g2));
  CHECK(std::abs(b.g3 - a.g3 / std::pow(s, 6)) < 1e-12 * std::abs(b.g3));
}

TEST_CASE("singular invariants") {
  CHECK(is_singular({3.0, 1.0}));
  CHECK(is_singular({0.0, 0.0}));
  CHECK_FALSE(is_singular({4.0, 0.0}));
  CHECK(std::abs(discriminant({4.0, 0.0}) - 64.0) < 1e-12);
}

TEST_CASE("parities and sigma(0)") {
  const Lattice L = make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9});
  const cplx z{0.37, 0.81};
  CHECK(std::abs(sigma_w(0.0, L)) == 0.0);
  CHECK(rel(zeta_w(-z, L), -zeta_w(z, L)) < 1e-12);
  CHECK(rel(wp(-z, L), wp(z, L)) < 1e-12);
  CHECK(rel(wp_prime(-z, L), -wp_prime(z, L)) < 1e-12);
  CHECK(rel(sigma_w(-z, L), -sigma_w(z, L)) < 1e-12);
}

TEST_CASE("wp at the half period of y^2 = 4x^3 - 4x is the largest root") {
  const Lattice L = periods_from_invariants({4.0, 0.0});
  const cplx e1 = cubic_roots({4.0, 0.0})[0];
  CHECK(rel(e1, 1.0) < 1e-15);
  // the real half period
  const cplx h = 0.5 * (std::abs(L.omega1().imag()) < 1e-12 ? L.omega1() : L.omega2());
  CHECK(rel(wp(h, L), 1.0) < 1e-12);
  CHECK(std::abs(wp_prime(h, L)) < 1e-10);
}

TEST_CASE("wp, wp' and zeta against the trigonometric strip series") {
  for (const Lattice& L : test_lattices()) {
    const cplx n1 = L.reduced_omega1(), n2 = L.reduced_omega2();
    for (double a : {0.13, 0.31, 0.77}) {
      for (double b : {0.17, 0.42, 0.9}) {
        const cplx z = a * n1 + b * n2;
        CHECK(rel(wp(z, L), oracle::wp_strip(z, n1, n2)) < 1e-10);
        CHECK(rel(zeta_w(z, L), oracle::zeta_strip(z, n1, n2)) < 1e-10);
      }
    }
    const cplx z = 0.31 * L.omega1() + 0.17 * L.omega2();
    const CurveInvariants c = eisenstein_invariants(L);
    const WpPair p = wp_both(z, L);
    CHECK(std::abs(p.wp_prime * p.wp_prime - (4.0 * p.wp * p.wp * p.wp - c.g2 * p.wp - c.g3)) /
              (1.0 + std::pow(std::abs(p.wp), 3)) < 1e-9);
  }
}

TEST_CASE("differential equation on a grid") {
  for (const Lattice& L : test_lattices()) {
    const CurveInvariants c = eisenstein_invariants(L);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        if (i == 0 && j == 0) continue;
        const cplx z = (i / 10.0) * L.omega1() + (j / 10.0) * L.omega2();
        const WpPair p = wp_both(z, L);
        const cplx r = p.wp_prime * p.wp_prime - 4.0 * p.wp * p.wp * p.wp + c.g2 * p.wp + c.g3;
        worst = std::max(worst, std::abs(r) / (1.0 + std::pow(std::abs(p.wp), 3)));
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("finite differences: zeta' = -wp and sigma'/sigma = zeta") {
  for (const Lattice& L : test_lattices()) {
    const double h = 1e-6 * std::abs(L.omega1());
    const cplx z = 0.23 * L.omega1() + 0.61 * L.omega2();
    const cplx dz = (zeta_w(z + h, L) - zeta_w(z - h, L)) / (2.0 * h);
    CHECK(std::abs(dz + wp(z, L)) < 1e-6 * std::max(1.0, std::abs(wp(z, L))));
    const cplx ds = (sigma_w(z + h, L) - sigma_w(z - h, L)) / (2.0 * h);
    CHECK(std::abs(ds / sigma_w(z, L) - zeta_w(z, L)) < 1e-6 * std::max(1.0, std::abs(zeta_w(z, L))));
  }
}

TEST_CASE("poles are rejected") {
  const Lattice L = make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9});
  for (cplx z : {cplx{}, L.omega1(), L.omega1() - 2.0 * L.omega2() + 1e-13}) {
    CHECK_THROWS_AS(wp(z, L), Error);
    CHECK_THROWS_AS(zeta_w(z, L), Error);
    CHECK_THROWS_AS(wp_prime(z, L), Error);
  }
  try {
    wp(0.0, L);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAtLatticePoint);
  }
  CHECK(std::abs(sigma_w(L.omega1(), L)) < 1e-12);
}

TEST_CASE("eta1 from the E2 series on the lemniscatic lattice") {
  const Lattice L = periods_from_invariants({4.0, 0.0});
  const QuasiPeriods e = quasi_periods(L);
  const cplx o = oracle::eta1_from_e2(L.omega1(), L.omega2());
  CHECK(rel(e.eta1, o) < 1e-12);
  CHECK(rel(e.eta1, oracle::pi / L.omega1()) < 1e-12);
  // symmetry: omega2 = i omega1 forces eta2 = -i eta1
  if (rel(L.omega2(), cplx{0, 1} * L.omega1()) < 1e-12) CHECK(rel(e.eta2, cplx{0, -1} * e.eta1) < 1e-12);
}

TEST_CASE("Legendre relation carries +2 pi i") {
  for (const Lattice& L : test_lattices()) {
    const QuasiPeriods e = quasi_periods(L);
    CHECK(std::abs(e.eta1 * L.omega2() - e.eta2 * L.omega1() - kTwoPiI) < 1e-9);
    const cplx n1 = L.reduced_omega1(), n2 = L.reduced_omega2();
    CHECK(rel(eta_linear(n1, L), oracle::eta1_from_e2(n1, n2)) < 1e-10);
  }
}

TEST_CASE("quasi-periods are homogeneous of degree -1") {
  const Lattice L = make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9});
  const cplx s{0.6, -1.1};
  const QuasiPeriods a = quasi_periods(L);
  const QuasiPeriods b = quasi_periods(make_lattice(s * L.omega1(), s * L.omega2()));
  CHECK(rel(b.eta1, a.eta1 / s) < 1e-12);
  CHECK(rel(b.eta2, a.eta2 / s) < 1e-12);
}

TEST_CASE("eta_linear") {
  for (const Lattice& L : test_lattices()) {
    const QuasiPeriods e = quasi_periods(L);
    CHECK(rel(eta_linear(L.omega1(), L), e.eta1) < 1e-13);
    CHECK(rel(eta_linear(L.omega2(), L), e.eta2) < 1e-13);
    CHECK(rel(eta_linear(0.5 * (L.omega1() + L.omega2()), L), 0.5 * (e.eta1 + e.eta2)) < 1e-13);
    const cplx z = 0.4 * L.omega1() + 0.9 * L.omega2();
    CHECK(rel(eta_linear(z, L), eta_linear_closed_form(z, L)) < 1e-10);
  }
}

TEST_CASE("closed form in an explicit real frame") {
  // omega1 real positive, so no rotation is involved
  const Lattice L = make_lattice(1.7, cplx{0.4, 1.3});
  const QuasiPeriods e = quasi_periods(L);
  const double c = L.covolume();
  for (cplx z : {cplx{0.3, 0.2}, cplx{-1.1, 2.4}, cplx{5.0, -3.0}}) {
    const cplx closed = e.eta1 / L.omega1() * z - kTwoPiI * z.imag() / c;
    CHECK(rel(eta_linear(z, L), closed) < 1e-10);
  }
}

TEST_CASE("theta function") {
  for (const Lattice& L : test_lattices()) {
    CHECK(std::abs(theta_normalized(0.0, L)) == 0.0);
    const cplx z = 0.21 * L.omega1() + 0.34 * L.omega2();
    CHECK(rel(theta_normalized(-z, L), -theta_normalized(z, L)) < 1e-12);
    for (cplx lam : {L.omega1(), L.omega2(), 2.0 * L.omega1() - L.omega2()}) {
      const cplx ratio = theta_normalized(z + lam, L) / theta_normalized(z, L);
      CHECK(std::abs(ratio / theta_automorphy_factor(lam, z, L) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("theta normalization constant in a real frame") {
  const Lattice L = make_lattice(1.7, cplx{0.4, 1.3});
  const QuasiPeriods e = quasi_periods(L);
  CHECK(rel(theta_normalization(L).piA, e.eta1 * L.omega2().imag() - oracle::pi) < 1e-13);
}

TEST_CASE("sigma automorphy") {
  const Lattice L = make_lattice(cplx{1.3, 0.4}, cplx{-0.7, 2.9});
  const cplx z = 0.2 * L.omega1() + 0.3 * L.omega2();
  CHECK(sigma_automorphy_factor(0.0, z, L) == cplx{1.0, 0.0});
  CHECK(std::abs(sigma_w(z + L.omega1(), L) / sigma_w(z, L) / sigma_automorphy_factor(L.omega1(), z, L) - 1.0) < 1e-8);
  // cocycle: two omega1 steps
  const cplx two = sigma_automorphy_factor(2.0 * L.omega1(), z, L);
  const cplx prod = sigma_automorphy_factor(L.omega1(), z + L.omega1(), L) * sigma_automorphy_factor(L.omega1(), z, L);
  CHECK(std::abs(two / prod - 1.0) < 1e-10);
  CHECK(psi_sign(2, 0) == 1);
  CHECK(psi_sign(1, 0) == -1);
  CHECK(psi_sign(1, 1) == -1);
  CHECK(psi_sign(2, 4) == 1);
  CHECK_THROWS_AS(sigma_automorphy_factor(0.5 * L.omega1(), z, L), Error);
}

TEST_CASE("concurrent first use of the analytic cache") {
  const Lattice L = make_lattice(cplx{0.9, 0.1}, cplx{0.2, 1.7});
  std::vector<cplx> out(8);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) {
    ts.emplace_back([&, i] { out[i] = quasi_periods(L).eta1 + eisenstein_invariants(L).g2; });
  }
  for (auto& t : ts) t.join();
  for (const cplx v : out) CHECK(v == out[0]);
}
