#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "semiabel/classifier.hpp"
#include "semiabel/error.hpp"
#include "semiabel/table_instances.hpp"
#include "motives.hpp"

using namespace semiabel;
using namespace testmotive;

namespace {

const Lattice& square() {
  static const Lattice L = periods_from_invariants({4.0, 0.0});
  return L;
}

// j = 1728 * 8 / (8 - 27) is not an integer, so no CM.
const Lattice& plain() {
  static const Lattice L = periods_from_invariants({2.0, 1.0});
  return L;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("torsion: identity and 2-torsion") {
  CHECK(*is_torsion(EllipticPoint::identity(), square(), 64).order == 1);
  const CurveInvariants c{4.0, 0.0};
  const TorsionResult r = is_torsion(EllipticPoint::affine(1.0, 0.0), square(), 64, 1e-9, &c);
  CHECK(r.order == 2);
  CHECK(r.confidence == Confidence::CertifiedTorsion);
  const TorsionResult n = is_torsion(EllipticPoint::affine(1.0, 0.0), square(), 64);
  CHECK(n.order == 2);
  CHECK(n.confidence == Confidence::Numeric);
}

TEST_CASE("torsion: exact points on y^2 = 4x^3 + 4") {
  const CurveInvariants c{0.0, -4.0};
  const Lattice L = periods_from_invariants(c);
  const TorsionResult three = is_torsion(EllipticPoint::affine(0.0, 2.0), L, 64, 1e-9, &c);
  CHECK(three.order == 3);
  CHECK(three.confidence == Confidence::CertifiedTorsion);
  const TorsionResult six = is_torsion(EllipticPoint::affine(2.0, 6.0), L, 64, 1e-9, &c);
  CHECK(six.order == 6);
  CHECK(six.confidence == Confidence::CertifiedTorsion);
  CHECK(is_torsion(EllipticPoint::affine(2.0, 6.0), L, 64).order == 6);
  CHECK(is_torsion(EllipticPoint::affine(-1.0, 0.0), L, 64, 1e-9, &c).order == 2);
}

TEST_CASE("torsion: a point of infinite order") {
  // (3, 10) on y^2 = 4x^3 - 8, i.e. (3, 5) on Y^2 = X^3 - 2
  const CurveInvariants c{0.0, 8.0};
  const Lattice L = periods_from_invariants(c);
  const TorsionResult r = is_torsion(EllipticPoint::affine(3.0, 10.0), L, 64, 1e-9, &c);
  CHECK_FALSE(r.order);
  CHECK(r.confidence == Confidence::CertifiedTorsion);
  CHECK_FALSE(is_torsion(EllipticPoint::affine(3.0, 10.0), L, 100).order);
}

TEST_CASE("torsion: random exponential points") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Lattice& L = plain();
  for (int i = 0; i < 20; ++i) {
    const cplx z = U(rng) * L.omega1() + U(rng) * L.omega2();
    CHECK_FALSE(is_torsion(point_from_log(z, L), L, 100).order);
  }
  CHECK(log_torsion_order((L.omega1() + 2.0 * L.omega2()) / 7.0, L, 100, 1e-9) == 7);
  CHECK_FALSE(log_torsion_order((L.omega1() + 2.0 * L.omega2()) / 7.0, L, 6, 1e-9));
}

TEST_CASE("CM detection") {
  const CMInfo s = detect_cm(square(), 1000);
  CHECK(s.cm);
  CHECK(s.discriminant == -4);
  CHECK(s.certificate);
  const CMInfo h = detect_cm(periods_from_invariants({0.0, 4.0}), 1000);
  CHECK(h.cm);
  CHECK(h.discriminant == -3);
  const CMInfo r8 = detect_cm(make_lattice(1.0, cplx{0.0, std::sqrt(2.0)}), 1000);
  CHECK(r8.cm);
  CHECK(r8.discriminant == -8);
  CHECK(std::abs(r8.theta * r8.theta + 2.0 * r8.a * r8.a) < 1e-9);
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK_FALSE(detect_cm(make_lattice(1.0, cplx{0.0, phi}), 1000).cm);
  CHECK_FALSE(detect_cm(make_lattice(1.0, cplx{std::exp(-1.0), std::sqrt(3.0) + 0.1}), 1000).cm);
  CHECK_FALSE(detect_cm(plain(), 1000).cm);
}

TEST_CASE("CM overrides") {
  CHECK(code_of([] { detect_cm(square(), 1000, 1e-9, 0); }) == ErrorCode::InconsistentOverride);
  CHECK(code_of([] { detect_cm(square(), 1000, 1e-9, -3); }) == ErrorCode::InconsistentOverride);
  CHECK(detect_cm(square(), 1000, 1e-9, -16).discriminant == -4);
  const CMInfo o = detect_cm(plain(), 1000, 1e-9, -7);
  CHECK(o.cm);
  CHECK(o.from_override);
  CHECK(std::abs(o.theta - cplx{0.0, std::sqrt(7.0)}) < 1e-15);
  CHECK_FALSE(detect_cm(plain(), 1000, 1e-9, 0).cm);
}

TEST_CASE("dim B examples") {
  for (const Lattice* L : {&square(), &plain()}) {
    const cplx w1 = L->omega1(), p = gen_p(*L);
    const DimB t = dim_B_elliptic(motive(*L, {0.5 * w1}, {{w1 / 3.0, gen_t}}));
    CHECK(t.dim_B == 0);
    CHECK(t.dim_B_vstar == 0);
    CHECK(t.dim_B_Q == 0);
    const DimB d = dim_B_elliptic(motive(*L, {2.0 * p}, {{p, gen_t}}));
    CHECK(d.dim_B == 1);
    CHECK(d.dim_B_vstar == 1);
    CHECK(d.dim_B_Q == 0);
    const DimB g = dim_B_elliptic(motive(*L, {gen_q(*L)}, {{p, gen_t}}));
    CHECK(g.dim_B == 2);
    CHECK(g.dim_B_vstar == 1);
    CHECK(g.dim_B_Q == 1);
  }
  // over Q(i), q = i p is dependent; without CM it would not be
  const cplx p = gen_p(square());
  CHECK(dim_B_elliptic(motive(square(), {cplx{0, 1} * p}, {{p, gen_t}})).dim_B == 1);
}

TEST_CASE("deficiency") {
  const cplx pn = gen_p(plain());
  CHECK(is_deficient(motive(plain(), {2.0 * pn}, {{pn, gen_t}})) == false);
  const cplx p = gen_p(square());
  CHECK(is_deficient(motive(square(), {cplx{0, 1} * p}, {{p, 0.0}})) == true);
  CHECK(is_deficient(motive(square(), {2.0 * p}, {{p, 0.0}})) == false);
  CHECK_FALSE(is_deficient(motive(square(), {gen_q(square())}, {{p, gen_t}})).has_value());
  CHECK_FALSE(is_deficient(motive(square(), {}, {{p, gen_t}})).has_value());
}

TEST_CASE("dim Z(1) examples") {
  const Lattice& L = plain();
  const cplx h = 0.5 * L.omega1();
  CHECK(dim_Z1(motive(L, {h}, {{0.0, 0.0, true, 1.0}})) == 0);
  CHECK(dim_Z1(motive(L, {h}, {{0.0, 0.0, true, -1.0}})) == 0);
  CHECK(dim_Z1(motive(L, {h}, {{0.0, 0.0, true, 2.0}})) == 1);
  CHECK(dim_Z1(motive(L, {gen_q(L)}, {{gen_p(L), gen_t}})) == 1);
  CHECK(dim_Z1(motive(L, {}, {{gen_p(L), gen_t}})) == 0);
}

TEST_CASE("motivic Galois dimensions") {
  const OneMotiveElliptic r1 = motive(square(), {0.5 * square().omega1()}, {{0.0, 0.0, true, 1.0}});
  const ClassificationReport a = motivic_galois_dims(r1);
  CHECK(a.dim_UR == 0);
  CHECK(a.dim_Gal == 2);
  CHECK(a.table_row == TableRow::QRTorsion);

  const OneMotiveElliptic r2 = motive(plain(), {0.5 * plain().omega1()}, {{0.0, 0.0, true, 2.0}});
  const ClassificationReport b = motivic_galois_dims(r2);
  CHECK(b.dim_UR == 1);
  CHECK(b.dim_Gal == 5);
  CHECK(b.table_row == TableRow::PQTorsion);

  const ClassificationReport c =
      motivic_galois_dims(motive(square(), {gen_q(square())}, {{gen_p(square()), gen_t}}));
  CHECK(c.dim_UR == 5);
  CHECK(c.dim_Gal == 7);
  CHECK(c.table_row == TableRow::Independent);
  CHECK(c.confidence == Confidence::Numeric);
  CHECK_FALSE(c.certificates.empty());
  CHECK_FALSE(c.notes.empty());
}

TEST_CASE("table rows on constructed instances") {
  const auto check_row = [](const Lattice& L, const OneMotiveElliptic& M, TableRow row, bool cm) {
    const ClassificationReport R = motivic_galois_dims(M);
    CHECK(R.table_row == row);
    CHECK(classify_table_row(M) == row);
    CHECK(R.dim_UR == expected_dim_UR(row));
    CHECK(R.dim_Gal == R.dim_UR + (cm ? 2 : 4));
    (void)L;
  };
  for (const Lattice* Lp : {&square(), &plain()}) {
    const Lattice& L = *Lp;
    const bool cm = Lp == &square();
    const cplx w1 = L.omega1(), q = gen_q(L), p = gen_p(L);
    const auto qqp = quasi_quasi_periods(extension_from_log(q, L), L);
    check_row(L, motive(L, {0.5 * w1}, {{0.0, 0.0, true, 1.0}}), TableRow::QRTorsion, cm);
    check_row(L, motive(L, {0.5 * w1}, {{0.0, 0.0, true, 2.0}}), TableRow::PQTorsion, cm);
    check_row(L, motive(L, {q}, {{w1 / 3.0, -qqp[0] / 3.0}}), TableRow::RTorsion, cm);
    check_row(L, motive(L, {0.5 * w1}, {{p, gen_t}}), TableRow::QTorsion, cm);
    check_row(L, motive(L, {q}, {{0.5 * w1, gen_t}}), TableRow::PTorsion, cm);
    if (cm) check_row(L, motive(L, {cplx{0, 1} * p}, {{p, 0.0}}), TableRow::DependentDeficient, cm);
    check_row(L, motive(L, {2.0 * p}, {{p, gen_t}}), TableRow::DependentNotDeficient, cm);
    check_row(L, motive(L, {2.0 * p}, {{p, 0.0}}), TableRow::DependentNotDeficient, cm);
    check_row(L, motive(L, {q}, {{p, gen_t}}), TableRow::Independent, cm);
  }
  const OneMotiveElliptic two = motive(plain(), {gen_q(plain())}, {{gen_p(plain()), gen_t}, {0.3, gen_t}});
  CHECK(code_of([&] { classify_table_row(two); }) == ErrorCode::NotApplicable);
  CHECK(motivic_galois_dims(two).table_row == TableRow::General);
}

TEST_CASE("library table instances agree with the test-side construction") {
  for (const Lattice* Lp : {&square(), &plain()}) {
    const bool cm = Lp == &square();
    const auto inst = dimension_table_instances(*Lp);
    CHECK(inst.size() == (cm ? 8u : 7u));
    for (const TableInstance& t : inst) {
      const ClassificationReport R = motivic_galois_dims(t.motive);
      CHECK(static_cast<int>(R.table_row) == t.expected_row);
      const TableTriple tr = dimension_table_triple(t.expected_row);
      CHECK(R.dim_UR == tr.ur);
      CHECK(R.dim_Gal == (cm ? tr.gal_cm : tr.gal_non_cm));
    }
  }
  CHECK(dimension_table_triple(6).gal_non_cm == -1);
}

TEST_CASE("conjecture bounds") {
  const Lattice& L = plain();
  const auto ind = conjecture_bounds(motive(L, {gen_q(L)}, {{gen_p(L), gen_t}}));
  CHECK(ind.at("WSA_V1") == 3);
  CHECK(ind.at("WSA_explicit") == 3);
  CHECK(ind.at("SA") == 2 * 2 + 1 + 4);

  const auto r1 = conjecture_bounds(motive(square(), {0.5 * square().omega1()}, {{0.0, 0.0, true, 1.0}}));
  CHECK(r1.at("WSA_V1") == 0);
  CHECK(r1.at("SA") == 2);

  const auto ab = conjecture_bounds(motive(L, {}, {{gen_p(L), gen_t}}));
  CHECK(ab.at("WSA_V1") == 2);
}

TEST_CASE("adding a point never shrinks dim B") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const Lattice* Lp : {&square(), &plain()}) {
    const Lattice& L = *Lp;
    for (int i = 0; i < 8; ++i) {
      const auto rnd = [&] { return U(rng) * L.omega1() + U(rng) * L.omega2(); };
      const cplx q = rnd(), p1 = rnd();
      std::vector<Pt> pts{{p1, gen_t}};
      int last = dim_B_elliptic(motive(L, {q}, pts)).dim_B;
      for (const cplx extra : {2.0 * p1, 0.5 * L.omega2(), rnd(), rnd()}) {
        pts.push_back({extra, gen_t});
        const int d = dim_B_elliptic(motive(L, {q}, pts)).dim_B;
        CHECK(d >= last);
        last = d;
      }
      CHECK(last == 4);
    }
  }
}
