#include "semiabel/classifier.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "semiabel/error.hpp"
#include "semiabel/group_law.hpp"

namespace semiabel {

namespace {

using Rational = boost::multiprecision::cpp_rational;

bool to_rational(cplx v, Rational& out) {
  if (v.imag() != 0.0 || !std::isfinite(v.real())) return false;
  out = Rational(v.real());
  return true;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

// Exact order of a rational point on a rational curve. Orders over Q are at
// most 12, so failing to reach O by then certifies non-torsion; on integral
// models 4x and 4y of every torsion multiple are integers.
std::optional<TorsionResult> exact_torsion(const EllipticPoint& P, const CurveInvariants& c,
                                           long long n_max) {
  Rational x, y, g2, g3;
  if (!to_rational(P.x, x) || !to_rational(P.y, y) || !to_rational(c.g2, g2) ||
      !to_rational(c.g3, g3)) {
    return std::nullopt;
  }
  if (y * y != 4 * x * x * x - g2 * x - g3) return std::nullopt;
  const bool integral = is_integer(g2) && is_integer(g3);
  const auto zero = [](const Rational& r) { return r == 0; };
  const CurvePoint<Rational> base{false, x, y};
  CurvePoint<Rational> acc = base;
  const long long limit = std::min<long long>(n_max, 12);
  for (long long k = 1; k <= limit; ++k) {
    if (acc.infinity) return TorsionResult{k, Confidence::CertifiedTorsion};
    if (integral && (!is_integer(4 * acc.x) || !is_integer(4 * acc.y))) {
      return TorsionResult{std::nullopt, Confidence::CertifiedTorsion};
    }
    acc = curve_add(acc, base, g2, zero);
  }
  return TorsionResult{std::nullopt, Confidence::CertifiedTorsion};
}

// F-linear structure of the generators (extension parameters first, then
// points) modulo the F-span of the lattice.
struct FStructure {
  int dim = 0;
  int dim_vstar = 0;
  std::vector<std::vector<cplx>> coef;  // generator -> F-coordinates on the basis
  struct Raw {
    bool basis = false;
    long long a = 0;
    std::vector<std::pair<long long, long long>> bb;
  };
  std::vector<Raw> raw;
  bool borderline = false;
};

FStructure f_structure(const std::vector<cplx>& gens, const std::vector<bool>& torsion,
                       const std::vector<std::string>& labels, std::size_t s, const Lattice& L,
                       const CMInfo& cm, const ClassifierSettings& S,
                       std::vector<LabelledCertificate>& certs,
                       std::vector<std::string>& notes) {
  FStructure F;
  const int w = cm.cm ? 2 : 1;
  std::vector<cplx> V{L.omega1(), L.omega2()};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    FStructure::Raw raw;
    std::vector<cplx> coef(F.dim, cplx{});
    if (torsion[i]) {
      raw.a = 1;
      raw.bb.assign(F.dim, {0, 0});
      F.coef.push_back(coef);
      F.raw.push_back(raw);
      if (i + 1 == s) F.dim_vstar = F.dim;
      continue;
    }
    std::vector<cplx> vals = V;
    vals.push_back(gens[i]);
    const auto rels = relation_basis(vals, S.max_height, S.tol);
    const RelationCertificate* chosen = nullptr;
    bool unverified = false;
    for (const auto& r : rels) {
      if (r.coefficients.back() == 0) continue;
      if (!r.verified_at_higher_precision) {
        unverified = true;
        continue;
      }
      if (chosen == nullptr || r.height < chosen->height) chosen = &r;
    }
    if (chosen != nullptr) {
      certs.push_back({"F-dependence of " + labels[i], *chosen});
      const auto& c = chosen->coefficients;
      raw.a = c.back();
      for (int j = 0; j < F.dim; ++j) {
        const long long b = c[2 + w * j];
        const long long bp = cm.cm ? c[2 + w * j + 1] : 0;
        raw.bb.emplace_back(b, bp);
        coef[j] = -(static_cast<double>(b) + static_cast<double>(bp) * cm.theta) /
                  static_cast<double>(raw.a);
      }
    } else {
      if (unverified) {
        F.borderline = true;
        notes.push_back("borderline relation for " + labels[i] + " treated as absent");
      }
      raw.basis = true;
      V.push_back(gens[i]);
      if (cm.cm) V.push_back(cm.theta * gens[i]);
      coef.push_back(1.0);
      ++F.dim;
    }
    F.coef.push_back(coef);
    F.raw.push_back(raw);
    if (i + 1 == s) F.dim_vstar = F.dim;
  }
  if (s == 0) F.dim_vstar = 0;
  for (auto& c : F.coef) c.resize(F.dim, cplx{});
  return F;
}

struct Analysis {
  ClassificationReport report;
  std::vector<cplx> p_logs;
  std::vector<std::optional<long long>> p_orders;
};

std::optional<long long> rational_two_pi_i_denominator(cplx r, long long n_max, double tol) {
  const double scale = std::max(1.0, std::abs(r));
  if (std::abs(r.real()) > tol * scale) return std::nullopt;
  const double x = r.imag() / (2.0 * kPi);
  for (long long M = 1; M <= n_max; ++M) {
    const double y = static_cast<double>(M) * x;
    if (std::abs(y - std::round(y)) <= tol * static_cast<double>(M) * scale) return M;
  }
  return std::nullopt;
}

Analysis analyse(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  const Lattice& L = M.lattice;
  const std::size_t n = M.points.size(), s = M.extension_params.size();
  if (n < 1) throw Error(ErrorCode::SchemaError, "a motive needs at least one point");
  for (const auto& P : M.points) {
    if (P.fibers.size() != s) {
      throw Error(ErrorCode::SchemaError, "each point needs one fiber per extension parameter");
    }
  }
  Analysis A;
  ClassificationReport& R = A.report;
  R.cm = detect_cm(L, S.max_height, S.tol, M.cm_override);
  if (R.cm.certificate) R.certificates.push_back({"CM relation a tau^2 + b tau + c", *R.cm.certificate});
  if (R.cm.from_override) R.notes.push_back("CM data taken from cm_override");
  bool all_exact = true;

  // Torsion of the extension parameters and of the base points.
  std::vector<cplx> gens;
  std::vector<bool> torsion;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < s; ++k) {
    TorsionResult t;
    const auto& Qp = k < M.extension_points.size() ? M.extension_points[k] : std::nullopt;
    if (Qp && M.curve_exact) {
      t = is_torsion(*Qp, L, S.n_max, S.tol, &M.curve);
    } else {
      t.order = log_torsion_order(M.extension_params[k].q, L, S.n_max, S.tol);
      t.confidence = Confidence::Numeric;
    }
    all_exact = all_exact && t.confidence == Confidence::CertifiedTorsion;
    R.q_torsion.push_back(t.order.has_value());
    gens.push_back(M.extension_params[k].q);
    torsion.push_back(t.order.has_value());
    labels.push_back("Q" + std::to_string(k + 1));
  }
  for (std::size_t l = 0; l < n; ++l) {
    const EllipticPoint& P = M.points[l].base;
    const TorsionResult t = is_torsion(P, L, S.n_max, S.tol, M.curve_exact ? &M.curve : nullptr);
    all_exact = all_exact && t.confidence == Confidence::CertifiedTorsion;
    R.p_torsion.push_back(t.order.has_value());
    A.p_orders.push_back(t.order);
    const cplx z = elliptic_log(P, L).value;
    A.p_logs.push_back(z);
    gens.push_back(z);
    torsion.push_back(t.order.has_value());
    labels.push_back("P" + std::to_string(l + 1));
  }

  const FStructure F = f_structure(gens, torsion, labels, s, L, R.cm, S, R.certificates, R.notes);
  R.dim_B = F.dim;
  R.dim_B_vstar = F.dim_vstar;
  R.dim_B_Q = F.dim - F.dim_vstar;
  bool borderline = F.borderline;

  // Z'(1): image of the Lie bracket of B in G_m^{ns}.
  const std::size_t N = n * s;
  std::vector<std::vector<long double>> vprime;
  const double im_theta = R.cm.cm ? R.cm.theta.imag() : 1.0;
  for (int j = 0; j < F.dim; ++j) {
    for (int jp = 0; jp < F.dim; ++jp) {
      std::vector<long double> re(N), im(N);
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < s; ++k) {
          const auto& c = F.coef[s + l];
          const auto& d = F.coef[k];
          const cplx g = std::conj(c[j]) * d[jp] + c[jp] * std::conj(d[j]);
          re[l * s + k] = g.real();
          im[l * s + k] = g.imag() / im_theta;
        }
      }
      vprime.push_back(re);
      if (R.cm.cm) vprime.push_back(im);
    }
  }
  R.dim_Z1_prime = static_cast<int>(numeric_rank(vprime));

  // (Z/Z')(1): relations among the third-kind values modulo 2 pi i Q and
  // the quasi-quasi-periods.
  if (N == 0) {
    R.dim_Z1 = 0;
  } else {
    std::vector<cplx> tvals;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t k = 0; k < s; ++k) {
        const SemiAbelianPoint Rp{M.points[l].base, M.points[l].fibers[k]};
        tvals.push_back(log_G(Rp, M.extension_params[k], L).t.value);
      }
    }
    const bool reconcile = n == 1 && s == 1 && A.p_orders[0].has_value();
    if (reconcile) {
      // P torsion: R is torsion exactly when N*(z, t) is a rational point of
      // the kernel lattice.
      const long long Np = *A.p_orders[0];
      long long m = 0, nn = 0;
      nearest_lattice_point(static_cast<double>(Np) * A.p_logs[0], L, 1e-6, m, nn);
      const auto qqp = quasi_quasi_periods(M.extension_params[0], L);
      const cplx r = static_cast<double>(Np) * tvals[0] + static_cast<double>(m) * qqp[0] +
                     static_cast<double>(nn) * qqp[1];
      const bool r_torsion = rational_two_pi_i_denominator(r, S.n_max, 1e-8).has_value();
      R.r_torsion = r_torsion;
      R.dim_Z1 = R.dim_Z1_prime + (r_torsion ? 0 : 1);
      R.notes.push_back("P torsion: dim (Z/Z')(1) decided by the torsion of R");
    } else {
      std::vector<cplx> vals = tvals;
      vals.push_back(kTwoPiI);
      for (std::size_t k = 0; k < s; ++k) {
        const auto qqp = quasi_quasi_periods(M.extension_params[k], L);
        vals.push_back(qqp[0]);
        vals.push_back(qqp[1]);
      }
      const auto rels = relation_basis(vals, S.max_height, S.tol);
      std::vector<std::vector<long double>> rrows;
      for (const auto& r : rels) {
        bool touches_t = false;
        for (std::size_t i = 0; i < N; ++i) touches_t = touches_t || r.coefficients[i] != 0;
        if (!touches_t) continue;
        if (!r.verified_at_higher_precision) {
          borderline = true;
          R.notes.push_back("borderline third-kind relation treated as absent");
          continue;
        }
        R.certificates.push_back({"third-kind relation modulo 2 pi i and quasi-quasi-periods", r});
        rrows.emplace_back(r.coefficients.begin(), r.coefficients.begin() + N);
      }
      const std::size_t dimR = numeric_rank(rrows);
      std::vector<std::vector<long double>> prod;
      for (const auto& rr : rrows) {
        std::vector<long double> row;
        for (const auto& v : vprime) {
          long double acc = 0;
          for (std::size_t i = 0; i < N; ++i) acc += rr[i] * v[i];
          row.push_back(acc);
        }
        prod.push_back(row);
      }
      const std::size_t rk = vprime.empty() ? 0 : numeric_rank(prod);
      R.dim_Z1 = static_cast<int>(N - (dimR - rk));
      if (n == 1 && s == 1) R.r_torsion = false;
    }
  }

  R.dim_UR = 2 * R.dim_B + R.dim_Z1;
  R.dim_Gal_A = R.cm.cm ? 2 : 4;
  R.dim_Gal = R.dim_UR + R.dim_Gal_A;
  R.bounds = {{"SA", 2 * R.dim_B + R.dim_Z1 + R.dim_Gal_A},
              {"WSA_V1", 2 * R.dim_B_Q + R.dim_Z1},
              {"WSA_explicit", 2 * R.dim_B_Q + R.dim_Z1}};

  if (n == 1 && s == 1) {
    const bool pt = R.p_torsion[0], qt = R.q_torsion[0];
    const bool rt = R.r_torsion.value_or(false);
    if (!pt && !qt && R.dim_B == 1) {
      if (!R.cm.cm) {
        R.deficient = false;
      } else {
        // p = -(b + b' theta)/a * q; purely imaginary iff 2b - b' b_cm = 0.
        const auto& raw = F.raw[1];
        const long long b = raw.bb.empty() ? 0 : raw.bb[0].first;
        const long long bp = raw.bb.empty() ? 0 : raw.bb[0].second;
        R.deficient = (2 * b - bp * R.cm.b) == 0;
      }
    }
    if (qt && rt) {
      R.table_row = TableRow::QRTorsion;
    } else if (pt && qt) {
      R.table_row = TableRow::PQTorsion;
    } else if (rt) {
      R.table_row = TableRow::RTorsion;
    } else if (qt) {
      R.table_row = TableRow::QTorsion;
    } else if (pt) {
      R.table_row = TableRow::PTorsion;
    } else if (R.dim_B == 1) {
      R.table_row = R.dim_Z1 == 0 ? TableRow::DependentDeficient : TableRow::DependentNotDeficient;
    } else {
      R.table_row = TableRow::Independent;
    }
  }
  R.confidence = borderline ? Confidence::NumericBorderline
                            : (all_exact ? Confidence::CertifiedTorsion : Confidence::Numeric);
  R.notes.push_back("deficiency read as a purely imaginary F-coefficient between p and q");
  R.notes.push_back("third-kind values use the principal branch");
  return A;
}

}  // namespace

std::string confidence_name(Confidence c) {
  switch (c) {
    case Confidence::CertifiedTorsion: return "certified-torsion";
    case Confidence::Numeric: return "numeric";
    case Confidence::NumericBorderline: return "numeric-borderline";
  }
  return "numeric";
}

std::string table_row_name(TableRow r) {
  switch (r) {
    case TableRow::QRTorsion: return "Q, R torsion";
    case TableRow::PQTorsion: return "P, Q torsion (R not torsion)";
    case TableRow::RTorsion: return "R torsion";
    case TableRow::QTorsion: return "Q torsion (P and R not torsion)";
    case TableRow::PTorsion: return "P torsion (R and Q not torsion)";
    case TableRow::DependentDeficient: return "P, Q dependent (M deficient)";
    case TableRow::DependentNotDeficient: return "P, Q dependent (M not deficient)";
    case TableRow::Independent: return "P, Q independent";
    case TableRow::General: return "general";
  }
  return "general";
}

int expected_dim_UR(TableRow r) {
  static constexpr int ur[9] = {-1, 0, 1, 2, 3, 3, 2, 3, 5};
  return ur[static_cast<int>(r)];
}

std::optional<long long> log_torsion_order(cplx z, const Lattice& L, long long n_max,
                                           double tol) {
  const RealCoordinates a = real_coordinates(z, L);
  for (long long N = 1; N <= n_max; ++N) {
    const double dn = static_cast<double>(N);
    const double x = dn * a.alpha1, y = dn * a.alpha2;
    if (std::abs(x - std::round(x)) <= tol * dn && std::abs(y - std::round(y)) <= tol * dn) {
      return N;
    }
  }
  return std::nullopt;
}

TorsionResult is_torsion(const EllipticPoint& P, const Lattice& L, long long n_max, double tol,
                         const CurveInvariants* exact_curve) {
  if (P.is_identity()) return {1, Confidence::CertifiedTorsion};
  if (exact_curve != nullptr) {
    if (auto r = exact_torsion(P, *exact_curve, n_max)) return *r;
  }
  return {log_torsion_order(elliptic_log(P, L).value, L, n_max, tol), Confidence::Numeric};
}

CMInfo detect_cm(const Lattice& L, long long max_height, double tol,
                 std::optional<long long> cm_override) {
  CMInfo info;
  const cplx tau = L.omega2() / L.omega1();
  const auto rel = detect_integer_relation({cplx{1.0, 0.0}, tau, tau * tau}, max_height, tol);
  bool detected = false;
  if (rel && rel->verified_at_higher_precision && rel->coefficients[2] != 0) {
    long long c = rel->coefficients[0], b = rel->coefficients[1], a = rel->coefficients[2];
    if (a < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    const long long D = b * b - 4 * a * c;
    if (D < 0) {
      detected = true;
      info.cm = true;
      info.a = a;
      info.b = b;
      info.c = c;
      info.discriminant = D;
      info.theta = static_cast<double>(a) * tau;
      info.certificate = rel;
    }
  }
  if (!cm_override) return info;
  const long long D0 = *cm_override;
  if (D0 == 0) {
    if (detected) {
      throw Error(ErrorCode::InconsistentOverride, "override says not CM, lattice has CM");
    }
    info.from_override = true;
    return info;
  }
  if (D0 > 0) throw Error(ErrorCode::SchemaError, "cm_override must be 0 or negative");
  if (detected) {
    // Same CM field iff D * D0 is a square.
    const long long prod = info.discriminant * D0;
    const long long r = std::llround(std::sqrt(static_cast<double>(prod)));
    if (r * r != prod) {
      throw Error(ErrorCode::InconsistentOverride, "override discriminant names another field");
    }
    return info;
  }
  info.cm = true;
  info.from_override = true;
  info.discriminant = D0;
  info.a = 1;
  info.b = 0;
  info.c = -D0;
  info.theta = cplx{0.0, std::sqrt(static_cast<double>(-D0))};
  return info;
}

ClassificationReport motivic_galois_dims(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  ClassificationReport R = analyse(M, S).report;
  if (R.dim_UR != 2 * R.dim_B + R.dim_Z1 || R.dim_B != R.dim_B_vstar + R.dim_B_Q ||
      R.dim_Gal != R.dim_UR + R.dim_Gal_A) {
    throw Error(ErrorCode::InternalInconsistency, "dimension formula violated");
  }
  if (R.table_row != TableRow::General && expected_dim_UR(R.table_row) != R.dim_UR) {
    throw Error(ErrorCode::InternalInconsistency,
                "row '" + table_row_name(R.table_row) + "' expects dim UR " +
                    std::to_string(expected_dim_UR(R.table_row)) + ", formula gives " +
                    std::to_string(R.dim_UR));
  }
  return R;
}

DimB dim_B_elliptic(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  const auto R = analyse(M, S).report;
  return {R.dim_B, R.dim_B_vstar, R.dim_B_Q};
}

std::optional<bool> is_deficient(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  if (M.points.size() != 1 || M.extension_params.size() != 1) return std::nullopt;
  return analyse(M, S).report.deficient;
}

int dim_Z1(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  return analyse(M, S).report.dim_Z1;
}

TableRow classify_table_row(const OneMotiveElliptic& M, const ClassifierSettings& S) {
  if (M.points.size() != 1 || M.extension_params.size() != 1) {
    throw Error(ErrorCode::NotApplicable, "the dimension table needs n = s = 1");
  }
  return analyse(M, S).report.table_row;
}

std::map<std::string, int> conjecture_bounds(const OneMotiveElliptic& M,
                                             const ClassifierSettings& S) {
  return motivic_galois_dims(M, S).bounds;
}

}  // namespace semiabel
