#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semiabel/relation.hpp"
#include "semiabel/semiabelian.hpp"

namespace semiabel {

struct ClassifierSettings {
  double tol = 1e-9;
  long long n_max = 64;
  long long max_height = 1000;
};

enum class Confidence { CertifiedTorsion, Numeric, NumericBorderline };
std::string confidence_name(Confidence c);

/// A point of the 1-motive: base point and one fiber coordinate per extension
/// parameter.
struct MotivePoint {
  EllipticPoint base;
  std::vector<cplx> fibers;
};

struct OneMotiveElliptic {
  explicit OneMotiveElliptic(Lattice L) : lattice(std::move(L)) {}

  CurveInvariants curve{};
  bool curve_exact = false;  // g2, g3 were given by the caller
  Lattice lattice;
  std::vector<ExtensionParam> extension_params;
  std::vector<std::optional<EllipticPoint>> extension_points;  // same length, if known
  std::vector<MotivePoint> points;
  std::optional<long long> cm_override;  // 0: not CM, D < 0: CM discriminant
};

struct TorsionResult {
  std::optional<long long> order;
  Confidence confidence = Confidence::Numeric;
};

/// Exact iteration of N*P when the point and curve are exact rationals,
/// otherwise (1/N)Lambda membership of the logarithm.
TorsionResult is_torsion(const EllipticPoint& P, const Lattice& L, long long n_max,
                         double tol = 1e-9, const CurveInvariants* exact_curve = nullptr);

/// Smallest N <= n_max with N*z in Lambda.
std::optional<long long> log_torsion_order(cplx z, const Lattice& L, long long n_max, double tol);

struct CMInfo {
  bool cm = false;
  long long discriminant = 0;
  long long a = 0, b = 0, c = 0;  // a tau^2 + b tau + c = 0, tau = omega2/omega1
  cplx theta{};                   // a*tau, an algebraic integer acting on Lambda
  bool from_override = false;
  std::optional<RelationCertificate> certificate;
};

CMInfo detect_cm(const Lattice& L, long long max_height, double tol = 1e-9,
                 std::optional<long long> cm_override = std::nullopt);

enum class TableRow {
  QRTorsion = 1,
  PQTorsion = 2,
  RTorsion = 3,
  QTorsion = 4,
  PTorsion = 5,
  DependentDeficient = 6,
  DependentNotDeficient = 7,
  Independent = 8,
  General = 0,
};
std::string table_row_name(TableRow r);

/// dim UR for each row of the corrected dimension table.
int expected_dim_UR(TableRow r);

struct DimB {
  int dim_B = 0;
  int dim_B_vstar = 0;
  int dim_B_Q = 0;
};

struct LabelledCertificate {
  std::string context;
  RelationCertificate certificate;
};

struct ClassificationReport {
  int dim_B = 0, dim_B_vstar = 0, dim_B_Q = 0;
  int dim_Z1_prime = 0;
  int dim_Z1 = 0;
  int dim_UR = 0;
  int dim_Gal = 0;
  int dim_Gal_A = 0;
  TableRow table_row = TableRow::General;
  CMInfo cm;
  std::optional<bool> deficient;
  std::map<std::string, int> bounds;
  Confidence confidence = Confidence::Numeric;
  std::vector<bool> p_torsion, q_torsion;
  std::optional<bool> r_torsion;  // n = s = 1 only
  std::vector<LabelledCertificate> certificates;
  std::vector<std::string> notes;
};

ClassificationReport motivic_galois_dims(const OneMotiveElliptic& M,
                                         const ClassifierSettings& S = {});

DimB dim_B_elliptic(const OneMotiveElliptic& M, const ClassifierSettings& S = {});
std::optional<bool> is_deficient(const OneMotiveElliptic& M, const ClassifierSettings& S = {});
int dim_Z1(const OneMotiveElliptic& M, const ClassifierSettings& S = {});
/// Throws NotApplicable unless n = s = 1.
TableRow classify_table_row(const OneMotiveElliptic& M, const ClassifierSettings& S = {});
std::map<std::string, int> conjecture_bounds(const OneMotiveElliptic& M,
                                             const ClassifierSettings& S = {});

}  // namespace semiabel
