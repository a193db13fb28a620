#pragma once

#include <optional>
#include <vector>

#include "semiabel/lattice.hpp"

namespace semiabel {

inline constexpr std::size_t kMaxRelationValues = 12;

struct RelationCertificate {
  std::vector<long long> coefficients;
  double residual = 0.0;  // |sum c_i v_i| / max |v_i|
  long long height = 0;
  bool verified_at_higher_precision = false;
};

/// LLL reduction of the rows of `basis` in place (delta = 0.99).
void lll_reduce(std::vector<std::vector<long double>>& basis, long double delta = 0.99L);

/// Every reduced-basis vector that verifies as a relation (height <= max_height,
/// residual < tol). The vectors are Z-independent. Throws RelationListTooLong.
std::vector<RelationCertificate> relation_basis(const std::vector<cplx>& values,
                                                long long max_height, double tol);

/// Smallest-height relation, re-checked at tol/100.
std::optional<RelationCertificate> detect_integer_relation(const std::vector<cplx>& values,
                                                           long long max_height, double tol);

/// Rank of a list of real vectors by Gaussian elimination with partial pivoting.
std::size_t numeric_rank(std::vector<std::vector<long double>> rows, long double tol = 1e-9L);

}  // namespace semiabel
