#include "semiabel/relation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semiabel/error.hpp"

namespace semiabel {

namespace {

using Row = std::vector<long double>;

long double dot(const Row& a, const Row& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<Row> mu;
  std::vector<long double> norm2;
};

GramSchmidt gram_schmidt(const std::vector<Row>& b) {
  const std::size_t n = b.size();
  GramSchmidt g;
  g.mu.assign(n, Row(n, 0));
  g.norm2.assign(n, 0);
  std::vector<Row> bs(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = g.norm2[j] > 0 ? dot(b[i], bs[j]) / g.norm2[j] : 0;
      for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= g.mu[i][j] * bs[j][k];
    }
    g.norm2[i] = dot(bs[i], bs[i]);
  }
  return g;
}

long long gcd_all(const std::vector<long long>& c) {
  long long g = 0;
  for (long long x : c) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

// Divides out the content and makes the first nonzero coefficient positive.
void normalise(std::vector<long long>& c) {
  const long long g = gcd_all(c);
  if (g > 1) {
    for (auto& x : c) x /= g;
  }
  for (long long x : c) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : c) y = -y;
    }
    break;
  }
}

double relative_residual(const std::vector<cplx>& v, const std::vector<long long>& c) {
  long double re = 0, im = 0, scale = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    re += static_cast<long double>(c[i]) * v[i].real();
    im += static_cast<long double>(c[i]) * v[i].imag();
    scale = std::max<long double>(scale, std::abs(v[i]));
  }
  if (scale == 0) return 0.0;
  return static_cast<double>(std::sqrt(re * re + im * im) / scale);
}

bool in_span(const std::vector<RelationCertificate>& basis, const std::vector<long long>& c) {
  std::vector<Row> rows;
  for (const auto& r : basis) rows.emplace_back(r.coefficients.begin(), r.coefficients.end());
  const std::size_t r0 = numeric_rank(rows);
  rows.emplace_back(c.begin(), c.end());
  return numeric_rank(rows) == r0;
}

}  // namespace

void lll_reduce(std::vector<Row>& b, long double delta) {
  const std::size_t n = b.size();
  if (n < 2) return;
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  for (long iter = 0; k < n; ++iter) {
    if (iter > 200000) throw Error(ErrorCode::ConvergenceFailure, "LLL iteration limit");
    for (std::size_t jj = k; jj-- > 0;) {
      const long double r = std::round(g.mu[k][jj]);
      if (r == 0) continue;
      for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[jj][t];
      for (std::size_t t = 0; t < jj; ++t) g.mu[k][t] -= r * g.mu[jj][t];
      g.mu[k][jj] -= r;
    }
    const long double m = g.mu[k][k - 1];
    if (g.norm2[k] >= (delta - m * m) * g.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

std::vector<RelationCertificate> relation_basis(const std::vector<cplx>& values,
                                                long long max_height, double tol) {
  const std::size_t n = values.size();
  if (n > kMaxRelationValues) {
    throw Error(ErrorCode::RelationListTooLong, "at most 12 values per relation search");
  }
  std::vector<RelationCertificate> out;
  if (n == 0) return out;
  double scale = 0;
  for (const cplx& v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      RelationCertificate r;
      r.coefficients.assign(n, 0);
      r.coefficients[i] = 1;
      r.height = 1;
      out.push_back(r);
    }
    return out;
  }
  const long double S = 1.0L / tol;
  std::vector<Row> basis(n, Row(n + 2, 0));
  for (std::size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = S * (values[i].real() / scale);
    basis[i][n + 1] = S * (values[i].imag() / scale);
  }
  lll_reduce(basis);
  for (const Row& row : basis) {
    std::vector<long long> c(n);
    bool nonzero = false;
    long long h = 0;
    bool too_big = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(row[i]) > 1e15L) too_big = true;
      c[i] = std::llround(static_cast<double>(row[i]));
      nonzero = nonzero || c[i] != 0;
      h = std::max(h, c[i] < 0 ? -c[i] : c[i]);
    }
    if (too_big || !nonzero || h > max_height) continue;
    normalise(c);
    const double res = relative_residual(values, c);
    if (!(res < tol)) continue;
    RelationCertificate r;
    r.coefficients = c;
    r.residual = res;
    r.height = 0;
    for (long long x : c) r.height = std::max(r.height, x < 0 ? -x : x);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RelationCertificate& a, const RelationCertificate& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coefficients > b.coefficients;
  });
  // Re-detection with a hundredfold tighter tolerance.
  const auto strict = tol > 1e-13 ? relation_basis(values, max_height, tol / 100.0)
                                  : std::vector<RelationCertificate>{};
  for (auto& r : out) {
    r.verified_at_higher_precision = tol <= 1e-13 || in_span(strict, r.coefficients);
  }
  return out;
}

std::optional<RelationCertificate> detect_integer_relation(const std::vector<cplx>& values,
                                                           long long max_height, double tol) {
  auto all = relation_basis(values, max_height, tol);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::size_t numeric_rank(std::vector<Row> rows, long double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  long double scale = 0;
  for (const auto& r : rows) {
    for (long double x : r) scale = std::max(scale, std::abs(x));
  }
  if (scale == 0) return 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t i = rank; i < rows.size(); ++i) {
      if (std::abs(rows[i][c]) > std::abs(rows[piv][c])) piv = i;
    }
    if (std::abs(rows[piv][c]) <= tol * scale) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      const long double f = rows[i][c] / rows[rank][c];
      for (std::size_t t = c; t < cols; ++t) rows[i][t] -= f * rows[rank][t];
    }
    ++rank;
  }
  return rank;
}

}  // namespace semiabel
