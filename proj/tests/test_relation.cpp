#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>

#include "doctest.h"
#include "semiabel/error.hpp"
#include "semiabel/relation.hpp"

using namespace semiabel;

namespace {

// Relative residual computed independently of the library.
double residual(const std::vector<cplx>& v, const std::vector<long long>& c) {
  cplx s{};
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += static_cast<double>(c[i]) * v[i];
    m = std::max(m, std::abs(v[i]));
  }
  return std::abs(s) / m;
}

bool proportional(const std::vector<long long>& a, const std::vector<long long>& b) {
  for (int sign : {1, -1}) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) ok = ok && a[i] == sign * b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("relation between 1 and 2") {
  const auto r = detect_integer_relation({1.0, 2.0}, 100, 1e-12);
  REQUIRE(r);
  CHECK(proportional(r->coefficients, {2, -1}));
  CHECK(r->height == 2);
  CHECK(r->verified_at_higher_precision);
}

TEST_CASE("no relation between 1 and sqrt 2 at height 100") {
  CHECK_FALSE(detect_integer_relation({1.0, std::sqrt(2.0)}, 100, 1e-12));
}

TEST_CASE("periods and a lattice vector") {
  const cplx w1{1.3, 0.4}, w2{-0.7, 2.9};
  const auto r = detect_integer_relation({w1, w2, w1 + 3.0 * w2}, 100, 1e-12);
  REQUIRE(r);
  CHECK(proportional(r->coefficients, {1, 3, -1}));
  CHECK(residual({w1, w2, w1 + 3.0 * w2}, r->coefficients) < 1e-14);
}

TEST_CASE("planted relations are recovered") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<long long> C(-100, 100);
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> v;
    std::vector<long long> planted;
    cplx last{};
    for (int i = 0; i < 3; ++i) {
      v.emplace_back(U(rng), U(rng));
      planted.push_back(C(rng));
      last += static_cast<double>(planted.back()) * v.back();
    }
    if (planted[0] == 0 && planted[1] == 0 && planted[2] == 0) planted[0] = 1, last += v[0];
    v.push_back(last);
    planted.push_back(-1);
    const auto r = detect_integer_relation(v, 1000, 1e-9);
    if (r && proportional(r->coefficients, planted) && r->verified_at_higher_precision) ++recovered;
  }
  CHECK(recovered == 100);
}

TEST_CASE("relation-free inputs stay relation-free") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> v;
    for (int i = 0; i < 4; ++i) v.emplace_back(U(rng), U(rng));
    if (detect_integer_relation(v, 100, 1e-9)) ++found;
  }
  CHECK(found == 0);
}

TEST_CASE("relation basis spans every relation") {
  const cplx a{0.7, 0.2}, b{-0.3, 1.1};
  // two independent relations among (a, b, a + b, 2a - b)
  const std::vector<cplx> v{a, b, a + b, 2.0 * a - b};
  const auto basis = relation_basis(v, 100, 1e-10);
  CHECK(basis.size() == 2);
  for (const auto& c : basis) CHECK(residual(v, c.coefficients) < 1e-12);
  std::vector<std::vector<long double>> rows;
  for (const auto& c : basis) rows.emplace_back(c.coefficients.begin(), c.coefficients.end());
  CHECK(numeric_rank(rows) == 2);
}

TEST_CASE("at most twelve values") {
  std::vector<cplx> v(13, cplx{1.0, 0.5});
  try {
    detect_integer_relation(v, 10, 1e-9);
    FAIL("expected RelationListTooLong");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RelationListTooLong);
  }
  v.resize(12);
  CHECK(detect_integer_relation(v, 10, 1e-9));
}

TEST_CASE("LLL reduces a skewed basis") {
  std::vector<std::vector<long double>> b{{1, 0, 0}, {1000, 1, 0}, {1000, 1000, 1}};
  lll_reduce(b);
  for (const auto& row : b) {
    long double n = 0;
    for (long double x : row) n += x * x;
    CHECK(n < 10.0L);
  }
  CHECK(numeric_rank(b) == 3);
}

TEST_CASE("numeric rank") {
  CHECK(numeric_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(numeric_rank({{1, 2}, {2, 4.1L}}) == 2);
  CHECK(numeric_rank({{0, 0}}) == 0);
}
