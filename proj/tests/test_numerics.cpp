#include "shiftlab/bisect.hpp"
#include "shiftlab/sym_matrix.hpp"
#include "support/gen.hpp"

#include <doctest.h>

using namespace shiftlab;

namespace {

SymMatrix mat(std::vector<std::vector<Scalar>> rows) { return SymMatrix::from_rows(rows); }

// Cofactor expansion; independent of the library's elimination.
Rational cofactor_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rational d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rational>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      sub.push_back(row);
    }
    const Rational term = a[0][c] * cofactor_det(sub);
    d += (c % 2 == 0) ? term : Rational(-term);
  }
  return d;
}

bool all_minors_nonneg(const SymMatrix& m) {
  const std::size_t n = m.dim();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<Rational>> a;
    for (auto i : idx) {
      std::vector<Rational> row;
      for (auto j : idx) row.push_back(m(i, j).exact());
      a.push_back(row);
    }
    if (cofactor_det(a) < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact arithmetic stays exact") {
  const Scalar x = Scalar(1, 3) + Scalar(1, 6);
  CHECK(x.is_exact());
  CHECK(x.exact() == Rational(1, 2));
  CHECK((Scalar(2, 3).pow(3)).exact() == Rational(8, 27));
  CHECK((Scalar(3, 4) / Scalar(9, 8)).exact() == Rational(2, 3));
  CHECK(Scalar::parse("17/20").exact() == Rational(17, 20));
  CHECK(Scalar::parse("0.85").exact() == Rational(17, 20));
  CHECK(Scalar::parse("1e-9").exact() == Rational(1, 1000000000));
  CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("abc"), std::invalid_argument);
}

TEST_CASE("mixing tracks demotes to approx and keeps the larger tolerance") {
  const Scalar r = sqrt(Scalar(2));
  CHECK_FALSE(r.is_exact());
  const Scalar s = r + Scalar(1, 2);
  CHECK_FALSE(s.is_exact());
  const Scalar loose = Scalar::approx(Real(1), 1e-6);
  CHECK((loose + r).tol() == doctest::Approx(1e-6));
  // Exact squares come back exact.
  CHECK(sqrt(Scalar(9, 4)).is_exact());
}

TEST_CASE("approx comparisons within tolerance are ties") {
  const Scalar r = sqrt(Scalar(2));
  CHECK(compare(r * r, Scalar(2)) == Sign::tie);
  CHECK(compare(r, Scalar(1)) == Sign::positive);
  CHECK_FALSE(le(r * r, Scalar(2)).has_value());
  CHECK(le(Scalar(1, 3), Scalar(1, 2)).value());
}

TEST_CASE("psd_check examples") {
  const PsdVerdict d = psd_check(mat({{1, 0}, {0, 2}}));
  CHECK(d.psd);
  CHECK(d.status == Status::holds);
  REQUIRE(d.diagonal.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(d.diagonal[i].exact() == Rational(static_cast<long>(d.pivots[i] + 1)));
  CHECK(reconstructs(mat({{1, 0}, {0, 2}}), d));

  const SymMatrix m = mat({{1, 2}, {2, 1}});
  const PsdVerdict n = psd_check(m);
  CHECK_FALSE(n.psd);
  CHECK(n.negative_minor == std::vector<std::size_t>{0, 1});
  CHECK(n.minor_det.exact() == -3);
}

TEST_CASE("zero pivot with a nonzero off-diagonal entry is not psd") {
  const PsdVerdict v = psd_check(mat({{0, 1}, {1, 5}}));
  CHECK_FALSE(v.psd);
  CHECK(determinant(mat({{0, 1}, {1, 5}})).exact() == -1);
  CHECK(psd_check(mat({{0, 0}, {0, 5}})).psd);
}

TEST_CASE("non-symmetric input is rejected at construction") {
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}}), std::invalid_argument);
}

TEST_CASE("property: psd verdict matches all principal minors, dim <= 4") {
  testgen::Gen g(11);
  int psd = 0;
  for (int t = 0; t < 400; ++t) {
    const SymMatrix m = g.sym(static_cast<std::size_t>(g.between(1, 4)));
    const PsdVerdict v = psd_check(m);
    CAPTURE(m.str());
    CHECK(v.psd == all_minors_nonneg(m));
    if (v.psd) {
      ++psd;
      CHECK(reconstructs(m, v));
    } else {
      // The negative-minor witness re-verifies with the oracle determinant.
      std::vector<std::vector<Rational>> a;
      for (auto i : v.negative_minor) {
        std::vector<Rational> row;
        for (auto j : v.negative_minor) row.push_back(m(i, j).exact());
        a.push_back(row);
      }
      CHECK(cofactor_det(a) == v.minor_det.exact());
      CHECK(cofactor_det(a) < 0);
    }
  }
  CHECK(psd > 50);
}

TEST_CASE("property: psd_check is invariant under simultaneous permutation") {
  testgen::Gen g(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.between(2, 4));
    const SymMatrix m = g.sym(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(g.upto(static_cast<long>(i + 1)))]);
    CHECK(psd_check(m).psd == psd_check(m.permuted(perm)).psd);
  }
}

TEST_CASE("bisect_threshold") {
  auto step = [](const Scalar& x) { return compare(x, Scalar(1, 2)) != Sign::positive; };
  const Scalar tol(1, 1000000000);
  const Scalar t = bisect_threshold(step, Scalar(0), Scalar(1), tol);
  CHECK(std::abs(t.to_double() - 0.5) <= 1e-9);
  // Reproducible bit for bit.
  CHECK(t.same(bisect_threshold(step, Scalar(0), Scalar(1), tol)));
  CHECK_THROWS_AS(bisect_threshold(step, Scalar(3, 4), Scalar(1), tol), std::invalid_argument);
  CHECK_THROWS_AS(bisect_threshold(step, Scalar(0), Scalar(1, 4), tol), std::invalid_argument);
}
