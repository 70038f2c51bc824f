#include "shiftlab/families.hpp"
#include "shiftlab/shift2.hpp"
#include "shiftlab/tc.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <set>

using namespace shiftlab;

namespace {

Measure1D d(const Scalar& c, const Scalar& w = Scalar(1)) { return Measure1D::dirac(c, w); }
Rational q(const Scalar& s) { return s.exact(); }

// alpha depends on k1 only, beta on k2 only.
WeightField tensor(const std::vector<Scalar>& aw, const std::vector<Scalar>& bw) {
  const std::size_t n = std::max(aw.size(), bw.size());
  std::vector<std::vector<Scalar>> alpha(n, std::vector<Scalar>(n)), beta = alpha;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      alpha[i][j] = aw[std::min(i, aw.size() - 1)];
      beta[i][j] = bw[std::min(j, bw.size() - 1)];
    }
  return WeightField::rect(alpha, beta);
}

WeightField fig(const Scalar& a_sq, const Scalar& k_sq) { return build_figure0({a_sq, k_sq}); }

Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }

}  // namespace

TEST_CASE("commutativity") {
  CHECK(check_commuting(tensor({Scalar(1, 2), Scalar(1)}, {Scalar(1, 3), Scalar(1)})).holds());
  testgen::Gen g(41);
  for (int t = 0; t < 20; ++t) {
    const WeightField f = fig(g.frac(1, 10, 20), g.frac(1, 20, 20));
    CHECK(check_commuting(f).holds());
    const Point k{g.between(0, 3), g.between(0, 3)};
    const WeightField bad = f.with_override(k, f.alpha_sq(k) * Scalar(9, 10), std::nullopt);
    const Verdict v = check_commuting(bad);
    CHECK(v.fails());
    REQUIRE(v.point);
    // The perturbed weight enters the identities at k and at k - e2.
    CHECK((*v.point == k || *v.point == Point{k[0], k[1] - 1}));
    CHECK_THROWS_AS(gamma2(bad, add(k, {1, 1})), std::invalid_argument);
  }
  for (int t = 0; t < 10; ++t) CHECK(check_commuting(g.field(3)).holds());
}

TEST_CASE("moments") {
  const WeightField t = tensor({Scalar(1, 2), Scalar(1)}, {Scalar(2, 3), Scalar(1)});
  CHECK(q(gamma2(t, {0, 0})) == 1);
  CHECK(q(gamma2(t, {3, 0})) == Rational(1, 2));
  CHECK(q(gamma2(t, {2, 4})) == Rational(1, 3));

  const Scalar a2(2, 5), k2(3, 5);
  const WeightField f = fig(a2, k2);
  CHECK(q(gamma2(f, {1, 1})) == q(a2 * k2));
  CHECK(q(gamma2(f, {0, 3})) == q(k2));
  // Bottom row (1 - k) δ0 + (k/2) Leb[0,1] + (k/2) δ1: gamma(n,0) = k (1/(2(n+1)) + 1/2).
  for (long n = 1; n <= 5; ++n) CHECK(q(gamma2(f, {n, 0})) == q(k2) * (Rational(1, 2 * (n + 1)) + Rational(1, 2)));
  CHECK(q(f.alpha_sq(0, 0)) == q(Scalar(3, 4) * k2));
  CHECK(q(f.beta_sq(1, 0)) == q(a2 * k2 / f.alpha_sq(0, 0)));
}

TEST_CASE("property: gamma2 is path independent") {
  testgen::Gen g(42);
  for (int t = 0; t < 40; ++t) {
    const WeightField f = t % 2 ? g.field(3) : fig(g.frac(1, 10, 20), g.frac(1, 20, 20));
    const long k1 = g.between(0, 5), k2 = g.between(0, 5);
    std::vector<int> moves(static_cast<std::size_t>(k1), 0);
    moves.insert(moves.end(), static_cast<std::size_t>(k2), 1);
    const Scalar ref = gamma2(f, {k1, k2});
    for (int p = 0; p < 4; ++p) {
      for (std::size_t i = moves.size(); i > 1; --i) std::swap(moves[i - 1], moves[static_cast<std::size_t>(g.upto(static_cast<long>(i)))]);
      CHECK(gamma2_path(f, moves).same(ref));
    }
  }
}

TEST_CASE("index set order") {
  CHECK(index_set(1) == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(index_set(2) == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(index_set(3).size() == 10);
}

TEST_CASE("six-point test") {
  CHECK(six_point(tensor({Scalar(1, 2), Scalar(1)}, {Scalar(1, 3), Scalar(1)}), {0, 0}).verdict.psd);

  // At the origin of the Figure-0 family the test reduces to
  // (72a^2 - 59) kappa^2 + 32 - 48 a^4 >= 0 when a^2 <= 1/2.
  testgen::Gen g(43);
  int both = 0;
  for (int t = 0; t < 200; ++t) {
    const Scalar a2 = g.frac(1, 10, 20), k2 = g.frac(1, 40, 40);
    const Scalar gval = (Scalar(72) * a2 - Scalar(59)) * k2 + Scalar(32) - Scalar(48) * a2 * a2;
    const bool psd = six_point(fig(a2, k2), {0, 0}).verdict.psd;
    CHECK(psd == (sign(gval) != Sign::negative));
    both += psd ? 1 : 0;
  }
  CHECK(both > 20);
  CHECK(both < 190);
}

TEST_CASE("six-point on the even-column summand of (T1^2, T2)") {
  // M(1) of the summand with gamma'(p,q) = gamma(2p,q); its Schur complement
  // at the corner gives (1 - k)(3/5 - 4k/9) >= (a^2 - 2k/3)^2.
  testgen::Gen g(44);
  for (int t = 0; t < 200; ++t) {
    const Scalar a2 = g.frac(1, 20, 20), k2 = g.frac(1, 40, 40);
    const auto parts = power_pair(fig(a2, k2), 2, 1);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].i == 0);
    const Scalar lhs = (Scalar(1) - k2) * (Scalar(3, 5) - Scalar(4, 9) * k2);
    const Scalar rhs = (a2 - Scalar(2, 3) * k2).pow(2);
    CHECK(six_point(parts[0].field, {0, 0}).verdict.psd == (compare(lhs, rhs) != Sign::negative));
  }
}

TEST_CASE("property: six-point agrees with M_u(1)") {
  testgen::Gen g(45);
  int neg = 0;
  for (int t = 0; t < 500; ++t) {
    const WeightField f = t % 2 ? g.field(3) : fig(g.frac(1, 20, 20), g.frac(1, 20, 20));
    const Point u{g.between(0, 4), g.between(0, 4)};
    const bool a = six_point(f, u).verdict.psd;
    const bool b = psd_check(moment_matrix(f, u, 1)).psd;
    CHECK(a == b);
    neg += a ? 0 : 1;
  }
  CHECK(neg > 0);
}

TEST_CASE("k-hyponormality of pairs") {
  const Scalar half(1, 2);
  CHECK(is_k_hyponormal_pair(fig(half, threshold_sq(Curve::h1, half)), 1).holds());
  CHECK(is_k_hyponormal_pair(fig(half, threshold_sq(Curve::h1, half) * Scalar(1000001, 1000000)), 1).fails());
  const Scalar h2 = threshold_sq(Curve::h2, half);
  CHECK(q(h2) == Rational(9, 13));
  CHECK(is_k_hyponormal_pair(fig(half, h2), 2).holds());
  const Verdict v = is_k_hyponormal_pair(fig(half, h2 * Scalar(1000001, 1000000)), 2);
  CHECK(v.fails());
  CHECK(v.point.has_value());

  const WeightField t = tensor({Scalar(1, 2), Scalar(1)}, {Scalar(1, 3), Scalar(1)});
  for (int k = 1; k <= 3; ++k) {
    CHECK(is_k_hyponormal_pair(t, k, 5).status != Status::fails);
    CHECK(is_k_hyponormal_pair(t, k, 5, Exec::serial).status == is_k_hyponormal_pair(t, k, 5, Exec::parallel).status);
  }
}

TEST_CASE("power pairs") {
  const WeightField f = fig(Scalar(2, 5), Scalar(3, 5));
  const auto one = power_pair(f, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].field.alpha_sq(2, 1).same(f.alpha_sq(2, 1)));

  // Every summand's moments are the rescaled moments along its residue class.
  for (auto [m, n] : std::vector<std::pair<long, long>>{{2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    const auto parts = power_pair(f, m, n);
    CHECK(parts.size() == static_cast<std::size_t>(m * n));
    for (const auto& s : parts)
      for (long p = 0; p <= 3; ++p)
        for (long r = 0; r <= 3; ++r) {
          const Scalar want = gamma2(f, {m * p + s.i, n * r + s.j}) / gamma2(f, {s.i, s.j});
          CHECK(gamma2(s.field, {p, r}).same(want));
        }
  }
  CHECK_THROWS_AS(power_pair(f, 0, 1), std::invalid_argument);

  // (T1, T2^2): beta'(p,q)^2 = beta^2(p, 2q+j) beta^2(p, 2q+j+1).
  for (const auto& s : power_pair(f, 1, 2))
    for (long p = 0; p <= 3; ++p)
      for (long r = 0; r <= 3; ++r)
        CHECK(s.field.beta_sq(p, r).same(f.beta_sq(p, 2 * r + s.j) * f.beta_sq(p, 2 * r + s.j + 1)));

  // The odd-column summand of (T1^2, T2) is subnormal while a^2 <= 1/2.
  // Past that its columns (beta_(k,0), 1, 1, ...) start above 1.
  testgen::Gen g(46);
  for (int t = 0; t < 10; ++t) {
    const auto parts = power_pair(fig(g.frac(1, 10, 20), g.frac(1, 20, 20)), 2, 1);
    CHECK(parts[1].i == 1);
    CHECK(is_k_hyponormal_pair(parts[1].field, 2, 5).status != Status::fails);
  }
  CHECK(is_k_hyponormal_pair(power_pair(fig(Scalar(3, 4), Scalar(1, 2)), 2, 1)[1].field, 1).fails());
}

TEST_CASE("restrictions") {
  const WeightField f = fig(Scalar(2, 5), Scalar(3, 5));
  const WeightField r00 = restriction(f, 0, 0);
  CHECK(r00.alpha_sq(1, 2).same(f.alpha_sq(1, 2)));
  // R_ij starts at k2 = i, k1 = j.
  const WeightField r = restriction(f, 2, 1);
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b) {
      CHECK(r.alpha_sq(a, b).same(f.alpha_sq(a + 1, b + 2)));
      CHECK(r.beta_sq(a, b).same(f.beta_sq(a + 1, b + 2)));
    }
  CHECK(is_tensor_form(restriction(f, 1, 1)).holds());
  CHECK(is_tensor_form(f).fails());
  CHECK(in_tc(f).status != Status::fails);
  const WeightField bad = f.with_override({2, 2}, Scalar(1, 2), std::nullopt);
  CHECK(is_tensor_form(restriction(bad, 1, 1)).fails());

  // Exam family: above the bottom row the rows are a, 1, 1, ... and the
  // columns beta_1, beta_2, ...; right of column 0 the rows are 1, 1, ... and
  // the columns a y / x, beta_1, ...
  const Measure1D eta = d(Scalar(1, 2), Scalar(1, 2)) + d(1, Scalar(1, 2));
  const ExamParams p{Scalar(9, 10), Scalar(1, 2), Scalar(2, 5), eta};
  const WeightField e = build_exam(p);
  const WeightSeq b = WeightSeq::subnormal(eta);
  const WeightField up = restriction(e, 1, 0);
  const WeightField right = restriction(e, 0, 1);
  for (long k = 0; k < 4; ++k) {
    CHECK(q(up.alpha_sq(k, 1)) == (k == 0 ? Rational(1, 4) : Rational(1)));
    CHECK(up.beta_sq(2, k).same(b.weight_sq(k)));
    CHECK(q(right.alpha_sq(k, 2)) == 1);
    CHECK(right.beta_sq(2, k + 1).same(b.weight_sq(k)));
  }
  CHECK(right.beta_sq(3, 0).same(p.a * p.a * p.y * p.y / (p.x * p.x)));
}

TEST_CASE("subnormality of TC pairs") {
  for (const Scalar& a2 : {Scalar(1, 4), Scalar(1, 2)}) {
    const Scalar edge = Scalar(1) / (Scalar(2) - a2);
    CHECK(subnormal_tc(figure0_tc({a2, edge})).verdict.holds());
    CHECK(subnormal_tc(figure0_tc({a2, edge * Scalar(1000001, 1000000)})).verdict.fails());
    CHECK(subnormal_tc(fig(a2, edge * Scalar(99, 100))).verdict.holds());
  }

  // Exam family: subnormal iff y <= s.
  const ExamParams p0{Scalar(9, 10), Scalar(1, 2), Scalar(1, 2), Measure1D::uniform(Scalar(1, 2), Scalar(3, 2))};
  const Scalar s = exam_bounds(p0).s;
  for (const auto& [f, expect] : std::vector<std::pair<Scalar, bool>>{{Scalar(99, 100), true}, {Scalar(101, 100), false}}) {
    ExamParams p = p0;
    p.y = s * f;
    CHECK(subnormal_tc(exam_tc(p)).verdict.holds() == expect);
  }

  // ‖1/s‖ of xi infinite: R10 cannot be subnormal.
  TcData tc = figure0_tc({Scalar(1, 4), Scalar(1, 2)});
  tc.xi = Measure1D::uniform(Scalar(0), Scalar(1));
  CHECK(r10_subnormal(tc).fails());
  CHECK(subnormal_tc(tc).verdict.fails());

  CHECK_THROWS_AS(subnormal_tc(tensor({Scalar(1)}, {Scalar(1)})), std::invalid_argument);
}

TEST_CASE("backward extension by a bottom row") {
  // R10 = (I x S_a, U+ x I) over a bottom row S_a: at beta00^2 = 1 the
  // extension is the tensor product S_a x U+.
  const Scalar a2(1, 3);
  const Measure1D nu = d(0, Scalar(1) - a2) + d(1, a2);
  const Measure2D mu_m = Measure2D::product(nu, d(1));
  const BackExt2Result r = backext2(Scalar(1), mu_m, nu);
  CHECK(r.verdict.holds());
  REQUIRE(r.measure);
  for (unsigned long k1 = 0; k1 < 3; ++k1)
    for (unsigned long k2 = 0; k2 < 3; ++k2)
      CHECK(r.measure->moment(k1, k2).same(Measure2D::product(nu, d(1)).moment(k1, k2)));
  CHECK(backext2(Scalar(11, 10), mu_m, nu).verdict.fails());
}

TEST_CASE("(T1, T2^2) on even and odd rows") {
  testgen::Gen g(47);
  for (int t = 0; t < 20; ++t) {
    const TcData tc = figure0_tc({g.frac(1, 10, 20), g.frac(1, 20, 20)});
    const PowerVertical pv = power_vertical_subnormal(tc);
    CHECK(pv.h0.status == pv.generic_h0.status);
    CHECK(pv.h1.status == pv.generic_h1.status);
    CHECK(pv.combined.status == subnormal_tc(tc).verdict.status);
  }
}

TEST_CASE("monomial summands") {
  const WeightField f = fig(Scalar(2, 5), Scalar(3, 5));
  for (auto [m, n] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {1, 3}}) {
    const auto orbits = monomial_summands(f, m, n, 3);
    std::set<Point> seen;
    for (const auto& o : orbits) {
      CHECK((o.start[0] < m || o.start[1] < n));
      CHECK(o.start[0] <= 3);
      CHECK(o.start[1] <= 3);
      CHECK(seen.insert(o.start).second);
      for (long j = 0; j < 4; ++j) {
        const Point lo = add(o.start, {j * m, j * n}), hi = add(lo, {m, n});
        CHECK(o.seq.weight_sq(j).same(gamma2(f, hi) / gamma2(f, lo)));
      }
    }
    CHECK(seen.count({0, 0}) == 1);
  }
  CHECK_THROWS_AS(monomial_summands(f, 0, 1), std::invalid_argument);
}
