#include "shiftlab/bisect.hpp"
#include "shiftlab/families.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace shiftlab;

namespace {

Measure1D d(const Scalar& c, const Scalar& w = Scalar(1)) { return Measure1D::dirac(c, w); }
Rational q(const Scalar& s) { return s.exact(); }

WeightField fig(const Scalar& a_sq, const Scalar& k_sq) { return build_figure0({a_sq, k_sq}); }

// Largest kappa (not squared) in [0, 1] at which `in` holds, to 1e-9.
template <class F>
double kappa_edge(F in) {
  const auto pred = [&](const Scalar& k) { return sign(k) != Sign::positive || in(k * k); };
  return bisect_threshold(pred, Scalar(0), Scalar(1), Scalar(1, 1000000000)).to_double();
}

FlatParams worked_flat() {
  FlatParams f;
  f.a_sq = Scalar(1, 4);
  f.b_sq = Scalar(1);
  f.eta1 = d(1);
  f.xi = d(0, Scalar(1, 4)) + d(1, Scalar(3, 4));
  f.beta0_sq = Scalar(1, 100);
  return f;
}

}  // namespace

TEST_CASE("figure0 weights") {
  for (const Scalar& a2 : {Scalar(1, 10), Scalar(1, 2), Scalar(9, 10)}) {
    const WeightField f = fig(a2, Scalar(1));
    CHECK(q(f.alpha_sq(0, 0)) == Rational(3, 4));
    CHECK(f.beta_sq(1, 0).same(a2 / f.alpha_sq(0, 0)));
    // Columns k1 >= 1 start at 2a^2 (k+1)/(k+2).
    for (long k = 1; k < 5; ++k) CHECK(f.beta_sq(k, 0).same(Scalar(2) * a2 * Scalar(k + 1, k + 2)));
  }
  const Scalar k2(16, 25);
  const WeightField f = fig(Scalar(1, 3), k2);
  CHECK(q(f.alpha_sq(0, 0)) == q(Scalar(3, 4) * k2));
  CHECK(f.beta_sq(1, 0).same(Scalar(1, 3) * k2 / f.alpha_sq(0, 0)));
  CHECK(q(f.beta_sq(0, 0)) == q(k2));
  CHECK(q(f.alpha_sq(0, 1)) == Rational(1, 3));
  CHECK(q(f.alpha_sq(3, 2)) == 1);

  testgen::Gen g(51);
  for (int t = 0; t < 100; ++t) CHECK(check_commuting(fig(g.frac(1, 20, 20), g.frac(1, 20, 20))).holds());
  CHECK_THROWS_AS(fig(Scalar(0), Scalar(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(fig(Scalar(1, 2), Scalar(11, 10)), std::invalid_argument);
}

TEST_CASE("threshold closed forms") {
  CHECK(q(threshold_sq(Curve::h1, Scalar(1, 4))) == Rational(29, 41));
  CHECK(q(threshold_sq(Curve::hinf, Scalar(1, 2))) == Rational(2, 3));
  CHECK(q(threshold_sq(Curve::h2, Scalar(1, 2))) == Rational(9, 13));
  CHECK(std::abs(threshold(Curve::h2, Scalar(1, 2)).to_double() - 3 / std::sqrt(13.0)) < 1e-15);
  CHECK(std::abs(threshold(Curve::h1, Scalar(289, 400)).to_double() - 0.9974) < 1e-4);
  CHECK(std::abs(threshold(Curve::h21, Scalar(289, 400)).to_double() - 0.9806) < 1e-4);
  // 9 (3 - 5/16) / (47 - 15); about 0.86940.
  CHECK(q(threshold_sq(Curve::h21, Scalar(1, 4))) == Rational(387, 512));
  CHECK_THROWS_AS(threshold_sq(Curve::h2, Scalar(3, 4)), std::domain_error);
  CHECK_THROWS_AS(threshold_sq(Curve::h21, Scalar(4, 5)), std::domain_error);
  CHECK_THROWS_AS(threshold_sq(Curve::h1, Scalar(17, 20)), std::domain_error);
  CHECK(parse_curve("h21") == Curve::h21);
  CHECK_FALSE(parse_curve("h3").has_value());
}

TEST_CASE("ordering hinf <= h2 <= h1 on a^2 <= 1/2") {
  for (long i = 1; i <= 50; ++i) {
    const Scalar a2(i, 100);
    CHECK(compare(threshold_sq(Curve::hinf, a2), threshold_sq(Curve::h2, a2)) != Sign::positive);
    CHECK(compare(threshold_sq(Curve::h2, a2), threshold_sq(Curve::h1, a2)) != Sign::positive);
  }
}

TEST_CASE("crossing of h1 and h21") {
  const Scalar tol(1, 10000);
  const Scalar a = a_int(tol);
  CHECK(std::abs(a.to_double() - 0.8386) < 5e-4);
  const Scalar a2 = a * a;
  CHECK(std::abs(threshold(Curve::h1, a2).to_double() - threshold(Curve::h21, a2).to_double()) < 10 * 1e-4);
  CHECK(a_int_sign_changes(1000) == 1);
}

TEST_CASE("threshold/tester agreement at 20 sample points") {
  for (long i = 1; i <= 20; ++i) {
    const Scalar a2 = Scalar(i, 30).pow(2);
    CAPTURE(i);
    const double h1 = kappa_edge([&](const Scalar& k2) { return is_k_hyponormal_pair(fig(a2, k2), 1, 4).holds(); });
    CHECK(std::abs(h1 - threshold(Curve::h1, a2).to_double()) <= 1e-9);
    const double h2 = kappa_edge([&](const Scalar& k2) { return is_k_hyponormal_pair(fig(a2, k2), 2, 3).holds(); });
    CHECK(std::abs(h2 - threshold(Curve::h2, a2).to_double()) <= 1e-9);
    const double h21 = kappa_edge([&](const Scalar& k2) {
      for (const auto& s : power_pair(fig(a2, k2), 2, 1))
        if (!is_k_hyponormal_pair(s.field, 1, 4).holds()) return false;
      return true;
    });
    CHECK(std::abs(h21 - threshold(Curve::h21, a2).to_double()) <= 1e-9);
    const double hinf = kappa_edge([&](const Scalar& k2) { return subnormal_tc(figure0_tc({a2, k2})).verdict.holds(); });
    CHECK(std::abs(hinf - threshold(Curve::hinf, a2).to_double()) <= 1e-9);
  }
}

TEST_CASE("classification examples") {
  const auto c1 = classify_figure0(Figure0Params::from_values(Scalar(1, 2), Scalar(17, 20)));
  CHECK(c1.label == "not_H1, power21_in_H1");
  const auto c2 = classify_figure0(Figure0Params::from_values(Scalar(1, 2), Scalar(1, 2)));
  CHECK(c2.label == "H_inf, power21_in_H1");
  // a^2 = 0.7225 > 1/2: the columns beta^2_(k,0) = 2a^2 (k+1)/(k+2) exceed 1
  // from k = 2 on, so T2 is not hyponormal whatever kappa is.
  const Figure0Params p = Figure0Params::from_values(Scalar(17, 20), Scalar(99, 100));
  CHECK(figure0_column_breach(p.a_sq) == 2);
  const auto c3 = classify_figure0(p);
  CHECK(c3.label == "not_H1, power21_not_H1");
  CHECK(six_point(build_figure0(p), {0, 0}).verdict.psd);
  CHECK_FALSE(six_point(build_figure0(p), {2, 0}).verdict.psd);
  CHECK(figure0_column_breach(Scalar(3, 4)) == 2);
  CHECK_THROWS_AS(figure0_column_breach(Scalar(1, 2)), std::domain_error);
}

TEST_CASE("regions partition each vertical line") {
  const std::vector<std::string> order{"H_inf", "H2_only", "H1_only", "not_H1"};
  for (const Scalar& a2 : {Scalar(1, 10), Scalar(1, 4), Scalar(2, 5), Scalar(1, 2)}) {
    std::size_t last = 0;
    for (long j = 1; j <= 40; ++j) {
      const Figure0Params p{a2, Scalar(j, 40)};
      const Figure0Class c = predict_figure0(p);
      const auto at = std::find(order.begin(), order.end(), c.region);
      REQUIRE(at != order.end());
      const std::size_t idx = static_cast<std::size_t>(at - order.begin());
      CHECK(idx >= last);
      last = idx;
      CHECK(c.in_hinf <= c.in_h2);
      CHECK(c.in_h2 <= c.in_h1);
      if (j % 8 == 0) CHECK(classify_figure0(p, Exec::serial).label == c.label);
    }
  }
}

TEST_CASE("exam family") {
  const Measure1D leb = Measure1D::uniform(Scalar(1, 2), Scalar(3, 2));
  const ExamParams p{Scalar(9, 10), Scalar(1, 2), Scalar(1, 2), leb};
  const ExamBounds b = exam_bounds(p);
  CHECK(std::abs(b.s.to_double() - 0.48020) < 5e-6);
  // beta_1 x sqrt(1 - x^2) / sqrt(x^2 + a^4 - 2 a^2 x^2) with beta_1 = 1.
  const double m = 0.9 * std::sqrt(1 - 0.81) / std::sqrt(0.81 + 0.0625 - 2 * 0.25 * 0.81);
  CHECK(std::abs(b.m.to_double() - m) < 1e-12);
  CHECK(std::abs(b.m.to_double() - 0.57375) < 1e-5);
  const double mono = 0.9 / 0.5 * std::sqrt(1 / std::log(3.0));
  for (long n = 1; n <= 4; ++n) CHECK(std::abs(exam_monomial_bound(p, n).to_double() - mono) < 1e-12);

  testgen::Gen g(52);
  for (int t = 0; t < 100; ++t) {
    const Scalar x = g.frac(2, 19, 20);
    const Scalar a = x * g.frac(1, 19, 20);
    const ExamBounds e = exam_bounds({x, a, Scalar(1, 2), leb});
    CHECK(compare(e.s, e.m) == Sign::negative);
  }

  const WeightField f = build_exam(p);
  CHECK(in_tc(f).holds());
  CHECK(is_tensor_form(restriction(f, 1, 1)).holds());
  CHECK_THROWS_AS(build_exam({Scalar(1, 2), Scalar(1, 2), Scalar(1, 2), leb}), std::invalid_argument);
}

TEST_CASE("thm4 min formula") {
  FlatParams f = worked_flat();
  CHECK(q(thm4_bound_sq(f)) == Rational(1, 3));
  const Scalar eps(1, 1000000000);
  f.beta0_sq = Scalar(1, 3) * (Scalar(1) - eps).pow(2);
  Thm4Result r = thm4_subnormal(f);
  CHECK(r.formula.holds());
  CHECK(r.pipeline.holds());
  f.beta0_sq = Scalar(1, 3) * (Scalar(1) + eps).pow(2);
  r = thm4_subnormal(f);
  CHECK(r.formula.fails());
  CHECK(r.pipeline.fails());

  // No atom at 0 in xi: nothing positive extends.
  FlatParams z = worked_flat();
  z.xi = d(Scalar(1, 2), Scalar(1, 4)) + d(1, Scalar(3, 4));
  CHECK(thm4_bound_sq(z).is_zero());
  CHECK(thm4_subnormal(z).formula.fails());
  CHECK(thm4_subnormal(z).pipeline.fails());

  for (const FlatParams& p : random_flat_instances(53, 50)) {
    const Thm4Result t = thm4_subnormal(p);
    CHECK(t.formula.status == t.pipeline.status);
  }
}

TEST_CASE("generators are seeded") {
  const auto a = random_tc_instances(5, 12), b = random_tc_instances(5, 12);
  REQUIRE(a.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].recipe == b[i].recipe);
    for (long k = 0; k < 4; ++k) CHECK(a[i].tc.gamma(k, 2).same(b[i].tc.gamma(k, 2)));
    CHECK(screen_h0(a[i].tc).holds());
  }
  const auto f1 = random_flat_instances(6, 5), f2 = random_flat_instances(6, 5);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(f1[i].beta0_sq.same(f2[i].beta0_sq));
}

TEST_CASE("verify names") {
  const auto& names = verify_names();
  CHECK(names.size() == 9);
  CHECK(std::find(names.begin(), names.end(), "thm4") != names.end());
  CHECK_THROWS_AS(verify("nope"), std::invalid_argument);
  VerifyOptions o;
  o.instances = 20;
  for (const char* n : {"thm1", "pro1", "thm4", "four"}) {
    const VerifyReport r = verify(n, o);
    CAPTURE(n);
    CHECK(r.pass);
    CHECK(r.seed == 7);
  }
}
