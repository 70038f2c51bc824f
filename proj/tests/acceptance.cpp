// Acceptance checks AC-1 .. AC-10. One PASS/FAIL line each; exit status 1 if
// any line fails.

#include "shiftlab/bisect.hpp"
#include "shiftlab/families.hpp"
#include "support/gen.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace shiftlab;

namespace {

// Pinned tolerances.
constexpr double kBisectTol = 1e-9;
constexpr double kAintTol = 5e-4;
constexpr double kLn3Tol = 1e-12;
const Scalar kBisectStep(1, 1000000000);
const Scalar kAintStep(1, 100000);
const Scalar kEdge(1, 1000000000000);  // 1e-12
const Scalar kProbe(1, 1000000000);    // 1e-9

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("AC-%d %s %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 12) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

WeightField fig(const Scalar& a_sq, const Scalar& k_sq) { return build_figure0({a_sq, k_sq}); }

// Largest kappa in [0,1] with `in(kappa^2)`.
double kappa_edge(const std::function<bool(const Scalar&)>& in) {
  auto pred = [&](const Scalar& k) { return sign(k) != Sign::positive || in(k * k); };
  return bisect_threshold(pred, Scalar(0), Scalar(1), kBisectStep).to_double();
}

bool hyponormal(const WeightField& t) { return is_k_hyponormal_pair(t, 1).holds(); }

bool power21_hyponormal(const Scalar& a2, const Scalar& k2) {
  for (const auto& s : power_pair(fig(a2, k2), 2, 1))
    if (!hyponormal(s.field)) return false;
  return true;
}

void ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0, psd = 0, exact = 0;
  for (long i = 1; i <= 50; ++i)
    for (long j = 1; j <= 50; ++j) {
      const Scalar a2 = Scalar(i, 50).pow(2), k2 = Scalar(j, 50).pow(2);
      const Scalar h = (Scalar(60) * a2 - Scalar(47)) * k2 + Scalar(27) - Scalar(45) * a2 * a2;
      const SixPoint sp = six_point(power_pair(fig(a2, k2), 2, 1)[0].field, {0, 0});
      exact += sp.verdict.track == Track::exact;
      psd += sp.verdict.psd;
      if (sp.verdict.psd != (sign(h) != Sign::negative)) ++bad;
    }
  const double secs = seconds_since(t0);
  report(1, bad == 0 && exact == 2500 && secs < 5.0,
         std::to_string(bad) + " disagreements on 2500 cells (" + std::to_string(psd) + " psd, " + std::to_string(exact) +
             " exact), " + fmt(secs, 3) + " s");
}

void ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const Scalar& a : {Scalar(3, 10), Scalar(1, 2), Scalar(7, 10)}) {
    const Scalar a2 = a * a;
    const double h1 = kappa_edge([&](const Scalar& k2) { return hyponormal(fig(a2, k2)); });
    const double h21 = kappa_edge([&](const Scalar& k2) { return power21_hyponormal(a2, k2); });
    worst = std::max(worst, std::abs(h1 - threshold(Curve::h1, a2).to_double()));
    worst = std::max(worst, std::abs(h21 - threshold(Curve::h21, a2).to_double()));
  }
  const double secs = seconds_since(t0);
  report(2, worst <= kBisectTol && secs < 10.0, "max |bisected - closed form| = " + fmt(worst, 3) + ", " + fmt(secs, 3) + " s");
}

void ac3() {
  const double a = a_int(kAintStep).to_double();
  const int changes = a_int_sign_changes(1000);
  report(3, std::abs(a - 0.8386) <= kAintTol && changes == 1,
         "a_int = " + fmt(a, 6) + ", sign changes of h1^2 - h21^2: " + std::to_string(changes));
}

void ac4() {
  const Scalar a2(1, 2);
  const double h2 = kappa_edge([&](const Scalar& k2) { return is_k_hyponormal_pair(fig(a2, k2), 2).holds(); });
  const double want = 3 / std::sqrt(13.0);
  report(4, std::abs(h2 - want) <= kBisectTol, "h2(1/sqrt 2) bisected " + fmt(h2) + " vs 3/sqrt 13 = " + fmt(want));
}

void ac5() {
  bool ok = true;
  std::string detail;
  for (const Scalar& a2 : {Scalar(1, 4), Scalar(1, 2)}) {
    const Scalar edge = Scalar(1) / (Scalar(2) - a2);
    const Verdict at = subnormal_tc(figure0_tc({a2, edge})).verdict;
    const Verdict past = subnormal_tc(figure0_tc({a2, edge * (Scalar(1) + kEdge)})).verdict;
    const bool line = at.holds() && at.track == Track::exact && past.fails();
    ok = ok && line;
    if (!detail.empty()) detail += "; ";
    detail += "a^2 = " + a2.str() + ": " + to_string(at.status) + " at 1/(2-a^2), " + to_string(past.status) + " past it";
  }
  report(5, ok, detail);
}

void ac6() {
  const Measure1D leb = Measure1D::uniform(Scalar(1, 2), Scalar(3, 2));
  const Scalar b1 = leb.moment(1);
  const double norm = leb.power_integral(-1)->to_double();
  const ExamParams p{Scalar(9, 10), Scalar(1, 2), Scalar(13, 25), leb};
  const TcData tc = exam_tc(p);
  const bool h1 = screen_h0(tc).holds() && is_k_hyponormal_pair(tc_field(tc), 1).holds();
  const bool hinf = subnormal_tc(tc).verdict.holds();
  int mono = 0;
  for (long m = 1; m <= 6; ++m)
    for (long n = 1; n <= 6; ++n) mono += monomial_subnormal(tc, m, n).holds();
  const bool ok = b1.is_exact() && b1.exact() == 1 && std::abs(norm - std::log(3.0)) <= kLn3Tol && h1 && !hinf && mono == 36;
  report(6, ok,
         std::string("beta_1^2 = ") + b1.str() + ", |‖1/t‖ - ln 3| = " + fmt(std::abs(norm - std::log(3.0)), 3) +
             ", H1 " + (h1 ? "yes" : "no") + ", H_inf " + (hinf ? "yes" : "no") + ", " + std::to_string(mono) +
             "/36 monomials subnormal");
}

void ac7() {
  const auto t0 = std::chrono::steady_clock::now();
  int agree = 0, sub = 0;
  const auto inst = random_tc_instances(7, 200);
  for (const auto& i : inst) {
    const Status s11 = subnormal_tc(i.tc).verdict.status;
    const Status s12 = power_subnormal(i.tc, 1, 2).status;
    const Status s21 = power_subnormal(i.tc, 2, 1).status;
    if (s11 != Status::undecided && s11 == s12 && s12 == s21) ++agree;
    sub += s11 == Status::holds;
  }
  const double secs = seconds_since(t0);
  report(7, agree == 200 && secs < 30.0,
         std::to_string(agree) + "/200 instances agree (" + std::to_string(sub) + " subnormal), " + fmt(secs, 3) + " s");
}

void ac8() {
  testgen::Gen g(8);
  int checked = 0, bad = 0;
  for (int t = 0; t < 30; ++t) {
    const Measure1D xi = g.measure(false);
    const WeightSeq w = WeightSeq::subnormal(xi);
    for (long l = 1; l <= 3; ++l)
      for (long i = 0; i < l; ++i) {
        const WeightSeq p = power_packets(w, l, i);
        if (!p.berger()) {
          ++bad;
          continue;
        }
        for (long k = 0; k <= 12; ++k) {
          const Scalar want = xi.moment(static_cast<unsigned long>(l * k + i)) / xi.moment(static_cast<unsigned long>(i));
          const Scalar got = p.berger()->moment(static_cast<unsigned long>(k));
          ++checked;
          if (!want.is_exact() || !got.same(want) || !p.gamma(k).same(want)) ++bad;
        }
      }
  }
  report(8, bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " packet moments equal exactly");
}

void ac9() {
  testgen::Gen g(9);
  int path_bad = 0, six_bad = 0, mass_bad = 0, marg_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const WeightField f = t % 2 ? g.field(3) : fig(g.frac(1, 10, 20), g.frac(1, 20, 20));
    const long k1 = g.between(0, 5), k2 = g.between(0, 5);
    std::vector<int> moves(static_cast<std::size_t>(k1), 0);
    moves.insert(moves.end(), static_cast<std::size_t>(k2), 1);
    for (std::size_t i = moves.size(); i > 1; --i) std::swap(moves[i - 1], moves[static_cast<std::size_t>(g.upto(static_cast<long>(i)))]);
    const Scalar a = gamma2(f, {k1, k2}), b = gamma2_path(f, moves);
    if (!a.is_exact() || !a.same(b)) ++path_bad;
  }
  for (int t = 0; t < 500; ++t) {
    const WeightField f = t % 2 ? g.field(3) : fig(g.frac(1, 20, 20), g.frac(1, 20, 20));
    const Point u{g.between(0, 4), g.between(0, 4)};
    if (six_point(f, u).verdict.psd != psd_check(moment_matrix(f, u, 1)).psd) ++six_bad;
  }
  for (int t = 0; t < 100; ++t) {
    const Measure1D xi = g.measure(), eta = g.measure(false);
    const Measure2D m = Measure2D::product(xi, eta);
    if (!m.marginal_x().same(xi)) ++marg_bad;
    const Scalar mass = m.extremal().mass();
    if (mass.is_exact() ? mass.exact() != 1 : compare(mass, Scalar(1)) != Sign::tie) ++mass_bad;
  }
  report(9, path_bad + six_bad + mass_bad + marg_bad == 0,
         "path " + std::to_string(path_bad) + "/100, six-point vs M_u(1) " + std::to_string(six_bad) + "/500, extremal mass " +
             std::to_string(mass_bad) + "/100, marginal " + std::to_string(marg_bad) + "/100 failures");
}

void ac10() {
  const auto inst = random_flat_instances(10, 50);
  int agree = 0, probes = 0, sharp = 0;
  for (FlatParams f : inst) {
    try {
      const Thm4Result r = thm4_subnormal(f);
      agree += r.formula.status == r.pipeline.status && r.formula.status != Status::undecided;
    } catch (const std::logic_error&) {
    }
    const Scalar bound = thm4_bound_sq(f);
    if (bound.is_zero()) continue;
    ++probes;
    FlatParams lo = f, hi = f;
    lo.beta0_sq = bound * (Scalar(1) - kProbe).pow(2);
    hi.beta0_sq = bound * (Scalar(1) + kProbe).pow(2);
    const Thm4Result rl = thm4_subnormal(lo), rh = thm4_subnormal(hi);
    if (rl.formula.holds() && rl.pipeline.holds() && rh.formula.fails() && rh.pipeline.fails()) ++sharp;
  }
  report(10, agree == 50 && probes > 0 && sharp == probes,
         std::to_string(agree) + "/50 instances agree, " + std::to_string(sharp) + "/" + std::to_string(probes) +
             " boundary probes flip at (1 -/+ 1e-9) bound");
}

}  // namespace

int main() {
  const std::pair<int, void (*)()> checks[] = {{1, ac1}, {2, ac2}, {3, ac3}, {4, ac4}, {5, ac5},
                                               {6, ac6}, {7, ac7}, {8, ac8}, {9, ac9}, {10, ac10}};
  for (const auto& [n, run] : checks) {
    try {
      run();
    } catch (const std::exception& e) {
      report(n, false, std::string("threw: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
