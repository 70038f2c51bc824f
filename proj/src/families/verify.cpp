#include "shiftlab/bisect.hpp"
#include "shiftlab/families.hpp"
#include "shiftlab/kernels.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

void VerifyReport::add(std::string check, bool ok, std::string detail) {
  if (!ok) pass = false;
  lines.push_back({std::move(check), ok, std::move(detail)});
}

namespace {

std::string status_str(const Verdict& v) { return to_string(v.status); }

bool parallel(const VerifyOptions& o) { return o.exec == Exec::parallel; }

// The power-pair summand for residue 0 of (T1^2, T2), tested at the origin.
bool powhyp_psd(const Figure0Params& p) {
  const auto sums = power_pair(build_figure0(p), 2, 1);
  return six_point(sums[0].field, {0, 0}).verdict.status == Status::holds;
}

void run_firstmain(VerifyReport& rep, const VerifyOptions& opt) {
  const Scalar ai = a_int(Scalar(1, 10000));
  const double ad = ai.to_double();
  rep.add("a_int", std::abs(ad - 0.8386) < 5e-4, "a_int = " + std::to_string(ad));
  const int changes = a_int_sign_changes(1000);
  rep.add("unique crossing", changes == 1, std::to_string(changes) + " sign change(s) of h1^2 - h21^2");

  // Region (ii) and the remaining labels, on a^2 <= 1/2 where the lemma applies.
  struct Cell {
    long i, j;
  };
  std::vector<Cell> cells;
  for (long i = 1; i <= 14; ++i)
    for (long j = 1; j <= 20; ++j) cells.push_back({i, j});
  std::function<std::string(std::size_t)> eval = [&](std::size_t k) -> std::string {
    const auto p = Figure0Params::from_values(Scalar(cells[k].i, 20), Scalar(cells[k].j, 20));
    try {
      return classify_figure0(p, Exec::serial).label;
    } catch (const std::logic_error& e) {
      return std::string("error: ") + e.what();
    }
  };
  const auto labels = map_points<std::string>(cells.size(), eval, parallel(opt));
  int errors = 0, region_ii = 0, region_ii_expected = 0;
  std::string first_error;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (labels[k].rfind("error", 0) == 0) {
      if (!errors++) first_error = labels[k];
      continue;
    }
    const Scalar a(cells[k].i, 20), kappa(cells[k].j, 20);
    const Scalar k2 = kappa * kappa, a2 = a * a;
    const bool expect = compare(a, ai) == Sign::negative && compare(k2, threshold_sq(Curve::h1, a2)) == Sign::positive &&
                        compare(k2, threshold_sq(Curve::h21, a2)) != Sign::positive;
    const bool got = labels[k].find("not_H1") == 0 && labels[k].find("power21_in_H1") != std::string::npos;
    region_ii_expected += expect;
    region_ii += got && expect;
    if (got != expect && !errors++) first_error = "region (ii) mismatch at a = " + a.str() + ", kappa = " + kappa.str();
  }
  rep.add("classifier grid a <= 7/10", errors == 0,
          errors ? first_error : std::to_string(cells.size()) + " cells agree with the testers");
  rep.add("region (ii) populated", region_ii > 0 && region_ii == region_ii_expected,
          std::to_string(region_ii) + " cells with T not in H1 and (T1^2,T2) in H1");

  // Region (i) lies at a^2 > 1/2. The six-point conditions at the origin
  // separate h21 < kappa <= h1 as printed, but the column weights there pass
  // 1 and T2 is not hyponormal, so the pair is outside H1 on the full lattice.
  int local_ok = 0, local_total = 0, breach_ok = 0;
  for (long i = 0; i <= 4; ++i) {
    const Scalar a = Scalar(84, 100) + Scalar(i, 100);
    const Scalar a2 = a * a;
    const Scalar lo = threshold_sq(Curve::h21, a2), hi = min(threshold_sq(Curve::h1, a2), Scalar(1));
    if (compare(lo, hi) != Sign::negative) continue;
    const Figure0Params p{a2, (lo + hi) / Scalar(2)};
    ++local_total;
    const WeightField t = build_figure0(p);
    const bool t_origin = six_point(t, {0, 0}).verdict.status == Status::holds;
    if (t_origin && !powhyp_psd(p)) ++local_ok;
    const long k = figure0_column_breach(a2);
    if (six_point(t, {k, 0}).verdict.status == Status::fails && classify_figure0(p, Exec::serial).region == "not_H1")
      ++breach_ok;
  }
  rep.add("region (i) origin tests", local_total > 0 && local_ok == local_total,
          std::to_string(local_ok) + "/" + std::to_string(local_total) +
              " probes: six-point at the origin holds for T and fails for the (2,1) summand");
  rep.add("region (i) full lattice", breach_ok == local_total,
          std::to_string(breach_ok) + "/" + std::to_string(local_total) +
              " probes: T2 fails hyponormality at the first column with beta^2_(k,0) > 1, so T is not in H1");
}

void run_powhyp(VerifyReport& rep, const VerifyOptions& opt) {
  std::function<int(std::size_t)> eval = [](std::size_t k) {
    const Scalar a(static_cast<long>(k / 50 + 1), 50), kappa(static_cast<long>(k % 50 + 1), 50);
    const Scalar a2 = a * a, k2 = kappa * kappa;
    const Scalar h = (Scalar(60) * a2 - Scalar(47)) * k2 + Scalar(27) - Scalar(45) * a2 * a2;
    const bool predicted = sign(h) != Sign::negative;
    return predicted == powhyp_psd({a2, k2}) ? 0 : 1;
  };
  const auto bad = map_points<int>(2500, eval, parallel(opt));
  int total = 0;
  for (int b : bad) total += b;
  rep.add("50x50 grid", total == 0, std::to_string(total) + " disagreement(s) between h(a,kappa) >= 0 and the six-point test");
  // h21 by bisection on the generic tester at a few points.
  for (const Scalar& a : {Scalar(3, 10), Scalar(1, 2), Scalar(7, 10)}) {
    const Scalar a2 = a * a;
    auto pred = [&](const Scalar& kappa) {
      for (const auto& s : power_pair(build_figure0({a2, kappa * kappa}), 2, 1))
        if (!is_k_hyponormal_pair(s.field, 1, 4, Exec::serial).holds()) return false;
      return true;
    };
    const Scalar hi = min(Scalar(1), Scalar(99, 100));
    const double got = bisect_threshold(pred, Scalar(1, 10), hi, Scalar(1, 100000000000LL)).to_double();
    const double want = threshold(Curve::h21, a2).to_double();
    rep.add("h21 recovery a = " + a.str(), std::abs(got - want) < 1e-9,
            "bisection " + std::to_string(got) + ", closed form " + std::to_string(want));
  }
}

void run_thm1(VerifyReport& rep, const VerifyOptions& opt, bool pro1_only) {
  const auto inst = random_tc_instances(opt.seed, opt.instances);
  std::function<std::string(std::size_t)> eval = [&](std::size_t k) -> std::string {
    const TcData& tc = inst[k].tc;
    const PowerVertical pv = power_vertical_subnormal(tc);
    if (pv.h1.status != pv.generic_h1.status)
      return "R10 " + status_str(pv.h1) + " vs odd-row summand " + status_str(pv.generic_h1);
    if (pro1_only) return "";
    const Verdict t = subnormal_tc(tc).verdict;
    const Verdict t21 = power_subnormal(tc, 2, 1);
    if (pv.h0.status != pv.generic_h0.status)
      return "even-row summand: direct " + status_str(pv.h0) + " vs generic " + status_str(pv.generic_h0);
    if (t.status != pv.combined.status || t.status != t21.status)
      return "(T1,T2) " + status_str(t) + ", (T1,T2^2) " + status_str(pv.combined) + ", (T1^2,T2) " + status_str(t21);
    return t.holds() ? "+" : "-";
  };
  const auto res = map_points<std::string>(inst.size(), eval, parallel(opt));
  int bad = 0, sub = 0;
  std::string first;
  for (std::size_t k = 0; k < res.size(); ++k) {
    if (res[k] == "+") ++sub;
    if (res[k].empty() || res[k] == "+" || res[k] == "-") continue;
    if (!bad++) first = "instance " + std::to_string(k) + " (" + inst[k].recipe + "): " + res[k];
  }
  const std::string name = pro1_only ? "R10 vs (T1,T2^2) on odd rows" : "three subnormality verdicts";
  rep.add(name, bad == 0,
          bad ? first
              : std::to_string(inst.size()) + " instances agree" +
                    (pro1_only ? "" : "; " + std::to_string(sub) + " subnormal, " + std::to_string(inst.size() - sub) + " not"));
}

// Rows and columns 0..3 of a field whose moments differ from tc only inside
// [0,3]^2, decided exactly: explicit prefix, then the tail of tc.
Verdict exact_h0(const WeightField& t, const TcData& tc) {
  auto norm = [](const Measure1D& m, long j) { return j == 0 ? m : m.t_weight(j, m.moment(j)); };
  for (long k = 0; k <= 3; ++k) {
    std::vector<Scalar> row, col;
    for (long i = 0; i <= 3; ++i) {
      row.push_back(t.alpha_sq(i, k));
      col.push_back(t.beta_sq(k, i));
    }
    const Measure1D row_tail = k == 0 ? norm(tc.mu_x, 4) : norm(tc.xi, 3);
    const Measure1D col_tail = k == 0 ? norm(tc.eta_y, 4) : norm(tc.eta, 3);
    for (const auto& [name, w] : {std::pair{"row", WeightSeq::from_measure(row, row_tail)},
                                  std::pair{"column", WeightSeq::from_measure(col, col_tail)}}) {
      Verdict v = is_subnormal(w).verdict;
      if (!v.holds()) {
        v.detail = std::string(name) + " " + std::to_string(k) + ": " + v.detail;
        return v;
      }
    }
  }
  return holds_verdict("rows and columns 0..3 subnormal; later ones are untouched");
}

void run_tc_propagation(VerifyReport& rep, const VerifyOptions& opt) {
  const auto inst = random_tc_instances(opt.seed, opt.instances);
  std::mt19937_64 g(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Point> spots;
  for (long k1 = 0; k1 <= 3; ++k1)
    for (long k2 = 0; k2 <= 3; ++k2)
      if ((k1 < 2 || k2 < 2) && (k1 || k2)) spots.push_back({k1, k2});
  std::vector<std::pair<Point, Scalar>> moves;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point k = spots[g() % spots.size()];
    const long num = static_cast<long>(g() % 7) - 3;
    moves.push_back({k, Scalar(1) + Scalar(num == 0 ? 1 : num, 16)});
  }
  std::function<std::string(std::size_t)> eval = [&](std::size_t i) -> std::string {
    const TcData tc = inst[i].tc;
    const auto [k, factor] = moves[i];
    auto g0 = tc_field(tc);
    auto gamma = [g0, k, factor](long a, long b) {
      Scalar v = g0.gamma_unchecked({a, b});
      return a == k[0] && b == k[1] ? v * factor : v;
    };
    FieldMeta meta;
    meta.origin = "perturbed";
    const bool in_core = k[0] >= 1 && k[1] >= 1;
    if (!in_core) meta.tensor_from = Point{1, 1};
    const WeightField t = WeightField::from_moments(gamma, meta);
    const Verdict h0 = exact_h0(t, tc);
    const Verdict core = is_tensor_form(restriction(t, 1, 1), 3);
    if (h0.fails()) return in_core ? "core" : "edge";
    if (core.holds()) return "tensor";
    return "H0 " + status_str(h0) + " with core " + status_str(core) + " after perturbing gamma at " + point_str(k);
  };
  const auto res = map_points<std::string>(inst.size(), eval, parallel(opt));
  int bad = 0, core = 0, tensor = 0;
  std::string first;
  for (const auto& r : res) {
    if (r == "core") ++core;
    if (r == "tensor") ++tensor;
    if (r == "core" || r == "edge" || r == "tensor") continue;
    if (!bad++) first = r;
  }
  rep.add("R22 tensor and H0 force a tensor core", bad == 0,
          bad ? first : std::to_string(res.size()) + " perturbations; " + std::to_string(core) + " inside the core leave H0, " +
                           std::to_string(res.size() - core - tensor) + " outside it leave H0, " +
                           std::to_string(tensor) + " keep a tensor core");
}

void run_equivalent(VerifyReport& rep, const VerifyOptions&) {
  const std::vector<std::pair<std::string, Measure1D>> etas = {
      {"1/2 δ(1/2) + 1/2 δ1", Measure1D::dirac(Scalar(1, 2), Scalar(1, 2)) + Measure1D::dirac(Scalar(1), Scalar(1, 2))},
      {"1/3 δ(1/4) + 2/3 δ(3/4)", Measure1D::dirac(Scalar(1, 4), Scalar(1, 3)) + Measure1D::dirac(Scalar(3, 4), Scalar(2, 3))}};
  int bad = 0, total = 0;
  std::string first;
  for (const auto& [name, eta] : etas) {
    ExamParams p{Scalar(9, 10), Scalar(1, 2), Scalar(1, 2), eta};
    Scalar bound = exam_monomial_bound(p, 1);
    bool same = true;
    for (long n = 2; n <= 6; ++n) same = same && equal(exam_monomial_bound(p, n), bound);
    rep.add("bound independent of n, eta = " + name, same, "(x/a) / sqrt(‖1/t‖) = " + bound.str());
    for (const Scalar& f : {Scalar(1, 2), Scalar(9, 10), Scalar(99, 100), Scalar(101, 100), Scalar(11, 10), Scalar(3, 2)}) {
      p.y = bound * f;
      const bool expect = compare(f, Scalar(1)) != Sign::positive;
      for (long m = 1; m <= 3; ++m)
        for (long n = 1; n <= 3; ++n) {
          ++total;
          const Verdict v = monomial_subnormal(exam_tc(p), m, n);
          if (v.holds() != expect || v.status == Status::undecided) {
            if (!bad++)
              first = name + ", y = " + std::to_string(p.y.to_double()) + ", (m,n) = (" + std::to_string(m) + "," +
                      std::to_string(n) + "): " + status_str(v) + " " + v.detail;
          }
        }
      // W1 subnormal implies W0 subnormal.
      const auto orbits = monomial_summands(build_exam(p), 1, 2, 1);
      std::map<Point, Status> st;
      for (const auto& o : orbits) st[o.start] = is_subnormal(o.seq).verdict.status;
      if (st[{1, 0}] == Status::holds && st[{0, 0}] != Status::holds && !bad++) first = "W1 subnormal but W0 not";
    }
  }
  rep.add("monomials vs bound", bad == 0, bad ? first : std::to_string(total) + " (eta, y, m, n) cases agree");
}

void run_four(VerifyReport& rep, const VerifyOptions& opt) {
  const Measure1D leb = Measure1D::uniform(Scalar(1, 2), Scalar(3, 2));
  const Scalar beta1_sq = leb.moment(1);
  rep.add("beta_1 = 1", beta1_sq.is_exact() && beta1_sq.exact() == 1, "beta_1^2 = " + beta1_sq.str());
  const Scalar n = *leb.power_integral(-1);
  const double ln3 = std::log(3.0);
  rep.add("‖1/t‖ = ln 3", std::abs(n.to_double() - ln3) < 1e-12, "‖1/t‖ = " + n.str());
  const ExamParams p{Scalar(9, 10), Scalar(1, 2), Scalar(13, 25), leb};
  const ExamBounds b = exam_bounds(p);
  rep.add("s < y <= m", lt(b.s, p.y).value_or(false) && le(p.y, b.m).value_or(false),
          "s = " + std::to_string(b.s.to_double()) + ", m = " + std::to_string(b.m.to_double()));
  const TcData tc = exam_tc(p);
  const WeightField t = tc_field(tc, "exam");
  const Verdict h0 = screen_h0(tc);
  const Verdict hyp = is_k_hyponormal_pair(t, 1, 8, opt.exec);
  rep.add("(i) in H1", h0.holds() && hyp.holds(), "H0 " + status_str(h0) + "; hyponormal " + status_str(hyp) + ": " + hyp.detail);
  const Verdict sub = subnormal_tc(tc).verdict;
  rep.add("(ii) not in H_inf", sub.fails(), sub.detail);
  int ok = 0;
  std::string first;
  for (long m = 1; m <= 6; ++m)
    for (long k = 1; k <= 6; ++k) {
      const Verdict v = monomial_subnormal(tc, m, k);
      if (v.holds()) ++ok;
      else if (first.empty()) first = "(" + std::to_string(m) + "," + std::to_string(k) + "): " + v.detail;
    }
  rep.add("(iii) T1^m T2^n subnormal, m,n <= 6", ok == 36, ok == 36 ? "36/36 monomials" : first);
}

void run_thm4(VerifyReport& rep, const VerifyOptions& opt) {
  const int count = std::min(opt.instances, 50);
  const auto inst = random_flat_instances(opt.seed, count);
  int agree = 0, flagged = 0, holds = 0;
  std::string first;
  for (const auto& f : inst) {
    try {
      const Thm4Result r = thm4_subnormal(f);
      ++agree;
      holds += r.formula.holds();
      flagged += r.flag.has_value();
    } catch (const std::logic_error& e) {
      if (first.empty()) first = e.what();
    }
  }
  rep.add("min formula vs backward extension", agree == count,
          agree == count ? std::to_string(count) + " instances agree; " + std::to_string(holds) + " subnormal, " +
                               std::to_string(flagged) + " flagged by the informal contractivity constraint"
                         : first);
  int probes = 0, sharp = 0;
  const Scalar eps(1, 1000000000);
  for (FlatParams f : inst) {
    if (compare(f.eta1.atom_mass(f.b_sq), f.a_sq) == Sign::negative) continue;
    f.beta0_sq = Scalar(1, 1000000);
    const Scalar bound = thm4_bound_sq(f);
    if (bound.is_zero()) continue;
    ++probes;
    FlatParams lo = f, hi = f;
    lo.beta0_sq = bound * (Scalar(1) - eps) * (Scalar(1) - eps);
    hi.beta0_sq = bound * (Scalar(1) + eps) * (Scalar(1) + eps);
    if (thm4_subnormal(lo).pipeline.holds() && thm4_subnormal(hi).pipeline.fails()) ++sharp;
  }
  rep.add("boundary at (1 -/+ 1e-9) bound", probes > 0 && sharp == probes,
          std::to_string(sharp) + "/" + std::to_string(probes) + " probes flip across the bound");
  FlatParams ex;
  ex.a_sq = Scalar(1, 4);
  ex.b_sq = Scalar(1);
  ex.eta1 = Measure1D::dirac(Scalar(1));
  ex.xi = Measure1D::dirac(Scalar(0), Scalar(1, 4)) + Measure1D::dirac(Scalar(1), Scalar(3, 4));
  ex.beta0_sq = Scalar(1, 100);
  const Scalar b = thm4_bound_sq(ex);
  rep.add("worked instance", b.is_exact() && b.exact() == Rational(1, 3), "bound^2 = " + b.str());
}

void run_conjecture(VerifyReport& rep, const VerifyOptions& opt) {
  std::mt19937_64 g(opt.seed);
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const int trials = std::min(opt.instances, 12);
  int candidates = 0, tried = 0;
  std::string note;
  for (int i = 0; i < trials; ++i) {
    // R10 measure with atoms off a product grid, so the core is not of tensor form.
    std::vector<Measure2D::Term> terms;
    const int atoms = static_cast<int>(pick(2, 3));
    for (int j = 0; j < atoms; ++j)
      terms.push_back({Measure1D::dirac(Scalar(pick(1, 8), 8), Scalar(1, atoms)), Measure1D::dirac(Scalar(pick(1, 8), 8))});
    const Measure2D mu_m(terms);
    const Measure1D nu = Measure1D::dirac(Scalar(0), Scalar(1, 4)) + Measure1D::dirac(Scalar(pick(1, 8), 8), Scalar(3, 4));
    const Scalar n = *mu_m.inv_t_norm();
    // Just past the largest beta00^2 the extension admits.
    Scalar beta = Scalar(1) / n;
    for (long s = 1; s <= 64; s *= 2) {
      if (!backext2(beta, mu_m, nu).verdict.holds()) break;
      beta = beta * Scalar(2 * s + 1, 2 * s);
    }
    for (int step = 0; step < 8 && backext2(beta, mu_m, nu).verdict.holds(); ++step) beta = beta * Scalar(17, 16);
    while (true) {
      const Scalar smaller = beta * Scalar(15, 16);
      if (backext2(smaller, mu_m, nu).verdict.holds() || compare(smaller, Scalar(1, 1000)) == Sign::negative) break;
      beta = smaller;
    }
    if (backext2(beta, mu_m, nu).verdict.holds()) continue;
    ++tried;
    auto gamma = [mu_m, nu, beta](long a, long b) -> Scalar {
      if (b == 0) return nu.moment(a);
      return beta * mu_m.moment(a, b - 1);
    };
    FieldMeta meta;
    meta.origin = "conjecture probe";
    const WeightField t = WeightField::from_moments(gamma, meta);
    bool all = true;
    for (auto [m, k] : {std::pair{1L, 2L}, std::pair{2L, 1L}})
      for (const auto& s : power_pair(t, m, k))
        for (int kk = 1; kk <= 4 && all; ++kk)
          if (is_k_hyponormal_pair(s.field, kk, 2, opt.exec).fails()) all = false;
    if (all) {
      ++candidates;
      if (note.empty()) note = "first candidate: beta00^2 = " + beta.str() + ", R10 measure " + mu_m.str();
    }
  }
  const std::string verdict = candidates ? "open conjecture — candidate found (k-hyponormality ceiling k=4)"
                                         : "open conjecture — no counterexample found (k-hyponormality ceiling k=4)";
  rep.add("exploratory search", true,
          verdict + "; " + std::to_string(tried) + " non-subnormal pairs probed" + (note.empty() ? "" : "; " + note));
}

}  // namespace

const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names = {"firstmain", "powhyp", "thm1",  "pro1",      "tc_propagation",
                                                 "equivalent", "four",  "thm4",  "conjecture"};
  return names;
}

VerifyReport verify(const std::string& theorem, const VerifyOptions& opt) {
  VerifyReport rep;
  rep.theorem = theorem;
  rep.seed = opt.seed;
  if (theorem == "firstmain") run_firstmain(rep, opt);
  else if (theorem == "powhyp") run_powhyp(rep, opt);
  else if (theorem == "thm1") run_thm1(rep, opt, false);
  else if (theorem == "pro1") run_thm1(rep, opt, true);
  else if (theorem == "tc_propagation") run_tc_propagation(rep, opt);
  else if (theorem == "equivalent") run_equivalent(rep, opt);
  else if (theorem == "four") run_four(rep, opt);
  else if (theorem == "thm4") run_thm4(rep, opt);
  else if (theorem == "conjecture") run_conjecture(rep, opt);
  else throw std::invalid_argument("unknown theorem '" + theorem + "'");
  return rep;
}

}  // namespace shiftlab
