#include "shiftlab/bisect.hpp"
#include "shiftlab/families.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

const Scalar kHalf(1, 2);

Measure1D atom_if(const Scalar& c, const Scalar& w) {
  return w.is_zero() ? Measure1D() : Measure1D::dirac(c, w);
}

std::string region_of(const Figure0Class& c) {
  if (c.in_hinf) return "H_inf";
  if (c.in_h2) return "H2_only";
  if (c.in_h1) return "H1_only";
  return "not_H1";
}

void finish_labels(Figure0Class& c) {
  c.region = region_of(c);
  c.label = c.region + (c.power21_in_h1 ? ", power21_in_H1" : ", power21_not_H1");
}

}  // namespace

void Figure0Params::validate() const {
  if (sign(a_sq) != Sign::positive || compare(a_sq, Scalar(1)) == Sign::positive)
    throw std::invalid_argument("figure0: need 0 < a <= 1");
  if (sign(kappa_sq) != Sign::positive || compare(kappa_sq, Scalar(1)) == Sign::positive)
    throw std::invalid_argument("figure0: need 0 < kappa <= 1");
}

TcData figure0_tc(const Figure0Params& p) {
  p.validate();
  const Scalar k = p.kappa_sq;
  TcData tc;
  tc.x_sq = p.a_sq;
  tc.mu_x = atom_if(Scalar(0), Scalar(1) - k) + Measure1D::density(Scalar(0), Scalar(1), k * kHalf) +
            Measure1D::dirac(Scalar(1), k * kHalf);
  tc.eta_y = atom_if(Scalar(0), Scalar(1) - k) + Measure1D::dirac(Scalar(1), k);
  tc.xi = Measure1D::dirac(Scalar(1));
  tc.eta = Measure1D::dirac(Scalar(1));
  return tc;
}

WeightField build_figure0(const Figure0Params& p) { return tc_field(figure0_tc(p), "figure0"); }

const char* to_string(Curve c) {
  switch (c) {
    case Curve::h1: return "h1";
    case Curve::h2: return "h2";
    case Curve::h21: return "h21";
    case Curve::hinf: return "hinf";
  }
  return "?";
}

std::optional<Curve> parse_curve(std::string_view s) {
  for (Curve c : {Curve::h1, Curve::h2, Curve::h21, Curve::hinf})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

const char* curve_domain(Curve c) {
  switch (c) {
    case Curve::h1: return "0 < a <= (2/3)^(1/4)";
    case Curve::h21: return "0 < a <= (3/5)^(1/4)";
    case Curve::h2:
    case Curve::hinf: return "0 < a <= sqrt(1/2)";
  }
  return "?";
}

bool in_domain(Curve c, const Scalar& a_sq) {
  if (sign(a_sq) != Sign::positive) return false;
  switch (c) {
    case Curve::h1: return compare(a_sq * a_sq, Scalar(2, 3)) != Sign::positive;
    case Curve::h21: return compare(a_sq * a_sq, Scalar(3, 5)) != Sign::positive;
    case Curve::h2:
    case Curve::hinf: return compare(a_sq, kHalf) != Sign::positive;
  }
  return false;
}

Scalar threshold_sq(Curve c, const Scalar& a) {
  if (!in_domain(c, a))
    throw std::domain_error(std::string(to_string(c)) + " is defined for " + curve_domain(c) + "; got a^2 = " + a.str());
  switch (c) {
    case Curve::h1: return (Scalar(32) - Scalar(48) * a * a) / (Scalar(59) - Scalar(72) * a);
    case Curve::h2: return (Scalar(81) - Scalar(144) * a) / (Scalar(157) - Scalar(360) * a + Scalar(144) * a * a);
    case Curve::h21: return Scalar(9) * (Scalar(3) - Scalar(5) * a * a) / (Scalar(47) - Scalar(60) * a);
    case Curve::hinf: return Scalar(1) / (Scalar(2) - a);
  }
  throw std::logic_error("unknown curve");
}

Scalar threshold(Curve c, const Scalar& a_sq) { return sqrt(threshold_sq(c, a_sq)); }

namespace {

// h1^2 < h21^2 at a; true near 0, false at the end of the h21 domain.
bool h1_below_h21(const Scalar& a) {
  const Scalar a2 = a * a;
  return compare(threshold_sq(Curve::h1, a2), threshold_sq(Curve::h21, a2)) == Sign::negative;
}

}  // namespace

Scalar a_int(const Scalar& tol) { return bisect_threshold(h1_below_h21, Scalar(1, 100), Scalar(22, 25), tol); }

int a_int_sign_changes(long points) {
  int changes = 0;
  std::optional<bool> last;
  for (long i = 1; i <= points; ++i) {
    const Scalar a = Scalar(22, 25) * Scalar(i, points);
    const Scalar a2 = a * a;
    const Sign s = compare(threshold_sq(Curve::h1, a2), threshold_sq(Curve::h21, a2));
    if (s == Sign::zero || s == Sign::tie) continue;
    const bool neg = s == Sign::negative;
    if (last && *last != neg) ++changes;
    last = neg;
  }
  return changes;
}

long figure0_column_breach(const Scalar& a_sq) {
  if (compare(a_sq, kHalf) != Sign::positive) throw std::domain_error("column breach needs a^2 > 1/2");
  // 2a^2 (k+1)/(k+2) > 1  <=>  k (2a^2 - 1) > 2 - 2a^2, for k >= 1.
  const Scalar q = (Scalar(2) - Scalar(2) * a_sq) / (Scalar(2) * a_sq - Scalar(1));
  long k;
  if (q.is_exact()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.exact().get_num_mpz_t(), q.exact().get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("column breach index too large");
    k = f.get_si() + 1;
  } else {
    k = static_cast<long>(q.to_double()) + 1;
  }
  return std::max(1L, k);
}

Figure0Class predict_figure0(const Figure0Params& p) {
  p.validate();
  Figure0Class c;
  if (compare(p.a_sq, kHalf) != Sign::positive) {
    auto below = [&](Curve cv) { return compare(p.kappa_sq, threshold_sq(cv, p.a_sq)) != Sign::positive; };
    c.in_h1 = below(Curve::h1);
    c.in_h2 = below(Curve::h2);
    c.in_hinf = below(Curve::hinf);
    c.power21_in_h1 = below(Curve::h21);
  }
  finish_labels(c);
  return c;
}

namespace {

Verdict in_h_k(const WeightField& t, const Verdict& h0, int k, long depth, Exec exec) {
  Verdict hyp = is_k_hyponormal_pair(t, k, depth, exec);
  Verdict v;
  v.status = both(h0.status, hyp.status);
  v.track = hyp.track == Track::approx || h0.track == Track::approx ? Track::approx : Track::exact;
  v.detail = hyp.fails() || h0.holds() ? hyp.detail : h0.detail;
  v.point = hyp.point;
  v.chain = {{"H0", h0}, {std::to_string(k) + "-hyponormal", hyp}};
  return v;
}

void agree(const std::string& what, bool predicted, const Verdict& tester, const Figure0Params& p) {
  if (tester.status == Status::undecided || tester.holds() != predicted) {
    throw std::logic_error("figure0 a^2 = " + p.a_sq.str() + ", kappa^2 = " + p.kappa_sq.str() + ": " + what +
                           " closed form says " + (predicted ? "yes" : "no") + ", tester says " +
                           to_string(tester.status) + " (" + tester.detail + ")");
  }
}

}  // namespace

Figure0Class classify_figure0(const Figure0Params& p, Exec exec) {
  Figure0Class c = predict_figure0(p);
  const TcData tc = figure0_tc(p);
  const WeightField t = tc_field(tc, "figure0");
  const bool wide = compare(p.a_sq, kHalf) == Sign::positive;
  const long depth = wide ? std::max(8L, figure0_column_breach(p.a_sq)) : 8;

  const Verdict h0 = screen_h0(tc);
  const Verdict h1 = in_h_k(t, h0, 1, depth, exec);
  Verdict h2;
  if (h1.fails()) {
    h2 = fails_verdict("not in H1: " + h1.detail);
  } else {
    h2 = in_h_k(t, h0, 2, depth, exec);
  }
  const Verdict hinf = subnormal_tc(tc).verdict;

  Verdict p21 = holds_verdict("every summand of (T1^2, T2) in H1");
  for (const auto& s : power_pair(t, 2, 1)) {
    const Verdict sh0 = screen_h0(*s.field.meta().tc);
    const Verdict v = in_h_k(s.field, sh0, 1, depth / 2 + 1, exec);
    p21.chain.push_back({"residue " + std::to_string(s.i), v});
    if (v.status != Status::holds && p21.status != Status::fails) {
      p21.status = v.status;
      p21.detail = "residue " + std::to_string(s.i) + ": " + v.detail;
    }
  }

  agree("H1", c.in_h1, h1, p);
  agree("H2", c.in_h2, h2, p);
  agree("H_inf", c.in_hinf, hinf, p);
  agree("power (2,1) in H1", c.power21_in_h1, p21, p);
  c.certificates = {{"H1", h1}, {"H2", h2}, {"H_inf", hinf}, {"power21 H1", p21}};
  return c;
}

}  // namespace shiftlab
