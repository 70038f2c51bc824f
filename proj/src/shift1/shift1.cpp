#include "shiftlab/shift1.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

long ceil_div(long a, long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

SymMatrix hankel(const WeightSeq& w, long n, int k) {
  SymMatrix h(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) h.set(i, j, w.gamma(n + i + j));
  return h;
}

Measure1D normalized_restriction(const Measure1D& mu, long h) {
  if (h == 0) return mu.scaled(Scalar(1) / mu.mass());
  return mu.t_weight(h, mu.moment(static_cast<unsigned long>(h)));
}

}  // namespace

Verdict is_k_hyponormal(const WeightSeq& w, int k, long depth) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const long p = static_cast<long>(w.prefix().size());
  long scan = depth + 1;
  bool conditional = true;
  std::string cert;
  switch (w.tail_kind()) {
    case WeightSeq::TailKind::constant:
      scan = k == 1 ? p : p + 1;
      conditional = false;
      cert = "constant tail";
      break;
    case WeightSeq::TailKind::measure:
      scan = p;
      conditional = false;
      cert = "measure tail";
      break;
    case WeightSeq::TailKind::closed_form:
      if (k == 1 && w.tail_closed().monotone_from) {
        scan = std::max(p, *w.tail_closed().monotone_from);
        conditional = false;
        cert = "declared monotone tail";
      }
      break;
  }
  if (conditional && w.berger()) {
    conditional = false;
    cert = "attached Berger measure";
  }
  Verdict v;
  v.track = Track::exact;
  for (long n = 0; n < scan; ++n) {
    if (k == 1) {
      Scalar a = w.weight_sq(n), b = w.weight_sq(n + 1);
      if (!a.is_exact() || !b.is_exact()) v.track = Track::approx;
      Sign s = compare(a, b);
      if (s == Sign::positive) {
        Verdict f = fails_verdict("alpha_" + std::to_string(n) + "^2 > alpha_" + std::to_string(n + 1) + "^2");
        f.track = v.track;
        f.point = Point{n, 0};
        return f;
      }
      if (s == Sign::tie) {
        Verdict u = undecided_verdict("weights within tolerance at n = " + std::to_string(n));
        u.track = Track::approx;
        u.point = Point{n, 0};
        return u;
      }
    } else {
      SymMatrix h = hankel(w, n, k);
      PsdVerdict pv = psd_check(h);
      if (pv.track == Track::approx) v.track = Track::approx;
      if (pv.status != Status::holds) {
        Verdict f;
        f.status = pv.status;
        f.track = pv.track;
        f.detail = pv.status == Status::fails ? "Hankel matrix not psd at n = " + std::to_string(n)
                                              : "Hankel pivot within tolerance at n = " + std::to_string(n);
        f.point = Point{n, 0};
        f.matrix = h;
        f.psd = pv;
        return f;
      }
    }
  }
  if (conditional) {
    v.status = Status::undecided;
    v.detail = "no violation up to n = " + std::to_string(scan - 1);
    v.truncated_at = scan - 1;
    return v;
  }
  v.detail = "checked n < " + std::to_string(scan) + "; " + cert;
  return v;
}

WeightSeq power_packets(const WeightSeq& w, long l, long i) {
  if (l < 1) throw std::invalid_argument("packet length must be >= 1");
  if (i < 0 || i >= l) throw std::out_of_range("packet offset must lie in [0, l)");
  const long p = static_cast<long>(w.prefix().size());
  const long jj = ceil_div(p - i, l);
  auto packet = [&w, l, i](long j) {
    Scalar g(1);
    for (long m = 0; m < l; ++m) g *= w.weight_sq(l * j + i + m);
    return g;
  };
  std::vector<Scalar> prefix;
  for (long j = 0; j < jj; ++j) prefix.push_back(packet(j));
  WeightSeq out;
  switch (w.tail_kind()) {
    case WeightSeq::TailKind::constant: out = WeightSeq::constant(prefix, w.tail_constant().pow(l)); break;
    case WeightSeq::TailKind::measure: {
      const long h = l * jj + i - p;
      out = WeightSeq::from_measure(prefix, normalized_restriction(w.tail_measure(), h).power(Rational(l)));
      break;
    }
    case WeightSeq::TailKind::closed_form: {
      ClosedForm cf;
      const ClosedForm& src = w.tail_closed();
      cf.name = src.name + " packets(" + std::to_string(l) + ":" + std::to_string(i) + ")";
      cf.f = [src, l, i](long j) {
        Scalar g(1);
        for (long m = 0; m < l; ++m) g *= src.f(l * j + i + m);
        return g;
      };
      if (src.monotone_from) cf.monotone_from = ceil_div(*src.monotone_from - i, l);
      if (src.bound) cf.bound = src.bound->pow(l);
      out = WeightSeq::closed_form(prefix, cf);
      break;
    }
  }
  if (w.berger()) out.with_berger(normalized_restriction(*w.berger(), i).power(Rational(l)));
  return out;
}

WeightSeq restrict(const WeightSeq& w, long h) {
  if (h < 0) throw std::invalid_argument("restriction depth must be >= 0");
  const long p = static_cast<long>(w.prefix().size());
  std::vector<Scalar> prefix;
  for (long n = h; n < p; ++n) prefix.push_back(w.prefix()[n]);
  WeightSeq out;
  switch (w.tail_kind()) {
    case WeightSeq::TailKind::constant: out = WeightSeq::constant(prefix, w.tail_constant()); break;
    case WeightSeq::TailKind::measure:
      out = WeightSeq::from_measure(prefix, normalized_restriction(w.tail_measure(), std::max(0L, h - p)));
      break;
    case WeightSeq::TailKind::closed_form: {
      ClosedForm cf = w.tail_closed();
      auto f = cf.f;
      cf.f = [f, h](long n) { return f(n + h); };
      if (cf.monotone_from) cf.monotone_from = std::max(0L, *cf.monotone_from - h);
      cf.name += " restricted by " + std::to_string(h);
      out = WeightSeq::closed_form(prefix, cf);
      break;
    }
  }
  if (w.berger()) out.with_berger(normalized_restriction(*w.berger(), h));
  return out;
}

BackExtResult backward_extend_check(const Scalar& x0_sq, const Measure1D& mu_L) {
  if (mu_L.is_probability() != Status::holds) throw std::invalid_argument("backward extension needs a probability measure");
  if (sign(x0_sq) != Sign::positive) throw std::invalid_argument("squared weight must be positive");
  BackExtResult r;
  auto n = mu_L.inv_t_norm();
  if (!n) {
    r.verdict = fails_verdict(mu_L.atom_mass(Scalar(0)).is_zero() ? "1/t is not integrable" : "1/t is not integrable: atom at 0");
    return r;
  }
  const Scalar used = x0_sq * *n;
  Sign s = compare(used, Scalar(1));
  if (s == Sign::positive) {
    r.verdict = fails_verdict("x0^2 ||1/t|| = " + used.str() + " > 1");
    r.verdict.track = used.track();
    return r;
  }
  if (s == Sign::tie) {
    r.verdict = undecided_verdict("x0^2 ||1/t|| within tolerance of 1");
    r.verdict.track = Track::approx;
    return r;
  }
  Measure1D mu = mu_L.t_weight(-1, Scalar(1) / x0_sq) + Measure1D::dirac(Scalar(0), Scalar(1) - used);
  MeasureVerdict nn = mu.nonnegative();
  if (nn.status != Status::holds) {
    r.verdict = from_measure(nn, "extended measure");
    return r;
  }
  r.verdict = holds_verdict("x0^2 ||1/t|| = " + used.str() + " <= 1");
  r.verdict.track = used.track();
  r.measure = std::move(mu);
  return r;
}

Scalar forced_weight(const Measure1D& mu) {
  auto n = mu.inv_t_norm();
  if (!n) throw std::domain_error("forced_weight: 1/t is not integrable");
  return Scalar(1) / *n;
}

BackExtResult is_subnormal(const WeightSeq& w) {
  BackExtResult r;
  if (w.berger()) {
    r.verdict = holds_verdict("attached Berger measure");
    r.measure = w.berger();
    return r;
  }
  Measure1D cur;
  switch (w.tail_kind()) {
    case WeightSeq::TailKind::constant: cur = Measure1D::dirac(w.tail_constant()); break;
    case WeightSeq::TailKind::measure: cur = w.tail_measure().scaled(Scalar(1) / w.tail_measure().mass()); break;
    case WeightSeq::TailKind::closed_form:
      r.verdict = undecided_verdict("closed-form tail without a Berger measure");
      return r;
  }
  Track track = cur.track();
  for (long n = static_cast<long>(w.prefix().size()) - 1; n >= 0; --n) {
    BackExtResult step = backward_extend_check(w.prefix()[n], cur);
    if (step.verdict.track == Track::approx) track = Track::approx;
    if (!step.verdict.holds()) {
      step.verdict.detail = "backward extension at n = " + std::to_string(n) + ": " + step.verdict.detail;
      step.verdict.point = Point{n, 0};
      return step;
    }
    cur = *step.measure;
  }
  r.verdict = holds_verdict("backward extensions through the prefix");
  r.verdict.track = track;
  r.measure = cur;
  return r;
}

}  // namespace shiftlab
