#include "shiftlab/shift1.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

void check_positive(const std::vector<Scalar>& prefix) {
  for (const auto& w : prefix)
    if (sign(w) != Sign::positive) throw std::invalid_argument("squared weights must be positive, got " + w.str());
}

}  // namespace

WeightSeq WeightSeq::constant(std::vector<Scalar> prefix, const Scalar& c) {
  check_positive(prefix);
  if (sign(c) != Sign::positive) throw std::invalid_argument("constant tail must be positive");
  WeightSeq w;
  w.prefix_ = std::move(prefix);
  w.kind_ = TailKind::constant;
  w.c_ = c;
  return w;
}

WeightSeq WeightSeq::from_measure(std::vector<Scalar> prefix, const Measure1D& mu) {
  check_positive(prefix);
  if (mu.nonnegative().status == Status::fails) throw std::invalid_argument("tail measure is signed");
  if (sign(mu.moment(1)) != Sign::positive) throw std::invalid_argument("tail measure has no mass off 0");
  WeightSeq w;
  w.prefix_ = std::move(prefix);
  w.kind_ = TailKind::measure;
  w.mu_ = mu;
  return w;
}

WeightSeq WeightSeq::closed_form(std::vector<Scalar> prefix, ClosedForm tail) {
  check_positive(prefix);
  if (!tail.f) throw std::invalid_argument("closed_form tail needs a generator");
  WeightSeq w;
  w.prefix_ = std::move(prefix);
  w.kind_ = TailKind::closed_form;
  w.cf_ = std::move(tail);
  return w;
}

WeightSeq WeightSeq::subnormal(const Measure1D& mu) {
  WeightSeq w = from_measure({}, mu);
  w.berger_ = mu;
  return w;
}

WeightSeq& WeightSeq::with_berger(const Measure1D& mu) {
  berger_ = mu;
  return *this;
}

Scalar WeightSeq::weight_sq(long n) const {
  if (n < 0) throw std::out_of_range("negative weight index");
  const long p = static_cast<long>(prefix_.size());
  if (n < p) return prefix_[n];
  switch (kind_) {
    case TailKind::constant: return c_;
    case TailKind::measure: return mu_.moment(n - p + 1) / mu_.moment(n - p);
    case TailKind::closed_form: {
      Scalar v = cf_.f(n);
      if (sign(v) != Sign::positive) throw std::domain_error(cf_.name + ": nonpositive squared weight");
      return v;
    }
  }
  return c_;
}

Scalar WeightSeq::gamma(long k) const {
  if (k < 0) throw std::out_of_range("negative moment index");
  const long p = static_cast<long>(prefix_.size());
  Scalar g(1);
  for (long n = 0; n < std::min(k, p); ++n) g *= prefix_[n];
  if (k <= p) return g;
  switch (kind_) {
    case TailKind::constant: return g * c_.pow(k - p);
    case TailKind::measure: return g * mu_.moment(k - p) / mu_.mass();
    case TailKind::closed_form:
      for (long n = p; n < k; ++n) g *= weight_sq(n);
      return g;
  }
  return g;
}

std::optional<Scalar> WeightSeq::bound_sq() const {
  std::optional<Scalar> b;
  switch (kind_) {
    case TailKind::constant: b = c_; break;
    case TailKind::measure: {
      Scalar top(0);
      for (const auto& a : mu_.atoms()) top = max(top, a.c);
      for (const auto& pc : mu_.pieces()) top = max(top, pc.b);
      b = top;
      break;
    }
    case TailKind::closed_form: b = cf_.bound; break;
  }
  if (!b) return b;
  for (const auto& w : prefix_) b = max(*b, w);
  return b;
}

Track WeightSeq::track(long upto) const {
  for (long n = 0; n < upto; ++n)
    if (!weight_sq(n).is_exact()) return Track::approx;
  return Track::exact;
}

WeightSeq unilateral() { return WeightSeq::subnormal(Measure1D::dirac(Scalar(1))); }

WeightSeq s_shift(const Scalar& a_sq) {
  WeightSeq w = WeightSeq::constant({a_sq}, Scalar(1));
  if (compare(a_sq, Scalar(1)) != Sign::positive)
    w.with_berger(Measure1D::dirac(Scalar(0), Scalar(1) - a_sq) + Measure1D::dirac(Scalar(1), a_sq));
  return w;
}

}  // namespace shiftlab
