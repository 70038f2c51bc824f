#pragma once

#include "shiftlab/certificate.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/scalar.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// Squared weights for n >= prefix length, indexed by absolute n.
struct ClosedForm {
  std::function<Scalar(long)> f;
  std::string name;
  // The tail is nondecreasing from this index on.
  std::optional<long> monotone_from;
  std::optional<Scalar> bound;
};

// One-variable weighted shift, stored by its squared weights.
//
// Tail kinds for n >= P = prefix length:
//   constant     alpha_n^2 = c
//   measure      the tail is the shift with Berger measure mu:
//                alpha_{P+j}^2 = gamma_{j+1}(mu) / gamma_j(mu)
//   closed_form  alpha_n^2 = f(n)
class WeightSeq {
 public:
  enum class TailKind { constant, measure, closed_form };

  static WeightSeq constant(std::vector<Scalar> prefix, const Scalar& c);
  static WeightSeq from_measure(std::vector<Scalar> prefix, const Measure1D& mu);
  static WeightSeq closed_form(std::vector<Scalar> prefix, ClosedForm tail);
  // The shift whose Berger measure is mu; mu is attached as berger().
  static WeightSeq subnormal(const Measure1D& mu);

  WeightSeq& with_berger(const Measure1D& mu);

  const std::vector<Scalar>& prefix() const { return prefix_; }
  TailKind tail_kind() const { return kind_; }
  const Scalar& tail_constant() const { return c_; }
  const Measure1D& tail_measure() const { return mu_; }
  const ClosedForm& tail_closed() const { return cf_; }
  const std::optional<Measure1D>& berger() const { return berger_; }

  Scalar weight_sq(long n) const;
  Scalar gamma(long k) const;
  // Bound on the squared weights, when the tail permits one.
  std::optional<Scalar> bound_sq() const;
  Track track(long upto) const;

 private:
  std::vector<Scalar> prefix_;
  TailKind kind_ = TailKind::constant;
  Scalar c_{1};
  Measure1D mu_;
  ClosedForm cf_;
  std::optional<Measure1D> berger_;
};

inline Scalar gamma(const WeightSeq& w, long k) { return w.gamma(k); }

// U_+ and S_a = shift(a, 1, 1, ...), given a^2.
WeightSeq unilateral();
WeightSeq s_shift(const Scalar& a_sq);

// k = 1 by monotonicity of squared weights, k >= 2 by psd_check of the
// Hankel matrices (gamma_{n+i+j})_{0<=i,j<=k} for n <= depth.
Verdict is_k_hyponormal(const WeightSeq& w, int k, long depth = 10);

// The packet shift alpha(l:i): squared weights prod_{m<l} alpha^2_{l j+i+m}.
WeightSeq power_packets(const WeightSeq& w, long l, long i);

// Drops the first h weights.
WeightSeq restrict(const WeightSeq& w, long h);

struct BackExtResult {
  Verdict verdict;
  std::optional<Measure1D> measure;
};

// Prepend a weight with square x0_sq to the shift with Berger measure mu_L.
BackExtResult backward_extend_check(const Scalar& x0_sq, const Measure1D& mu_L);

// 1 / ||1/t||, the only squared weight that extends mu without an atom at 0.
Scalar forced_weight(const Measure1D& mu);

// Subnormality by backward extension from the tail measure. Closed-form
// tails without an attached Berger measure are undecided.
BackExtResult is_subnormal(const WeightSeq& w);

}  // namespace shiftlab
