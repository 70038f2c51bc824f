#include "shiftlab/families.hpp"

#include <stdexcept>

namespace shiftlab {

void ExamParams::validate() const {
  if (!(sign(a) == Sign::positive && compare(a, x) == Sign::negative && compare(x, Scalar(1)) == Sign::negative))
    throw std::invalid_argument("exam: need 0 < a < x < 1");
  if (sign(y) != Sign::positive) throw std::invalid_argument("exam: need y > 0");
  if (eta.nonnegative().status == Status::fails || eta.is_probability() != Status::holds)
    throw std::invalid_argument("exam: eta must be a probability measure");
  if (!eta.power_integral(-1)) throw std::invalid_argument("exam: ‖1/t‖ of eta must be finite");
}

TcData exam_tc(const ExamParams& p) {
  p.validate();
  const Scalar x2 = p.x * p.x, y2 = p.y * p.y;
  const Scalar n = *p.eta.power_integral(-1);
  TcData tc;
  tc.x_sq = p.a * p.a;
  tc.mu_x = Measure1D::dirac(Scalar(0), Scalar(1) - x2) + Measure1D::dirac(Scalar(1), x2);
  const Scalar rest = Scalar(1) - y2 * n;
  tc.eta_y = p.eta.t_weight(-1, Scalar(1)).scaled(y2);
  if (!rest.is_zero()) tc.eta_y = tc.eta_y + Measure1D::dirac(Scalar(0), rest);
  tc.xi = Measure1D::dirac(Scalar(1));
  tc.eta = p.eta;
  return tc;
}

WeightField build_exam(const ExamParams& p) { return tc_field(exam_tc(p), "exam"); }

ExamBounds exam_bounds(const ExamParams& p) {
  p.validate();
  const Scalar x2 = p.x * p.x, a2 = p.a * p.a;
  const Scalar inv_n = Scalar(1) / *p.eta.power_integral(-1);
  const Scalar beta1_sq = p.eta.moment(1);
  const Scalar hyp_sq = beta1_sq * x2 * (Scalar(1) - x2) / (x2 + a2 * a2 - Scalar(2) * a2 * x2);
  ExamBounds b;
  b.m = sqrt(min(hyp_sq, inv_n));
  b.s = sqrt(inv_n * (Scalar(1) - x2) / (Scalar(1) - a2));
  return b;
}

Scalar exam_monomial_bound(const ExamParams& p, long n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("monomial bound needs n >= 1");
  const Scalar g = p.eta.moment(static_cast<unsigned long>(n - 1));
  const Measure1D eta_n = p.eta.t_weight(n - 1, g).power(Rational(n));
  const Scalar inv = Scalar(1) / *eta_n.power_integral(-1);
  return p.x / p.a * sqrt(inv / g);
}

}  // namespace shiftlab
