#include "shiftlab/families.hpp"

#include <stdexcept>

namespace shiftlab {

Scalar FlatParams::inv_norm() const {
  auto n = eta1.power_integral(-1);
  if (!n) throw std::invalid_argument("flat: ‖1/t‖ of eta1 is infinite");
  return *n;
}

Measure1D FlatParams::eta() const {
  const Scalar rest = Scalar(1) - beta0_sq * inv_norm();
  Measure1D out = eta1.t_weight(-1, Scalar(1)).scaled(beta0_sq);
  return rest.is_zero() ? out : out + Measure1D::dirac(Scalar(0), rest);
}

void FlatParams::validate() const {
  if (sign(a_sq) != Sign::positive || sign(b_sq) != Sign::positive || sign(beta0_sq) != Sign::positive)
    throw std::invalid_argument("flat: a, b and beta_0 must be positive");
  for (const Measure1D* m : {&xi, &eta1})
    if (m->nonnegative().status == Status::fails || m->is_probability() != Status::holds)
      throw std::invalid_argument("flat: xi and eta1 must be probability measures");
  if (compare(a_sq / b_sq, inv_norm()) != Sign::negative) throw std::invalid_argument("flat: need a^2/b^2 < ‖1/t‖_eta1");
}

std::optional<long> FlatParams::contractivity_breach(long depth) const {
  Scalar lhs = a_sq;
  for (long n = 1; n <= depth; ++n) {
    lhs *= b_sq;
    if (compare(lhs, eta1.moment(static_cast<unsigned long>(n))) != Sign::negative) return n;
  }
  return std::nullopt;
}

TcData flat_tc(const FlatParams& p) {
  p.validate();
  TcData tc;
  tc.x_sq = p.a_sq;
  tc.mu_x = p.xi;
  tc.eta_y = p.eta();
  tc.xi = Measure1D::dirac(Scalar(1));
  tc.eta = Measure1D::dirac(p.b_sq);
  return tc;
}

WeightField build_flat(const FlatParams& p) { return tc_field(flat_tc(p), "flat"); }

Scalar thm4_bound_sq(const FlatParams& p) {
  p.validate();
  const Scalar n = p.inv_norm();
  const Scalar ab = p.a_sq / p.b_sq;
  // The first term is beta_0^2 eta1({b^2}) / a^2: it never binds when
  // eta1({b^2}) >= a^2 and excludes every beta_0 otherwise.
  if (compare(p.eta1.atom_mass(p.b_sq), p.a_sq) == Sign::negative) return Scalar(0);
  Scalar m = p.p() / (n - ab);
  m = min(m, p.q() / ab);
  m = min(m, Scalar(1) / n);
  return m;
}

Thm4Result thm4_subnormal(const FlatParams& p) {
  Thm4Result out;
  out.bound_sq = thm4_bound_sq(p);
  const Sign s = compare(p.beta0_sq, out.bound_sq);
  if (s == Sign::tie) {
    out.formula = undecided_verdict("beta_0^2 ties with the bound");
  } else if (s == Sign::positive) {
    out.formula = fails_verdict("beta_0^2 = " + p.beta0_sq.str() + " exceeds the bound " + out.bound_sq.str());
  } else {
    out.formula = holds_verdict("beta_0^2 <= " + out.bound_sq.str());
  }

  const Measure1D at_b = Measure1D::dirac(p.b_sq, p.a_sq);
  const Measure2D mu_m = Measure2D::product(Measure1D::dirac(Scalar(1)), at_b) +
                         Measure2D::product(Measure1D::dirac(Scalar(0)), p.eta1 - at_b);
  const Verdict r10 = from_measure(mu_m.nonnegative(), "R10 measure nonnegative");
  if (!r10.holds()) {
    out.pipeline = r10;
  } else {
    out.pipeline = subnormal_backext2(build_flat(p), mu_m, p.xi).verdict;
    out.pipeline.chain.insert(out.pipeline.chain.begin(), {"R10", r10});
  }
  if (out.formula.status != Status::undecided && out.pipeline.status != Status::undecided &&
      out.formula.status != out.pipeline.status)
    throw std::logic_error("thm4: min formula says " + std::string(to_string(out.formula.status)) + ", pipeline says " +
                           to_string(out.pipeline.status) + " (" + out.pipeline.detail + ")");
  if (auto n = p.contractivity_breach())
    out.flag = "a b^n < beta_1 ... beta_n fails at n = " + std::to_string(*n);
  return out;
}

}  // namespace shiftlab
