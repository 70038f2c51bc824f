#pragma once

#include "shiftlab/certificate.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/shift2.hpp"

#include <optional>
#include <string>

namespace shiftlab {

// A 2-variable shift whose core is of tensor form, described by measures:
//
//   k2                                          moments
//   ^   eta_y   | x^2 at k1=0, xi in the core    gamma(k1,0)  = ∫ s^k1 d mu_x
//   |   column  | eta in the core                gamma(0,k2)  = ∫ t^k2 d eta_y
//   +-----------+--------> k1                    gamma(k1,k2) = C gamma_{k1-1}(xi) gamma_{k2-1}(eta)
//       row 0: mu_x                              with C = y0^2 x^2, y0^2 = gamma_1(eta_y)
//
// xi is the Berger measure of shift(alpha_(1,1), alpha_(2,1), ...) and eta of
// shift(beta_(1,1), beta_(1,2), ...).
struct TcData {
  Scalar x_sq;
  Measure1D mu_x;
  Measure1D eta_y;
  Measure1D xi;
  Measure1D eta;

  Scalar y0_sq() const { return eta_y.moment(1); }
  Scalar c() const { return y0_sq() * x_sq; }
  Scalar gamma(long k1, long k2) const;
  // ‖1/s‖ of xi; nullopt when infinite.
  std::optional<Scalar> r() const { return xi.power_integral(-1); }
  // Throws std::invalid_argument unless x_sq > 0, xi and eta are probability
  // measures, and mu_x, eta_y have mass 1 and are nonnegative off 0.
  void validate() const;
};

// The field of tc with its flat axes, tensor core and subnormal corners.
WeightField tc_field(const TcData& tc, const std::string& origin = "tc");

// Parameters of the residue (i,j) summand of (T1^m, T2^n).
TcData tc_power_summand(const TcData& tc, long m, long n, long i, long j);

// R10 subnormal: (eta_y)_1 >= x^2 r eta.
Verdict r10_subnormal(const TcData& tc);
// R01 subnormal: (mu_x)_1 >= beta^2_(1,0) ‖1/t‖_eta xi.
Verdict r01_subnormal(const TcData& tc);
// Berger measure of R10 when it is subnormal:
// x^2 xi~ × eta + δ0 × ((eta_y)_1 - x^2 r eta), xi~ = xi / s.
Measure2D tc_mu_m(const TcData& tc);

// T1 and T2 subnormal, i.e. T in H0, decided row by row and column by column.
Verdict screen_h0(const TcData& tc);
// Uses attached TC data when present; rect fields are decided exactly by
// backward extension of each row and column; otherwise k-hyponormality up to
// k = 4 on the window screens the slices and a clean screen is undecided.
Verdict screen_h0(const WeightField& t, long depth = 8);

// R10 by r10_subnormal, then backward extension by the bottom row.
BackExt2Result subnormal_tc(const TcData& tc);
// Rejects fields without TC data.
BackExt2Result subnormal_tc(const WeightField& t);

struct PowerVertical {
  // (T1, T2^2) on H0 (even rows) and H1 (odd rows), from the direct formulas.
  Verdict h0, h1, combined;
  // The same restrictions decided through tc_power_summand + subnormal_tc.
  Verdict generic_h0, generic_h1;
};

PowerVertical power_vertical_subnormal(const TcData& tc);

// (T1^m, T2^n) subnormal: every summand through subnormal_tc.
Verdict power_subnormal(const TcData& tc, long m, long n);

// T1^m T2^n subnormal. Orbits starting within `reach` are decided by
// backward extension; the infinite families of starts on the axes are
// certified with moment_dominated.
Verdict monomial_subnormal(const TcData& tc, long m, long n, long reach = 6);

// The TC data attached to t, after checking its moments against the field
// up to total degree 6.
const TcData& extract_tc(const WeightField& t);

}  // namespace shiftlab
