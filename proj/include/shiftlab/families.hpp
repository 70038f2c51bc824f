#pragma once

#include "shiftlab/shift2.hpp"
#include "shiftlab/tc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

// ---------------------------------------------------------------------------
// Figure-0 family
//
//   k2
//   ^   1 |  1    1    1            alpha: bottom row alpha_n, then a, 1, 1, ...
//   |   1 |  a    1    1            beta:  kappa, a kappa/alpha_0,
//   |     | kappa  a k/a0  a k/(a0 a1)   a kappa/(alpha_0 alpha_1), ...
//   +-----+--------------------------> k1
//        alpha_0 = kappa sqrt(3/4), alpha_n^2 = (n+1)(n+3)/(n+2)^2
//
// Parameters are stored squared so that a = 1/sqrt(2) stays exact.
struct Figure0Params {
  Scalar a_sq;
  Scalar kappa_sq;

  static Figure0Params from_values(const Scalar& a, const Scalar& kappa) { return {a * a, kappa * kappa}; }
  // 0 < a^2 <= 1 and 0 < kappa^2 <= 1.
  void validate() const;
};

TcData figure0_tc(const Figure0Params& p);
WeightField build_figure0(const Figure0Params& p);

enum class Curve { h1, h2, h21, hinf };

const char* to_string(Curve c);
std::optional<Curve> parse_curve(std::string_view s);
// Printed domain of the curve, as text.
const char* curve_domain(Curve c);
bool in_domain(Curve c, const Scalar& a_sq);

// Squared threshold as a rational function of a^2; exact on the exact track.
// Throws std::domain_error outside the curve's domain.
Scalar threshold_sq(Curve c, const Scalar& a_sq);
Scalar threshold(Curve c, const Scalar& a_sq);

// The crossing of h1 and h21 on their common domain, as a value of a.
Scalar a_int(const Scalar& tol);
// Sign changes of h1^2 - h21^2 on `points` equally spaced a in (0, 22/25].
int a_int_sign_changes(long points = 1000);

struct Figure0Class {
  bool in_h1 = false, in_h2 = false, in_hinf = false, power21_in_h1 = false;
  // H_inf, H2_only, H1_only or not_H1.
  std::string region;
  // region + ", power21_in_H1" or ", power21_not_H1".
  std::string label;
  std::vector<std::pair<std::string, Verdict>> certificates;
};

// Labels from the closed forms only. Outside the printed domains the
// membership follows from T2 alone: for a^2 > 1/2 the column weights
// beta^2_(k,0) = 2a^2 (k+1)/(k+2) exceed 1 for large k.
Figure0Class predict_figure0(const Figure0Params& p);
// predict_figure0, double-checked against the generic testers. A mismatch or
// an undecided tester throws std::logic_error carrying both certificates.
Figure0Class classify_figure0(const Figure0Params& p, Exec exec = Exec::parallel);

// First column k1 with beta^2_(k1,0) > 1, for a^2 > 1/2.
long figure0_column_breach(const Scalar& a_sq);

// ---------------------------------------------------------------------------
// Lemma-exam family: bottom row x, 1, 1, ...; column a, 1, 1, ... above it;
// column 0 y, beta_1, beta_2, ...; other columns a y / x, beta_1, ...
struct ExamParams {
  Scalar x, a, y;
  // Berger measure of shift(beta_1, beta_2, ...).
  Measure1D eta;

  // 0 < a < x < 1, y > 0, eta a probability measure with ‖1/t‖ finite.
  void validate() const;
};

// TC parameters; eta_y carries a negative atom at 0 when y^2 ‖1/t‖_eta > 1.
TcData exam_tc(const ExamParams& p);
WeightField build_exam(const ExamParams& p);

struct ExamBounds {
  // T in H1 iff y <= m; T in H_inf iff y <= s.
  Scalar m, s;
};

ExamBounds exam_bounds(const ExamParams& p);
// Bound on y for T1 T2^n through the n-th power of eta.
Scalar exam_monomial_bound(const ExamParams& p, long n);

// ---------------------------------------------------------------------------
// Flat family: bottom row with Berger measure xi; a, 1, 1, ... above it;
// column 0 beta_0, beta_1, ...; interior beta = b.
struct FlatParams {
  Scalar a_sq, b_sq;
  // Berger measure of the bottom row: p δ0 + q δ1 + (1 - p - q) rho.
  Measure1D xi;
  // Berger measure of shift(beta_1, beta_2, ...).
  Measure1D eta1;
  Scalar beta0_sq;

  Scalar p() const { return xi.atom_mass(Scalar(0)); }
  Scalar q() const { return xi.atom_mass(Scalar(1)); }
  // ‖1/t‖ over eta1.
  Scalar inv_norm() const;
  // Berger measure of shift(beta_0, beta_1, ...); signed when beta_0 is too big.
  Measure1D eta() const;
  Scalar v() const { return eta().atom_mass(b_sq); }
  // Printed hypotheses: a^2/b^2 < ‖1/t‖_eta1, probability measures, 0 < a, b.
  void validate() const;
  // a b^n < beta_1 ... beta_n for n <= depth; nullopt when it holds.
  std::optional<long> contractivity_breach(long depth = 64) const;
};

TcData flat_tc(const FlatParams& p);
WeightField build_flat(const FlatParams& p);

struct Thm4Result {
  Scalar bound_sq;
  Verdict formula;
  Verdict pipeline;
  // Set when the instance only violates the informal contractivity constraint.
  std::optional<std::string> flag;
};

// beta_0 against the min formula, and the generic backward extension with
// mu_M = a^2 δ1 × δ_{b^2} + δ0 × (eta1 - a^2 δ_{b^2}). Disagreement throws
// std::logic_error.
Thm4Result thm4_subnormal(const FlatParams& p);
// Squared right-hand side of the min formula.
Scalar thm4_bound_sq(const FlatParams& p);

// ---------------------------------------------------------------------------
// Seeded generators. Measures are atomic with 2-3 rational atoms.

struct TcInstance {
  TcData tc;
  std::string recipe;
};

// TC data in H0: rows and columns subnormal by construction, with the
// backward extension at the origin landing on either side.
std::vector<TcInstance> random_tc_instances(std::uint64_t seed, int count);
std::vector<FlatParams> random_flat_instances(std::uint64_t seed, int count);

// ---------------------------------------------------------------------------
// Scripted checks.

struct VerifyLine {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::string theorem;
  bool pass = true;
  std::uint64_t seed = 0;
  std::vector<VerifyLine> lines;

  void add(std::string check, bool ok, std::string detail);
};

struct VerifyOptions {
  int instances = 200;
  std::uint64_t seed = 7;
  Exec exec = Exec::parallel;
};

const std::vector<std::string>& verify_names();
// Throws std::invalid_argument for an unknown name.
VerifyReport verify(const std::string& theorem, const VerifyOptions& opt = {});

}  // namespace shiftlab
