#pragma once

#include "shiftlab/certificate.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/shift1.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

struct TcData;

// Squared weights of a 2-variable shift. alpha moves in k1, beta in k2.
class FieldSource {
 public:
  virtual ~FieldSource() = default;
  virtual Scalar alpha_sq(long k1, long k2) const = 0;
  virtual Scalar beta_sq(long k1, long k2) const = 0;
  // Closed-form moment, when the source knows one.
  virtual std::optional<Scalar> gamma(long, long) const { return std::nullopt; }
  virtual bool commuting_by_construction() const { return false; }
};

// What is known about a field beyond its weights.
//   h_flat   for k1 >= h_flat no weight depends on k1
//   v_flat   for k2 >= v_flat no weight depends on k2
//   subnormal_corners  c such that the restriction to {k >= c} is subnormal
//   tensor_from  c such that the restriction to {k >= c} is of tensor form
struct FieldMeta {
  std::optional<long> h_flat;
  std::optional<long> v_flat;
  std::vector<Point> subnormal_corners;
  std::optional<Point> tensor_from;
  std::string origin;
  std::shared_ptr<const TcData> tc;
};

class WeightField {
 public:
  WeightField(std::shared_ptr<const FieldSource> src, FieldMeta meta);

  // Explicit values on [0,K1]x[0,K2], indexed [k1][k2]; outside the rectangle
  // the last column and row repeat, so the field is flat past it.
  static WeightField rect(std::vector<std::vector<Scalar>> alpha_sq, std::vector<std::vector<Scalar>> beta_sq);
  // Field of a moment function with gamma(0,0) = 1.
  static WeightField from_moments(std::function<Scalar(long, long)> gamma, FieldMeta meta);

  Scalar alpha_sq(long k1, long k2) const { return src_->alpha_sq(k1, k2); }
  Scalar beta_sq(long k1, long k2) const { return src_->beta_sq(k1, k2); }
  Scalar alpha_sq(const Point& k) const { return src_->alpha_sq(k[0], k[1]); }
  Scalar beta_sq(const Point& k) const { return src_->beta_sq(k[0], k[1]); }
  // gamma_{u+v} / gamma_u along the right-then-up staircase from u.
  Scalar rel_gamma(const Point& u, const Point& v) const;
  // Moment without a commutativity check; closed form when available.
  Scalar gamma_unchecked(const Point& k) const;

  const FieldMeta& meta() const { return meta_; }
  const std::shared_ptr<const FieldSource>& source() const { return src_; }
  bool commuting_by_construction() const { return src_->commuting_by_construction(); }

  // Replaces single squared weights; the result is not assumed commuting.
  WeightField with_override(const Point& k, std::optional<Scalar> alpha_sq, std::optional<Scalar> beta_sq) const;

 private:
  std::shared_ptr<const FieldSource> src_;
  FieldMeta meta_;
};

// Scan window along one axis: the flat index if known, else `depth`.
long window_end(const std::optional<long>& flat, long depth);

// beta^2_{k+e1} alpha^2_k = alpha^2_{k+e2} beta^2_k on the lattice.
Verdict check_commuting(const WeightField& t, long depth = 8);

// gamma_k along the right-then-up staircase; rejects a non-commuting field.
Scalar gamma2(const WeightField& t, const Point& k);
// gamma_k along an explicit path of moves (0 = right, 1 = up).
Scalar gamma2_path(const WeightField& t, const std::vector<int>& moves);

struct SixPoint {
  // The 2x2 matrix of the test; its off-diagonal entry may be irrational.
  SymMatrix h;
  // Rational congruent form: [[d1, D], [D, (alpha_k^2 / beta_k^2) d2]].
  SymMatrix congruent;
  PsdVerdict verdict;
};

SixPoint six_point(const WeightField& t, const Point& k);

// I_k ordered by total degree, then by first coordinate descending.
std::vector<Point> index_set(int k);
// (gamma_{u+i+j} / gamma_u)_{i,j in I_k}.
SymMatrix moment_matrix(const WeightField& t, const Point& u, int k);

enum class Exec { serial, parallel };

// psd_check of M_u(k) over the lattice. Points covered by a subnormal corner
// are skipped; flat axes and corners make the verdict unconditional. At k = 1
// every point is cross-checked against six_point.
Verdict is_k_hyponormal_pair(const WeightField& t, int k, long depth = 8, Exec exec = Exec::parallel);

struct Summand {
  long i, j;
  WeightField field;
};

// The m·n summands of (T1^m, T2^n), one per residue (i,j), i outer.
std::vector<Summand> power_pair(const WeightField& t, long m, long n);

// R_ij: the restriction to k2 >= i, k1 >= j.
WeightField restriction(const WeightField& t, long i, long j);

// alpha independent of k2 and beta independent of k1.
Verdict is_tensor_form(const WeightField& t, long depth = 8);
Verdict in_tc(const WeightField& t, long depth = 8);
// R_{k1 k2}(T) in TC, with T in H0.
Verdict in_a_k(const WeightField& t, const Point& k, long depth = 8);

struct BackExt2Result {
  Verdict verdict;
  std::optional<Measure2D> measure;
};

// Backward extension by a bottom row: beta00_sq, the Berger measure mu_m of
// R10 and the Berger measure nu of the bottom row.
BackExt2Result backext2(const Scalar& beta00_sq, const Measure2D& mu_m, const Measure1D& nu);
// As backext2, after checking that mu_m and nu reproduce the moments of t to
// total degree 8. Throws std::invalid_argument on a mismatch.
BackExt2Result subnormal_backext2(const WeightField& t, const Measure2D& mu_m, const Measure1D& nu);

struct MonomialOrbit {
  Point start;
  WeightSeq seq;
};

// The 1-variable summands of T1^m T2^n along k -> k + (m,n). Orbits start at
// the points with k1 < m or k2 < n; starts are listed with k1, k2 <= reach.
std::vector<MonomialOrbit> monomial_summands(const WeightField& t, long m, long n, long reach = 6);

}  // namespace shiftlab
