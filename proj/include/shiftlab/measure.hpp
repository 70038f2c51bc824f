#pragma once

#include "shiftlab/scalar.hpp"
#include "shiftlab/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// Outcome of a measure inequality. `at` is a point where the signed density or
// atom mass is negative when status is fails.
struct MeasureVerdict {
  Status status = Status::holds;
  std::string detail;
  std::optional<Scalar> at;
};

// Finite sum of atoms w·δ_c and monomial densities coef·t^e on [a,b].
// Signed masses are allowed; functionals that need a positive measure check.
class Measure1D {
 public:
  struct Atom {
    Scalar c, w;
  };
  struct Piece {
    Scalar a, b, coef;
    Rational e;
  };

  Measure1D() = default;
  Measure1D(std::vector<Atom> atoms, std::vector<Piece> pieces);

  static Measure1D dirac(const Scalar& c, const Scalar& w = Scalar(1));
  static Measure1D density(const Scalar& a, const Scalar& b, const Scalar& coef, const Rational& e = 0);
  // Normalised Lebesgue measure on [a,b].
  static Measure1D uniform(const Scalar& a, const Scalar& b);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return atoms_.empty() && pieces_.empty(); }
  bool is_atomic() const { return pieces_.empty(); }
  Track track() const;

  Scalar mass() const { return moment(0); }
  Scalar moment(unsigned long k) const;
  // ∫ t^p dμ; std::nullopt when the integral diverges to +infinity.
  std::optional<Scalar> power_integral(const Rational& p) const;
  // ∫ (1/t) dμ for a nonnegative measure; nullopt means infinite.
  std::optional<Scalar> inv_t_norm() const;
  Scalar atom_mass(const Scalar& c) const;

  // (t^j / gamma) dμ. For j >= 1 an atom at 0 disappears; for j < 0 an atom
  // at 0 or a density not integrable against t^j throws.
  Measure1D t_weight(long j, const Scalar& gamma) const;
  // Pushforward under t -> t^l, l > 0.
  Measure1D power(const Rational& l) const;
  // Pushforward under t -> lambda·t, lambda > 0.
  Measure1D dilate(const Scalar& lambda) const;
  Measure1D scaled(const Scalar& s) const;
  Measure1D without_atom_at_zero() const;

  friend Measure1D operator+(const Measure1D& x, const Measure1D& y);
  friend Measure1D operator-(const Measure1D& x, const Measure1D& y);

  MeasureVerdict nonnegative() const;
  // Total mass equals one (exact track) or ties with one (approx track).
  Status is_probability() const;
  // Identical canonical forms.
  bool same(const Measure1D& o) const;
  std::string str() const;

 private:
  void canonicalize();
  std::vector<Atom> atoms_;
  std::vector<Piece> pieces_;
};

// nu - mu >= 0 as a measure.
MeasureVerdict dominates(const Measure1D& nu, const Measure1D& mu);

// ∫ t^k d(lower) <= ∫ t^k d(upper) for every integer k >= k0. Pointwise
// domination certifies directly; atomic differences get an exact tail bound on
// the leading atom; otherwise moments up to `depth` are checked and a clean
// run is undecided.
MeasureVerdict moment_dominated(const Measure1D& lower, const Measure1D& upper, unsigned long k0,
                                unsigned long depth = 64);

// Finite sum of products x_i × y_i on [0,∞)², s first and t second.
class Measure2D {
 public:
  struct Term {
    Measure1D x, y;
  };

  Measure2D() = default;
  explicit Measure2D(std::vector<Term> terms);
  static Measure2D product(const Measure1D& x, const Measure1D& y);

  const std::vector<Term>& terms() const { return terms_; }
  Track track() const;

  Scalar mass() const { return moment(0, 0); }
  Scalar moment(unsigned long k1, unsigned long k2) const;
  // ∫ (1/t) dμ; nullopt means infinite.
  std::optional<Scalar> inv_t_norm() const;
  // (1 - δ0(t)) / (t ‖1/t‖) dμ. Throws when ‖1/t‖ is infinite or zero.
  Measure2D extremal() const;
  Measure1D marginal_x() const;
  Measure1D marginal_y() const;
  Measure2D scaled(const Scalar& s) const;

  friend Measure2D operator+(const Measure2D& x, const Measure2D& y);

  // Groups terms sharing a factor, then requires each group to be a product
  // of nonnegative measures. Undecided when the grouping is inconclusive.
  MeasureVerdict nonnegative() const;
  std::string str() const;

 private:
  std::vector<Term> terms_;
};

// Pushforward of (s^a t^b / c) d(xi × eta) under (s,t) -> s^m t^n, with c the
// matching moment so the result is a probability measure. One of xi, eta must
// be atomic.
Measure1D monomial_pushforward(const Measure1D& xi, const Measure1D& eta, unsigned long a, unsigned long b,
                               unsigned long m, unsigned long n);

}  // namespace shiftlab
