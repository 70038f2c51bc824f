#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace shiftlab {

using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

inline constexpr double kDefaultTol = 1e-12;

// Working precision of the approx track, in bits. Read once from
// SHIFTLAB_PRECISION_BITS (default 64). Must be settled before any
// parallel region runs.
unsigned precision_bits();
void set_precision_bits(unsigned bits);

enum class Track { exact, approx };
enum class Sign { negative, zero, positive, tie };

const char* to_string(Track t);
const char* to_string(Sign s);

// A number on one of two tracks: an exact rational, or an mpfr value with a
// relative tolerance. `scale` records the magnitude of the operands that
// produced an approx value, so cancellation shows up as a tie instead of a
// confidently wrong sign.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}
  Scalar(long v) : q_(v) {}
  Scalar(const Rational& q) : q_(q) { q_.canonicalize(); }
  Scalar(long num, long den);

  static Scalar approx(const Real& value, double tol = kDefaultTol);
  static Scalar approx(const Real& value, const Real& scale, double tol);
  // Accepts "p/q", integers, and decimals ("0.85", "1e-9"); decimals are exact.
  static Scalar parse(std::string_view text);

  Track track() const { return a_ ? Track::approx : Track::exact; }
  bool is_exact() const { return !a_; }
  const Rational& exact() const;
  Real real() const;
  const Real& scale() const;
  double tol() const { return a_ ? a_->tol : 0.0; }
  double to_double() const;
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  Scalar pow(long n) const;
  bool is_zero() const;
  // Structural equality: same track and identical value (tolerances ignored).
  bool same(const Scalar& o) const;

 private:
  struct ApproxPart {
    Real value;
    Real scale;
    double tol;
  };
  Rational q_{0};
  std::shared_ptr<const ApproxPart> a_;
};

Sign sign(const Scalar& x);
// sign(a - b).
Sign compare(const Scalar& a, const Scalar& b);

// Decided comparisons; std::nullopt when the approx track cannot tell.
std::optional<bool> le(const Scalar& a, const Scalar& b);
std::optional<bool> lt(const Scalar& a, const Scalar& b);
// Exact equality when both exact; approx values equal only on a tie.
bool equal(const Scalar& a, const Scalar& b);

Scalar abs(const Scalar& x);
// On a tie the first argument wins.
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

// Exact when x is the square of a rational.
Scalar sqrt(const Scalar& x);
// base^e for base >= 0; exact when the root is rational.
Scalar rpow(const Scalar& base, const Rational& e);
// Natural log; exact only for log(1) = 0.
Scalar log(const Scalar& x);

// n-th root of a nonnegative rational if it is rational.
std::optional<Rational> exact_root(const Rational& q, unsigned long n);

Real to_real(const Rational& q);

}  // namespace shiftlab
