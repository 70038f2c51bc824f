#include "shiftlab/bisect.hpp"

#include <stdexcept>

namespace shiftlab {

Scalar bisect_threshold(const std::function<bool(const Scalar&)>& pred, const Scalar& lo, const Scalar& hi,
                        const Scalar& tol) {
  if (sign(tol) != Sign::positive) throw std::invalid_argument("bisect_threshold: tol must be positive");
  if (compare(lo, hi) != Sign::negative) throw std::invalid_argument("bisect_threshold: need lo < hi");
  if (!pred(lo)) throw std::invalid_argument("bisect_threshold: predicate is false at lo = " + lo.str());
  if (pred(hi)) throw std::invalid_argument("bisect_threshold: predicate is true at hi = " + hi.str());
  Scalar a = lo, b = hi;
  const Scalar half(1, 2);
  // Stop once the midpoint is within tol of both ends.
  while (compare(b - a, tol + tol) == Sign::positive) {
    Scalar mid = (a + b) * half;
    if (pred(mid))
      a = mid;
    else
      b = mid;
  }
  return (a + b) * half;
}

}  // namespace shiftlab
