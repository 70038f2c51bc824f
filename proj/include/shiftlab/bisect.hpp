#pragma once

#include "shiftlab/scalar.hpp"

#include <functional>

namespace shiftlab {

// Midpoint bisection for a predicate that is true on [lo, t*] and false on
// (t*, hi]. Returns a point within tol of t*. Throws std::invalid_argument if
// pred(lo) is false or pred(hi) is true.
Scalar bisect_threshold(const std::function<bool(const Scalar&)>& pred, const Scalar& lo, const Scalar& hi,
                        const Scalar& tol);

}  // namespace shiftlab
