#pragma once

#include "shiftlab/scalar.hpp"

#include <string>

namespace shiftlab {

enum class Status { holds, fails, undecided };

const char* to_string(Status s);

// Conjunction: any failure wins, then any undecided.
Status both(Status a, Status b);
// holds for a nonnegative sign, fails for negative, undecided on a tie.
Status nonneg(Sign s);
Status from_optional(const std::optional<bool>& b);

}  // namespace shiftlab
