#pragma once

#include "shiftlab/measure.hpp"
#include "shiftlab/sym_matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

using Point = std::array<long, 2>;

// Tri-state answer with whatever evidence produced it. One-variable checks
// report their index as point {n, 0}.
struct Verdict {
  Status status = Status::holds;
  Track track = Track::exact;
  std::string detail;
  std::optional<Point> point;
  std::optional<SymMatrix> matrix;
  std::optional<PsdVerdict> psd;
  std::optional<MeasureVerdict> measure;
  // Set when a clean scan could not be extended past this depth.
  std::optional<long> truncated_at;
  // Sub-verdicts for multi-stage checks, in evaluation order.
  std::vector<std::pair<std::string, Verdict>> chain;

  bool holds() const { return status == Status::holds; }
  bool fails() const { return status == Status::fails; }
};

Verdict holds_verdict(std::string detail);
Verdict fails_verdict(std::string detail);
Verdict undecided_verdict(std::string detail);
Verdict from_measure(const MeasureVerdict& m, const std::string& what);
std::string point_str(const Point& p);

}  // namespace shiftlab
