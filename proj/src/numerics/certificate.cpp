#include "shiftlab/certificate.hpp"

namespace shiftlab {

Verdict holds_verdict(std::string detail) {
  Verdict v;
  v.detail = std::move(detail);
  return v;
}

Verdict fails_verdict(std::string detail) {
  Verdict v;
  v.status = Status::fails;
  v.detail = std::move(detail);
  return v;
}

Verdict undecided_verdict(std::string detail) {
  Verdict v;
  v.status = Status::undecided;
  v.detail = std::move(detail);
  return v;
}

Verdict from_measure(const MeasureVerdict& m, const std::string& what) {
  Verdict v;
  v.status = m.status;
  v.detail = what + (m.detail.empty() ? "" : ": " + m.detail);
  v.measure = m;
  if (m.at && !m.at->is_exact()) v.track = Track::approx;
  return v;
}

std::string point_str(const Point& p) { return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")"; }

}  // namespace shiftlab
