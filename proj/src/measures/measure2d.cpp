#include "shiftlab/measure.hpp"

#include <sstream>
#include <stdexcept>

namespace shiftlab {

Measure2D::Measure2D(std::vector<Term> terms) {
  for (auto& t : terms)
    if (!t.x.is_zero() && !t.y.is_zero()) terms_.push_back(std::move(t));
}

Measure2D Measure2D::product(const Measure1D& x, const Measure1D& y) { return Measure2D({{x, y}}); }

Track Measure2D::track() const {
  for (const auto& t : terms_)
    if (t.x.track() == Track::approx || t.y.track() == Track::approx) return Track::approx;
  return Track::exact;
}

Scalar Measure2D::moment(unsigned long k1, unsigned long k2) const {
  Scalar acc(0);
  for (const auto& t : terms_) acc += t.x.moment(k1) * t.y.moment(k2);
  return acc;
}

std::optional<Scalar> Measure2D::inv_t_norm() const {
  Scalar acc(0);
  bool infinite = false;
  for (const auto& t : terms_) {
    Scalar mx = t.x.mass();
    if (mx.is_zero()) continue;
    auto ny = t.y.power_integral(-1);
    if (ny) {
      acc += mx * *ny;
    } else {
      if (sign(mx) == Sign::negative) throw std::domain_error("1/t integral diverges to -infinity");
      infinite = true;
    }
  }
  if (infinite) return std::nullopt;
  return acc;
}

Measure2D Measure2D::extremal() const {
  auto n = inv_t_norm();
  if (!n) throw std::domain_error("extremal measure needs 1/t integrable");
  if (sign(*n) != Sign::positive) throw std::domain_error("extremal measure needs a positive 1/t norm");
  std::vector<Term> out;
  for (const auto& t : terms_) out.push_back({t.x, t.y.without_atom_at_zero().t_weight(-1, *n)});
  return Measure2D(std::move(out));
}

Measure1D Measure2D::marginal_x() const {
  Measure1D acc;
  for (const auto& t : terms_) acc = acc + t.x.scaled(t.y.mass());
  return acc;
}

Measure1D Measure2D::marginal_y() const {
  Measure1D acc;
  for (const auto& t : terms_) acc = acc + t.y.scaled(t.x.mass());
  return acc;
}

Measure2D Measure2D::scaled(const Scalar& s) const {
  std::vector<Term> out;
  for (const auto& t : terms_) out.push_back({t.x.scaled(s), t.y});
  return Measure2D(std::move(out));
}

Measure2D operator+(const Measure2D& x, const Measure2D& y) {
  auto t = x.terms_;
  t.insert(t.end(), y.terms_.begin(), y.terms_.end());
  return Measure2D(std::move(t));
}

MeasureVerdict Measure2D::nonnegative() const {
  // Merge terms sharing a second factor, then terms sharing a first factor.
  std::vector<Term> g;
  for (const auto& t : terms_) {
    bool merged = false;
    for (auto& u : g)
      if (u.y.same(t.y)) {
        u.x = u.x + t.x;
        merged = true;
        break;
      }
    if (!merged) g.push_back(t);
  }
  std::vector<Term> h;
  for (const auto& t : g) {
    if (t.x.is_zero()) continue;
    bool merged = false;
    for (auto& u : h)
      if (u.x.same(t.x)) {
        u.y = u.y + t.y;
        merged = true;
        break;
      }
    if (!merged) h.push_back(t);
  }
  MeasureVerdict out;
  for (const auto& t : h) {
    if (t.y.is_zero()) continue;
    MeasureVerdict vx = t.x.nonnegative();
    MeasureVerdict vy = t.y.nonnegative();
    if (vx.status == Status::holds && vy.status == Status::holds) continue;
    if (h.size() == 1 && (vx.status == Status::fails || vy.status == Status::fails)) {
      // A lone product is negative somewhere once one factor is.
      MeasureVerdict f = vx.status == Status::fails ? vx : vy;
      f.detail = "product term: " + f.detail;
      return f;
    }
    if (out.status == Status::holds) out = {Status::undecided, "term with a signed factor: " + t.x.str() + " x " + t.y.str(), std::nullopt};
  }
  if (out.status == Status::holds) return out;

  // The slice of the measure over an atom s0 of the first factors is
  // sum_i x_i({s0}) y_i; a negative slice is negative mass. When every first
  // factor is atomic the slices are the whole measure. Same with roles swapped.
  auto slices = [&](bool first) -> std::optional<MeasureVerdict> {
    bool atomic = true;
    std::vector<Scalar> at;
    for (const auto& t : h) {
      const Measure1D& f = first ? t.x : t.y;
      atomic = atomic && f.is_atomic();
      for (const auto& a : f.atoms()) at.push_back(a.c);
    }
    for (const auto& c : at) {
      Measure1D slice;
      for (const auto& t : h) slice = slice + (first ? t.y : t.x).scaled((first ? t.x : t.y).atom_mass(c));
      MeasureVerdict v = slice.nonnegative();
      if (v.status == Status::fails) {
        v.detail = std::string(first ? "slice s = " : "slice t = ") + c.str() + ": " + v.detail;
        return v;
      }
      if (v.status == Status::undecided) atomic = false;
    }
    if (atomic) return MeasureVerdict{Status::holds, "", std::nullopt};
    return std::nullopt;
  };
  for (bool first : {true, false})
    if (auto v = slices(first)) return *v;
  return out;
}

std::string Measure2D::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    os << (i ? " + " : "") << "(" << terms_[i].x.str() << ") x (" << terms_[i].y.str() << ")";
  if (terms_.empty()) os << "0";
  return os.str();
}

Measure1D monomial_pushforward(const Measure1D& xi, const Measure1D& eta, unsigned long a, unsigned long b,
                               unsigned long m, unsigned long n) {
  const Measure1D xa = xi.t_weight(static_cast<long>(a), Scalar(1));
  const Measure1D yb = eta.t_weight(static_cast<long>(b), Scalar(1));
  const Scalar total = xa.mass() * yb.mass();
  if (sign(total) != Sign::positive) throw std::domain_error("monomial_pushforward of a null measure");
  Measure1D acc;
  auto spread = [&](const Measure1D& atomic, const Measure1D& other, unsigned long p, unsigned long q) {
    const Measure1D moved = other.power(Rational(long(q)));
    for (const auto& at : atomic.atoms()) {
      if (at.c.is_zero())
        acc = acc + Measure1D::dirac(Scalar(0), at.w * other.mass());
      else
        acc = acc + moved.dilate(at.c.pow(static_cast<long>(p))).scaled(at.w);
    }
  };
  if (xa.is_atomic())
    spread(xa, yb, m, n);
  else if (yb.is_atomic())
    spread(yb, xa, n, m);
  else
    throw std::invalid_argument("monomial_pushforward needs an atomic factor");
  return acc.scaled(Scalar(1) / total);
}

}  // namespace shiftlab
