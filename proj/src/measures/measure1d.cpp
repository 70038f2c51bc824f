#include "shiftlab/measure.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

namespace {

bool before(const Scalar& x, const Scalar& y) {
  if (x.is_exact() && y.is_exact()) return x.exact() < y.exact();
  return x.real() < y.real();
}

bool same_point(const Scalar& x, const Scalar& y) {
  if (x.is_exact() && y.is_exact()) return x.exact() == y.exact();
  return x.same(y);
}

bool drop_coef(const Scalar& x) { return sign(x) == Sign::zero; }

// ∫_a^b coef·t^p dt; nullopt when it diverges at 0.
std::optional<Scalar> integrate(const Scalar& coef, const Rational& p, const Scalar& a, const Scalar& b) {
  if (p == -1) {
    if (a.is_zero()) return std::nullopt;
    return coef * (log(b) - log(a));
  }
  const Rational q = p + 1;
  if (a.is_zero() && q <= 0) return std::nullopt;
  return coef * (rpow(b, q) - rpow(a, q)) / Scalar(q);
}

Scalar tpow(const Scalar& t, const Rational& d) {
  if (d == 0) return Scalar(1);
  return rpow(t, d);
}

using Terms = std::vector<std::pair<Scalar, Rational>>;  // coef, exponent

Scalar eval_terms(const Terms& g, const Scalar& t) {
  Scalar acc(0);
  for (const auto& [c, d] : g) acc += c * tpow(t, d);
  return acc;
}

MeasureVerdict sign_on(const Terms& g, const Scalar& l, const Scalar& r, int depth) {
  // g has exponents >= 0, so every monomial is nondecreasing in t.
  Scalar lb(0);
  for (const auto& [c, d] : g) lb += c * tpow(sign(c) == Sign::negative ? r : l, d);
  Sign s = sign(lb);
  if (s == Sign::positive || s == Sign::zero) return {};
  const Scalar mid = (l + r) * Scalar(1, 2);
  Sign sm = sign(eval_terms(g, mid));
  if (sm == Sign::negative) return {Status::fails, "negative density", mid};
  if (depth == 0) return {Status::undecided, "density sign not resolved by interval splitting", mid};
  MeasureVerdict left = sign_on(g, l, mid, depth - 1);
  if (left.status == Status::fails) return left;
  MeasureVerdict right = sign_on(g, mid, r, depth - 1);
  if (right.status == Status::fails) return right;
  if (left.status == Status::undecided) return left;
  return right;
}

// Sign of Σ c_i t^{e_i} on (l, r).
MeasureVerdict density_nonnegative(const Terms& terms, const Scalar& l, const Scalar& r) {
  Rational emin = terms.front().second;
  for (const auto& t : terms) emin = std::min(emin, t.second);
  Terms g;
  for (const auto& [c, e] : terms) g.emplace_back(c, e - emin);
  if (g.size() == 1) {
    Status st = nonneg(sign(g[0].first));
    if (st == Status::holds) return {};
    return {st, "negative density", (l + r) * Scalar(1, 2)};
  }
  if (g.size() == 2) {
    // c0 t^d0 + c1 t^d1 over t^emin is monotone, so the endpoint limits decide.
    for (const Scalar* end : {&l, &r}) {
      Sign s = sign(eval_terms(g, *end));
      if (s == Sign::negative) return {Status::fails, "negative density near endpoint", *end};
      if (s == Sign::tie) return {Status::undecided, "density within tolerance of 0 at endpoint", *end};
    }
    return {};
  }
  for (const Scalar* end : {&l, &r})
    if (sign(eval_terms(g, *end)) == Sign::negative) return {Status::fails, "negative density near endpoint", *end};
  return sign_on(g, l, r, 40);
}

}  // namespace

Measure1D::Measure1D(std::vector<Atom> atoms, std::vector<Piece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  canonicalize();
}

Measure1D Measure1D::dirac(const Scalar& c, const Scalar& w) { return Measure1D({{c, w}}, {}); }

Measure1D Measure1D::density(const Scalar& a, const Scalar& b, const Scalar& coef, const Rational& e) {
  return Measure1D({}, {{a, b, coef, e}});
}

Measure1D Measure1D::uniform(const Scalar& a, const Scalar& b) { return density(a, b, Scalar(1) / (b - a)); }

void Measure1D::canonicalize() {
  for (const auto& at : atoms_)
    if (sign(at.c) == Sign::negative) throw std::invalid_argument("atom at negative position " + at.c.str());
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return before(x.c, y.c); });
  std::vector<Atom> merged;
  for (const auto& at : atoms_) {
    if (!merged.empty() && same_point(merged.back().c, at.c))
      merged.back().w += at.w;
    else
      merged.push_back(at);
  }
  atoms_.clear();
  for (auto& at : merged)
    if (!drop_coef(at.w)) atoms_.push_back(std::move(at));

  std::vector<Scalar> ends;
  for (const auto& p : pieces_) {
    if (sign(p.a) == Sign::negative) throw std::invalid_argument("density piece starts below 0");
    Sign ord = compare(p.a, p.b);
    if (ord == Sign::positive) throw std::invalid_argument("density piece with a > b");
    if (p.a.is_zero() && p.e <= -1) throw std::invalid_argument("density t^e with e <= -1 is not integrable at 0");
    ends.push_back(p.a);
    ends.push_back(p.b);
  }
  std::sort(ends.begin(), ends.end(), before);
  ends.erase(std::unique(ends.begin(), ends.end(), same_point), ends.end());

  struct Cell {
    Scalar l, r;
    std::vector<std::pair<Rational, Scalar>> terms;
  };
  std::vector<Cell> cells;
  for (std::size_t k = 0; k + 1 < ends.size(); ++k) {
    const Scalar& l = ends[k];
    const Scalar& r = ends[k + 1];
    std::map<Rational, Scalar> by_exp;
    for (const auto& p : pieces_) {
      if (before(l, p.a) || before(p.b, r)) continue;
      auto it = by_exp.find(p.e);
      if (it == by_exp.end())
        by_exp.emplace(p.e, p.coef);
      else
        it->second += p.coef;
    }
    Cell cell{l, r, {}};
    for (auto& [e, c] : by_exp)
      if (!drop_coef(c)) cell.terms.emplace_back(e, c);
    if (cell.terms.empty()) continue;
    if (!cells.empty() && same_point(cells.back().r, l) && cells.back().terms.size() == cell.terms.size()) {
      bool eq = true;
      for (std::size_t i = 0; eq && i < cell.terms.size(); ++i)
        eq = cells.back().terms[i].first == cell.terms[i].first && cells.back().terms[i].second.same(cell.terms[i].second);
      if (eq) {
        cells.back().r = r;
        continue;
      }
    }
    cells.push_back(std::move(cell));
  }
  std::vector<Piece> out;
  for (const auto& c : cells)
    for (const auto& [e, coef] : c.terms) out.push_back({c.l, c.r, coef, e});
  pieces_ = std::move(out);
}

Track Measure1D::track() const {
  for (const auto& a : atoms_)
    if (!a.c.is_exact() || !a.w.is_exact()) return Track::approx;
  for (const auto& p : pieces_)
    if (!p.a.is_exact() || !p.b.is_exact() || !p.coef.is_exact() || p.e.get_den() != 1) return Track::approx;
  return Track::exact;
}

Scalar Measure1D::moment(unsigned long k) const {
  Scalar acc(0);
  for (const auto& at : atoms_) acc += k == 0 ? at.w : at.w * at.c.pow(static_cast<long>(k));
  for (const auto& p : pieces_) acc += *integrate(p.coef, p.e + static_cast<long>(k), p.a, p.b);
  return acc;
}

std::optional<Scalar> Measure1D::power_integral(const Rational& p) const {
  Scalar acc(0);
  bool infinite = false;
  auto diverge = [&](const Scalar& w) {
    Sign s = sign(w);
    if (s == Sign::negative) throw std::domain_error("integral diverges to -infinity");
    infinite = true;
  };
  for (const auto& at : atoms_) {
    if (at.c.is_zero()) {
      if (p == 0)
        acc += at.w;
      else if (p < 0)
        diverge(at.w);
    } else {
      acc += at.w * rpow(at.c, p);
    }
  }
  for (const auto& pc : pieces_) {
    auto v = integrate(pc.coef, pc.e + p, pc.a, pc.b);
    if (v)
      acc += *v;
    else
      diverge(pc.coef);
  }
  if (infinite) return std::nullopt;
  return acc;
}

std::optional<Scalar> Measure1D::inv_t_norm() const {
  if (nonnegative().status == Status::fails) throw std::invalid_argument("inv_t_norm of a signed measure");
  return power_integral(-1);
}

Scalar Measure1D::atom_mass(const Scalar& c) const {
  for (const auto& at : atoms_)
    if (at.c.is_exact() && c.is_exact() ? at.c.exact() == c.exact() : equal(at.c, c)) return at.w;
  return Scalar(0);
}

Measure1D Measure1D::t_weight(long j, const Scalar& gamma) const {
  if (sign(gamma) != Sign::positive) throw std::invalid_argument("t_weight needs gamma > 0");
  std::vector<Atom> at;
  for (const auto& a : atoms_) {
    if (a.c.is_zero()) {
      if (j == 0) {
        at.push_back({a.c, a.w / gamma});
      } else if (j > 0) {
        if (sign(a.w) == Sign::negative) throw std::invalid_argument("t_weight removes a negative atom at 0");
      } else {
        throw std::domain_error("t_weight with j < 0 on an atom at 0");
      }
    } else {
      at.push_back({a.c, a.w * a.c.pow(j) / gamma});
    }
  }
  std::vector<Piece> pc;
  for (const auto& p : pieces_) {
    Rational e = p.e + j;
    if (p.a.is_zero() && e <= -1) throw std::domain_error("t_weight leaves a density not integrable at 0");
    pc.push_back({p.a, p.b, p.coef / gamma, e});
  }
  return Measure1D(std::move(at), std::move(pc));
}

Measure1D Measure1D::power(const Rational& l) const {
  if (l <= 0) throw std::invalid_argument("power needs l > 0");
  std::vector<Atom> at;
  for (const auto& a : atoms_) at.push_back({rpow(a.c, l), a.w});
  std::vector<Piece> pc;
  for (const auto& p : pieces_) pc.push_back({rpow(p.a, l), rpow(p.b, l), p.coef / Scalar(l), Rational((p.e + 1) / l - 1)});
  return Measure1D(std::move(at), std::move(pc));
}

Measure1D Measure1D::dilate(const Scalar& lambda) const {
  if (sign(lambda) != Sign::positive) throw std::invalid_argument("dilate needs lambda > 0");
  std::vector<Atom> at;
  for (const auto& a : atoms_) at.push_back({a.c * lambda, a.w});
  std::vector<Piece> pc;
  for (const auto& p : pieces_)
    pc.push_back({p.a * lambda, p.b * lambda, p.coef * rpow(lambda, Rational(-p.e - 1)), p.e});
  return Measure1D(std::move(at), std::move(pc));
}

Measure1D Measure1D::scaled(const Scalar& s) const {
  std::vector<Atom> at;
  for (const auto& a : atoms_) at.push_back({a.c, a.w * s});
  std::vector<Piece> pc;
  for (const auto& p : pieces_) pc.push_back({p.a, p.b, p.coef * s, p.e});
  return Measure1D(std::move(at), std::move(pc));
}

Measure1D Measure1D::without_atom_at_zero() const {
  std::vector<Atom> at;
  for (const auto& a : atoms_)
    if (!a.c.is_zero()) at.push_back(a);
  return Measure1D(std::move(at), pieces_);
}

Measure1D operator+(const Measure1D& x, const Measure1D& y) {
  auto at = x.atoms_;
  at.insert(at.end(), y.atoms_.begin(), y.atoms_.end());
  auto pc = x.pieces_;
  pc.insert(pc.end(), y.pieces_.begin(), y.pieces_.end());
  return Measure1D(std::move(at), std::move(pc));
}

Measure1D operator-(const Measure1D& x, const Measure1D& y) { return x + y.scaled(Scalar(-1)); }

MeasureVerdict Measure1D::nonnegative() const {
  MeasureVerdict out;
  for (const auto& a : atoms_) {
    Sign s = sign(a.w);
    if (s == Sign::negative) return {Status::fails, "negative atom mass " + a.w.str(), a.c};
    if (s == Sign::tie && out.status == Status::holds) out = {Status::undecided, "atom mass within tolerance of 0", a.c};
  }
  std::size_t i = 0;
  while (i < pieces_.size()) {
    std::size_t j = i;
    Terms terms;
    while (j < pieces_.size() && pieces_[j].a.same(pieces_[i].a) && pieces_[j].b.same(pieces_[i].b)) {
      terms.emplace_back(pieces_[j].coef, pieces_[j].e);
      ++j;
    }
    MeasureVerdict v = density_nonnegative(terms, pieces_[i].a, pieces_[i].b);
    if (v.status == Status::fails) return v;
    if (v.status == Status::undecided && out.status == Status::holds) out = v;
    i = j;
  }
  return out;
}

Status Measure1D::is_probability() const {
  Sign s = compare(mass(), Scalar(1));
  return s == Sign::zero || s == Sign::tie ? Status::holds : Status::fails;
}

bool Measure1D::same(const Measure1D& o) const {
  if (atoms_.size() != o.atoms_.size() || pieces_.size() != o.pieces_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (!atoms_[i].c.same(o.atoms_[i].c) || !atoms_[i].w.same(o.atoms_[i].w)) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto &p = pieces_[i], &q = o.pieces_[i];
    if (!p.a.same(q.a) || !p.b.same(q.b) || !p.coef.same(q.coef) || p.e != q.e) return false;
  }
  return true;
}

std::string Measure1D::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& a : atoms_) {
    os << (first ? "" : " + ") << a.w.str() << "*delta(" << a.c.str() << ")";
    first = false;
  }
  for (const auto& p : pieces_) {
    os << (first ? "" : " + ") << p.coef.str() << "*t^" << p.e.get_str() << " on [" << p.a.str() << ","
       << p.b.str() << "]";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

MeasureVerdict dominates(const Measure1D& nu, const Measure1D& mu) { return (nu - mu).nonnegative(); }

MeasureVerdict moment_dominated(const Measure1D& lower, const Measure1D& upper, unsigned long k0,
                                unsigned long depth) {
  const Measure1D d = upper - lower;
  MeasureVerdict pw = d.nonnegative();
  if (pw.status == Status::holds) {
    pw.detail = "pointwise domination";
    return pw;
  }
  if (d.is_atomic()) {
    std::vector<Measure1D::Atom> at;
    for (const auto& a : d.atoms())
      if (!a.c.is_zero()) at.push_back(a);
    if (k0 == 0) {
      Sign s = sign(d.mass());
      if (s == Sign::negative) return {Status::fails, "moment 0 violated", Scalar(0)};
      if (s == Sign::tie) return {Status::undecided, "moment 0 within tolerance", Scalar(0)};
    }
    if (at.empty()) return {Status::holds, "difference vanishes for k >= 1", std::nullopt};
    const auto& lead = at.back();
    for (unsigned long k = std::max(k0, 1UL); k < std::max(k0, 1UL) + 2048; ++k) {
      Scalar fk(0);
      for (const auto& a : at) fk += a.w * a.c.pow(static_cast<long>(k));
      Sign s = sign(fk);
      if (s == Sign::negative) return {Status::fails, "moment " + std::to_string(k) + " violated", Scalar(long(k))};
      if (s == Sign::tie) return {Status::undecided, "moment " + std::to_string(k) + " within tolerance", Scalar(long(k))};
      if (sign(lead.w) != Sign::positive) continue;
      Scalar rest(0);
      for (std::size_t i = 0; i + 1 < at.size(); ++i) rest += abs(at[i].w) * (at[i].c / lead.c).pow(static_cast<long>(k));
      Sign tail = compare(lead.w, rest);
      if (tail == Sign::positive || tail == Sign::zero)
        return {Status::holds, "leading atom dominates from k = " + std::to_string(k), std::nullopt};
    }
    return {Status::undecided, "leading-atom bound not reached", std::nullopt};
  }
  for (unsigned long k = k0; k <= k0 + depth; ++k) {
    Sign s = sign(d.moment(k));
    if (s == Sign::negative) return {Status::fails, "moment " + std::to_string(k) + " violated", Scalar(long(k))};
    if (s == Sign::tie) return {Status::undecided, "moment " + std::to_string(k) + " within tolerance", Scalar(long(k))};
  }
  return {Status::undecided, "moments agree to depth " + std::to_string(k0 + depth), std::nullopt};
}

}  // namespace shiftlab
