#include "shiftlab/shift2.hpp"
#include "shiftlab/tc.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

long ceil_div(long a, long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

class RectSource : public FieldSource {
 public:
  RectSource(std::vector<std::vector<Scalar>> a, std::vector<std::vector<Scalar>> b) : a_(std::move(a)), b_(std::move(b)) {}
  Scalar alpha_sq(long k1, long k2) const override { return at(a_, k1, k2); }
  Scalar beta_sq(long k1, long k2) const override { return at(b_, k1, k2); }
  long k1() const { return static_cast<long>(a_.size()) - 1; }
  long k2() const { return static_cast<long>(a_[0].size()) - 1; }

 private:
  static const Scalar& at(const std::vector<std::vector<Scalar>>& m, long k1, long k2) {
    const long r = std::min<long>(k1, static_cast<long>(m.size()) - 1);
    const long c = std::min<long>(k2, static_cast<long>(m[0].size()) - 1);
    return m[r][c];
  }
  std::vector<std::vector<Scalar>> a_, b_;
};

class MomentFnSource : public FieldSource {
 public:
  explicit MomentFnSource(std::function<Scalar(long, long)> g) : g_(std::move(g)) {}
  Scalar alpha_sq(long k1, long k2) const override { return g_(k1 + 1, k2) / g_(k1, k2); }
  Scalar beta_sq(long k1, long k2) const override { return g_(k1, k2 + 1) / g_(k1, k2); }
  std::optional<Scalar> gamma(long k1, long k2) const override { return g_(k1, k2); }
  bool commuting_by_construction() const override { return true; }

 private:
  std::function<Scalar(long, long)> g_;
};

class PowerSummandSource : public FieldSource {
 public:
  PowerSummandSource(WeightField parent, long m, long n, long i, long j)
      : p_(std::move(parent)), m_(m), n_(n), i_(i), j_(j) {}
  Scalar alpha_sq(long p, long q) const override {
    Scalar g(1);
    for (long r = 0; r < m_; ++r) g *= p_.alpha_sq(m_ * p + i_ + r, n_ * q + j_);
    return g;
  }
  Scalar beta_sq(long p, long q) const override {
    Scalar g(1);
    for (long s = 0; s < n_; ++s) g *= p_.beta_sq(m_ * p + i_, n_ * q + j_ + s);
    return g;
  }
  std::optional<Scalar> gamma(long p, long q) const override {
    auto top = p_.source()->gamma(m_ * p + i_, n_ * q + j_);
    auto base = p_.source()->gamma(i_, j_);
    if (!top || !base) return std::nullopt;
    return *top / *base;
  }
  bool commuting_by_construction() const override { return p_.commuting_by_construction(); }

 private:
  WeightField p_;
  long m_, n_, i_, j_;
};

class RestrictionSource : public FieldSource {
 public:
  RestrictionSource(WeightField parent, Point off) : p_(std::move(parent)), off_(off) {}
  Scalar alpha_sq(long k1, long k2) const override { return p_.alpha_sq(k1 + off_[0], k2 + off_[1]); }
  Scalar beta_sq(long k1, long k2) const override { return p_.beta_sq(k1 + off_[0], k2 + off_[1]); }
  std::optional<Scalar> gamma(long k1, long k2) const override {
    auto top = p_.source()->gamma(k1 + off_[0], k2 + off_[1]);
    auto base = p_.source()->gamma(off_[0], off_[1]);
    if (!top || !base) return std::nullopt;
    return *top / *base;
  }
  bool commuting_by_construction() const override { return p_.commuting_by_construction(); }

 private:
  WeightField p_;
  Point off_;
};

class OverrideSource : public FieldSource {
 public:
  OverrideSource(WeightField parent, Point k, std::optional<Scalar> a, std::optional<Scalar> b)
      : p_(std::move(parent)), k_(k), a_(std::move(a)), b_(std::move(b)) {}
  Scalar alpha_sq(long k1, long k2) const override {
    if (a_ && k1 == k_[0] && k2 == k_[1]) return *a_;
    return p_.alpha_sq(k1, k2);
  }
  Scalar beta_sq(long k1, long k2) const override {
    if (b_ && k1 == k_[0] && k2 == k_[1]) return *b_;
    return p_.beta_sq(k1, k2);
  }

 private:
  WeightField p_;
  Point k_;
  std::optional<Scalar> a_, b_;
};

Point shift_corner(const Point& c, const Point& off) {
  return {std::max(0L, c[0] - off[0]), std::max(0L, c[1] - off[1])};
}

std::optional<Point> commuting_violation(const WeightField& t, long w1, long w2, bool* tie) {
  for (long k1 = 0; k1 <= w1; ++k1)
    for (long k2 = 0; k2 <= w2; ++k2) {
      Scalar lhs = t.beta_sq(k1 + 1, k2) * t.alpha_sq(k1, k2);
      Scalar rhs = t.alpha_sq(k1, k2 + 1) * t.beta_sq(k1, k2);
      Sign s = compare(lhs, rhs);
      if (s == Sign::tie && tie) *tie = true;
      if (s == Sign::positive || s == Sign::negative) return Point{k1, k2};
    }
  return std::nullopt;
}

}  // namespace

WeightField::WeightField(std::shared_ptr<const FieldSource> src, FieldMeta meta)
    : src_(std::move(src)), meta_(std::move(meta)) {
  if (!src_) throw std::invalid_argument("WeightField needs a source");
}

WeightField WeightField::rect(std::vector<std::vector<Scalar>> alpha_sq, std::vector<std::vector<Scalar>> beta_sq) {
  if (alpha_sq.empty() || alpha_sq[0].empty()) throw std::invalid_argument("empty weight rectangle");
  if (alpha_sq.size() != beta_sq.size()) throw std::invalid_argument("alpha_sq and beta_sq differ in shape");
  for (std::size_t r = 0; r < alpha_sq.size(); ++r) {
    if (alpha_sq[r].size() != alpha_sq[0].size() || beta_sq[r].size() != alpha_sq[0].size())
      throw std::invalid_argument("weight rectangle rows differ in length");
    for (std::size_t c = 0; c < alpha_sq[r].size(); ++c)
      if (sign(alpha_sq[r][c]) != Sign::positive || sign(beta_sq[r][c]) != Sign::positive)
        throw std::invalid_argument("squared weights must be positive");
  }
  auto src = std::make_shared<RectSource>(std::move(alpha_sq), std::move(beta_sq));
  FieldMeta meta;
  meta.h_flat = src->k1();
  meta.v_flat = src->k2();
  meta.origin = "rect";
  return WeightField(src, meta);
}

WeightField WeightField::from_moments(std::function<Scalar(long, long)> gamma, FieldMeta meta) {
  return WeightField(std::make_shared<MomentFnSource>(std::move(gamma)), std::move(meta));
}

Scalar WeightField::rel_gamma(const Point& u, const Point& v) const {
  auto top = src_->gamma(u[0] + v[0], u[1] + v[1]);
  if (top) {
    auto base = src_->gamma(u[0], u[1]);
    if (base) return *top / *base;
  }
  Scalar g(1);
  for (long a = 0; a < v[0]; ++a) g *= alpha_sq(u[0] + a, u[1]);
  for (long b = 0; b < v[1]; ++b) g *= beta_sq(u[0] + v[0], u[1] + b);
  return g;
}

Scalar WeightField::gamma_unchecked(const Point& k) const { return rel_gamma({0, 0}, k); }

WeightField WeightField::with_override(const Point& k, std::optional<Scalar> a, std::optional<Scalar> b) const {
  FieldMeta m = meta_;
  if (m.h_flat && k[0] >= *m.h_flat) m.h_flat = k[0] + 1;
  if (m.v_flat && k[1] >= *m.v_flat) m.v_flat = k[1] + 1;
  std::vector<Point> keep;
  for (const auto& c : m.subnormal_corners)
    if (!(k[0] >= c[0] && k[1] >= c[1])) keep.push_back(c);
  m.subnormal_corners = keep;
  if (m.tensor_from && k[0] >= (*m.tensor_from)[0] && k[1] >= (*m.tensor_from)[1]) m.tensor_from.reset();
  m.tc.reset();
  m.origin += " with weight override at " + point_str(k);
  return WeightField(std::make_shared<OverrideSource>(*this, k, std::move(a), std::move(b)), m);
}

long window_end(const std::optional<long>& flat, long depth) { return flat ? *flat : depth; }

Verdict check_commuting(const WeightField& t, long depth) {
  if (t.commuting_by_construction()) return holds_verdict("commuting by construction");
  const long w1 = window_end(t.meta().h_flat, depth);
  const long w2 = window_end(t.meta().v_flat, depth);
  bool tie = false;
  if (auto bad = commuting_violation(t, w1, w2, &tie)) {
    Verdict v = fails_verdict("commutativity fails at " + point_str(*bad));
    v.point = bad;
    return v;
  }
  if (tie) return undecided_verdict("commutativity within tolerance only");
  if (t.meta().h_flat && t.meta().v_flat) return holds_verdict("checked up to the flat indices");
  Verdict v = undecided_verdict("commuting on [0," + std::to_string(w1) + "]x[0," + std::to_string(w2) + "]");
  v.truncated_at = std::max(w1, w2);
  return v;
}

Scalar gamma2(const WeightField& t, const Point& k) {
  if (!t.commuting_by_construction()) {
    if (auto bad = commuting_violation(t, k[0], k[1], nullptr))
      throw std::invalid_argument("gamma2: field is not commuting at " + point_str(*bad));
  }
  Scalar g(1);
  for (long a = 0; a < k[0]; ++a) g *= t.alpha_sq(a, 0);
  for (long b = 0; b < k[1]; ++b) g *= t.beta_sq(k[0], b);
  return g;
}

Scalar gamma2_path(const WeightField& t, const std::vector<int>& moves) {
  Point at{0, 0};
  Scalar g(1);
  for (int mv : moves) {
    if (mv == 0) {
      g *= t.alpha_sq(at);
      ++at[0];
    } else {
      g *= t.beta_sq(at);
      ++at[1];
    }
  }
  return g;
}

std::vector<Summand> power_pair(const WeightField& t, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("power_pair needs m, n >= 1");
  if (m == 1 && n == 1) return {{0, 0, t}};
  std::vector<Summand> out;
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) {
      FieldMeta meta;
      const FieldMeta& pm = t.meta();
      if (pm.h_flat) meta.h_flat = ceil_div(*pm.h_flat - i, m);
      if (pm.v_flat) meta.v_flat = ceil_div(*pm.v_flat - j, n);
      for (const auto& c : pm.subnormal_corners) meta.subnormal_corners.push_back({ceil_div(c[0] - i, m), ceil_div(c[1] - j, n)});
      if (pm.tensor_from) meta.tensor_from = Point{ceil_div((*pm.tensor_from)[0] - i, m), ceil_div((*pm.tensor_from)[1] - j, n)};
      if (pm.tc) meta.tc = std::make_shared<const TcData>(tc_power_summand(*pm.tc, m, n, i, j));
      meta.origin = pm.origin + " power(" + std::to_string(m) + "," + std::to_string(n) + ") residue (" +
                    std::to_string(i) + "," + std::to_string(j) + ")";
      out.push_back({i, j, WeightField(std::make_shared<PowerSummandSource>(t, m, n, i, j), meta)});
    }
  return out;
}

WeightField restriction(const WeightField& t, long i, long j) {
  if (i < 0 || j < 0) throw std::invalid_argument("restriction indices must be >= 0");
  if (i == 0 && j == 0) return t;
  const Point off{j, i};
  FieldMeta meta;
  const FieldMeta& pm = t.meta();
  if (pm.h_flat) meta.h_flat = std::max(0L, *pm.h_flat - off[0]);
  if (pm.v_flat) meta.v_flat = std::max(0L, *pm.v_flat - off[1]);
  for (const auto& c : pm.subnormal_corners) meta.subnormal_corners.push_back(shift_corner(c, off));
  if (pm.tensor_from) meta.tensor_from = shift_corner(*pm.tensor_from, off);
  meta.origin = "R" + std::to_string(i) + std::to_string(j) + "(" + pm.origin + ")";
  return WeightField(std::make_shared<RestrictionSource>(t, off), meta);
}

}  // namespace shiftlab
