#include "shiftlab/tc.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

constexpr long kCached = 48;

Measure1D normalized(const Measure1D& mu, long j) {
  if (j == 0) return mu;
  // Boundary measures may carry a negative atom at 0; t^j removes it.
  return mu.without_atom_at_zero().t_weight(j, mu.moment(static_cast<unsigned long>(j)));
}

Measure1D inv_s(const Measure1D& mu) { return mu.t_weight(-1, Scalar(1)); }

bool single_atom(const Measure1D& mu, Scalar* at) {
  if (!mu.is_atomic() || mu.atoms().size() != 1 || mu.atoms()[0].c.is_zero()) return false;
  *at = mu.atoms()[0].c;
  return true;
}

// The axis is flat from index 1 when the core measure is one atom c > 0 and
// the boundary measure, off 0, is an atom at the same point.
bool flat_axis(const Measure1D& core, const Measure1D& boundary) {
  Scalar c, b;
  if (!single_atom(core, &c)) return false;
  if (!single_atom(boundary.without_atom_at_zero(), &b)) return false;
  return c.same(b);
}

std::vector<Scalar> moments(const Measure1D& mu, long n) {
  std::vector<Scalar> out;
  out.reserve(n);
  for (long k = 0; k < n; ++k) out.push_back(mu.moment(static_cast<unsigned long>(k)));
  return out;
}

Verdict tag(Verdict v, const std::string& what) {
  v.detail = what + ": " + v.detail;
  return v;
}

}  // namespace

Scalar TcData::gamma(long k1, long k2) const {
  if (k1 == 0 && k2 == 0) return Scalar(1);
  if (k2 == 0) return mu_x.moment(k1);
  if (k1 == 0) return eta_y.moment(k2);
  return c() * xi.moment(k1 - 1) * eta.moment(k2 - 1);
}

void TcData::validate() const {
  if (sign(x_sq) != Sign::positive) throw std::invalid_argument("TC data: x^2 must be positive");
  const std::pair<const char*, const Measure1D*> ms[] = {{"mu_x", &mu_x}, {"eta_y", &eta_y}, {"xi", &xi}, {"eta", &eta}};
  for (const auto& [name, m] : ms) {
    // The boundary measures may carry a negative atom at 0; the row or
    // column is then not subnormal, which screen_h0 reports.
    const bool boundary = m == &mu_x || m == &eta_y;
    const Measure1D& body = boundary ? m->without_atom_at_zero() : *m;
    if (body.nonnegative().status == Status::fails) throw std::invalid_argument(std::string("TC data: ") + name + " is signed");
    if (m->is_probability() != Status::holds)
      throw std::invalid_argument(std::string("TC data: ") + name + " does not have mass 1");
  }
  if (sign(y0_sq()) != Sign::positive) throw std::invalid_argument("TC data: eta_y has no mass off 0");
  if (sign(mu_x.moment(1)) != Sign::positive) throw std::invalid_argument("TC data: mu_x has no mass off 0");
}

WeightField tc_field(const TcData& tc, const std::string& origin) {
  tc.validate();
  struct Cache {
    std::vector<Scalar> mx, ey, xi, et;
    Scalar c;
  };
  auto cache = std::make_shared<Cache>();
  cache->mx = moments(tc.mu_x, kCached);
  cache->ey = moments(tc.eta_y, kCached);
  cache->xi = moments(tc.xi, kCached);
  cache->et = moments(tc.eta, kCached);
  cache->c = tc.c();
  auto data = std::make_shared<const TcData>(tc);
  auto mom = [](const std::vector<Scalar>& v, const Measure1D& mu, long k) {
    return k < static_cast<long>(v.size()) ? v[k] : mu.moment(static_cast<unsigned long>(k));
  };
  auto gamma = [cache, data, mom](long k1, long k2) -> Scalar {
    if (k1 == 0 && k2 == 0) return Scalar(1);
    if (k2 == 0) return mom(cache->mx, data->mu_x, k1);
    if (k1 == 0) return mom(cache->ey, data->eta_y, k2);
    return cache->c * mom(cache->xi, data->xi, k1 - 1) * mom(cache->et, data->eta, k2 - 1);
  };
  FieldMeta meta;
  meta.origin = origin;
  meta.tensor_from = Point{1, 1};
  meta.subnormal_corners.push_back({1, 1});
  if (r10_subnormal(tc).holds()) meta.subnormal_corners.push_back({0, 1});
  if (r01_subnormal(tc).holds()) meta.subnormal_corners.push_back({1, 0});
  if (flat_axis(tc.xi, tc.mu_x)) meta.h_flat = 1;
  if (flat_axis(tc.eta, tc.eta_y)) meta.v_flat = 1;
  meta.tc = data;
  return WeightField::from_moments(gamma, meta);
}

TcData tc_power_summand(const TcData& tc, long m, long n, long i, long j) {
  if (m < 1 || n < 1 || i < 0 || i >= m || j < 0 || j >= n) throw std::invalid_argument("bad power summand index");
  const Rational rm(m), rn(n);
  TcData out;
  if (j == 0) {
    out.mu_x = normalized(tc.mu_x, i).power(rm);
  } else if (i == 0) {
    if (!tc.r()) throw std::domain_error("power summand needs ‖1/s‖_xi finite");
    const Measure1D xt = inv_s(tc.xi);
    const Scalar a = tc.c() * tc.eta.moment(j - 1) / tc.gamma(0, j);
    out.mu_x = xt.power(rm).scaled(a) + Measure1D::dirac(Scalar(0), Scalar(1) - a * xt.mass());
  } else {
    out.mu_x = normalized(tc.xi, i - 1).power(rm);
  }
  if (i == 0) {
    out.eta_y = normalized(tc.eta_y, j).power(rn);
  } else if (j == 0) {
    if (!tc.eta.power_integral(-1)) throw std::domain_error("power summand needs ‖1/t‖_eta finite");
    const Measure1D et = inv_s(tc.eta);
    const Scalar b = tc.c() * tc.xi.moment(i - 1) / tc.gamma(i, 0);
    out.eta_y = et.power(rn).scaled(b) + Measure1D::dirac(Scalar(0), Scalar(1) - b * et.mass());
  } else {
    out.eta_y = normalized(tc.eta, j - 1).power(rn);
  }
  out.xi = normalized(tc.xi, m + i - 1).power(rm);
  out.eta = normalized(tc.eta, n + j - 1).power(rn);
  out.x_sq = tc.gamma(m + i, n + j) / tc.gamma(i, n + j);
  return out;
}

Verdict r10_subnormal(const TcData& tc) {
  auto r = tc.r();
  if (!r) return fails_verdict("R10: r = ‖1/s‖_xi is infinite");
  const Measure1D lhs = normalized(tc.eta_y, 1);
  const Measure1D rhs = tc.eta.scaled(tc.x_sq * *r);
  Verdict v = from_measure(dominates(lhs, rhs), "R10: (eta_y)_1 >= x^2 r eta");
  if (!r->is_exact()) v.track = Track::approx;
  return v;
}

Verdict r01_subnormal(const TcData& tc) {
  auto ninv = tc.eta.power_integral(-1);
  if (!ninv) return fails_verdict("R01: ‖1/t‖_eta is infinite");
  const Scalar b10 = tc.c() / tc.mu_x.moment(1);
  const Measure1D lhs = normalized(tc.mu_x, 1);
  const Measure1D rhs = tc.xi.scaled(b10 * *ninv);
  Verdict v = from_measure(dominates(lhs, rhs), "R01: (mu_x)_1 >= beta^2_(1,0) ‖1/t‖_eta xi");
  if (!ninv->is_exact()) v.track = Track::approx;
  return v;
}

Measure2D tc_mu_m(const TcData& tc) {
  auto r = tc.r();
  if (!r) throw std::domain_error("R10 measure needs ‖1/s‖_xi finite");
  return Measure2D::product(inv_s(tc.xi).scaled(tc.x_sq), tc.eta) +
         Measure2D::product(Measure1D::dirac(Scalar(0)), normalized(tc.eta_y, 1) - tc.eta.scaled(tc.x_sq * *r));
}

Verdict screen_h0(const TcData& tc) {
  Verdict out = holds_verdict("rows and columns subnormal");
  Verdict row0 = from_measure(tc.mu_x.nonnegative(), "row 0 Berger measure");
  Verdict col0 = from_measure(tc.eta_y.nonnegative(), "column 0 Berger measure");
  auto r = tc.r();
  Verdict rows = r ? from_measure(moment_dominated(tc.eta.scaled(tc.x_sq * *r), normalized(tc.eta_y, 1), 0),
                                  "rows k2 >= 1 extend xi")
                   : fails_verdict("rows k2 >= 1: ‖1/s‖_xi is infinite");
  auto ninv = tc.eta.power_integral(-1);
  Verdict cols = ninv ? from_measure(moment_dominated(tc.xi.scaled(tc.c() * *ninv), tc.mu_x.t_weight(1, Scalar(1)), 0),
                                     "columns k1 >= 1 extend eta")
                      : fails_verdict("columns k1 >= 1: ‖1/t‖_eta is infinite");
  out.chain = {{"row 0", row0}, {"rows k2 >= 1", rows}, {"column 0", col0}, {"columns k1 >= 1", cols}};
  for (const auto& [name, v] : out.chain) {
    if (v.status == Status::holds) continue;
    if (out.holds() || (v.fails() && !out.fails())) out.detail = v.detail;
    out.status = both(out.status, v.status);
  }
  return out;
}

namespace {

WeightSeq row_seq(const WeightField& t, long k2, long depth) {
  if (t.meta().h_flat) {
    std::vector<Scalar> prefix;
    for (long k1 = 0; k1 < *t.meta().h_flat; ++k1) prefix.push_back(t.alpha_sq(k1, k2));
    return WeightSeq::constant(prefix, t.alpha_sq(*t.meta().h_flat, k2));
  }
  (void)depth;
  ClosedForm cf;
  cf.f = [t, k2](long n) { return t.alpha_sq(n, k2); };
  cf.name = "row " + std::to_string(k2);
  return WeightSeq::closed_form({}, cf);
}

WeightSeq col_seq(const WeightField& t, long k1) {
  if (t.meta().v_flat) {
    std::vector<Scalar> prefix;
    for (long k2 = 0; k2 < *t.meta().v_flat; ++k2) prefix.push_back(t.beta_sq(k1, k2));
    return WeightSeq::constant(prefix, t.beta_sq(k1, *t.meta().v_flat));
  }
  ClosedForm cf;
  cf.f = [t, k1](long n) { return t.beta_sq(k1, n); };
  cf.name = "column " + std::to_string(k1);
  return WeightSeq::closed_form({}, cf);
}

Verdict slice_subnormal(const WeightSeq& w, long depth) {
  BackExtResult b = is_subnormal(w);
  if (b.verdict.status != Status::undecided) return b.verdict;
  for (int k = 1; k <= 4; ++k) {
    Verdict h = is_k_hyponormal(w, k, depth);
    if (h.fails()) return tag(h, std::to_string(k) + "-hyponormality");
  }
  return undecided_verdict("screened: k-hyponormal up to k = 4");
}

}  // namespace

Verdict screen_h0(const WeightField& t, long depth) {
  if (t.meta().tc) return screen_h0(*t.meta().tc);
  const long w1 = window_end(t.meta().h_flat, depth);
  const long w2 = window_end(t.meta().v_flat, depth);
  Verdict out = holds_verdict("rows and columns subnormal");
  for (long k2 = 0; k2 <= w2; ++k2) {
    Verdict v = slice_subnormal(row_seq(t, k2, depth), depth);
    if (v.status != Status::holds) {
      v = tag(v, "row " + std::to_string(k2));
      v.point = Point{0, k2};
      if (v.fails()) return v;
      if (out.holds()) out = v;
    }
  }
  for (long k1 = 0; k1 <= w1; ++k1) {
    Verdict v = slice_subnormal(col_seq(t, k1), depth);
    if (v.status != Status::holds) {
      v = tag(v, "column " + std::to_string(k1));
      v.point = Point{k1, 0};
      if (v.fails()) return v;
      if (out.holds()) out = v;
    }
  }
  if (out.holds() && !(t.meta().h_flat && t.meta().v_flat)) {
    out = undecided_verdict("slices inside the window are subnormal; the window is not closed by flat axes");
    out.truncated_at = std::max(w1, w2);
  }
  return out;
}

Verdict in_tc(const WeightField& t, long depth) {
  Verdict h0 = screen_h0(t, depth);
  Verdict core = is_tensor_form(restriction(t, 1, 1), depth);
  Verdict v;
  v.status = both(h0.status, core.status);
  v.detail = h0.holds() ? core.detail : h0.detail;
  v.chain = {{"H0", h0}, {"core tensor", core}};
  return v;
}

Verdict in_a_k(const WeightField& t, const Point& k, long depth) {
  Verdict h0 = screen_h0(t, depth);
  Verdict core = is_tensor_form(restriction(t, k[1] + 1, k[0] + 1), depth);
  Verdict v;
  v.status = both(h0.status, core.status);
  v.detail = h0.holds() ? core.detail : h0.detail;
  v.chain = {{"H0", h0}, {"restricted core tensor", core}};
  return v;
}

BackExt2Result subnormal_tc(const TcData& tc) {
  BackExt2Result out;
  Verdict r10 = r10_subnormal(tc);
  if (!r10.holds()) {
    out.verdict = r10;
    out.verdict.chain = {{"R10", r10}};
    return out;
  }
  out = backext2(tc.y0_sq(), tc_mu_m(tc), tc.mu_x);
  Verdict ext = out.verdict;
  out.verdict.chain = {{"R10", r10}, {"backward extension", ext}};
  if (r10.track == Track::approx) out.verdict.track = Track::approx;
  return out;
}

BackExt2Result subnormal_tc(const WeightField& t) {
  if (!t.meta().tc) throw std::invalid_argument("subnormal_tc: field carries no TC parameters");
  return subnormal_tc(extract_tc(t));
}

PowerVertical power_vertical_subnormal(const TcData& tc) {
  PowerVertical out;
  out.h1 = r10_subnormal(tc);
  auto r = tc.r();
  if (!r) {
    out.h0 = fails_verdict("‖1/s‖_xi is infinite");
  } else {
    const Scalar beta1 = tc.eta.moment(1);
    const Scalar y1 = tc.eta_y.moment(2) / tc.eta_y.moment(1);
    const Measure1D eta1 = normalized(tc.eta, 1).power(Rational(2));
    const Measure1D etay2 = normalized(tc.eta_y, 2).power(Rational(2));
    const Scalar coef = tc.x_sq * beta1 / y1;
    const Measure1D rest = etay2 - eta1.scaled(coef * *r);
    Verdict restv = from_measure(rest.nonnegative(), "R10 of the even-row summand");
    if (!restv.holds()) {
      out.h0 = restv;
    } else {
      Measure2D mu_hm = Measure2D::product(inv_s(tc.xi).scaled(coef), eta1) + Measure2D::product(Measure1D::dirac(Scalar(0)), rest);
      out.h0 = backext2(tc.y0_sq() * y1, mu_hm, tc.mu_x).verdict;
    }
  }
  out.combined = holds_verdict("both summands subnormal");
  out.combined.status = both(out.h0.status, out.h1.status);
  out.combined.chain = {{"H0", out.h0}, {"H1", out.h1}};
  out.generic_h0 = subnormal_tc(tc_power_summand(tc, 1, 2, 0, 0)).verdict;
  out.generic_h1 = subnormal_tc(tc_power_summand(tc, 1, 2, 0, 1)).verdict;
  return out;
}

Verdict power_subnormal(const TcData& tc, long m, long n) {
  Verdict out = holds_verdict("every summand subnormal");
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) {
      Verdict v = subnormal_tc(tc_power_summand(tc, m, n, i, j)).verdict;
      const std::string name = "residue (" + std::to_string(i) + "," + std::to_string(j) + ")";
      out.chain.push_back({name, v});
      if (v.status != Status::holds && out.status != Status::fails) {
        out.status = v.status;
        out.detail = name + ": " + v.detail;
      }
      if (v.track == Track::approx) out.track = Track::approx;
    }
  return out;
}

Verdict monomial_subnormal(const TcData& tc, long m, long n, long reach) {
  const WeightField t = tc_field(tc, "monomial");
  Verdict out = holds_verdict("all orbits subnormal");
  for (const auto& orbit : monomial_summands(t, m, n, reach)) {
    BackExtResult b = is_subnormal(orbit.seq);
    if (b.verdict.status != Status::holds) {
      Verdict v = tag(b.verdict, "orbit from " + point_str(orbit.start));
      v.point = orbit.start;
      if (v.fails()) return v;
      if (out.holds()) out = v;
    }
  }
  // Starts (0, s2), s2 >= 1, and (s1, 0), s1 >= 0; interior starts lie in the
  // product core and are always subnormal.
  auto r = tc.r();
  Verdict axis2 = r ? from_measure(moment_dominated(tc.eta.scaled(tc.x_sq * *r), normalized(tc.eta_y, 1), 0),
                                   "starts (0,s2)")
                    : fails_verdict("starts (0,s2): ‖1/s‖_xi is infinite");
  auto ninv = tc.eta.power_integral(-1);
  Verdict axis1;
  if (!ninv || !r) {
    axis1 = fails_verdict("starts (s1,0): a 1/t norm is infinite");
  } else {
    const Scalar cn = tc.c() * *ninv;
    Sign s0 = compare(cn * *r, Scalar(1));
    if (s0 == Sign::positive) {
      axis1 = fails_verdict("start (0,0): C ‖1/t‖_eta r > 1");
    } else {
      axis1 = from_measure(moment_dominated(tc.xi.scaled(cn), tc.mu_x.t_weight(1, Scalar(1)), 0), "starts (s1,0)");
      if (s0 == Sign::tie && axis1.holds()) axis1 = undecided_verdict("start (0,0) within tolerance");
    }
  }
  Verdict fam;
  fam.status = both(axis1.status, axis2.status);
  fam.chain = {{"starts (s1,0)", axis1}, {"starts (0,s2)", axis2}};
  fam.detail = !axis1.holds() ? axis1.detail : axis2.detail;
  if (out.holds() && fam.fails() && fam.chain.size() == 2) {
    // The failing start may lie beyond the explicit window.
    out = fam;
  } else if (out.holds()) {
    out.status = fam.status;
    if (!fam.holds()) out.detail = fam.detail;
  }
  out.chain.insert(out.chain.end(), fam.chain.begin(), fam.chain.end());
  return out;
}

const TcData& extract_tc(const WeightField& t) {
  if (!t.meta().tc) throw std::invalid_argument("field carries no TC parameters");
  const TcData& tc = *t.meta().tc;
  for (long d = 0; d <= 6; ++d)
    for (long k1 = 0; k1 <= d; ++k1) {
      const long k2 = d - k1;
      if (!equal(tc.gamma(k1, k2), t.gamma_unchecked({k1, k2})))
        throw std::invalid_argument("TC parameters disagree with the field at " + point_str({k1, k2}));
    }
  return tc;
}

}  // namespace shiftlab
