#include "shiftlab/families.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace shiftlab {

namespace {

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so draws are reduced by hand.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : g_(seed) {}
  long upto(long n) { return static_cast<long>(g_() % static_cast<std::uint64_t>(n)); }
  long between(long lo, long hi) { return lo + upto(hi - lo + 1); }
  Scalar frac(long lo, long hi, long den) { return Scalar(between(lo, hi), den); }

  // count positive weights summing to 1.
  std::vector<Scalar> weights(int count) {
    std::vector<long> raw(count);
    long total = 0;
    for (auto& r : raw) total += (r = between(1, 6));
    std::vector<Scalar> out;
    for (long r : raw) out.push_back(Scalar(r, total));
    return out;
  }

  // Probability measure with 2-3 atoms at distinct points k/8 in (0,1].
  Measure1D atomic() {
    const int count = static_cast<int>(between(2, 3));
    std::vector<long> pos;
    while (static_cast<int>(pos.size()) < count) {
      const long k = between(1, 8);
      if (std::find(pos.begin(), pos.end(), k) == pos.end()) pos.push_back(k);
    }
    const auto w = weights(count);
    Measure1D m;
    for (int i = 0; i < count; ++i) m = m + Measure1D::dirac(Scalar(pos[i], 8), w[i]);
    return m;
  }

 private:
  std::mt19937_64 g_;
};

// Moves every atom up by one step of 1/8 (capped at 1): moments can only grow.
Measure1D pushed(const Measure1D& m) {
  Measure1D out;
  for (const auto& a : m.atoms()) out = out + Measure1D::dirac(min(a.c + Scalar(1, 8), Scalar(1)), a.w);
  return out;
}

Measure1D inv_s(const Measure1D& m) { return m.t_weight(-1, Scalar(1)); }

// Berger measure of the shift (w, tail) where tail has Berger measure mu.
Measure1D extend(const Measure1D& mu, const Scalar& w) {
  const Scalar rest = Scalar(1) - w * *mu.power_integral(-1);
  Measure1D out = inv_s(mu).scaled(w);
  return rest.is_zero() ? out : out + Measure1D::dirac(Scalar(0), rest);
}

std::optional<TcInstance> one_tc(Draw& d, int recipe) try {
  TcData tc;
  tc.xi = d.atomic();
  tc.eta = d.atomic();
  const Scalar r = *tc.xi.power_integral(-1);
  const Scalar n_eta = *tc.eta.power_integral(-1);
  tc.x_sq = d.frac(2, 8, 8) / r;

  // Rows k2 >= 1: (eta_y)_1 = x^2 r eta + lambda, or its moment-dominating push.
  const Measure1D base = tc.eta.scaled(tc.x_sq * r);
  const Scalar spare = Scalar(1) - tc.x_sq * r;
  Measure1D ey1 = recipe == 2 ? pushed(base) : base;
  if (!spare.is_zero()) ey1 = ey1 + d.atomic().scaled(spare);
  const Scalar n1 = *ey1.power_integral(-1);

  Scalar y0 = Scalar(1) / n1;
  y0 = min(y0, Scalar(1) / (tc.x_sq * n_eta * r));
  y0 = y0 * d.frac(4, 8, 8);
  tc.eta_y = extend(ey1, y0);

  std::string name;
  if (recipe == 0 || recipe == 1 || recipe == 2) {
    // Bottom row built around the extremal marginal of the R10 measure.
    const Measure2D mu_m = Measure2D::product(inv_s(tc.xi).scaled(tc.x_sq), tc.eta) +
                           Measure2D::product(Measure1D::dirac(Scalar(0)), ey1 - tc.eta.scaled(tc.x_sq * r));
    const Scalar p = y0 * *mu_m.inv_t_norm();
    Measure1D ext = mu_m.extremal().marginal_x().scaled(p);
    if (recipe == 1) ext = ext.scaled(Scalar(1) - d.frac(1, 4, 16));
    Measure1D zeta = d.atomic();
    if (d.upto(2) == 0) zeta = zeta.scaled(Scalar(1, 2)) + Measure1D::dirac(Scalar(0), Scalar(1, 2));
    tc.mu_x = ext + zeta.scaled(Scalar(1) - ext.mass());
    name = recipe == 0 ? "extension" : recipe == 1 ? "thinned extension" : "pushed R10";
  } else {
    // Columns k1 >= 1: mu_x s = C ‖1/t‖_eta xi' + omega.
    const Scalar c = y0 * tc.x_sq;
    const Measure1D xi_p = d.upto(2) == 0 ? tc.xi : pushed(tc.xi);
    Measure1D s_mu = xi_p.scaled(c * n_eta);
    const Scalar used = inv_s(s_mu).mass();
    const Scalar budget = (Scalar(1) - used) * d.frac(0, 8, 8);
    if (!budget.is_zero()) {
      const Measure1D rho = d.atomic();
      s_mu = s_mu + rho.scaled(budget / *rho.power_integral(-1));
    }
    const Measure1D mu = inv_s(s_mu);
    const Scalar rest = Scalar(1) - mu.mass();
    tc.mu_x = rest.is_zero() ? mu : mu + Measure1D::dirac(Scalar(0), rest);
    name = "column built";
  }
  if (tc.mu_x.nonnegative().status != Status::holds) return std::nullopt;
  tc.validate();
  if (!screen_h0(tc).holds()) return std::nullopt;
  return TcInstance{tc, name};
} catch (const std::exception&) {
  // Draws that leave the measure algebra (signed R10 parts, infinite norms).
  return std::nullopt;
}

}  // namespace

std::vector<TcInstance> random_tc_instances(std::uint64_t seed, int count) {
  Draw d(seed);
  std::vector<TcInstance> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 50 * count + 100) throw std::runtime_error("random_tc_instances: too many rejected draws");
    if (auto inst = one_tc(d, static_cast<int>(out.size() % 4))) out.push_back(*inst);
  }
  return out;
}

std::vector<FlatParams> random_flat_instances(std::uint64_t seed, int count) {
  Draw d(seed);
  std::vector<FlatParams> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 50 * count + 100) throw std::runtime_error("random_flat_instances: too many rejected draws");
    FlatParams f;
    f.a_sq = d.frac(1, 9, 10);
    f.b_sq = d.frac(2, 8, 8);
    // eta1: an atom at b^2, sometimes heavier than a^2, plus 1-2 atoms elsewhere.
    const Scalar wb = d.frac(1, 9, 10);
    const Measure1D other = d.atomic();
    if (!other.atom_mass(f.b_sq).is_zero()) continue;
    f.eta1 = Measure1D::dirac(f.b_sq, wb) + other.scaled(Scalar(1) - wb);
    const Scalar p = d.frac(0, 4, 10), q = d.frac(1, 4, 10);
    Measure1D rho;
    const long k1 = d.between(1, 7), k2 = d.between(1, 7);
    rho = Measure1D::dirac(Scalar(k1, 8), Scalar(1, 2)) + Measure1D::dirac(Scalar(k2, 8), Scalar(1, 2));
    f.xi = rho.scaled(Scalar(1) - p - q) + Measure1D::dirac(Scalar(1), q);
    if (!p.is_zero()) f.xi = f.xi + Measure1D::dirac(Scalar(0), p);
    f.beta0_sq = Scalar(1, 100);
    try {
      f.validate();
    } catch (const std::invalid_argument&) {
      continue;
    }
    // beta_0^2 around the bound, with one draw in five exactly on it.
    const Scalar n = f.inv_norm(), ab = f.a_sq / f.b_sq;
    Scalar bound = min(min(f.p() / (n - ab), f.q() / ab), Scalar(1) / n);
    if (bound.is_zero()) bound = Scalar(1, 2) / n;
    static const Scalar factors[] = {Scalar(1, 2), Scalar(3, 4), Scalar(1), Scalar(5, 4), Scalar(3, 2)};
    f.beta0_sq = bound * factors[d.upto(5)];
    out.push_back(f);
  }
  return out;
}

}  // namespace shiftlab
