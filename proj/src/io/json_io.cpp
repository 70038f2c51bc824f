#include "shiftlab/json_io.hpp"

#include <stdexcept>

namespace shiftlab {

json to_json(const Scalar& x) {
  if (x.is_exact()) return x.str();
  return "~" + x.str();
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a number as a \"p/q\" string, got " + j.dump());
  const auto s = j.get<std::string>();
  if (!s.empty() && s[0] == '~') return Scalar::approx(Real(s.substr(1)));
  return Scalar::parse(s);
}

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

json scalars(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<Scalar> scalars_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from_json(x));
  return out;
}

// Value of `key`, or the square of `base`; squared keys win.
Scalar squared(const json& j, const std::string& base) {
  if (j.contains(base + "_sq")) return scalar_from_json(j.at(base + "_sq"));
  const Scalar v = scalar_from_json(need(j, base.c_str()));
  return v * v;
}

json rational_json(const Rational& q) { return q.get_str(); }

}  // namespace

json to_json(const Measure1D& m) {
  json atoms = json::array(), pieces = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"c", to_json(a.c)}, {"w", to_json(a.w)}});
  for (const auto& p : m.pieces())
    pieces.push_back({{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"coef", to_json(p.coef)}, {"exp", rational_json(p.e)}});
  return {{"atoms", atoms}, {"pieces", pieces}};
}

Measure1D measure_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure must be an object");
  std::vector<Measure1D::Atom> atoms;
  std::vector<Measure1D::Piece> pieces;
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms")) atoms.push_back({scalar_from_json(need(a, "c")), scalar_from_json(need(a, "w"))});
  if (j.contains("pieces"))
    for (const auto& p : j.at("pieces")) {
      Rational e = 0;
      if (p.contains("exp")) {
        const Scalar s = scalar_from_json(p.at("exp"));
        if (!s.is_exact()) throw std::invalid_argument("density exponent must be exact");
        e = s.exact();
      }
      pieces.push_back(
          {scalar_from_json(need(p, "a")), scalar_from_json(need(p, "b")), scalar_from_json(need(p, "coef")), e});
    }
  return Measure1D(std::move(atoms), std::move(pieces));
}

json to_json(const WeightSeq& w) {
  json tail;
  switch (w.tail_kind()) {
    case WeightSeq::TailKind::constant: tail = {{"kind", "constant"}, {"c", to_json(w.tail_constant())}}; break;
    case WeightSeq::TailKind::measure: tail = {{"kind", "measure"}, {"measure", to_json(w.tail_measure())}}; break;
    case WeightSeq::TailKind::closed_form: tail = {{"kind", "closed_form"}, {"name", w.tail_closed().name}}; break;
  }
  json out = {{"prefix_sq", scalars(w.prefix())}, {"tail", tail}};
  if (w.berger()) out["berger"] = to_json(*w.berger());
  return out;
}

WeightSeq seq_from_json(const json& j) {
  const auto prefix = scalars_from(need(j, "prefix_sq"));
  const json& tail = need(j, "tail");
  const auto kind = need(tail, "kind").get<std::string>();
  WeightSeq w;
  if (kind == "constant") w = WeightSeq::constant(prefix, scalar_from_json(need(tail, "c")));
  else if (kind == "measure") w = WeightSeq::from_measure(prefix, measure_from_json(need(tail, "measure")));
  else if (kind == "closed_form") throw std::invalid_argument("closed_form tails cannot be read back from JSON");
  else throw std::invalid_argument("unknown tail kind '" + kind + "'");
  if (j.contains("berger")) w.with_berger(measure_from_json(j.at("berger")));
  return w;
}

json field_to_json(const WeightField& t, long k1, long k2) {
  json alpha = json::array(), beta = json::array();
  for (long a = 0; a <= k1; ++a) {
    json ra = json::array(), rb = json::array();
    for (long b = 0; b <= k2; ++b) {
      ra.push_back(to_json(t.alpha_sq(a, b)));
      rb.push_back(to_json(t.beta_sq(a, b)));
    }
    alpha.push_back(ra);
    beta.push_back(rb);
  }
  return {{"K1", k1}, {"K2", k2}, {"alpha_sq", alpha}, {"beta_sq", beta}, {"h_tail", "repeat"}, {"v_tail", "repeat"}};
}

WeightField field_from_json(const json& j) {
  for (const char* key : {"h_tail", "v_tail"})
    if (j.contains(key) && j.at(key) != "repeat")
      throw std::invalid_argument(std::string(key) + ": only \"repeat\" is supported");
  auto grid = [&](const char* key) {
    std::vector<std::vector<Scalar>> out;
    const json& g = need(j, key);
    if (!g.is_array()) throw std::invalid_argument(std::string(key) + " must be an array of rows");
    for (const auto& row : g) out.push_back(scalars_from(row));
    return out;
  };
  auto alpha = grid("alpha_sq"), beta = grid("beta_sq");
  if (j.contains("K1") && need(j, "K1").get<long>() + 1 != static_cast<long>(alpha.size()))
    throw std::invalid_argument("K1 does not match alpha_sq");
  if (j.contains("K2") && !alpha.empty() && need(j, "K2").get<long>() + 1 != static_cast<long>(alpha[0].size()))
    throw std::invalid_argument("K2 does not match alpha_sq");
  return WeightField::rect(std::move(alpha), std::move(beta));
}

bool same_weights(const WeightField& a, const WeightField& b, long k1, long k2) {
  for (long x = 0; x <= k1; ++x)
    for (long y = 0; y <= k2; ++y)
      if (!a.alpha_sq(x, y).same(b.alpha_sq(x, y)) || !a.beta_sq(x, y).same(b.beta_sq(x, y))) return false;
  return true;
}

FamilyParams family_from_json(const json& j) {
  const auto name = need(j, "family").get<std::string>();
  if (name == "figure0") {
    Figure0Params p{squared(j, "a"), squared(j, "kappa")};
    p.validate();
    return p;
  }
  if (name == "exam") {
    ExamParams p{scalar_from_json(need(j, "x")), scalar_from_json(need(j, "a")), scalar_from_json(need(j, "y")),
                 measure_from_json(need(j, "eta"))};
    p.validate();
    return p;
  }
  if (name == "flat") {
    FlatParams p;
    p.a_sq = squared(j, "a");
    p.b_sq = squared(j, "b");
    p.xi = measure_from_json(need(j, "xi"));
    p.eta1 = measure_from_json(need(j, "eta1"));
    p.beta0_sq = squared(j, "beta0");
    p.validate();
    return p;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

const char* family_name(const FamilyParams& p) {
  static const char* names[] = {"figure0", "exam", "flat"};
  return names[p.index()];
}

json to_json(const FamilyParams& p) {
  json out = {{"family", family_name(p)}};
  if (auto f = std::get_if<Figure0Params>(&p)) {
    out["a_sq"] = to_json(f->a_sq);
    out["kappa_sq"] = to_json(f->kappa_sq);
  } else if (auto e = std::get_if<ExamParams>(&p)) {
    out["x"] = to_json(e->x);
    out["a"] = to_json(e->a);
    out["y"] = to_json(e->y);
    out["eta"] = to_json(e->eta);
  } else if (auto l = std::get_if<FlatParams>(&p)) {
    out["a_sq"] = to_json(l->a_sq);
    out["b_sq"] = to_json(l->b_sq);
    out["xi"] = to_json(l->xi);
    out["eta1"] = to_json(l->eta1);
    out["beta0_sq"] = to_json(l->beta0_sq);
  }
  return out;
}

json to_json(const Verdict& v) {
  json out = {{"status", to_string(v.status)}, {"track", to_string(v.track)}, {"detail", v.detail}};
  if (v.point) out["point"] = {(*v.point)[0], (*v.point)[1]};
  if (v.matrix) {
    json rows = json::array();
    for (std::size_t i = 0; i < v.matrix->dim(); ++i) {
      json r = json::array();
      for (std::size_t k = 0; k < v.matrix->dim(); ++k) r.push_back(to_json((*v.matrix)(i, k)));
      rows.push_back(r);
    }
    out["matrix"] = rows;
  }
  if (v.psd) {
    const auto& p = *v.psd;
    json lower = json::array();
    for (const auto& r : p.lower) lower.push_back(scalars(r));
    out["psd"] = {{"psd", p.psd},         {"status", to_string(p.status)}, {"pivots", p.pivots},
                  {"diagonal", scalars(p.diagonal)}, {"lower", lower},     {"negative_minor", p.negative_minor},
                  {"minor_det", to_json(p.minor_det)}, {"note", p.note}};
  }
  if (v.measure) {
    out["measure"] = {{"status", to_string(v.measure->status)}, {"detail", v.measure->detail}};
    if (v.measure->at) out["measure"]["at"] = to_json(*v.measure->at);
  }
  if (v.truncated_at) out["truncated_at"] = *v.truncated_at;
  if (!v.chain.empty()) {
    json chain = json::array();
    for (const auto& [name, sub] : v.chain) chain.push_back({{"step", name}, {"verdict", to_json(sub)}});
    out["chain"] = chain;
  }
  return out;
}

json to_json(const Figure0Class& c) {
  json certs = json::array();
  for (const auto& [name, v] : c.certificates) certs.push_back({{"check", name}, {"verdict", to_json(v)}});
  return {{"in_h1", c.in_h1},         {"in_h2", c.in_h2}, {"in_hinf", c.in_hinf}, {"power21_in_h1", c.power21_in_h1},
          {"region", c.region},       {"label", c.label}, {"certificates", certs}};
}

json to_json(const VerifyReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) lines.push_back({{"check", l.check}, {"pass", l.pass}, {"detail", l.detail}});
  return {{"theorem", r.theorem}, {"pass", r.pass}, {"seed", r.seed}, {"lines", lines}};
}

}  // namespace shiftlab
