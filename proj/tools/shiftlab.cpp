// shiftlab: classify 2-variable weighted shifts, sweep the Figure-0 family,
// evaluate threshold curves and measures, and run the scripted verifiers.
//
// Exit codes: 0 success or PASS, 1 FAIL or tester disagreement, 2 bad input.

#include "shiftlab/json_io.hpp"
#include "shiftlab/kernels.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace shiftlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path_or_text) {
  try {
    if (!path_or_text.empty() && (path_or_text[0] == '{' || path_or_text[0] == '[')) return json::parse(path_or_text);
    std::ifstream in(path_or_text);
    if (!in) throw UsageError("cannot open '" + path_or_text + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << text;
}

const char* flag(bool b) { return b ? "1" : "0"; }

// ---- classify ----

Verdict pair_in_h_k(const WeightField& t, int k, long depth, Exec exec) {
  const Verdict h0 = screen_h0(t, depth);
  if (h0.fails()) return h0;
  Verdict hyp = is_k_hyponormal_pair(t, k, depth, exec);
  hyp.status = both(h0.status, hyp.status);
  hyp.chain.insert(hyp.chain.begin(), {"H0", h0});
  return hyp;
}

// Every summand of (T1^m, T2^n) in H1.
Verdict power_in_h1(const WeightField& t, long m, long n, long depth, Exec exec) {
  Verdict out = holds_verdict("every summand in H1");
  for (const auto& s : power_pair(t, m, n)) {
    const Verdict v = pair_in_h_k(s.field, 1, depth, exec);
    out.chain.push_back({"summand (" + std::to_string(s.i) + "," + std::to_string(s.j) + ")", v});
    if (v.status != Status::holds && out.status != Status::fails) {
      out.status = v.status;
      out.detail = "summand (" + std::to_string(s.i) + "," + std::to_string(s.j) + "): " + v.detail;
    }
  }
  return out;
}

json classify_field(const WeightField& t, long depth, Exec exec) {
  const Verdict k1 = pair_in_h_k(t, 1, depth, exec);
  const Verdict k2 = k1.fails() ? fails_verdict("not 1-hyponormal") : pair_in_h_k(t, 2, depth, exec);
  bool tensor = false;
  Verdict sub;
  if (t.meta().tc) {
    sub = subnormal_tc(*t.meta().tc).verdict;
  } else if (k1.fails()) {
    sub = fails_verdict("not hyponormal, so not subnormal");
  } else {
    const Verdict tf = is_tensor_form(t, depth);
    const Verdict h0 = screen_h0(t, depth);
    tensor = tf.holds() && h0.holds();
    sub = tensor ? holds_verdict("tensor form with subnormal coordinates")
                 : undecided_verdict("no attached measure data and not of tensor form");
    sub.chain = {{"tensor form", tf}, {"H0", h0}};
  }
  const Verdict p21 = power_in_h1(t, 2, 1, depth, exec);
  const Verdict p12 = power_in_h1(t, 1, 2, depth, exec);

  std::string label;
  if (sub.holds()) label = tensor ? "H_inf (tensor)" : "H_inf";
  else if (k1.fails()) label = "not_H1";
  else if (k2.fails()) label = k1.holds() ? "H1_only" : "undecided";
  else if (k2.holds() && sub.fails()) label = "H2_only";
  else label = "undecided";

  json certs = json::array();
  for (const auto& [name, v] : {std::pair{"H1", k1}, {"H2", k2}, {"H_inf", sub}, {"power21 H1", p21}, {"power12 H1", p12}})
    certs.push_back({{"check", name}, {"verdict", to_json(v)}});
  return {{"k_hypo", {{"k1", to_string(k1.status)}, {"k2", to_string(k2.status)}}},
          {"subnormal", to_string(sub.status)},
          {"power_21", to_string(p21.status)},
          {"power_12", to_string(p12.status)},
          {"label", label},
          {"certificates", certs}};
}

json classify_family(const FamilyParams& p, long depth, Exec exec) {
  json rec = {{"family", family_name(p)}, {"params", to_json(p)}};
  if (auto f = std::get_if<Figure0Params>(&p)) {
    const Figure0Class c = classify_figure0(*f, exec);
    const Verdict p12 = power_in_h1(build_figure0(*f), 1, 2, depth, exec);
    json certs = to_json(c)["certificates"];
    certs.push_back({{"check", "power12 H1"}, {"verdict", to_json(p12)}});
    rec["k_hypo"] = {{"k1", c.in_h1 ? "holds" : "fails"}, {"k2", c.in_h2 ? "holds" : "fails"}};
    rec["subnormal"] = c.in_hinf ? "holds" : "fails";
    rec["power_21"] = c.power21_in_h1 ? "holds" : "fails";
    rec["power_12"] = to_string(p12.status);
    rec["region"] = c.region;
    rec["label"] = c.label;
    rec["certificates"] = certs;
    return rec;
  }
  WeightField t = std::holds_alternative<ExamParams>(p) ? build_exam(std::get<ExamParams>(p))
                                                        : build_flat(std::get<FlatParams>(p));
  json body = classify_field(t, depth, exec);
  if (auto l = std::get_if<FlatParams>(&p)) {
    const Thm4Result r = thm4_subnormal(*l);
    body["thm4"] = {{"bound_sq", to_json(r.bound_sq)}, {"formula", to_json(r.formula)}, {"pipeline", to_json(r.pipeline)}};
    if (r.flag) body["thm4"]["contractivity_flag"] = *r.flag;
  }
  rec.update(body);
  return rec;
}

// ---- sweep ----

std::vector<Scalar> parse_range(const std::string& spec, const char* what) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  if (parts.size() != 3) throw UsageError(std::string(what) + ": expected lo:hi:step, got '" + spec + "'");
  const Scalar lo = Scalar::parse(parts[0]), hi = Scalar::parse(parts[1]), step = Scalar::parse(parts[2]);
  if (sign(step) != Sign::positive) throw UsageError(std::string(what) + ": step must be positive");
  std::vector<Scalar> out;
  for (Scalar x = lo; compare(x, hi) != Sign::positive; x += step) out.push_back(x);
  if (out.empty()) throw UsageError(std::string(what) + ": empty range '" + spec + "'");
  return out;
}

std::string curves_csv(const std::vector<Scalar>& as) {
  std::ostringstream o;
  o << "a,h1,h21,h2,hinf\n";
  for (const Scalar& a : as) {
    o << a.str();
    for (Curve c : {Curve::h1, Curve::h21, Curve::h2, Curve::hinf}) {
      o << ',';
      const Scalar a2 = a * a;
      if (in_domain(c, a2)) o << threshold(c, a2).str();
    }
    o << '\n';
  }
  return o.str();
}

struct Cell {
  bool ok = false, disagree = false;
  Figure0Class c;
  std::string error;
};

int run_sweep(const std::string& a_spec, const std::string& k_spec, bool curves_only, const std::string& format,
              const std::string& out, bool serial) {
  const auto as = parse_range(a_spec, "--a");
  if (curves_only) {
    emit(curves_csv(as), out);
    return 0;
  }
  const auto ks = parse_range(k_spec, "--kappa");
  std::function<Cell(std::size_t)> eval = [&](std::size_t i) {
    Cell cell;
    const Figure0Params p = Figure0Params::from_values(as[i / ks.size()], ks[i % ks.size()]);
    try {
      p.validate();
    } catch (const std::invalid_argument&) {
      cell.error = "out_of_range";
      return cell;
    }
    try {
      cell.c = classify_figure0(p, Exec::serial);
      cell.ok = true;
    } catch (const std::logic_error& e) {
      cell.disagree = true;
      cell.error = e.what();
    }
    return cell;
  };
  const auto cells = map_points<Cell>(as.size() * ks.size(), eval, !serial);
  int rc = 0;
  std::ostringstream o;
  json rows = json::array();
  if (format == "csv") o << "a,kappa,in_h1,in_h2,in_hinf,power21_in_h1,label\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const std::string a = as[i / ks.size()].str(), k = ks[i % ks.size()].str();
    if (c.disagree) {
      rc = 1;
      std::cerr << "disagreement at a = " << a << ", kappa = " << k << ": " << c.error << '\n';
    }
    const std::string label = c.ok ? c.c.label : c.disagree ? "disagreement" : c.error;
    if (format == "csv") {
      o << a << ',' << k << ',';
      if (c.ok) o << flag(c.c.in_h1) << ',' << flag(c.c.in_h2) << ',' << flag(c.c.in_hinf) << ',' << flag(c.c.power21_in_h1);
      else o << ",,,";
      o << ",\"" << label << "\"\n";
    } else {
      json r = {{"a", a}, {"kappa", k}, {"label", label}};
      if (c.ok) {
        r["in_h1"] = c.c.in_h1;
        r["in_h2"] = c.c.in_h2;
        r["in_hinf"] = c.c.in_hinf;
        r["power21_in_h1"] = c.c.power21_in_h1;
      }
      rows.push_back(r);
    }
  }
  emit(format == "csv" ? o.str() : rows.dump(2) + "\n", out);
  return rc;
}

// ---- measure ----

json measure_report(const Measure1D& m, long moments, long weights) {
  json mom = json::array();
  for (long k = 0; k <= moments; ++k) mom.push_back(to_json(m.moment(static_cast<unsigned long>(k))));
  const MeasureVerdict nn = m.nonnegative();
  json rep = {{"measure", to_json(m)},
              {"nonnegative", to_string(nn.status)},
              {"probability", to_string(m.is_probability())},
              {"moments", mom}};
  if (nn.status != Status::fails) {
    auto n = m.inv_t_norm();
    rep["inv_t_norm"] = n ? to_json(*n) : json("infinite");
  }
  if (weights > 0 && nn.status == Status::holds && m.is_probability() == Status::holds) {
    const WeightSeq w = WeightSeq::subnormal(m);
    json ws = json::array();
    for (long i = 0; i < weights; ++i) ws.push_back(to_json(w.weight_sq(i)));
    rep["shift_weights_sq"] = ws;
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyponormality and subnormality tools for 2-variable weighted shifts"};
  app.require_subcommand(1);
  std::string out;
  bool serial = false;
  app.add_option("-o,--out", out, "Write output to this file instead of stdout");
  app.add_flag("--serial", serial, "Evaluate lattice points and grid cells serially");

  auto* classify = app.add_subcommand("classify", "Classify a family instance or a weight field");
  std::string family, a, kappa, params, field;
  long depth = 8;
  classify->add_option("--family", family, "figure0 (with --a and --kappa)");
  classify->add_option("--a", a, "Parameter a as p/q");
  classify->add_option("--kappa", kappa, "Parameter kappa as p/q");
  classify->add_option("--params", params, "Family parameter JSON (file or inline)");
  classify->add_option("--field", field, "Weight field JSON (file or inline)");
  classify->add_option("--depth", depth, "Lattice scan depth")->check(CLI::Range(1, 64));

  auto* sweep = app.add_subcommand("sweep", "Classify the Figure-0 family on a rational grid");
  std::string a_range, k_range, format = "csv";
  bool curves_only = false;
  sweep->add_option("--a", a_range, "lo:hi:step")->required();
  sweep->add_option("--kappa", k_range, "lo:hi:step");
  sweep->add_flag("--curves-only", curves_only, "Emit a,h1,h21,h2,hinf samples only");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* thresh = app.add_subcommand("threshold", "Evaluate a threshold curve, or a_int");
  std::string curve, t_a, t_a_sq, tol = "1/10000";
  thresh->add_option("curve", curve, "h1, h2, h21, hinf or a_int")->required();
  thresh->add_option("--a", t_a, "a as p/q");
  thresh->add_option("--a-sq", t_a_sq, "a^2 as p/q, for irrational a");
  thresh->add_option("--tol", tol, "Bisection tolerance for a_int");

  auto* ver = app.add_subcommand("verify", "Run a scripted theorem check");
  std::string theorem;
  VerifyOptions vopt;
  bool as_json = false;
  ver->add_option("theorem", theorem, "One of the verifier names")->required();
  ver->add_option("--instances", vopt.instances, "Random instances")->check(CLI::Range(1, 100000));
  ver->add_option("--seed", vopt.seed, "Generator seed");
  ver->add_flag("--json", as_json, "Print the JSON report instead of text");

  auto* meas = app.add_subcommand("measure", "Moments and functionals of a measure given as JSON");
  std::string m_in;
  long moments = 6, weights = 0;
  meas->add_option("input", m_in, "Measure JSON (file or inline)")->required();
  meas->add_option("--moments", moments, "Highest moment to print")->check(CLI::Range(0, 200));
  meas->add_option("--weights", weights, "Print this many squared weights of the shift with this Berger measure")
      ->check(CLI::Range(0, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const Exec exec = serial ? Exec::serial : Exec::parallel;

  try {
    if (*classify) {
      const int given = !family.empty() + !params.empty() + !field.empty();
      if (given != 1) throw UsageError("classify needs exactly one of --family, --params, --field");
      json rec;
      if (!field.empty()) {
        const WeightField t = field_from_json(read_json(field));
        rec = {{"family", "field"}};
        rec.update(classify_field(t, depth, exec));
      } else {
        json pj;
        if (!params.empty()) {
          pj = read_json(params);
        } else {
          if (a.empty() || kappa.empty()) throw UsageError("--family needs --a and --kappa");
          pj = {{"family", family}, {"a", a}, {"kappa", kappa}};
        }
        rec = classify_family(family_from_json(pj), depth, exec);
      }
      emit(rec.dump(2) + "\n", out);
      return 0;
    }
    if (*sweep) {
      if (!curves_only && k_range.empty()) throw UsageError("sweep needs --kappa unless --curves-only");
      return run_sweep(a_range, k_range, curves_only, format, out, serial);
    }
    if (*thresh) {
      json rec;
      if (curve == "a_int") {
        const Scalar t = Scalar::parse(tol);
        if (sign(t) != Sign::positive) throw UsageError("--tol must be positive");
        const Scalar v = a_int(t);
        rec = {{"curve", "a_int"}, {"tol", to_json(t)}, {"value", to_json(v)}, {"decimal", v.to_double()}};
      } else {
        const auto c = parse_curve(curve);
        if (!c) throw UsageError("unknown curve '" + curve + "'");
        if (t_a.empty() == t_a_sq.empty()) throw UsageError("threshold needs one of --a, --a-sq");
        Scalar a2;
        if (t_a.empty()) {
          a2 = Scalar::parse(t_a_sq);
        } else {
          const Scalar av = Scalar::parse(t_a);
          a2 = av * av;
        }
        const Scalar v2 = threshold_sq(*c, a2);
        rec = {{"curve", curve},          {"a_sq", to_json(a2)},     {"value_sq", to_json(v2)},
               {"value", to_json(sqrt(v2))}, {"decimal", sqrt(v2).to_double()}};
      }
      emit(rec.dump(2) + "\n", out);
      return 0;
    }
    if (*ver) {
      vopt.exec = exec;
      const VerifyReport r = verify(theorem, vopt);
      std::ostringstream o;
      if (as_json) {
        o << to_json(r).dump(2) << '\n';
      } else {
        o << "verify " << r.theorem << " (seed " << r.seed << ", instances " << vopt.instances << ")\n";
        for (const auto& l : r.lines) o << "  " << (l.pass ? "ok   " : "FAIL ") << l.check << ": " << l.detail << '\n';
        o << (r.pass ? "PASS" : "FAIL") << '\n';
        if (!r.pass) o << to_json(r).dump() << '\n';
      }
      emit(o.str(), out);
      return r.pass ? 0 : 1;
    }
    if (*meas) {
      emit(measure_report(measure_from_json(read_json(m_in)), moments, weights).dump(2) + "\n", out);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cout << json({{"error", "tester disagreement"}, {"detail", e.what()}}).dump(2) << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
