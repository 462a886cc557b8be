#include "sadic/io.hpp"

#include <fstream>
#include <sstream>

namespace sadic {

namespace {

Int int_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw Error(Errc::parse_error, where + ": not an integer");
    return x;
  }
  throw Error(Errc::parse_error, where + ": expected an integer");
}

TauParams tau_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::parse_error, where + ": expected [m, n, r]");
  TauParams t{int_of(j[0], where), int_of(j[1], where), int_of(j[2], where)};
  try {
    t.validate();
  } catch (const Error& e) {
    throw Error(Errc::invalid_params, where + ": " + e.what());
  }
  return t;
}

// big values go out as decimal strings
Json big(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json tau_json(const TauParams& t) { return Json::array({big(t.m), big(t.n), big(t.r)}); }

}  // namespace

SadicSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "system must be a JSON object");
  SadicSystem s;
  if (!j.contains("pi")) throw Error(Errc::parse_error, "missing \"pi\"");
  const Json& pi = j["pi"];
  if (pi.is_object() && pi.contains("0") && pi.contains("1") && pi["0"].is_string() && pi["1"].is_string()) {
    s.v0 = pi["0"].get<std::string>();
    s.u0 = pi["1"].get<std::string>();
  } else if (pi.is_array() && pi.size() == 2 && pi[0].is_string() && pi[1].is_string()) {
    s.v0 = pi[0].get<std::string>();
    s.u0 = pi[1].get<std::string>();
  } else {
    throw Error(Errc::parse_error, "\"pi\" must give the images of 0 and 1 as strings");
  }
  if (j.contains("taus")) {
    if (!j["taus"].is_array()) throw Error(Errc::parse_error, "\"taus\" must be an array");
    for (std::size_t i = 0; i < j["taus"].size(); ++i) s.taus.push_back(tau_of(j["taus"][i], "tau entry " + std::to_string(i)));
  }
  if (j.contains("repeat")) {
    if (j["repeat"] != "last") throw Error(Errc::parse_error, "\"repeat\" only accepts \"last\"");
    s.repeat_last = true;
  }
  if (j.contains("rule")) {
    const Json& r = j["rule"];
    if (!r.is_object()) throw Error(Errc::parse_error, "\"rule\" must be an object");
    DivisibilityRule rule;
    rule.base = r.value("base", 2UL);
    rule.shift = r.value("shift", 2UL);
    if (!r.contains("when_divisible") || !r.contains("fallback"))
      throw Error(Errc::parse_error, "\"rule\" needs when_divisible and fallback");
    rule.when_divisible = tau_of(r["when_divisible"], "rule.when_divisible");
    rule.fallback = tau_of(r["fallback"], "rule.fallback");
    s.rule = rule;
  }
  s.validate();
  return s;
}

Json system_to_json(const SadicSystem& sys) {
  Json j;
  j["pi"] = {{"0", sys.v0}, {"1", sys.u0}};
  Json taus = Json::array();
  for (const auto& t : sys.taus) taus.push_back(tau_json(t));
  j["taus"] = taus;
  if (sys.repeat_last) j["repeat"] = "last";
  if (sys.rule) {
    j["rule"] = {{"base", sys.rule->base},
                 {"shift", sys.rule->shift},
                 {"when_divisible", tau_json(sys.rule->when_divisible)},
                 {"fallback", tau_json(sys.rule->fallback)}};
  }
  return j;
}

TargetSpec target_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "target must be a JSON object");
  TargetSpec t;
  if (j.contains("odometer")) {
    const Json& o = j["odometer"];
    const Json* list = &o;
    if (o.is_object()) {
      if (!o.contains("repeat")) throw Error(Errc::parse_error, "odometer object needs \"repeat\"");
      list = &o["repeat"];
      t.odometer_repeat = true;
    }
    if (!list->is_array()) throw Error(Errc::parse_error, "odometer factors must be an array");
    for (const auto& y : *list) {
      if (!y.is_number_unsigned()) throw Error(Errc::parse_error, "odometer factors must be positive integers");
      t.odometer.push_back(y.get<unsigned long>());
    }
  }
  if (j.contains("nil_exponents")) {
    for (const auto& e : j["nil_exponents"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned())
        throw Error(Errc::parse_error, "nil_exponents entries are [p, e|\"inf\"]");
      unsigned long p = e[0].get<unsigned long>();
      if (e[1].is_string() && e[1] == "inf")
        t.nil[p] = ExtNat::inf();
      else if (e[1].is_number_unsigned())
        t.nil[p] = ExtNat::exact(e[1].get<unsigned long>());
      else
        throw Error(Errc::parse_error, "nil exponent must be a natural number or \"inf\"");
    }
  }
  if (j.contains("delta")) {
    const Json& d = j["delta"];
    if (d.is_string())
      t.delta = parse_rat(d.get<std::string>());
    else if (d.is_number_integer())
      t.delta = Rat(d.get<long>());
    else
      throw Error(Errc::parse_error, "delta must be a \"num/den\" string");
  }
  t.validate();
  return t;
}

Json target_to_json(const TargetSpec& t) {
  Json j;
  Json ys = Json::array();
  for (auto y : t.odometer) ys.push_back(y);
  if (t.odometer_repeat)
    j["odometer"] = {{"repeat", ys}};
  else
    j["odometer"] = ys;
  Json nil = Json::array();
  for (const auto& [p, e] : t.nil) nil.push_back(Json::array({p, e.kind == ExtNat::Kind::finite ? Json(e.value) : Json("inf")}));
  j["nil_exponents"] = nil;
  j["delta"] = rat_str(t.delta);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

Json report_header(const std::string& command) { return {{"schema", kSchemaVersion}, {"command", command}}; }

Json to_json(const Rat& q) { return rat_str(q); }

Json to_json(const Interval& I) { return {{"lo", rat_str(I.lo)}, {"hi", rat_str(I.hi)}, {"approx", to_double(I.mid())}}; }

Json to_json(const ExtNat& e) {
  Json j{{"value", e.str()}};
  if (e.kind == ExtNat::Kind::growing) j["largest_seen"] = e.value;
  j["certified"] = e.certified;
  return j;
}

Json to_json(const ExponentMap& m) {
  Json j = Json::object();
  for (const auto& [p, e] : m) j[std::to_string(p)] = to_json(e);
  return j;
}

Json to_json(const EigenvalueGroupDescriptor& d) {
  Json j;
  j["depth"] = d.depth;
  j["alpha"] = to_json(d.alpha);
  j["exact"] = d.exponents.exact;
  j["L"] = to_json(d.exponents.L);
  j["R"] = to_json(d.exponents.R);
  Json offs = Json::array();
  for (const auto& o : d.offsets) offs.push_back({{"q", rat_str(o.q)}, {"rho", rat_str(o.rho)}});
  j["offsets"] = offs;
  if (d.tail) {
    Json a = Json::array(), b = Json::array();
    for (const auto& x : d.tail->a) a.push_back(big(x));
    for (const auto& x : d.tail->b) b.push_back(big(x));
    j["tail"] = {{"v_minus1", big(d.tail->v_minus1)}, {"v0", big(d.tail->v0)}, {"a", a}, {"b", b}};
  } else {
    j["tail"] = nullptr;
  }
  return j;
}

Json to_json(const MEFDescriptor& m) {
  Json j;
  j["label"] = m.label();
  j["depth"] = m.depth;
  j["certified"] = m.certified;
  Json mod = Json::array();
  for (const auto& g : m.odometer.moduli) mod.push_back(big(g));
  j["odometer"] = {{"label", m.odometer.label()},
                   {"exact", m.odometer.exact},
                   {"finite", m.odometer.finite},
                   {"moduli", mod},
                   {"exponents", to_json(m.odometer.exponents)}};
  j["nilmanifold"] = {{"label", m.nilmanifold.label()},
                      {"exact", m.nilmanifold.exact},
                      {"alpha", to_json(m.nilmanifold.alpha)},
                      {"exponents", to_json(m.nilmanifold.exponents)}};
  return j;
}

Json to_json(const ConstraintReport& r) {
  Json v = Json::array();
  for (const auto& x : r.verdicts) v.push_back({{"k", x.k}, {"rule", x.rule}, {"ok", x.ok}, {"label", x.label}});
  return {{"status", r.status()}, {"pass", r.pass}, {"verdicts", v}};
}

Json to_json(const DecayReport& d) {
  Json eps = Json::array();
  for (const auto& e : d.eps) eps.push_back(rat_str(e));
  return {{"eps", eps},
          {"kappa_fit", d.kappa_fit},
          {"C_fit", d.C_fit},
          {"summable", d.summable},
          {"envelope_ok", d.envelope_ok},
          {"certified", d.certified}};
}

Json to_json(const LimsupEstimate& e) {
  Json vals = Json::array();
  for (const auto& s : e.values)
    vals.push_back({{"k", s.k}, {"r_type", s.r_type}, {"q", big(s.q)}, {"p", big(s.p)}});
  Json j{{"estimate", rat_str(e.estimate)},
         {"estimate_approx", to_double(e.estimate)},
         {"global_max", rat_str(e.global_max)},
         {"window_start", e.window_start},
         {"C", big(e.C)},
         {"special_lengths", vals}};
  j["closed_form"] = e.closed_form ? Json(*e.closed_form) : Json(nullptr);
  return j;
}

Json to_json(const BalanceSeries& b) {
  Json lo = Json::array(), hi = Json::array(), bd = Json::array();
  for (std::size_t k = 0; k < b.term_hi.size(); ++k) {
    lo.push_back(to_double(b.term_lo[k]));
    hi.push_back(to_double(b.term_hi[k]));
    bd.push_back(to_double(b.bound[k]));
  }
  return {{"C", rat_str(b.C)},
          {"term_lo", lo},
          {"term_hi", hi},
          {"bound", bd},
          {"partial_sum", b.partial_hi.empty() ? 0.0 : to_double(b.partial_hi.back())},
          {"rate_fit", b.rate_fit},
          {"bound_ok", b.bound_ok}};
}

Json to_json(const LetterFrequency& f) {
  Json j = Json::object();
  for (std::size_t c = 0; c < f.alphabet.size(); ++c)
    j[std::string(1, f.alphabet[c])] = {{"coef", rat_str(f.coef[c])}, {"shift", rat_str(f.shift[c])}, {"freq", to_json(f.freq[c])}};
  return j;
}

Json to_json(const RealizationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  Json j{{"pass", r.pass()}, {"checks", checks}, {"limsup", rat_str(r.limsup)}, {"limsup_approx", to_double(r.limsup)}};
  if (r.upper_bound != 0) j["analytic_bounds"] = {to_double(r.lower_bound), to_double(r.upper_bound)};
  return j;
}

Json to_json(const ComparisonResult& c) { return {{"verdict", comparison_name(c.verdict)}, {"reason", c.reason}}; }

}  // namespace sadic
