#include "titch/io.hpp"

#include <fstream>
#include <sstream>

#include "titch/errors.hpp"

namespace titch {

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json dist_to_json(const Distribution& d) {
  json terms = json::array();
  for (const auto& [key, coeff] : d.terms()) {
    json t;
    t["angle"] = rat_str(key.loc.v);
    t["order"] = key.order;
    t["coeff"] = cyclo_str(coeff);
    terms.push_back(std::move(t));
  }
  json out;
  out["field_order"] = d.field_order();
  out["terms"] = std::move(terms);
  return out;
}

namespace {

constexpr unsigned kMaxFieldOrder = 10000;
constexpr long long kMaxAngleDenominator = 1000000;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

unsigned get_uint(const json& j, const std::string& path, unsigned lo, unsigned hi) {
  if (!j.is_number_unsigned()) bad(path, "expected a nonnegative integer");
  unsigned long long v = j.get<unsigned long long>();
  if (v < lo || v > hi)
    bad(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
  return static_cast<unsigned>(v);
}

}  // namespace

Distribution dist_from_json(const json& j, unsigned max_order, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (k != "field_order" && k != "terms") bad(path, "unknown key \"" + k + "\"");
  if (!j.contains("field_order")) bad(path + ".field_order", "missing");
  if (!j.contains("terms")) bad(path + ".terms", "missing");
  const unsigned field_order = get_uint(j["field_order"], path + ".field_order", 1, kMaxFieldOrder);
  if (!j["terms"].is_array()) bad(path + ".terms", "expected an array");

  Distribution d(field_order);
  std::size_t idx = 0;
  for (const json& t : j["terms"]) {
    const std::string tpath = path + ".terms[" + std::to_string(idx++) + "]";
    if (!t.is_object()) bad(tpath, "expected an object");
    for (const auto& [k, v] : t.items())
      if (k != "angle" && k != "order" && k != "coeff") bad(tpath, "unknown key \"" + k + "\"");
    if (!t.contains("angle") || !t["angle"].is_string()) bad(tpath + ".angle", "expected a string");
    if (!t.contains("order")) bad(tpath + ".order", "missing");
    if (!t.contains("coeff") || !t["coeff"].is_string()) bad(tpath + ".coeff", "expected a string");

    Rational turns;
    try {
      turns = angle_parse(t["angle"].get<std::string>());
    } catch (const ParseError& e) {
      bad(tpath + ".angle", e.what());
    }
    const Angle loc(turns);
    if (denominator(loc.v) > kMaxAngleDenominator) bad(tpath + ".angle", "denominator too large");
    const unsigned order = get_uint(t["order"], tpath + ".order", 0, max_order);
    CycloNumber coeff;
    try {
      coeff = cyclo_parse(t["coeff"].get<std::string>(), field_order);
    } catch (const ParseError& e) {
      bad(tpath + ".coeff", e.what());
    }
    if (coeff.is_zero()) bad(tpath + ".coeff", "zero coefficients are not stored in canonical form");
    if (!d.coeff_at(loc, order).is_zero()) bad(tpath, "duplicate (angle, order) term");
    d.add_term(loc, order, coeff);
  }
  return d;
}

Instance instance_from_json(const json& j, unsigned max_order) {
  if (!j.is_object()) bad("instance", "expected a top-level object");
  for (const auto& [k, v] : j.items()) {
    if (k != "f" && k != "g" && k != "n" && k != "p" && k != "mode" && k != "suite" &&
        k != "seed" && k != "trial")
      bad("instance", "unknown key \"" + k + "\"");
  }
  Instance inst;
  if (j.contains("f")) inst.f = dist_from_json(j["f"], max_order, "f");
  if (j.contains("g")) inst.g = dist_from_json(j["g"], max_order, "g");
  if (j.contains("n")) inst.n = get_uint(j["n"], "n", 1, 1000);
  if (j.contains("p")) inst.p = get_uint(j["p"], "p", 1, 64);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) bad("mode", "expected a string");
    const std::string m = j["mode"].get<std::string>();
    if (m != "pair" && m != "reflection" && m != "power")
      bad("mode", "expected \"pair\", \"reflection\" or \"power\"");
    inst.mode = m;
  }
  return inst;
}

Instance load_instance_file(const std::string& file, unsigned max_order) {
  std::ifstream in(file);
  if (!in) throw ParseError(file + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     e.what());
  }
  try {
    return instance_from_json(j, max_order);
  } catch (const ParseError& e) {
    throw ParseError(file + ": " + e.what());
  }
}

json instance_to_json(const Instance& inst) {
  json j;
  if (inst.f) j["f"] = dist_to_json(*inst.f);
  if (inst.g) j["g"] = dist_to_json(*inst.g);
  if (inst.n) j["n"] = *inst.n;
  if (inst.p) j["p"] = *inst.p;
  if (inst.mode) j["mode"] = *inst.mode;
  return j;
}

json interval_to_json(const RatInterval& w) {
  json j;
  j["inf"] = rat_str(w.lo);
  j["sup"] = rat_str(w.hi);
  return j;
}

std::string interval_str(const RatInterval& w) {
  return "[" + rat_str(w.lo) + ", " + rat_str(w.hi) + "] turns  (= [" + rat_str_pi(w.lo) + ", " +
         rat_str_pi(w.hi) + "])";
}

json verdict_to_json(const oracle::OracleVerdict& v) {
  json j;
  j["identity"] = v.identity;
  j["m_max"] = v.m_max;
  j["pass"] = v.pass;
  j["first_failing_mode"] = v.first_failing_mode ? json(*v.first_failing_mode) : json(nullptr);
  j["detail"] = v.detail;
  return j;
}

json pair_report_to_json(const PairReport& r) {
  json j;
  j["mode"] = "pair";
  j["n"] = r.n;
  j["annihilated"] = r.annihilated;
  j["I"] = interval_to_json(r.I);
  j["J"] = interval_to_json(r.J);
  j["K"] = r.K ? interval_to_json(*r.K) : json(nullptr);
  j["lambda"] = r.lambda ? json(rat_str(*r.lambda)) : json(nullptr);
  j["rho"] = r.rho ? json(rat_str(*r.rho)) : json(nullptr);
  j["lambda_used"] = r.lambda_used ? json(rat_str(*r.lambda_used)) : json(nullptr);
  j["alpha"] = r.alpha ? json(cyclo_str(*r.alpha)) : json(nullptr);
  j["beta"] = r.beta ? json(cyclo_str(*r.beta)) : json(nullptr);
  j["alpha_sup"] = r.alpha_sup ? json(cyclo_str(*r.alpha_sup)) : json(nullptr);
  j["beta_sup"] = r.beta_sup ? json(cyclo_str(*r.beta_sup)) : json(nullptr);
  json certs = json::array();
  for (const Certificate& c : r.certificates) {
    json cj;
    cj["id"] = c.id;
    cj["window"] = interval_to_json(c.window);
    cj["claim"] = c.claim;
    cj["verified"] = c.verified;
    certs.push_back(std::move(cj));
  }
  j["certificates"] = std::move(certs);
  return j;
}

json reflection_to_json(const ReflectionOutcome& r, bool conjugated) {
  json j;
  j["mode"] = "reflection";
  j["conjugated"] = conjugated;
  j["applicable"] = r.applicable;
  j["I"] = interval_to_json(r.I);
  j["product"] = dist_to_json(r.product);
  if (r.decomposition) {
    json d;
    d["mu"] = dist_to_json(r.decomposition->mu);
    d["nu"] = dist_to_json(r.decomposition->nu);
    d["alpha_case"] = r.decomposition->alpha_case;
    d["point_case"] = r.decomposition->point_case;
    j["decomposition"] = std::move(d);
  } else {
    j["decomposition"] = nullptr;
  }
  return j;
}

json power_report_to_json(const PowerReport& r) {
  json j;
  j["mode"] = "power";
  j["n"] = r.n;
  j["p"] = r.p;
  j["I"] = interval_to_json(r.I);
  j["pI"] = interval_to_json(r.pI);
  j["K"] = interval_to_json(r.K);
  j["match"] = r.K == r.pI;
  return j;
}

json corollary_to_json(const CorollaryN2Verdict& v) {
  json j;
  j["annihilated"] = v.annihilated;
  j["lambda_positive"] = v.lambda_positive;
  j["symmetry_exists"] = v.symmetry_exists;
  j["alpha_sign"] = v.alpha_sign ? json(*v.alpha_sign) : json(nullptr);
  j["conv_vanishing_verified"] = v.conv_vanishing_verified;
  j["agree"] = v.agree;
  return j;
}

namespace {

std::string turns_line(const std::string& name, const Rational& x) {
  return name + " = " + rat_str(x) + " turn  (= " + rat_str_pi(x) + ")\n";
}

}  // namespace

std::string pair_report_text(const PairReport& r) {
  std::string out;
  out += "pair analysis, n = " + std::to_string(r.n) + "\n";
  out += "I = " + interval_str(r.I) + "\n";
  out += "J = " + interval_str(r.J) + "\n";
  if (r.annihilated) {
    out += "f * g = 0: annihilation; K, lambda, rho are undefined\n";
    return out;
  }
  out += "K = " + interval_str(*r.K) + "\n";
  out += turns_line("lambda", *r.lambda);
  out += turns_line("rho", *r.rho);
  if (r.lambda_used) out += turns_line("lambda (requested)", *r.lambda_used);
  if (r.alpha) out += "alpha = " + cyclo_str(*r.alpha) + ", beta = " + cyclo_str(*r.beta) + "\n";
  if (r.alpha_sup)
    out += "alpha_sup = " + cyclo_str(*r.alpha_sup) + ", beta_sup = " + cyclo_str(*r.beta_sup) +
           "\n";
  for (const Certificate& c : r.certificates) {
    out += "  [" + std::string(c.verified ? "ok" : "FAILED") + "] (" + c.id + ") " + c.claim +
           " on (" + rat_str(c.window.lo) + ", " + rat_str(c.window.hi) + ")\n";
  }
  return out;
}

std::string reflection_text(const ReflectionOutcome& r) {
  std::string out;
  out += "reflection analysis (n = 2)\n";
  out += "I = " + interval_str(r.I) + "\n";
  if (!r.applicable) {
    out += "supp(f * f#) is not contained in {0, 1/2}: theorem not applicable\n";
    return out;
  }
  out += "supp(f * f#) inside {0 pi, 1 pi}: decomposition f = mu + S mu + nu - S nu\n";
  out += "alpha case = " + std::to_string(r.decomposition->alpha_case) +
         (r.decomposition->point_case ? " (point case)\n" : "\n");
  return out;
}

std::string power_report_text(const PowerReport& r) {
  std::string out;
  out += "power analysis, n = " + std::to_string(r.n) + ", p = " + std::to_string(r.p) + "\n";
  out += "I  = " + interval_str(r.I) + "\n";
  out += "pI = " + interval_str(r.pI) + "\n";
  out += "K  = " + interval_str(r.K) + "\n";
  out += "K == pI holds exactly\n";
  return out;
}

std::string corollary_text(const CorollaryN2Verdict& v) {
  std::string out = "corollary (n = 2) equivalence: ";
  if (v.annihilated) return out + "vacuous, f * g = 0 (annihilation flagged)\n";
  out += std::string("lambda > 0 is ") + (v.lambda_positive ? "true" : "false");
  out += ", symmetry witness " + std::string(v.symmetry_exists ? "exists" : "does not exist");
  if (v.alpha_sign) out += " (alpha = " + std::to_string(*v.alpha_sign) + ")";
  out += v.agree ? "; sides agree\n" : "; SIDES DISAGREE\n";
  return out;
}

}  // namespace titch
