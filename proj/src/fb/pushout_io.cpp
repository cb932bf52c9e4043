#include "hypercontact/fb/pushout_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

using nlohmann::json;

std::string dec(ExtReal x) { return ext::to_string(x); }

std::string dec(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const json& j, const char* field) {
  if (!j.is_string()) throw PreconditionError(std::string("field '") + field + "' must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw PreconditionError(std::string("field '") + field + "' is not a number");
  return v;
}

json shells_json(const ShellUnion& K) {
  json a = json::array();
  for (const Shell& s : K.shells()) {
    a.push_back({{"log_inner", dec(s.inner.log())}, {"log_outer", dec(s.outer.log())}, {"log_height", dec(s.height.log())}});
  }
  return a;
}

std::vector<Shell> shells_from(const json& a) {
  std::vector<Shell> out;
  for (const auto& s : a) {
    out.push_back({LogReal::from_log(ext::parse(s.at("log_inner").get<std::string>())),
                   LogReal::from_log(ext::parse(s.at("log_outer").get<std::string>())),
                   LogReal::from_log(ext::parse(s.at("log_height").get<std::string>()))});
  }
  return out;
}

json stage_json(const StageResult& st) {
  json terms = json::array();
  for (const ShearTerm& t : st.f.terms()) terms.push_back({{"log_r", dec(t.radius.log())}, {"N", t.exponent}});
  json wit = json::array();
  for (const SelectionWitness& w : st.witnesses) {
    wit.push_back({{"i", w.i},
                   {"N", w.N},
                   {"N_tail", w.N_tail},
                   {"N_growth", w.N_growth},
                   {"log_M", dec(w.M.log())},
                   {"log_alpha", dec(w.alpha.log())},
                   {"log_beta_prev", dec(w.beta_prev.log())},
                   {"slack_tail", dec(w.slack_tail)},
                   {"slack_lower", dec(w.slack_lower)},
                   {"slack_growth", dec(w.slack_growth)},
                   {"slack_sandwich", dec(w.slack_sandwich)}});
  }
  return {{"terms", terms}, {"witnesses", wit}};
}

void expect_equal(const std::string& stored, const std::string& replayed, const std::string& what) {
  if (stored != replayed) {
    throw PreconditionError("stored " + what + " (" + stored + ") differs from the replayed value (" + replayed + ")");
  }
}

void check_stage(const json& stored, const StageResult& st, const std::string& where) {
  const auto terms = st.f.terms();
  const auto& s = stored.at("terms");
  if (s.size() != terms.size()) throw PreconditionError(where + ": term count differs from the replay");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tag = where + " term " + std::to_string(i + 1);
    expect_equal(s[i].at("log_r").get<std::string>(), dec(terms[i].radius.log()), tag + " log radius");
    expect_equal(std::to_string(s[i].at("N").get<std::int64_t>()), std::to_string(terms[i].exponent),
                 tag + " exponent");
  }
}

}  // namespace

std::string pushout_to_json(const PushOutState& state) {
  json doc;
  doc["format"] = "hypercontact.pushout";
  doc["version"] = kPushOutFormatVersion;
  doc["dim"] = state.dim();
  doc["eps"] = {{"scale", dec(state.eps().scale)}, {"ratio", dec(state.eps().ratio)}};
  doc["radius_rule"] = to_string(state.rule());
  doc["exponent_cap"] = state.cap();
  doc["prescale"] = dec(state.prescale());
  doc["K1"] = shells_json(state.initial());
  json rounds = json::array();
  for (const RoundRecord& r : state.rounds()) {
    json widened = r.widened_shells;
    rounds.push_back({{"k", r.k},
                      {"eps", dec(r.eps)},
                      {"phi", stage_json(r.phi)},
                      {"psi", stage_json(r.psi)},
                      {"L", shells_json(r.L)},
                      {"K_next", shells_json(r.K_next)},
                      {"log_identity_bound", dec(r.identity_bound.log())},
                      {"identity_slack", dec(r.identity_slack)},
                      {"avoidance_slack", dec(r.avoidance_slack)},
                      {"widened_shells", widened}});
  }
  doc["rounds"] = rounds;
  return doc.dump(2) + "\n";
}

PushOutState pushout_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("push-out document: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "hypercontact.pushout") {
      throw PreconditionError("not a push-out document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kPushOutFormatVersion) {
      throw PreconditionError("unsupported push-out document version " + std::to_string(version));
    }
    const int dim = doc.at("dim").get<int>();
    const EpsSchedule eps{parse_double(doc.at("eps").at("scale"), "eps.scale"),
                          parse_double(doc.at("eps").at("ratio"), "eps.ratio")};
    const RadiusRule rule = radius_rule_from_string(doc.at("radius_rule").get<std::string>());
    const auto cap = doc.at("exponent_cap").get<std::int64_t>();
    const double prescale = parse_double(doc.at("prescale"), "prescale");
    ShellUnion K1 = cylinder_union(dim, shells_from(doc.at("K1")), ShellOrientation::Vertical);
    PushOutState state(dim, std::move(K1), eps, rule, cap, prescale);
    for (const auto& r : doc.at("rounds")) {
      const RoundRecord& rec = build_shear_round(state);
      const std::string where = "round " + std::to_string(rec.k);
      if (r.at("k").get<int>() != rec.k) throw PreconditionError(where + ": rounds out of order");
      check_stage(r.at("phi"), rec.phi, where + " phi");
      check_stage(r.at("psi"), rec.psi, where + " psi");
      const auto next = shells_from(r.at("K_next"));
      if (!(next == std::vector<Shell>(rec.K_next.shells().begin(), rec.K_next.shells().end()))) {
        throw PreconditionError(where + ": stored K_next differs from the replay");
      }
    }
    return state;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("push-out document: ") + e.what());
  }
}

void save_pushout(const PushOutState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << pushout_to_json(state);
}

PushOutState load_pushout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return pushout_from_json(ss.str());
}

}  // namespace hypercontact
