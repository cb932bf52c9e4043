#include "hypercontact/experiment/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
  const std::set<std::string> ok(known.begin(), known.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) throw ConfigError("unknown key '" + join(where, key) + "'", join(where, key));
  }
}

// Numbers may be written as JSON numbers or as decimal strings.
std::string decimal_text(const json& v, const std::string& field) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      const ExtReal x = ext::parse(s);
      if (!ext::isfinite(x)) throw ConfigError(field + ": '" + s + "' is not finite", field);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(field + ": '" + s + "' is not a decimal number", field);
    }
    return s;
  }
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ConfigError(field + ": expected a number", field);
}

double get_double(const json& v, const std::string& field) {
  return ext::to_double(ext::parse(decimal_text(v, field)));
}

std::int64_t get_int(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  const double d = get_double(v, field);
  if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError(field + ": expected an integer", field);
  return static_cast<std::int64_t>(d);
}

template <class T>
void read_count(const json& obj, const std::string& where, const char* key, T& out, std::int64_t lo = 1) {
  if (!obj.contains(key)) return;
  const std::string field = join(where, key);
  const std::int64_t v = get_int(obj.at(key), field);
  if (v < lo) throw ConfigError(field + " must be at least " + std::to_string(lo), field);
  out = static_cast<T>(v);
}

void read_positive(const json& obj, const std::string& where, const char* key, double& out) {
  if (!obj.contains(key)) return;
  const std::string field = join(where, key);
  const double v = get_double(obj.at(key), field);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field + " must be positive", field);
  out = v;
}

LogReal log_value(const std::string& text) {
  return LogReal::from_log(ext::log(ext::parse(text)));
}

HeightRule parse_heights(const json& h, int n) {
  (void)n;
  if (h.is_string()) {
    if (h.get<std::string>() != "hyperbolic") throw ConfigError("heights: unknown rule", "heights");
    return HeightRule::hyperbolic();
  }
  if (!h.is_object()) throw ConfigError("heights: expected a rule name or an object", "heights");
  reject_unknown(h, "heights", {"rule", "factor", "values", "expanded"});
  const std::string rule = h.value("rule", h.contains("values") ? "explicit" : "hyperbolic");
  if (rule == "hyperbolic") {
    if (h.contains("values")) throw ConfigError("heights: 'values' needs rule 'explicit'", "heights.values");
    double factor = 1.0;
    read_positive(h, "heights", "factor", factor);
    return HeightRule::hyperbolic(factor);
  }
  if (rule != "explicit") throw ConfigError("heights: unknown rule '" + rule + "'", "heights.rule");
  if (!h.contains("values") || !h.at("values").is_array()) {
    throw ConfigError("heights: explicit rule needs a 'values' list", "heights.values");
  }
  std::vector<double> vals;
  for (std::size_t i = 0; i < h.at("values").size(); ++i) {
    const std::string field = "heights.values[" + std::to_string(i + 1) + "]";
    const double v = get_double(h.at("values")[i], field);
    if (!(v > 0.0)) throw ConfigError(field + " must be positive", field);
    vals.push_back(v);
  }
  return HeightRule::explicit_values(std::move(vals));
}

void check_interleaved(const std::vector<ShellSpec>& shells, const std::string& where) {
  LogReal prev_b;
  for (std::size_t i = 0; i < shells.size(); ++i) {
    const std::string tag = where + "[" + std::to_string(i + 1) + "]";
    const LogReal a = log_value(shells[i].a), b = log_value(shells[i].b), c = log_value(shells[i].c);
    if (a.is_zero() || c.is_zero()) throw ConfigError(tag + ": radii and heights must be positive", tag);
    if (i == 0 && !(LogReal::one() < a)) throw ConfigError(tag + ": a_1 must exceed 1", tag + ".a");
    if (b < a) throw ConfigError(tag + ": b_" + std::to_string(i + 1) + " is below a_" + std::to_string(i + 1), tag + ".b");
    if (i > 0 && !(prev_b < a)) {
      throw ConfigError("shell " + std::to_string(i + 1) + " is not interleaved: a_" + std::to_string(i + 1) +
                            " must exceed b_" + std::to_string(i),
                        tag + ".a");
    }
    prev_b = b;
  }
}

PushOutConfig parse_pushout(const json& p, int n, int i_max) {
  PushOutConfig out;
  if (!p.is_object()) throw ConfigError("pushout: expected an object", "pushout");
  reject_unknown(p, "pushout", {"shells", "dim", "enclosure_rel", "radius_rule", "exponent_cap"});
  std::string kind = "desk";
  if (p.contains("shells")) {
    const json& s = p.at("shells");
    if (s.is_string()) {
      kind = s.get<std::string>();
      if (kind != "desk" && kind != "standard") throw ConfigError("pushout.shells: unknown schedule '" + kind + "'", "pushout.shells");
    } else if (s.is_array()) {
      kind = "explicit";
      if (s.empty()) throw ConfigError("pushout.shells: empty schedule", "pushout.shells");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string tag = "pushout.shells[" + std::to_string(i + 1) + "]";
        if (!s[i].is_object()) throw ConfigError(tag + ": expected {a, b, c}", tag);
        reject_unknown(s[i], tag, {"a", "b", "c"});
        for (const char* k : {"a", "b", "c"}) {
          if (!s[i].contains(k)) throw ConfigError(tag + ": missing '" + k + "'", join(tag, k));
        }
        out.shells.push_back({decimal_text(s[i].at("a"), tag + ".a"), decimal_text(s[i].at("b"), tag + ".b"),
                              decimal_text(s[i].at("c"), tag + ".c")});
      }
      check_interleaved(out.shells, "pushout.shells");
    } else {
      throw ConfigError("pushout.shells: expected 'desk', 'standard' or a list", "pushout.shells");
    }
  }
  out.source = kind == "desk" ? PushOutSource::Desk : kind == "standard" ? PushOutSource::Standard : PushOutSource::Explicit;
  out.dim = out.source == PushOutSource::Standard ? 2 * n + 1 : 2;
  read_count(p, "pushout", "dim", out.dim, 2);
  if (out.source == PushOutSource::Standard && out.dim != 2 * n + 1) {
    throw ConfigError("pushout.dim: the standard enclosure lives in dimension 2n+1", "pushout.dim");
  }
  read_positive(p, "pushout", "enclosure_rel", out.enclosure_rel);
  if (!(out.enclosure_rel < 1.0)) throw ConfigError("pushout.enclosure_rel must be below 1", "pushout.enclosure_rel");
  if (p.contains("radius_rule")) {
    try {
      out.rule = radius_rule_from_string(p.at("radius_rule").get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("pushout.radius_rule: ") + e.what(), "pushout.radius_rule");
    }
  }
  read_count(p, "pushout", "exponent_cap", out.exponent_cap);
  (void)i_max;
  return out;
}

}  // namespace

std::vector<double> ExperimentConfig::expanded_heights() const {
  std::vector<double> out;
  for (int N = 1; N <= i_max; ++N) out.push_back(heights.height(N, n));
  return out;
}

ShellUnion ExperimentConfig::obstacle() const { return standard_obstacle(n, i_max, heights); }

Enclosure ExperimentConfig::pushout_initial() const {
  switch (pushout.source) {
    case PushOutSource::Desk:
      return {desk_schedule(pushout.dim, i_max), 1.0};
    case PushOutSource::Standard: {
      // Only the shell radii matter for the enclosure; the heights come along.
      return enclose_thin_shells(obstacle(), pushout.enclosure_rel, 2.0);
    }
    case PushOutSource::Explicit:
      break;
  }
  std::vector<Shell> shells;
  for (const ShellSpec& s : pushout.shells) shells.push_back({log_value(s.a), log_value(s.b), log_value(s.c)});
  return {cylinder_union(pushout.dim, std::move(shells), ShellOrientation::Vertical), 1.0};
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object", "");
  reject_unknown(doc, "", {"schema_version", "n", "i_max", "k_max", "heights", "eps", "pushout", "seed", "samples",
                           "search", "lemma_restarts", "margin", "fd_tolerance", "output_dir"});
  ExperimentConfig c;
  read_count(doc, "", "schema_version", c.schema_version);
  if (c.schema_version != kConfigSchemaVersion) {
    throw ConfigError("schema_version " + std::to_string(c.schema_version) + " is not supported", "schema_version");
  }
  read_count(doc, "", "n", c.n);
  read_count(doc, "", "i_max", c.i_max);
  read_count(doc, "", "k_max", c.k_max);
  if (doc.contains("heights")) c.heights = parse_heights(doc.at("heights"), c.n);
  try {
    (void)c.expanded_heights();
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("heights: ") + e.what(), "heights.values");
  }

  if (doc.contains("eps")) {
    const json& e = doc.at("eps");
    if (!e.is_object()) throw ConfigError("eps: expected {scale, ratio}", "eps");
    reject_unknown(e, "eps", {"scale", "ratio"});
    read_positive(e, "eps", "scale", c.eps.scale);
    read_positive(e, "eps", "ratio", c.eps.ratio);
    if (!(c.eps.ratio < 1.0)) throw ConfigError("eps.ratio must be below 1 for a summable schedule", "eps.ratio");
  }
  if (doc.contains("pushout")) {
    c.pushout = parse_pushout(doc.at("pushout"), c.n, c.i_max);
  }
  if (doc.contains("seed")) {
    const std::int64_t s = get_int(doc.at("seed"), "seed");
    if (s < 0) throw ConfigError("seed must be non-negative", "seed");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("samples")) {
    const json& s = doc.at("samples");
    if (!s.is_object()) throw ConfigError("samples: expected an object", "samples");
    reject_unknown(s, "samples", {"horizontality_disks", "lemma_disks", "shell", "identity", "escape", "omega",
                                  "directions", "chow_pairs", "pullback_points", "triangle_triples"});
    SampleCounts& sc = c.samples;
    read_count(s, "samples", "horizontality_disks", sc.horizontality_disks);
    read_count(s, "samples", "lemma_disks", sc.lemma_disks);
    read_count(s, "samples", "shell", sc.shell, 3);
    read_count(s, "samples", "identity", sc.identity);
    read_count(s, "samples", "escape", sc.escape);
    read_count(s, "samples", "omega", sc.omega);
    read_count(s, "samples", "directions", sc.directions);
    read_count(s, "samples", "chow_pairs", sc.chow_pairs);
    read_count(s, "samples", "pullback_points", sc.pullback_points);
    read_count(s, "samples", "triangle_triples", sc.triangle_triples);
  }
  if (doc.contains("search")) {
    const json& s = doc.at("search");
    if (!s.is_object()) throw ConfigError("search: expected an object", "search");
    reject_unknown(s, "search", {"degree", "restarts", "sweeps", "lambda_max", "penalty_rays", "penalty_radii",
                                 "backoff_steps"});
    SearchBudget& b = c.search;
    read_count(s, "search", "degree", b.degree);
    read_count(s, "search", "restarts", b.restarts);
    read_count(s, "search", "sweeps", b.sweeps, 0);
    read_positive(s, "search", "lambda_max", b.lambda_max);
    read_count(s, "search", "penalty_rays", b.penalty_rays, 3);
    read_count(s, "search", "penalty_radii", b.penalty_radii);
    read_count(s, "search", "backoff_steps", b.backoff_steps, 0);
  }
  read_count(doc, "", "lemma_restarts", c.lemma_restarts);
  read_positive(doc, "", "margin", c.margin);
  c.search.margin = c.margin;
  read_positive(doc, "", "fd_tolerance", c.fd_tolerance);
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir: expected a path", "output_dir");
    c.output_dir = doc.at("output_dir").get<std::string>();
  }
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what(), "", e.byte);
  }
  return parse_config(doc);
}

ExperimentConfig validate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'", "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["n"] = c.n;
  j["i_max"] = c.i_max;
  j["k_max"] = c.k_max;
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  json h;
  if (c.heights.kind == HeightRule::Kind::Hyperbolic) {
    h["rule"] = "hyperbolic";
    h["factor"] = num(c.heights.factor);
  } else {
    h["rule"] = "explicit";
    h["values"] = json::array();
    for (double v : c.heights.values) h["values"].push_back(num(v));
  }
  h["expanded"] = json::array();
  for (double v : c.expanded_heights()) h["expanded"].push_back(num(v));
  j["heights"] = h;
  j["eps"] = {{"scale", num(c.eps.scale)}, {"ratio", num(c.eps.ratio)}};

  json p;
  switch (c.pushout.source) {
    case PushOutSource::Desk:
      p["shells"] = "desk";
      break;
    case PushOutSource::Standard:
      p["shells"] = "standard";
      break;
    case PushOutSource::Explicit:
      p["shells"] = json::array();
      for (const ShellSpec& s : c.pushout.shells) p["shells"].push_back({{"a", s.a}, {"b", s.b}, {"c", s.c}});
      break;
  }
  p["dim"] = c.pushout.dim;
  p["enclosure_rel"] = num(c.pushout.enclosure_rel);
  p["radius_rule"] = to_string(c.pushout.rule);
  p["exponent_cap"] = c.pushout.exponent_cap;
  j["pushout"] = p;
  j["seed"] = c.seed;

  const SampleCounts& s = c.samples;
  j["samples"] = {{"horizontality_disks", s.horizontality_disks},
                  {"lemma_disks", s.lemma_disks},
                  {"shell", s.shell},
                  {"identity", s.identity},
                  {"escape", s.escape},
                  {"omega", s.omega},
                  {"directions", s.directions},
                  {"chow_pairs", s.chow_pairs},
                  {"pullback_points", s.pullback_points},
                  {"triangle_triples", s.triangle_triples}};
  const SearchBudget& b = c.search;
  j["search"] = {{"degree", b.degree},
                 {"restarts", b.restarts},
                 {"sweeps", b.sweeps},
                 {"lambda_max", num(b.lambda_max)},
                 {"penalty_rays", b.penalty_rays},
                 {"penalty_radii", b.penalty_radii},
                 {"backoff_steps", b.backoff_steps}};
  j["lemma_restarts"] = c.lemma_restarts;
  j["margin"] = num(c.margin);
  j["fd_tolerance"] = num(c.fd_tolerance);
  j["output_dir"] = c.output_dir.string();
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  // The output directory does not change any result.
  json j = to_json(c);
  j.erase("output_dir");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hypercontact
