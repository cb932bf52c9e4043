// Command line runner: validate configs, run suites, classify points against a
// stored construction, plan horizontal paths.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/experiment/config.hpp"
#include "hypercontact/experiment/suites.hpp"
#include "hypercontact/fb/pushout_io.hpp"
#include "hypercontact/util/errors.hpp"

using namespace hypercontact;

namespace {

// "re" or "re:im", comma separated.
ContactPoint parse_coords(const std::string& text) {
  std::vector<Complex> c;
  std::stringstream ss(text);
  for (std::string cell; std::getline(ss, cell, ',');) {
    const auto colon = cell.find(':');
    try {
      if (colon == std::string::npos) {
        c.emplace_back(std::stod(cell), 0.0);
      } else {
        c.emplace_back(std::stod(cell.substr(0, colon)), std::stod(cell.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw PreconditionError("cannot read coordinate '" + cell + "'");
    }
  }
  if (c.size() < 3 || c.size() % 2 == 0) {
    throw PreconditionError("expected 2n+1 coordinates x_1,y_1,...,z; got " + std::to_string(c.size()));
  }
  return ContactPoint::from_flat(c);
}

nlohmann::json complex_json(Complex z) { return {z.real(), z.imag()}; }

int cmd_validate(const std::string& path) {
  const ExperimentConfig c = validate_config(path);
  nlohmann::json j = to_json(c);
  j["config_hash"] = config_hash(c);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_run(const std::string& suite, const std::string& config, const std::string& out) {
  const ExperimentConfig c = validate_config(config);
  const std::filesystem::path dir = out.empty() ? c.output_dir : std::filesystem::path(out);
  const RunReport rep = run_experiment(c, suite_from_string(suite), dir);
  for (const CheckRecord& r : rep.checks) {
    std::printf("%-5s %-40s %8.2fs  %s\n", to_string(r.verdict), r.name.c_str(), r.runtime_s, r.detail.c_str());
  }
  std::printf("%zu checks, %zu failed; report in %s\n", rep.checks.size(), rep.failed(),
              (dir / "report.json").string().c_str());
  return rep.exit_code();
}

int cmd_classify(const std::string& state_path, const std::string& points_path, const std::string& out) {
  const PushOutState state = load_pushout(state_path);
  std::ifstream in(points_path);
  if (!in) throw PreconditionError("cannot read '" + points_path + "'");
  const auto pts = read_points_csv(in, state.dim());
  const auto cls = classify_points(state, pts);
  if (out.empty()) {
    write_orbits_csv(std::cout, cls);
  } else {
    std::ofstream f(out);
    if (!f) throw PreconditionError("cannot write '" + out + "'");
    write_orbits_csv(f, cls);
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& p : cls) ++counts[static_cast<int>(p.result.verdict)];
  std::fprintf(stderr, "%zu points: %zu in_omega_certified, %zu escaped, %zu undecided\n", cls.size(), counts[0],
               counts[1], counts[2]);
  return 0;
}

int cmd_plan(const std::string& from, const std::string& to, const std::string& loop) {
  const ContactPoint p = parse_coords(from), q = parse_coords(to);
  if (p.n() != q.n()) throw DimensionMismatch("endpoints have different dimensions");
  const PathPlan plan = chow_path(p, q, loop == "unit" ? LoopShape::UnitHeight : LoopShape::Balanced);
  nlohmann::json j;
  j["segments"] = nlohmann::json::array();
  for (const HolomorphicCurve& s : plan.segments) {
    nlohmann::json seg;
    const auto comps = s.components();
    nlohmann::json cs = nlohmann::json::array();
    for (const CPolynomial* c : comps) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const Complex& a : c->coefficients()) coeffs.push_back(complex_json(a));
      cs.push_back(coeffs);
    }
    seg["coefficients"] = cs;
    std::size_t nonzero = 0;
    for (const Complex& a : horizontality_residual(s).coefficients()) nonzero += a != Complex(0.0, 0.0);
    seg["residual_nonzero"] = nonzero;
    j["segments"].push_back(seg);
  }
  const auto e = plan.end().flat(), t = q.flat();
  double err = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) err = std::max(err, std::abs(e[i] - t[i]));
  j["endpoint_error"] = err;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic contact structures: experiments and tools"};
  app.require_subcommand(1);

  std::string path;
  auto* validate = app.add_subcommand("validate", "Parse and check a config, print it with defaults filled in");
  validate->add_option("config", path, "Config file")->required();

  std::string suite = "all", config, out;
  auto* run = app.add_subcommand("run", "Run a verification suite");
  run->add_option("--suite", suite, "lemma, pushout, kobayashi or all")
      ->check(CLI::IsMember({"lemma", "pushout", "kobayashi", "all"}));
  run->add_option("--config", config, "Config file")->required();
  run->add_option("--out", out, "Output directory (default: output_dir from the config)");

  std::string state, points, classify_out;
  auto* classify = app.add_subcommand("classify", "Classify points against a stored construction");
  classify->add_option("--state", state, "pushout.json")->required();
  classify->add_option("--points", points, "CSV with re,im per coordinate")->required();
  classify->add_option("--out", classify_out, "Orbit CSV (default: stdout)");

  std::string from, to, loop = "balanced";
  auto* plan = app.add_subcommand("plan-path", "Horizontal path between two points");
  plan->add_option("--from", from, "x_1,y_1,...,z (re or re:im)")->required();
  plan->add_option("--to", to, "x_1,y_1,...,z")->required();
  plan->add_option("--loop", loop, "balanced or unit")->check(CLI::IsMember({"balanced", "unit"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*validate) return cmd_validate(path);
    if (*run) return cmd_run(suite, config, out);
    if (*classify) return cmd_classify(state, points, classify_out);
    if (*plan) return cmd_plan(from, to, loop);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error%s%s: %s\n", e.field().empty() ? "" : " in ", e.field().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
