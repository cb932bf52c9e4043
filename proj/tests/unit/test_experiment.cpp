#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypercontact/experiment/config.hpp"
#include "hypercontact/experiment/report.hpp"
#include "hypercontact/experiment/suites.hpp"
#include "hypercontact/util/errors.hpp"

using namespace hypercontact;
namespace fs = std::filesystem;

namespace {

std::string field_of(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("hypercontact_unit_" + name);
  fs::remove_all(d);
  return d;
}

// A push-out run small enough for a unit test.
const char* kSmallPushout = R"({
  "n": 1, "k_max": 3, "i_max": 3,
  "samples": {"shell": 20, "identity": 20, "escape": 30, "omega": 10, "pullback_points": 10}
})";

}  // namespace

TEST_CASE("minimal config gets every default") {
  const ExperimentConfig c = parse_config_text(R"({"n": 1})");
  CHECK(c.schema_version == kConfigSchemaVersion);
  CHECK(c.i_max == 6);
  CHECK(c.k_max == 6);
  CHECK(c.eps.at(1) == 0.25);
  CHECK(c.eps.at(4) == std::ldexp(1.0, -5));
  CHECK(c.pushout.source == PushOutSource::Desk);
  CHECK(c.pushout.dim == 2);
  CHECK(c.samples.lemma_disks == 500);
  CHECK(c.lemma_restarts == 200);
  CHECK(c.search.restarts == 32);
  CHECK(c.margin == 1e-6);
}

TEST_CASE("non-interleaved schedule is rejected naming index 2") {
  const std::string text = R"({"n": 1, "pushout": {"shells": [
      {"a": "2", "b": "4", "c": "1"}, {"a": "3", "b": "8", "c": "2"}]}})";
  try {
    (void)parse_config_text(text);
    FAIL("accepted a bad schedule");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "pushout.shells[2].a");
    CHECK(std::string(e.what()).find("shell 2") != std::string::npos);
  }
  CHECK(field_of(R"({"pushout": {"shells": [{"a": "1", "b": "4", "c": "1"}]}})") == "pushout.shells[1].a");
}

TEST_CASE("height rule is expanded to an explicit list") {
  const ExperimentConfig c = parse_config_text(R"({"n": 2, "i_max": 4, "heights": {"rule": "hyperbolic"}})");
  const std::vector<double> h = c.expanded_heights();
  REQUIRE(h.size() == 4);
  for (int N = 1; N <= 4; ++N) CHECK(h[N - 1] == 2 * std::ldexp(1.0, 3 * N + 1));
  const nlohmann::json j = to_json(c);
  CHECK(j.at("heights").at("expanded").size() == 4);
  // Stored as decimal text, like every schedule constant.
  CHECK(std::stod(j.at("heights").at("expanded")[0].get<std::string>()) == 32.0);

  const ExperimentConfig e = parse_config_text(R"({"n": 1, "i_max": 2, "heights": {"values": ["16", "128"]}})");
  CHECK(e.heights.kind == HeightRule::Kind::Explicit);
  CHECK(e.expanded_heights() == std::vector<double>{16, 128});
  CHECK(field_of(R"({"i_max": 3, "heights": {"values": [16, 128]}})") == "heights.values");
}

TEST_CASE("decimal strings and field-named errors") {
  const ExperimentConfig c = parse_config_text(R"({"n": "2", "margin": "1e-7", "eps": {"scale": "0.25"}})");
  CHECK(c.n == 2);
  CHECK(c.margin == 1e-7);
  CHECK(c.eps.scale == 0.25);
  CHECK(field_of(R"({"n": 1, "colour": 3})") == "colour");
  CHECK(field_of(R"({"n": 0})") == "n");
  CHECK(field_of(R"({"samples": {"shell": 0}})") == "samples.shell");
  CHECK(field_of(R"({"eps": {"ratio": 1.5}})") == "eps.ratio");
  CHECK(field_of(R"({"schema_version": 7})") == "schema_version");
  CHECK(field_of(R"({"pushout": {"shells": "standard", "dim": 2}})") == "pushout.dim");
}

TEST_CASE("parse errors report a byte position") {
  try {
    (void)parse_config_text("{\"n\": 1,, }");
    FAIL("accepted malformed JSON");
  } catch (const ConfigError& e) {
    REQUIRE(e.byte().has_value());
    CHECK(*e.byte() >= 8);
    CHECK(*e.byte() <= 10);
  }
  CHECK_THROWS_AS(validate_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("canonical form round-trips and the hash ignores the output directory") {
  const ExperimentConfig c = parse_config_text(R"({"n": 2, "seed": 9, "output_dir": "a"})");
  const ExperimentConfig back = parse_config(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(parse_config_text(R"({"n": 2, "seed": 9, "output_dir": "b"})")) == config_hash(c));
  CHECK(config_hash(parse_config_text(R"({"n": 2, "seed": 10})")) != config_hash(c));
}

TEST_CASE("run report bookkeeping") {
  RunReport r;
  r.add({"b", Verdict::Pass, 1, 1, 0, ""});
  r.add({"a", Verdict::Pass, 1, 1, 0, ""});
  CHECK_THROWS_AS(r.add({"a", Verdict::Fail, 0, 0, 0, ""}), PreconditionError);
  r.finalize();
  CHECK(r.checks[0].name == "a");
  CHECK(r.exit_code() == 0);
  r.add({"c", Verdict::Error, std::numeric_limits<double>::infinity(), 0, 0, "boom"});
  CHECK(r.failed() == 1);
  CHECK(r.exit_code() != 0);
  const nlohmann::json j = to_json(r);
  CHECK(j.at("checks").size() == 3);
  CHECK(j.dump().find("inf") != std::string::npos);
}

TEST_CASE("points CSV parsing") {
  std::istringstream in("z1_re,z1_im,z2_re,z2_im\n# comment\n0,0,1,-1\n\n1e400,0,0.5,0.25\n");
  const auto pts = read_points_csv(in, 2);
  REQUIRE(pts.size() == 2);
  CHECK(std::abs(pts[0][1].to_complex() - Complex(1.0, -1.0)) <= 1e-15);
  CHECK(ext::to_double(pts[1][0].log_mag()) == doctest::Approx(400 * std::log(10.0)).epsilon(1e-12));
  std::istringstream bad("0,0,1\n");
  CHECK_THROWS_AS(read_points_csv(bad, 2), PreconditionError);
  std::istringstream junk("0,0\nx,1,2,3\n");
  CHECK_THROWS_AS(read_points_csv(junk, 1), PreconditionError);
}

TEST_CASE("push-out run writes artifacts and is deterministic") {
  const ExperimentConfig c = parse_config_text(kSmallPushout);
  const fs::path a = scratch("a"), b = scratch("b");
  const RunReport ra = run_experiment(c, Suite::PushOut, a);
  const RunReport rb = run_experiment(c, Suite::PushOut, b);
  CHECK(ra.exit_code() == 0);
  for (const CheckRecord& r : ra.checks) CHECK_MESSAGE(r.verdict == Verdict::Pass, r.name << ": " << r.detail);
  REQUIRE(ra.checks.size() == rb.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    CHECK(ra.checks[i].name == rb.checks[i].name);
    CHECK(ra.checks[i].verdict == rb.checks[i].verdict);
    CHECK(ra.checks[i].measured == rb.checks[i].measured);
  }
  // Check names are unique and sorted.
  for (std::size_t i = 1; i < ra.checks.size(); ++i) CHECK(ra.checks[i - 1].name < ra.checks[i].name);

  const std::string csv = slurp(a / "orbits.csv");
  CHECK(csv == slurp(b / "orbits.csv"));
  CHECK(csv.rfind("index,set,z1_re,z1_im,z2_re,z2_im,round,log_norm,classification\n", 0) == 0);
  CHECK(slurp(a / "pushout.json") == slurp(b / "pushout.json"));
  const nlohmann::json rep = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(rep.at("config_hash") == config_hash(c));
  CHECK(rep.contains("environment"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("module errors become failed checks and a nonzero exit code") {
  const ExperimentConfig c = parse_config_text(R"({"n": 1, "k_max": 2, "i_max": 2,
    "pushout": {"shells": [{"a": "2", "b": "4", "c": "1"}, {"a": "4.0001", "b": "5", "c": "1"}], "exponent_cap": 50},
    "samples": {"shell": 10, "identity": 10, "escape": 10, "omega": 5, "pullback_points": 5}})");
  const fs::path d = scratch("err");
  const RunReport r = run_experiment(c, Suite::PushOut, d);
  CHECK(r.exit_code() != 0);
  bool build_failed = false;
  for (const CheckRecord& rec : r.checks) {
    if (rec.name == "pushout.build") build_failed = rec.verdict != Verdict::Pass;
  }
  CHECK(build_failed);
  CHECK(fs::exists(d / "report.json"));
  fs::remove_all(d);
}

TEST_CASE("suite names") {
  CHECK(suite_from_string("lemma") == Suite::Lemma);
  CHECK(suite_from_string("all") == Suite::All);
  CHECK(std::string(to_string(Suite::Kobayashi)) == "kobayashi");
  CHECK_THROWS(suite_from_string("everything"));
}
