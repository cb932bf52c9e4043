#include "hypercontact/experiment/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "hypercontact/util/errors.hpp"
#include "hypercontact/util/parallel.hpp"

namespace hypercontact {

using nlohmann::json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Error:
      return "error";
  }
  return "?";
}

void RunReport::add(CheckRecord r) {
  for (const CheckRecord& c : checks) {
    if (c.name == r.name) throw PreconditionError("duplicate check '" + r.name + "'");
  }
  checks.push_back(std::move(r));
}

void RunReport::finalize() {
  std::sort(checks.begin(), checks.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

std::size_t RunReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict != Verdict::Pass; }));
}

json environment_stamp() {
  json e;
#if defined(__clang__)
  e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  e["compiler"] = std::string("gcc ") + __VERSION__;
#else
  e["compiler"] = "unknown";
#endif
  e["cplusplus"] = static_cast<long>(__cplusplus);
#ifdef NDEBUG
  e["build"] = "release";
#else
  e["build"] = "debug";
#endif
  e["threads"] = thread_count();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  e["utc"] = buf;
  return e;
}

namespace {
// JSON has no inf or nan.
json number_or_text(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
}  // namespace

json to_json(const RunReport& r) {
  json j;
  j["format"] = "hypercontact.report";
  j["version"] = 1;
  j["suite"] = r.suite;
  j["config_hash"] = r.config_hash;
  j["environment"] = environment_stamp();
  j["checks"] = json::array();
  for (const CheckRecord& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"verdict", to_string(c.verdict)},
                           {"measured", number_or_text(c.measured)},
                           {"margin", number_or_text(c.margin)},
                           {"runtime_s", c.runtime_s},
                           {"detail", c.detail}});
  }
  j["failed"] = r.failed();
  j["passed"] = r.passed();
  return j;
}

void write_report(const RunReport& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write '" + path.string() + "'");
  out << to_json(r).dump(2) << '\n';
}

}  // namespace hypercontact
