#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace hypercontact {

enum class Verdict { Pass, Fail, Error };
const char* to_string(Verdict v);

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::Fail;
  /// The measured quantity (a ratio, a sup, a count; see detail).
  double measured = 0.0;
  /// Distance to the threshold in the direction that makes the check pass.
  double margin = 0.0;
  double runtime_s = 0.0;
  std::string detail;
};

struct RunReport {
  std::string suite;
  std::string config_hash;
  std::vector<CheckRecord> checks;

  /// Throws PreconditionError when the name is already present.
  void add(CheckRecord r);
  /// Sorts checks by name.
  void finalize();
  std::size_t failed() const;
  bool passed() const { return failed() == 0; }
  int exit_code() const { return passed() ? 0 : 1; }
};

/// Compiler, standard, thread count, build type and UTC time.
nlohmann::json environment_stamp();

nlohmann::json to_json(const RunReport& r);
void write_report(const RunReport& r, const std::filesystem::path& path);

}  // namespace hypercontact
