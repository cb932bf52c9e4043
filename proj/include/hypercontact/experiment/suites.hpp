#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypercontact/experiment/config.hpp"
#include "hypercontact/experiment/report.hpp"
#include "hypercontact/fb/pushout.hpp"

namespace hypercontact {

enum class Suite { Lemma, PushOut, Kobayashi, All };
const char* to_string(Suite s);
/// "lemma", "pushout", "kobayashi" or "all".
Suite suite_from_string(const std::string& s);

/// Runs the suite, writes report.json (and for the push-out suites
/// pushout.json and orbits.csv) into out_dir, and returns the report. Module
/// errors become failed checks; they are not rethrown.
RunReport run_experiment(const ExperimentConfig& config, Suite suite, const std::filesystem::path& out_dir);

/// One classified input point with its orbit.
struct ClassifiedPoint {
  std::size_t index = 0;
  std::string set;
  /// Input coordinates, before the prescale.
  ScaledPoint coords;
  OmegaResult result;
};

/// Classifies points in parallel; the output order follows the input.
std::vector<ClassifiedPoint> classify_points(const PushOutState& state, const std::vector<ScaledPoint>& points,
                                             const std::string& set = "input", std::size_t first_index = 0);

/// Columns: index, set, re/im of every coordinate, round, natural log of the
/// max-norm of Theta_round(point), classification; one row per point and round.
void write_orbits_csv(std::ostream& out, const std::vector<ClassifiedPoint>& points);

/// Reads one point per line as re,im pairs (decimal text, magnitudes beyond
/// the double range allowed). Blank lines, lines starting with '#' and a
/// non-numeric first line are skipped. Throws PreconditionError naming the
/// line on malformed rows or a wrong column count.
std::vector<ScaledPoint> read_points_csv(std::istream& in, int dim);

/// Decimal text of one real or imaginary part.
std::string component_text(const ScaledComplex& z, bool imag);

}  // namespace hypercontact
