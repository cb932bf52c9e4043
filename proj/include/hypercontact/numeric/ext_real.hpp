#pragma once

// Extended-precision reals for log-magnitudes.
//
// The push-out construction produces moduli whose natural logarithms reach
// 1e20 and beyond after a few rounds. A double carries ~16 digits, which at
// that size no longer resolves the additive constants the shell inequalities
// depend on, so log-magnitudes are kept in IEEE binary128.

#include <string>
#include <string_view>

namespace hypercontact {

using ExtReal = __float128;

namespace ext {

ExtReal log(ExtReal x);
ExtReal exp(ExtReal x);
ExtReal log1p(ExtReal x);
ExtReal expm1(ExtReal x);
ExtReal abs(ExtReal x);
ExtReal floor(ExtReal x);
ExtReal ceil(ExtReal x);
ExtReal fmod(ExtReal x, ExtReal y);
bool isfinite(ExtReal x);
bool isnan(ExtReal x);

ExtReal infinity();
ExtReal pi();

/// Shortest decimal form that round-trips binary128 (36 significant digits).
std::string to_string(ExtReal x);

/// Parses a decimal string; throws std::invalid_argument on trailing garbage.
ExtReal parse(std::string_view text);

inline double to_double(ExtReal x) { return static_cast<double>(x); }

}  // namespace ext
}  // namespace hypercontact
