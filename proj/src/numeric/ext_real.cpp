#include "hypercontact/numeric/ext_real.hpp"

#include <quadmath.h>

#include <stdexcept>

namespace hypercontact::ext {

ExtReal log(ExtReal x) { return logq(x); }
ExtReal exp(ExtReal x) { return expq(x); }
ExtReal log1p(ExtReal x) { return log1pq(x); }
ExtReal expm1(ExtReal x) { return expm1q(x); }
ExtReal abs(ExtReal x) { return fabsq(x); }
ExtReal floor(ExtReal x) { return floorq(x); }
ExtReal ceil(ExtReal x) { return ceilq(x); }
ExtReal fmod(ExtReal x, ExtReal y) { return fmodq(x, y); }
bool isfinite(ExtReal x) { return finiteq(x) != 0; }
bool isnan(ExtReal x) { return isnanq(x) != 0; }

ExtReal infinity() { return HUGE_VALQ; }
ExtReal pi() { return M_PIq; }

std::string to_string(ExtReal x) {
  if (isnanq(x)) return "nan";
  if (isinfq(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  quadmath_snprintf(buf, sizeof buf, "%.36Qg", x);
  return buf;
}

ExtReal parse(std::string_view text) {
  std::string s(text);
  if (s == "inf") return infinity();
  if (s == "-inf") return -infinity();
  char* end = nullptr;
  ExtReal v = strtoflt128(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return v;
}

}  // namespace hypercontact::ext
