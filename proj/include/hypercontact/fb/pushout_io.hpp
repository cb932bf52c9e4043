#pragma once

#include <string>

#include "hypercontact/fb/pushout.hpp"

namespace hypercontact {

inline constexpr int kPushOutFormatVersion = 1;

/// Versioned JSON document of a push-out construction. Log-radii and every
/// witness quantity are written as 36-digit decimal strings, which round-trip
/// binary128 exactly.
std::string pushout_to_json(const PushOutState& state);

/// Restores a construction. The header (dimension, eps schedule, radius rule,
/// exponent cap, prescale, K_1) is read and the rounds are replayed; every
/// stored exponent, log-radius and shell bound must match the replay exactly,
/// otherwise PreconditionError is thrown naming the first mismatch.
PushOutState pushout_from_json(const std::string& text);

void save_pushout(const PushOutState& state, const std::string& path);
PushOutState load_pushout(const std::string& path);

}  // namespace hypercontact
