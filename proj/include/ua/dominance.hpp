#pragma once

#include <span>

#include "ua/matrix.hpp"
#include "ua/preference.hpp"
#include "ua/rational.hpp"

namespace ua {

/// Outcome of comparing two rows under one agent's preference.
enum class SdVerdict {
  strictly_dominates,  // every class-prefix sum >=, at least one >
  equivalent,          // every class-prefix sum equal
  incomparable,        // inequalities point both ways
  dominated,           // mirror of strictly_dominates
};

const char* to_string(SdVerdict v);

/// Cumulative row mass at the end of each indifference class of `pref`.
RationalVector class_prefix_sums(std::span<const Rational> row, const UniformPreference& pref);

/// Row mass inside each indifference class of `pref`.
RationalVector class_masses(std::span<const Rational> row, const UniformPreference& pref);

SdVerdict sd_compare(std::span<const Rational> row_p, std::span<const Rational> row_q, const UniformPreference& pref);

/// strictly_dominates or equivalent.
inline bool weakly_dominates(SdVerdict v) { return v == SdVerdict::strictly_dominates || v == SdVerdict::equivalent; }

/// P >= Q row by row under the profile, with at least one strict row.
bool matrix_sd_dominates(const AssignmentMatrix& p, const AssignmentMatrix& q, const Profile& profile);

/// Equal class masses for every agent and every indifference class.
bool assignments_equivalent(const AssignmentMatrix& p, const AssignmentMatrix& q, const Profile& profile);

}  // namespace ua
