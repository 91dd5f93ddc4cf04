#pragma once

#include <cstddef>
#include <string_view>

namespace ua {

// Size limits for the brute-force enumerations. UA_GUARD_N, when set to a
// positive integer, replaces every default.
enum class Guard {
  matchings,   // n! enumeration of matchings (default 7)
  sweep,       // (2^(n-1))^n profile sweeps (default 4)
  subsets,     // 2^n bottleneck enumeration (default 20)
  theorem1,    // padded Theorem-1 style instances (default 5)
};

std::size_t guard_limit(Guard g);

/// Throws GuardError naming `what` if n exceeds the limit.
void enforce_guard(Guard g, std::size_t n, std::string_view what);

}  // namespace ua
