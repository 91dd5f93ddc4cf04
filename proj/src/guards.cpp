#include "ua/guards.hpp"

#include <cstdlib>
#include <string>

#include "ua/errors.hpp"

namespace ua {

namespace {

std::size_t default_limit(Guard g) {
  switch (g) {
    case Guard::matchings: return 7;
    case Guard::sweep: return 4;
    case Guard::subsets: return 20;
    case Guard::theorem1: return 5;
  }
  return 0;
}

}  // namespace

std::size_t guard_limit(Guard g) {
  if (const char* env = std::getenv("UA_GUARD_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_limit(g);
}

void enforce_guard(Guard g, std::size_t n, std::string_view what) {
  const auto limit = guard_limit(g);
  if (n > limit) {
    throw GuardError(std::string(what) + ": n = " + std::to_string(n) + " exceeds the enumeration guard " +
                     std::to_string(limit) + " (set UA_GUARD_N to override)");
  }
}

}  // namespace ua
