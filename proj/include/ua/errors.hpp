#pragma once

#include <stdexcept>
#include <string>

namespace ua {

/// Malformed user input: bad files, inconsistent sizes, out-of-domain values.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured size guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A certified derivation step could not be established.
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ua
