#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ua/flownet.hpp"
#include "ua/matrix.hpp"
#include "ua/preference.hpp"

namespace ua {

/// A mechanism maps a profile to an assignment matrix. Implementations must
/// be deterministic and safe to call concurrently.
using Mechanism = std::function<AssignmentMatrix(const Profile&)>;

struct EpsStage {
  Rational time_before;
  Rational time_after;
  std::vector<std::size_t> agents;                  // active agents
  std::vector<std::vector<std::size_t>> best_sets;  // parallel to agents
  RationalVector owed_before;                       // parallel to agents
  BottleneckResult bottleneck;
  std::vector<RationalVector> increments;           // n x n, placed this stage
  RationalVector remaining_after;                   // per object
};

struct EpsTrace {
  std::vector<EpsStage> stages;
};

struct EpsResult {
  AssignmentMatrix matrix;
  EpsTrace trace;
};

/// Extended probabilistic serial. Each stage finds the bottleneck set S*,
/// places S*'s accumulated claim on C(S*) through a max flow, and carries the
/// claim of every other agent forward as an amount still owed from its best
/// class. The returned matrix is the canonical member of the outcome's
/// equivalence class (see canonicalize).
EpsResult eps_assign(const Profile& profile, BottleneckEngine engine = BottleneckEngine::parametric_flow);

/// eps_assign(profile).matrix, shaped as a Mechanism.
AssignmentMatrix eps_mechanism(const Profile& profile);

/// Lexicographically greatest matrix (row-major) with the same class masses
/// as `p`: for each agent in label order, mass is pushed onto the
/// lowest-indexed objects of each class as far as the columns allow.
AssignmentMatrix canonicalize(const AssignmentMatrix& p, const Profile& profile);

/// Singleton classes followed by at most one larger terminal class.
bool in_deadline_subdomain(const UniformPreference& pref);

/// Classical simultaneous eating on the deadline subdomain: agents eat their
/// singleton classes in order and treat the terminal class as one
/// indistinguishable block, filled from the leftovers. Throws InputError
/// naming the first agent outside the subdomain.
AssignmentMatrix ps_strict(const Profile& profile);

/// Serial dictatorship with indifferences for one priority order: each
/// dictator in turn commits to the best indifference class that can still be
/// served alongside earlier commitments; the lexicographically first
/// matching meeting every commitment is returned.
Matching serial_dictatorship(const Profile& profile, std::span<const std::size_t> order);

/// Random priority: average of serial_dictatorship over all n! orders,
/// evaluated in parallel. Guarded by Guard::matchings.
AssignmentMatrix rp_assign(const Profile& profile);

/// Monte Carlo random priority over `samples` uniformly drawn orders. Not
/// used by any certified check.
AssignmentMatrix rp_assign_sampled(const Profile& profile, std::size_t samples, std::uint64_t seed);

namespace serial {

/// Reference implementation of rp_assign, one order at a time.
AssignmentMatrix rp_assign(const Profile& profile);

}  // namespace serial

}  // namespace ua
