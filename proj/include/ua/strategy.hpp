#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ua/dominance.hpp"
#include "ua/mechanisms.hpp"
#include "ua/preference.hpp"

namespace ua {

enum class ManipulationKind {
  sp_violation,       // truthful row does not weakly dominate the misreport row
  weak_sp_violation,  // misreport row strictly dominates the truthful row
};

const char* to_string(ManipulationKind k);

struct ManipulationReport {
  std::size_t agent;
  UniformPreference truth;
  UniformPreference misreport;
  RationalVector truthful_row;
  RationalVector misreport_row;
  RationalVector truthful_prefix;  // class prefixes under the truth
  RationalVector misreport_prefix;
  SdVerdict misreport_vs_truth;    // sd_compare(misreport row, truthful row, truth)
  ManipulationKind kind;
};

/// Optional restriction of the misreports considered (e.g. the deadline
/// subdomain). An empty filter admits every uniform preference.
using ReportFilter = std::function<bool(const UniformPreference&)>;

/// Every profitable or incomparable misreport: agents in label order,
/// misreports in enumerate_uniform_prefs order. Guard::matchings bounds n.
std::vector<ManipulationReport> check_sp(const Mechanism& mechanism, const Profile& profile,
                                         const ReportFilter& filter = {});

/// Only the weak_sp_violation reports of check_sp.
std::vector<ManipulationReport> check_weak_sp(const Mechanism& mechanism, const Profile& profile,
                                              const ReportFilter& filter = {});

struct SweepWitness {
  Profile profile;
  ManipulationReport report;
};

struct SweepSummary {
  std::size_t n = 0;
  std::size_t profiles = 0;
  std::size_t sp_violations = 0;       // includes the weak ones
  std::size_t weak_sp_violations = 0;
  std::size_t profiles_with_sp_violation = 0;
  std::optional<SweepWitness> first_sp;
  std::optional<SweepWitness> first_weak_sp;
};

/// All (2^(n-1))^n profiles in lexicographic order (agent 1 most
/// significant). Outcomes are computed once per profile in parallel and the
/// comparisons merged in enumeration order. Guard::sweep.
SweepSummary sweep(const Mechanism& mechanism, std::size_t n, const ReportFilter& domain = {});

/// Profile number `index` of the sweep order over `prefs`.
Profile profile_at(const std::vector<UniformPreference>& prefs, std::size_t n, std::size_t index);

namespace serial {

/// Reference sweep: check_sp on each profile in turn, no caching.
SweepSummary sweep(const Mechanism& mechanism, std::size_t n, const ReportFilter& domain = {});

}  // namespace serial

}  // namespace ua
