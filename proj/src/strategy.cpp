#include "ua/strategy.hpp"

#include <stdexcept>

#include "ua/errors.hpp"
#include "ua/guards.hpp"

namespace ua {

const char* to_string(ManipulationKind k) {
  return k == ManipulationKind::weak_sp_violation ? "weak_sp_violation" : "sp_violation";
}

namespace {

RationalVector row_of(const AssignmentMatrix& m, std::size_t i) {
  auto r = m.row(i);
  return RationalVector(r.begin(), r.end());
}

// Compares the misreport outcome against the truthful one for agent i.
std::optional<ManipulationReport> compare(const Profile& profile, std::size_t i, const UniformPreference& lie,
                                          const AssignmentMatrix& truthful, const AssignmentMatrix& deviated) {
  const auto& truth = profile[i];
  const auto verdict = sd_compare(deviated.row(i), truthful.row(i), truth);
  if (verdict == SdVerdict::dominated || verdict == SdVerdict::equivalent) return std::nullopt;
  return ManipulationReport{i,
                            truth,
                            lie,
                            row_of(truthful, i),
                            row_of(deviated, i),
                            class_prefix_sums(truthful.row(i), truth),
                            class_prefix_sums(deviated.row(i), truth),
                            verdict,
                            verdict == SdVerdict::strictly_dominates ? ManipulationKind::weak_sp_violation
                                                                     : ManipulationKind::sp_violation};
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

void tally(SweepSummary& s, const Profile& profile, const std::vector<ManipulationReport>& reports) {
  if (!reports.empty()) ++s.profiles_with_sp_violation;
  for (const auto& r : reports) {
    ++s.sp_violations;
    if (!s.first_sp) s.first_sp = SweepWitness{profile, r};
    if (r.kind == ManipulationKind::weak_sp_violation) {
      ++s.weak_sp_violations;
      if (!s.first_weak_sp) s.first_weak_sp = SweepWitness{profile, r};
    }
  }
}

bool admitted(const ReportFilter& f, const UniformPreference& p) { return !f || f(p); }

}  // namespace

std::vector<ManipulationReport> check_sp(const Mechanism& mechanism, const Profile& profile,
                                         const ReportFilter& filter) {
  const std::size_t n = profile.size();
  enforce_guard(Guard::matchings, n, "manipulation search");
  const auto truthful = mechanism(profile);
  std::vector<ManipulationReport> out;
  const auto prefs = enumerate_uniform_prefs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& lie : prefs) {
      if (lie == profile[i] || !admitted(filter, lie)) continue;
      if (auto r = compare(profile, i, lie, truthful, mechanism(profile.with(i, lie)))) out.push_back(std::move(*r));
    }
  }
  return out;
}

std::vector<ManipulationReport> check_weak_sp(const Mechanism& mechanism, const Profile& profile,
                                              const ReportFilter& filter) {
  auto all = check_sp(mechanism, profile, filter);
  std::erase_if(all, [](const ManipulationReport& r) { return r.kind != ManipulationKind::weak_sp_violation; });
  return all;
}

Profile profile_at(const std::vector<UniformPreference>& prefs, std::size_t n, std::size_t index) {
  std::vector<UniformPreference> agents(n, prefs.front());
  for (std::size_t i = n; i-- > 0;) {
    agents[i] = prefs[index % prefs.size()];
    index /= prefs.size();
  }
  return Profile(std::move(agents));
}

SweepSummary sweep(const Mechanism& mechanism, std::size_t n, const ReportFilter& domain) {
  if (n == 0) throw InputError("sweep needs n >= 1");
  enforce_guard(Guard::sweep, n, "exhaustive profile sweep");
  auto prefs = enumerate_uniform_prefs(n);
  if (domain) std::erase_if(prefs, [&](const UniformPreference& p) { return !domain(p); });
  if (prefs.empty()) throw InputError("sweep: domain filter admits no preference");
  const std::size_t k = prefs.size();
  const std::size_t total = ipow(k, n);

  std::vector<std::optional<AssignmentMatrix>> outcome(total);
  std::vector<std::optional<std::string>> failure(total);
#pragma omp parallel for schedule(dynamic, 4)
  for (long idx = 0; idx < static_cast<long>(total); ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    try {
      outcome[u] = mechanism(profile_at(prefs, n, u));
    } catch (const std::exception& e) {
      failure[u] = e.what();
    }
  }
  for (std::size_t u = 0; u < total; ++u) {
    if (failure[u]) throw std::runtime_error("sweep: mechanism failed on profile " + std::to_string(u) + ": " + *failure[u]);
  }

  // Per-profile reports, computed independently, merged in order.
  std::vector<std::vector<ManipulationReport>> reports(total);
#pragma omp parallel for schedule(dynamic, 4)
  for (long idx = 0; idx < static_cast<long>(total); ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const auto profile = profile_at(prefs, n, u);
    std::size_t place = 1;  // weight of agent i's digit
    std::vector<std::size_t> weight(n);
    for (std::size_t i = n; i-- > 0;) {
      weight[i] = place;
      place *= k;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t digit = u / weight[i] % k;
      for (std::size_t d = 0; d < k; ++d) {
        if (d == digit) continue;
        const std::size_t v = u - digit * weight[i] + d * weight[i];
        if (auto r = compare(profile, i, prefs[d], *outcome[u], *outcome[v])) reports[u].push_back(std::move(*r));
      }
    }
  }
  SweepSummary s;
  s.n = n;
  s.profiles = total;
  for (std::size_t u = 0; u < total; ++u) tally(s, profile_at(prefs, n, u), reports[u]);
  return s;
}

namespace serial {

SweepSummary sweep(const Mechanism& mechanism, std::size_t n, const ReportFilter& domain) {
  if (n == 0) throw InputError("sweep needs n >= 1");
  enforce_guard(Guard::sweep, n, "exhaustive profile sweep");
  auto prefs = enumerate_uniform_prefs(n);
  if (domain) std::erase_if(prefs, [&](const UniformPreference& p) { return !domain(p); });
  if (prefs.empty()) throw InputError("sweep: domain filter admits no preference");
  const std::size_t total = ipow(prefs.size(), n);
  SweepSummary s;
  s.n = n;
  s.profiles = total;
  for (std::size_t u = 0; u < total; ++u) {
    const auto profile = profile_at(prefs, n, u);
    tally(s, profile, check_sp(mechanism, profile, domain));
  }
  return s;
}

}  // namespace serial

}  // namespace ua
