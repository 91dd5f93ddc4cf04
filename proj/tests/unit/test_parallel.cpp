#include <doctest.h>

#include "support.hpp"
#include "ua/axioms.hpp"
#include "ua/mechanisms.hpp"
#include "ua/repro.hpp"
#include "ua/strategy.hpp"

using namespace ua;

namespace {

void same_witness(const std::optional<SweepWitness>& a, const std::optional<SweepWitness>& b) {
  REQUIRE(a.has_value() == b.has_value());
  if (!a) return;
  CHECK(a->profile == b->profile);
  CHECK(a->report.agent == b->report.agent);
  CHECK(a->report.misreport == b->report.misreport);
  CHECK(a->report.misreport_row == b->report.misreport_row);
}

}  // namespace

TEST_CASE("parallel sweep equals the serial reference") {
  const Mechanism rp = [](const Profile& p) { return rp_assign(p); };
  for (const auto& [mech, filter] : std::vector<std::pair<Mechanism, ReportFilter>>{
           {eps_mechanism, {}}, {eps_mechanism, in_deadline_subdomain}, {rp, {}}}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto a = sweep(mech, n, filter), b = serial::sweep(mech, n, filter);
      CHECK(a.profiles == b.profiles);
      CHECK(a.sp_violations == b.sp_violations);
      CHECK(a.weak_sp_violations == b.weak_sp_violations);
      CHECK(a.profiles_with_sp_violation == b.profiles_with_sp_violation);
      same_witness(a.first_sp, b.first_sp);
      same_witness(a.first_weak_sp, b.first_weak_sp);
    }
  }
}

TEST_CASE("parallel random priority equals the serial reference") {
  uatest::Rng rng(53);
  for (int t = 0; t < 30; ++t) {
    const auto pr = uatest::random_profile(rng, 1 + t % 6);
    CHECK(rp_assign(pr) == serial::rp_assign(pr));
  }
}

TEST_CASE("parallel Pareto enumeration equals the serial reference") {
  uatest::Rng rng(59);
  for (int t = 0; t < 30; ++t) {
    const auto pr = uatest::random_profile(rng, 1 + t % 6);
    CHECK(enumerate_pe_matchings(pr) == serial::enumerate_pe_matchings(pr));
  }
  CHECK(enumerate_pe_matchings(theorem1_profile(2, 6)) == serial::enumerate_pe_matchings(theorem1_profile(2, 6)));
}
