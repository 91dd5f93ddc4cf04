#include <doctest.h>

#include <variant>

#include "support.hpp"
#include "ua/axioms.hpp"
#include "ua/errors.hpp"
#include "ua/lottery.hpp"
#include "ua/repro.hpp"

using namespace ua;
using uatest::matrix_of;

TEST_CASE("Birkhoff-von Neumann peeling") {
  const auto id = bvn_decompose(AssignmentMatrix::from_matching(Matching::identity(4)));
  REQUIRE(id.entries.size() == 1);
  CHECK(id.entries[0].weight == 1);

  const auto third = bvn_decompose(AssignmentMatrix::uniform(3));
  REQUIRE(third.entries.size() == 3);
  for (const auto& e : third.entries) CHECK(e.weight == frac(1, 3));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      for (std::size_t i = 0; i < 3; ++i) CHECK(third.entries[a].matching.object_of(i) != third.entries[b].matching.object_of(i));
    }
  }

  const auto p = matrix_of({{"1/2", "1/4", "1/4"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}});
  CHECK(bvn_decompose(p).recombine() == p);
  CHECK(bvn_decompose(p) .entries.size() <= bvn_support_bound(3));
}

TEST_CASE("BvN recombines exactly and respects the support bound") {
  uatest::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto p = uatest::random_bistochastic(rng, n, 1 + rng() % (n * n + 2));
    const auto l = bvn_decompose(p);
    CHECK(l.recombine() == p);
    CHECK(l.entries.size() <= bvn_support_bound(n));
    for (const auto& e : l.entries) CHECK(e.weight > 0);
  }
  CHECK(bvn_support_bound(4) == 10);
}

TEST_CASE("decomposition over Pareto-efficient matchings") {
  const auto prof2 = theorem1_profile(2, 3);
  const auto p = matrix_of({{"1/2", "1/4", "1/4"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}});
  const auto d = pe_decompose(p, prof2);
  REQUIRE(std::holds_alternative<Lottery>(d));
  const auto& l = std::get<Lottery>(d);
  CHECK(l.recombine() == p);
  for (const auto& e : l.entries) CHECK(pareto_efficient(e.matching, prof2).holds);

  const auto prof1 = theorem1_profile(1, 3);
  const auto y = frac(1, 12);
  const AssignmentMatrix q({{frac(1, 3), frac(1, 2) - y, frac(1, 6) + y},
                            {frac(1, 3), 2 * y, frac(2, 3) - 2 * y},
                            {frac(1, 3), frac(1, 2) - y, frac(1, 6) + y}});
  const auto e = pe_decompose(q, prof1);
  REQUIRE(std::holds_alternative<HullInfeasibility>(e));
  CHECK(verify_farkas(std::get<HullInfeasibility>(e).system, std::get<HullInfeasibility>(e).certificate));

  const Matching swap({1, 0, 2});
  const auto pe = profile_from_notation({"o1,o2,o3", "o1,o2,o3", "o1,o2,o3"});
  const auto s = pe_decompose(AssignmentMatrix::from_matching(swap), pe);
  REQUIRE(std::holds_alternative<Lottery>(s));
  REQUIRE(std::get<Lottery>(s).entries.size() == 1);
  CHECK(std::get<Lottery>(s).entries[0].matching == swap);
  CHECK(std::get<Lottery>(s).entries[0].weight == 1);
}

TEST_CASE("pe_decompose succeeds exactly when ex_post_efficient holds") {
  uatest::Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto pr = uatest::random_profile(rng, n);
    const auto p = uatest::random_bistochastic(rng, n, 2);
    CHECK(std::holds_alternative<Lottery>(pe_decompose(p, pr)) == ex_post_efficient(p, pr).holds);
  }
}
