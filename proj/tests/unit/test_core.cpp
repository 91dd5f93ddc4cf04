#include <doctest.h>

#include <set>

#include "support.hpp"
#include "ua/dominance.hpp"
#include "ua/errors.hpp"
#include "ua/mechanisms.hpp"
#include "ua/repro.hpp"

using namespace ua;
using uatest::matrix_of;

namespace {

RationalVector v(std::initializer_list<const char*> xs) {
  RationalVector out;
  for (auto x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST_CASE("rationals stay canonical") {
  CHECK(to_string(frac(2, 4)) == "1/2");
  CHECK(to_string(frac(-3, -9)) == "1/3");
  CHECK(parse_rational("6/8") == frac(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("uniform preferences are the compositions of n") {
  CHECK(enumerate_uniform_prefs(1).size() == 1);
  const auto three = enumerate_uniform_prefs(3);
  REQUIRE(three.size() == 4);
  CHECK(three[0].to_string() == "o1,o2,o3");
  CHECK(three[1].to_string() == "o1,{o2 o3}");
  CHECK(three[2].to_string() == "{o1 o2},o3");
  CHECK(three[3].to_string() == "{o1 o2 o3}");
  CHECK(enumerate_uniform_prefs(4).size() == 8);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto all = enumerate_uniform_prefs(n);
    CHECK(all.size() == std::size_t{1} << (n - 1));
    CHECK(std::set<UniformPreference>(all.begin(), all.end()).size() == all.size());
  }
  CHECK_THROWS_AS(enumerate_uniform_prefs(0), InputError);
  CHECK_THROWS_AS(UniformPreference(3, {2, 1, 3}), InputError);
  CHECK_THROWS_AS(UniformPreference(3, {1, 2}), InputError);
}

TEST_CASE("class prefix sums") {
  const auto strict3 = UniformPreference::strict(3);
  CHECK(class_prefix_sums(v({"1/3", "1/2", "1/6"}), strict3) == v({"1/3", "5/6", "1"}));
  CHECK(class_prefix_sums(v({"0", "3/4", "1/4"}), UniformPreference(3, {2, 3})) == v({"3/4", "1"}));
  CHECK(class_prefix_sums(v({"1/5", "3/5", "1/5"}), UniformPreference::indifferent(3)) == v({"1"}));
  CHECK_THROWS(class_prefix_sums(v({"1/2", "1/2"}), strict3));
}

TEST_CASE("sd_compare verdicts") {
  const UniformPreference split(3, {2, 3});
  CHECK(sd_compare(v({"1/3", "1/2", "1/6"}), v({"0", "3/4", "1/4"}), split) == SdVerdict::strictly_dominates);
  CHECK(sd_compare(v({"0", "3/4", "1/4"}), v({"1/3", "1/2", "1/6"}), split) == SdVerdict::dominated);
  CHECK(sd_compare(v({"1/3", "1/2", "1/6"}), v({"1/3", "1/2", "1/6"}), split) == SdVerdict::equivalent);
  CHECK(sd_compare(v({"1/2", "0", "1/2"}), v({"0", "1", "0"}), UniformPreference::strict(3)) ==
        SdVerdict::incomparable);
}

TEST_CASE("sd is a partial order on random rows") {
  uatest::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto pr = uatest::random_pref(rng, n);
    const auto a = uatest::random_bistochastic(rng, n, 3), b = uatest::random_bistochastic(rng, n, 3),
               c = uatest::random_bistochastic(rng, n, 3);
    const auto ra = a.row(0), rb = b.row(0), rc = c.row(0);
    CHECK(sd_compare(ra, ra, pr) == SdVerdict::equivalent);
    const auto wd = [&](auto x, auto y) { return weakly_dominates(sd_compare(x, y, pr)); };
    if (wd(ra, rb) && wd(rb, ra)) {
      CHECK(class_prefix_sums(ra, pr) == class_prefix_sums(rb, pr));
    }
    if (wd(ra, rb) && wd(rb, rc)) CHECK(wd(ra, rc));
    const auto ab = sd_compare(ra, rb, pr), ba = sd_compare(rb, ra, pr);
    CHECK((ab == SdVerdict::strictly_dominates) == (ba == SdVerdict::dominated));
    CHECK((ab == SdVerdict::incomparable) == (ba == SdVerdict::incomparable));
  }
}

TEST_CASE("matrix dominance") {
  const auto half = profile_from_notation({"o1,o2", "{o1 o2}"});
  CHECK(matrix_sd_dominates(AssignmentMatrix::from_matching(Matching::identity(2)), AssignmentMatrix::uniform(2), half));
  CHECK_FALSE(matrix_sd_dominates(AssignmentMatrix::uniform(2), AssignmentMatrix::uniform(2), half));

  const auto ex = verify_example31();
  CHECK_FALSE(matrix_sd_dominates(ex.first, ex.eps, ex.profile));
  CHECK_FALSE(matrix_sd_dominates(ex.eps, ex.first, ex.profile));

  uatest::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto pr = uatest::random_profile(rng, n);
    const auto p = uatest::random_bistochastic(rng, n, 2), q = uatest::random_bistochastic(rng, n, 2);
    CHECK_FALSE((matrix_sd_dominates(p, q, pr) && matrix_sd_dominates(q, p, pr)));
  }
}

TEST_CASE("equivalence of assignments") {
  const auto ex = verify_example31();
  CHECK(assignments_equivalent(ex.first, ex.first, ex.profile));
  CHECK_FALSE(assignments_equivalent(ex.first, ex.eps, ex.profile));

  // Both agents indifferent: permuting columns keeps every class mass.
  const auto flat = profile_from_notation({"{o1 o2}", "{o1 o2}"});
  const auto a = matrix_of({{"1/3", "2/3"}, {"2/3", "1/3"}});
  const auto b = matrix_of({{"2/3", "1/3"}, {"1/3", "2/3"}});
  CHECK(assignments_equivalent(a, b, flat));

  uatest::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto pr = uatest::random_profile(rng, 3);
    const auto p = uatest::random_bistochastic(rng, 3, 2), q = uatest::random_bistochastic(rng, 3, 2),
               r = uatest::random_bistochastic(rng, 3, 2);
    CHECK(assignments_equivalent(p, p, pr));
    CHECK(assignments_equivalent(p, q, pr) == assignments_equivalent(q, p, pr));
    if (assignments_equivalent(p, q, pr) && assignments_equivalent(q, r, pr)) CHECK(assignments_equivalent(p, r, pr));
  }
}

TEST_CASE("assignment matrices are validated") {
  CHECK_THROWS_AS(matrix_of({{"1/2", "1/2"}, {"1/2", "1/3"}}), InputError);
  CHECK_THROWS_AS(matrix_of({{"3/2", "-1/2"}, {"-1/2", "3/2"}}), InputError);
  CHECK_THROWS_AS(Matching({0, 0}), InputError);
  CHECK(all_matchings(4).size() == 24);
  CHECK(AssignmentMatrix::from_matching(Matching({1, 0})).to_matching() == Matching({1, 0}));
}
