#include <doctest.h>

#include "support.hpp"
#include "ua/errors.hpp"
#include "ua/io.hpp"
#include "ua/mechanisms.hpp"

using namespace ua;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_profile(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("instance parsing") {
  const auto inst = parse_instance(R"({"n": 4, "agents": [
    {"name": "ann", "classes": [[1], [2, 3], [4]]},
    {"name": "bob", "classes": [[1], [2, 3], [4]]},
    {"name": "cy", "classes": [[1, 2], [3], [4]]},
    {"name": "di", "classes": [[1, 2], [3], [4]]}]})");
  CHECK(inst.profile.size() == 4);
  CHECK(inst.profile[0].to_string() == "o1,{o2 o3},o4");
  CHECK(inst.names[2] == "cy");

  CHECK(error_of(R"({"n": 3, "agents": [{"classes": [[2], [1], [3]]}, {"classes": [[1,2,3]]}, {"classes": [[1,2,3]]}]})")
            .find("agents[0].classes[0]") != std::string::npos);
  CHECK(error_of(R"({"n": 2, "agents": [{"classes": [[1]]}, {"classes": [[1, 2]]}]})").find("cover") !=
        std::string::npos);
  CHECK(error_of(R"({"n": 3, "agents": [{"classes": [[1, 2, 3]]}]})").find("agents") != std::string::npos);
  CHECK(error_of(R"({"n": 2, "agents": [)").find("line") != std::string::npos);
  CHECK(error_of(R"({"agents": []})").find("\"n\"") != std::string::npos);
}

TEST_CASE("preference notation") {
  CHECK(parse_preference_notation("o1,{o2 o3},o4", 4) == UniformPreference(4, {1, 3, 4}));
  CHECK(parse_preference_notation("{o1 o2 o3}", 3) == UniformPreference::indifferent(3));
  CHECK_THROWS_AS(parse_preference_notation("o2,o1", 2), InputError);
  CHECK_THROWS_AS(parse_preference_notation("o1,{o2", 2), InputError);
}

TEST_CASE("profiles round-trip") {
  uatest::Rng rng(61);
  for (int t = 0; t < 120; ++t) {
    const auto p = uatest::random_profile(rng, 1 + t % 12);
    CHECK(parse_profile(serialize_profile(p)) == p);
  }
}

TEST_CASE("matrices round-trip exactly") {
  uatest::Rng rng(67);
  for (int t = 0; t < 50; ++t) {
    const auto p = uatest::random_bistochastic(rng, 1 + t % 6, 3);
    const auto text = serialize_matrix(p);
    CHECK(text.back() == '\n');
    CHECK(parse_matrix(text) == p);
  }
  CHECK(parse_matrix(R"({"matrix": [["1/2", "1/2"], ["1/2", "1/2"]]})") == AssignmentMatrix::uniform(2));
  CHECK_THROWS_AS(parse_matrix(R"([["1/2", "1/3"], ["1/2", "2/3"]])"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"([[0.5, 0.5], [0.5, 0.5]])"), InputError);
}

TEST_CASE("deadline instances") {
  const auto p = jobs_to_profile(parse_jobs(R"({"deadlines": [3, 1, 2]})"));
  CHECK(p[0].to_string() == "o1,o2,o3");
  CHECK(p[1].to_string() == "o1,{o2 o3}");
  CHECK(p[2].to_string() == "o1,o2,o3");
  CHECK(jobs_to_profile({{2, 2}}) == Profile({UniformPreference::strict(2), UniformPreference::strict(2)}));
  CHECK(jobs_to_profile({{1}})[0] == UniformPreference::strict(1));
  CHECK_THROWS_AS(parse_jobs(R"({"deadlines": [4, 1, 2]})"), InputError);
  CHECK_THROWS_AS(parse_jobs(R"({"deadlines": [0]})"), InputError);

  uatest::Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 8;
    std::vector<std::size_t> d(n);
    for (auto& x : d) x = 1 + rng() % n;
    const auto q = jobs_to_profile({d});
    for (const auto& pref : q.agents()) CHECK(in_deadline_subdomain(pref));
    CHECK_NOTHROW(ps_strict(q));
  }
}
