#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "ua/errors.hpp"
#include "ua/flownet.hpp"

using namespace ua;

namespace {

StageState stage(std::vector<std::vector<std::size_t>> best, RationalVector remaining) {
  StageState s;
  for (std::size_t a = 0; a < best.size(); ++a) s.agents.push_back(a);
  s.best_sets = std::move(best);
  s.remaining = std::move(remaining);
  return s;
}

}  // namespace

TEST_CASE("max flow on small networks") {
  // Two agents share one object.
  FlowNetwork shared(5, 0, 1);
  shared.add_arc(0, 2, 1);
  shared.add_arc(0, 3, 1);
  shared.add_unbounded_arc(2, 4);
  shared.add_unbounded_arc(3, 4);
  shared.add_arc(4, 1, 1);
  CHECK(max_flow(shared).value == 1);

  FlowNetwork full(6, 0, 1);
  for (std::size_t ag : {2, 3}) {
    full.add_arc(0, ag, frac(1, 2));
    for (std::size_t ob : {4, 5}) full.add_unbounded_arc(ag, ob);
  }
  full.add_arc(4, 1, 1);
  full.add_arc(5, 1, 1);
  CHECK(max_flow(full).value == 1);

  // Agents 1, 2 -> {o1}, agent 3 -> {o1, o2}, source caps 1/2.
  FlowNetwork stage1(7, 0, 1);
  for (std::size_t ag : {2, 3, 4}) stage1.add_arc(0, ag, frac(1, 2));
  stage1.add_unbounded_arc(2, 5);
  stage1.add_unbounded_arc(3, 5);
  stage1.add_unbounded_arc(4, 5);
  stage1.add_unbounded_arc(4, 6);
  stage1.add_arc(5, 1, 1);
  stage1.add_arc(6, 1, 1);
  const auto f = max_flow(stage1);
  CHECK(f.value == frac(3, 2));
  for (std::size_t k = 0; k < stage1.arcs().size(); ++k) {
    const auto& arc = stage1.arcs()[k];
    CHECK(f.arc_flow[k] >= 0);
    if (arc.capacity) CHECK(f.arc_flow[k] <= *arc.capacity);
  }

  FlowNetwork neg(2, 0, 1);
  CHECK_THROWS_AS(neg.add_arc(0, 1, -1), InputError);
  FlowNetwork open(2, 0, 1);
  open.add_unbounded_arc(0, 1);
  CHECK_THROWS_AS(max_flow(open), InputError);
}

TEST_CASE("bottleneck examples") {
  const RationalVector ones = {1, 1, 1, 1};
  for (auto engine : {BottleneckEngine::parametric_flow, BottleneckEngine::enumeration}) {
    const auto a = find_bottleneck(stage({{0}, {0}, {0, 1}, {0, 1}}, ones), engine);
    CHECK(a.ratio == frac(1, 2));
    CHECK(a.agents == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(a.objects == std::vector<std::size_t>{0, 1});

    const auto b = find_bottleneck(stage({{0}, {0}, {0, 1}}, {1, 1, 1}), engine);
    CHECK(b.ratio == frac(1, 2));
    CHECK(b.agents == std::vector<std::size_t>{0, 1});

    const auto c = find_bottleneck(stage({{0}}, {1}), engine);
    CHECK(c.ratio == 1);
    CHECK(c.agents == std::vector<std::size_t>{0});
  }
  CHECK_THROWS(find_bottleneck(stage({{}}, {1})));
}

TEST_CASE("bottleneck engines match the subset oracle and the lattice") {
  uatest::Rng rng(77);
  std::uniform_int_distribution<std::size_t> agents(1, 10), objects(1, 10);
  for (int t = 0; t < 300; ++t) {
    const auto s = uatest::random_stage(rng, agents(rng), objects(rng));
    const auto oracle = uatest::bottleneck_oracle(s);
    const auto flow = find_bottleneck_by_flow(s);
    const auto en = find_bottleneck_by_enumeration(s);
    REQUIRE(flow.ratio == oracle.ratio);
    CHECK(flow.agents == oracle.agents);
    CHECK(flow.objects == oracle.objects);
    CHECK(en.ratio == oracle.ratio);
    CHECK(en.agents == oracle.agents);
    // S* itself attains the ratio (the union of minimisers is a minimiser).
    Rational num = 0;
    for (auto o : flow.objects) num += s.remaining[o];
    for (auto a : flow.agents) {
      if (!s.owed.empty()) num -= s.owed[a];
    }
    CHECK(num / static_cast<long>(flow.agents.size()) == flow.ratio);
  }
}
