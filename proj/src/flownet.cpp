#include "ua/flownet.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <stdexcept>

#include "ua/errors.hpp"
#include "ua/guards.hpp"

namespace ua {

FlowNetwork::FlowNetwork(std::size_t num_nodes, std::size_t source, std::size_t sink)
    : num_nodes_(num_nodes), source_(source), sink_(sink) {
  if (source >= num_nodes || sink >= num_nodes || source == sink) throw InputError("flow network: bad source/sink");
}

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, Rational capacity) {
  if (from >= num_nodes_ || to >= num_nodes_) throw InputError("flow network: arc endpoint out of range");
  if (capacity < 0) throw InputError("flow network: negative capacity");
  arcs_.push_back(Arc{from, to, std::move(capacity)});
  return arcs_.size() - 1;
}

std::size_t FlowNetwork::add_unbounded_arc(std::size_t from, std::size_t to) {
  if (from >= num_nodes_ || to >= num_nodes_) throw InputError("flow network: arc endpoint out of range");
  arcs_.push_back(Arc{from, to, std::nullopt});
  return arcs_.size() - 1;
}

namespace {

struct ResidualEdge {
  std::size_t arc;
  bool forward;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  const auto& arcs = net.arcs();
  const std::size_t nn = net.num_nodes();
  std::vector<std::vector<ResidualEdge>> adj(nn);
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    adj[arcs[e].from].push_back({e, true});
    adj[arcs[e].to].push_back({e, false});
  }

  FlowResult out;
  out.value = 0;
  out.arc_flow.assign(arcs.size(), 0);

  // Residual capacity; nullopt means unbounded.
  auto residual = [&](const ResidualEdge& r) -> std::optional<Rational> {
    const auto& a = arcs[r.arc];
    if (!r.forward) return out.arc_flow[r.arc];
    if (!a.capacity) return std::nullopt;
    return *a.capacity - out.arc_flow[r.arc];
  };
  auto has_residual = [&](const ResidualEdge& r) {
    auto c = residual(r);
    return !c || *c > 0;
  };

  for (;;) {
    std::vector<std::optional<ResidualEdge>> parent(nn);
    std::vector<bool> seen(nn, false);
    std::deque<std::size_t> queue{net.source()};
    seen[net.source()] = true;
    while (!queue.empty() && !seen[net.sink()]) {
      const auto u = queue.front();
      queue.pop_front();
      for (const auto& r : adj[u]) {
        const auto v = r.forward ? arcs[r.arc].to : arcs[r.arc].from;
        if (seen[v] || !has_residual(r)) continue;
        seen[v] = true;
        parent[v] = r;
        queue.push_back(v);
      }
    }
    if (!seen[net.sink()]) break;

    std::optional<Rational> bottleneck;
    for (auto v = net.sink(); v != net.source();) {
      const auto& r = *parent[v];
      if (auto c = residual(r); c && (!bottleneck || *c < *bottleneck)) bottleneck = *c;
      v = r.forward ? arcs[r.arc].from : arcs[r.arc].to;
    }
    if (!bottleneck) throw InputError("flow network: unbounded source-sink path");
    for (auto v = net.sink(); v != net.source();) {
      const auto& r = *parent[v];
      if (r.forward) {
        out.arc_flow[r.arc] += *bottleneck;
      } else {
        out.arc_flow[r.arc] -= *bottleneck;
      }
      v = r.forward ? arcs[r.arc].from : arcs[r.arc].to;
    }
    out.value += *bottleneck;
  }

  // Reverse search from the sink: u reaches the sink iff some residual
  // edge u -> v leads to a node already known to reach it.
  std::vector<bool> reaches_sink(nn, false);
  std::deque<std::size_t> queue{net.sink()};
  reaches_sink[net.sink()] = true;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& r : adj[v]) {
      // r is an edge incident to v; the residual edge u -> v is the forward
      // arc u->v (r.forward == false from v's list) or the reverse of v->u.
      const auto u = r.forward ? arcs[r.arc].to : arcs[r.arc].from;
      const ResidualEdge into_v{r.arc, !r.forward};
      if (reaches_sink[u] || !has_residual(into_v)) continue;
      reaches_sink[u] = true;
      queue.push_back(u);
    }
  }
  out.maximal_source_side.resize(nn);
  for (std::size_t u = 0; u < nn; ++u) out.maximal_source_side[u] = !reaches_sink[u];
  return out;
}

namespace {

void validate(const StageState& s) {
  if (s.agents.empty()) throw std::logic_error("bottleneck: no active agents");
  if (s.best_sets.size() != s.agents.size()) throw std::logic_error("bottleneck: best_sets size mismatch");
  if (!s.owed.empty() && s.owed.size() != s.agents.size()) throw std::logic_error("bottleneck: owed size mismatch");
  for (std::size_t a = 0; a < s.agents.size(); ++a) {
    if (s.best_sets[a].empty()) {
      throw std::logic_error("bottleneck: agent " + std::to_string(s.agents[a] + 1) + " has an empty best set");
    }
    for (auto o : s.best_sets[a]) {
      if (o >= s.remaining.size() || s.remaining[o] <= 0) {
        throw std::logic_error("bottleneck: best set contains an exhausted object");
      }
    }
  }
}

Rational owed_of(const StageState& s, std::size_t a) { return s.owed.empty() ? Rational(0) : s.owed[a]; }

BottleneckResult make_result(const StageState& s, Rational ratio, const std::vector<std::size_t>& members) {
  BottleneckResult out;
  out.ratio = std::move(ratio);
  std::vector<bool> in_c(s.remaining.size(), false);
  for (auto a : members) {
    out.agents.push_back(s.agents[a]);
    for (auto o : s.best_sets[a]) in_c[o] = true;
  }
  std::sort(out.agents.begin(), out.agents.end());
  for (std::size_t o = 0; o < in_c.size(); ++o) {
    if (in_c[o]) out.objects.push_back(o);
  }
  return out;
}

}  // namespace

BottleneckResult find_bottleneck_by_flow(const StageState& s) {
  validate(s);
  const std::size_t k = s.agents.size();
  const std::size_t m = s.remaining.size();
  const std::size_t source = 0, sink = 1;
  auto agent_node = [](std::size_t a) { return 2 + a; };
  auto object_node = [k](std::size_t o) { return 2 + k + o; };

  // Dinkelbach: start from S = all agents and shrink lambda to the ratio of
  // whichever set the current minimum cut exposes.
  auto ratio_of = [&](const std::vector<std::size_t>& members) {
    std::vector<bool> in_c(m, false);
    Rational num = 0;
    for (auto a : members) {
      num -= owed_of(s, a);
      for (auto o : s.best_sets[a]) in_c[o] = true;
    }
    for (std::size_t o = 0; o < m; ++o) {
      if (in_c[o]) num += s.remaining[o];
    }
    return Rational(num / static_cast<long>(members.size()));
  };

  std::vector<std::size_t> all(k);
  for (std::size_t a = 0; a < k; ++a) all[a] = a;
  Rational lambda = ratio_of(all);

  for (;;) {
    FlowNetwork net(2 + k + m, source, sink);
    Rational total = 0;
    for (std::size_t a = 0; a < k; ++a) {
      Rational cap = owed_of(s, a) + lambda;
      if (cap < 0) throw std::logic_error("bottleneck: promised amounts exceed the available mass");
      total += cap;
      net.add_arc(source, agent_node(a), std::move(cap));
      for (auto o : s.best_sets[a]) net.add_unbounded_arc(agent_node(a), object_node(o));
    }
    for (std::size_t o = 0; o < m; ++o) {
      if (s.remaining[o] > 0) net.add_arc(object_node(o), sink, s.remaining[o]);
    }
    const auto flow = max_flow(net);
    std::vector<std::size_t> side;
    for (std::size_t a = 0; a < k; ++a) {
      if (flow.maximal_source_side[agent_node(a)]) side.push_back(a);
    }
    if (flow.value == total) return make_result(s, lambda, side);
    if (side.empty()) throw std::logic_error("bottleneck: min cut without agents below total demand");
    Rational next = ratio_of(side);
    if (next >= lambda) throw std::logic_error("bottleneck: parametric search failed to decrease");
    lambda = std::move(next);
  }
}

BottleneckResult find_bottleneck_by_enumeration(const StageState& s) {
  validate(s);
  const std::size_t k = s.agents.size();
  enforce_guard(Guard::subsets, k, "bottleneck enumeration");
  if (s.remaining.size() > 64) throw GuardError("bottleneck enumeration supports at most 64 objects");

  std::vector<std::uint64_t> best_mask(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (auto o : s.best_sets[a]) best_mask[a] |= std::uint64_t{1} << o;
  }
  const std::size_t count = std::size_t{1} << k;
  std::vector<std::uint64_t> union_mask(count, 0);
  std::optional<Rational> best;
  std::uint64_t minimizers = 0;  // union of all minimising subsets
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    union_mask[mask] = union_mask[mask & (mask - 1)] | best_mask[low];
    Rational num = 0;
    for (std::size_t o = 0; o < s.remaining.size(); ++o) {
      if (union_mask[mask] >> o & 1U) num += s.remaining[o];
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (mask >> a & 1U) num -= owed_of(s, a);
    }
    Rational ratio = num / static_cast<long>(std::popcount(mask));
    if (!best || ratio < *best) {
      best = std::move(ratio);
      minimizers = mask;
    } else if (ratio == *best) {
      minimizers |= mask;
    }
  }
  std::vector<std::size_t> members;
  for (std::size_t a = 0; a < k; ++a) {
    if (minimizers >> a & 1U) members.push_back(a);
  }
  return make_result(s, *best, members);
}

BottleneckResult find_bottleneck(const StageState& state, BottleneckEngine engine) {
  return engine == BottleneckEngine::enumeration ? find_bottleneck_by_enumeration(state)
                                                 : find_bottleneck_by_flow(state);
}

}  // namespace ua
