#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ua/rational.hpp"

namespace ua {

/// Directed network with rational (or unbounded) arc capacities.
class FlowNetwork {
 public:
  struct Arc {
    std::size_t from, to;
    std::optional<Rational> capacity;  // nullopt = unbounded
  };

  FlowNetwork(std::size_t num_nodes, std::size_t source, std::size_t sink);

  /// Throws InputError on a negative capacity or unknown node.
  std::size_t add_arc(std::size_t from, std::size_t to, Rational capacity);
  std::size_t add_unbounded_arc(std::size_t from, std::size_t to);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::size_t num_nodes_, source_, sink_;
  std::vector<Arc> arcs_;
};

struct FlowResult {
  Rational value;
  RationalVector arc_flow;  // indexed like FlowNetwork::arcs()
  /// Nodes that cannot reach the sink in the final residual graph: the
  /// source side of the maximal minimum cut.
  std::vector<bool> maximal_source_side;
};

/// Edmonds-Karp (BFS augmenting paths) over exact rationals. Throws
/// InputError if an unbounded source-sink path exists.
FlowResult max_flow(const FlowNetwork& net);

/// One eating stage: the active agents, each agent's best set among the
/// objects still available, every object's remaining mass, and the amount
/// already promised to each agent but not yet placed on a specific object.
struct StageState {
  std::vector<std::size_t> agents;                 // agent labels (0-based)
  std::vector<std::vector<std::size_t>> best_sets; // parallel to `agents`
  RationalVector remaining;                        // per object
  RationalVector owed;                             // parallel to `agents`; empty = all zero
};

struct BottleneckResult {
  Rational ratio;                    // lambda*: per-agent amount the bottleneck set can still absorb
  std::vector<std::size_t> agents;   // S*, the maximal minimiser (sorted labels)
  std::vector<std::size_t> objects;  // C(S*), union of their best sets (sorted)
};

enum class BottleneckEngine { parametric_flow, enumeration };

/// lambda* = min over non-empty S of (remaining(C(S)) - owed(S)) / |S| and the
/// largest S attaining it. With nothing owed this is remaining(C(S)) / |S|.
BottleneckResult find_bottleneck(const StageState& state,
                                 BottleneckEngine engine = BottleneckEngine::parametric_flow);

BottleneckResult find_bottleneck_by_flow(const StageState& state);

/// Subset enumeration; guarded by Guard::subsets.
BottleneckResult find_bottleneck_by_enumeration(const StageState& state);

}  // namespace ua
