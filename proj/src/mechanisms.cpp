#include "ua/mechanisms.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "ua/dominance.hpp"
#include "ua/errors.hpp"
#include "ua/guards.hpp"

namespace ua {

namespace {

// Objects of agent i's highest class that still has positive mass.
std::vector<std::size_t> best_available(const UniformPreference& pref, const RationalVector& remaining) {
  for (std::size_t k = 0; k < pref.num_classes(); ++k) {
    std::vector<std::size_t> out;
    for (std::size_t o = pref.class_begin(k); o < pref.class_end(k); ++o) {
      if (remaining[o] > 0) out.push_back(o);
    }
    if (!out.empty()) return out;
  }
  return {};
}

// Places claim[a] for each bottleneck agent onto its best set, exhausting
// C(S*) exactly.
std::vector<RationalVector> place_bottleneck(const StageState& state, const std::vector<std::size_t>& members,
                                             const RationalVector& claim, std::size_t n) {
  const std::size_t k = members.size();
  const std::size_t source = 0, sink = 1;
  FlowNetwork net(2 + k + n, source, sink);
  Rational demand = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> arcs_of(k);  // (arc, object)
  for (std::size_t x = 0; x < k; ++x) {
    demand += claim[x];
    net.add_arc(source, 2 + x, claim[x]);
    for (auto o : state.best_sets[members[x]]) arcs_of[x].emplace_back(net.add_unbounded_arc(2 + x, 2 + k + o), o);
  }
  for (std::size_t o = 0; o < n; ++o) {
    if (state.remaining[o] > 0) net.add_arc(2 + k + o, sink, state.remaining[o]);
  }
  const auto flow = max_flow(net);
  if (flow.value != demand) throw std::logic_error("eps: bottleneck claims cannot be placed");
  auto inc = zero_grid(n);
  for (std::size_t x = 0; x < k; ++x) {
    for (auto [arc, o] : arcs_of[x]) inc[state.agents[members[x]]][o] += flow.arc_flow[arc];
  }
  return inc;
}

}  // namespace

EpsResult eps_assign(const Profile& profile, BottleneckEngine engine) {
  const std::size_t n = profile.size();
  RationalVector remaining(n, 1), owed(n, 0), placed(n, 0);
  auto alloc = zero_grid(n);
  Rational time = 0;
  EpsTrace trace;

  while (std::any_of(remaining.begin(), remaining.end(), [](const Rational& r) { return r > 0; })) {
    StageState state;
    state.remaining = remaining;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] == 1) continue;
      state.agents.push_back(i);
      state.best_sets.push_back(best_available(profile[i], remaining));
      state.owed.push_back(owed[i]);
    }
    auto bottleneck = find_bottleneck(state, engine);
    const Rational& lambda = bottleneck.ratio;
    if (lambda < 0 || time + lambda > 1) throw std::logic_error("eps: stage length out of range");

    std::vector<std::size_t> members;
    RationalVector claim;
    std::vector<bool> in_star(n, false);
    for (auto i : bottleneck.agents) in_star[i] = true;
    for (std::size_t a = 0; a < state.agents.size(); ++a) {
      if (!in_star[state.agents[a]]) continue;
      members.push_back(a);
      claim.push_back(state.owed[a] + lambda);
    }
    auto inc = place_bottleneck(state, members, claim, n);

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t o = 0; o < n; ++o) {
        if (inc[i][o] == 0) continue;
        alloc[i][o] += inc[i][o];
        placed[i] += inc[i][o];
        remaining[o] -= inc[i][o];
      }
    }
    for (auto o : bottleneck.objects) {
      if (remaining[o] != 0) throw std::logic_error("eps: bottleneck object not exhausted");
    }
    for (auto i : state.agents) owed[i] = in_star[i] ? Rational(0) : Rational(owed[i] + lambda);

    EpsStage stage{time,        time + lambda,         std::move(state.agents), std::move(state.best_sets),
                   std::move(state.owed), std::move(bottleneck), std::move(inc), remaining};
    time = stage.time_after;
    trace.stages.push_back(std::move(stage));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i] != 1) throw std::logic_error("eps: agent total differs from 1");
  }
  AssignmentMatrix raw(alloc);
  return EpsResult{canonicalize(raw, profile), std::move(trace)};
}

AssignmentMatrix eps_mechanism(const Profile& profile) { return eps_assign(profile).matrix; }

AssignmentMatrix canonicalize(const AssignmentMatrix& matrix, const Profile& profile) {
  const std::size_t n = matrix.size();
  if (profile.size() != n) throw InputError("canonicalize: size mismatch");
  auto p = matrix.rows();
  std::vector<std::vector<bool>> frozen(n, std::vector<bool>(n, false));

  // Raise p[i][j] along alternating chains j -> b1 -> ... -> l: agent k_t
  // swaps mass between two objects of one of its classes, and agent i finally
  // gives up some l in j's class. Only unfrozen entries move, so class
  // masses and column sums are preserved.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (;;) {
        struct Step {
          std::size_t prev_object, agent;
        };
        std::vector<std::optional<Step>> from(n);
        std::vector<bool> seen(n, false);
        seen[j] = true;
        std::deque<std::size_t> queue{j};
        std::optional<std::size_t> goal;
        while (!queue.empty() && !goal) {
          const auto b = queue.front();
          queue.pop_front();
          if (b != j && profile[i].indifferent(b, j) && !frozen[i][b] && p[i][b] > 0) {
            goal = b;
            break;
          }
          for (std::size_t k = 0; k < n && !goal; ++k) {
            if (frozen[k][b] || (k == i && b == j) || p[k][b] <= 0) continue;
            const auto& pref = profile[k];
            const auto cls = pref.class_of(b);
            for (auto b2 = pref.class_begin(cls); b2 < pref.class_end(cls); ++b2) {
              if (b2 == b || seen[b2] || frozen[k][b2]) continue;
              seen[b2] = true;
              from[b2] = Step{b, k};
              queue.push_back(b2);
            }
          }
        }
        if (!goal) break;
        Rational delta = p[i][*goal];
        for (auto b = *goal; b != j; b = from[b]->prev_object) {
          const auto& s = *from[b];
          if (p[s.agent][s.prev_object] < delta) delta = p[s.agent][s.prev_object];
        }
        p[i][j] += delta;
        p[i][*goal] -= delta;
        for (auto b = *goal; b != j; b = from[b]->prev_object) {
          const auto& s = *from[b];
          p[s.agent][s.prev_object] -= delta;
          p[s.agent][b] += delta;
        }
      }
      frozen[i][j] = true;
    }
  }
  AssignmentMatrix out(p);
  if (!assignments_equivalent(out, matrix, profile)) throw std::logic_error("canonicalize changed class masses");
  return out;
}

bool in_deadline_subdomain(const UniformPreference& pref) {
  for (std::size_t k = 0; k + 1 < pref.num_classes(); ++k) {
    if (pref.class_end(k) - pref.class_begin(k) != 1) return false;
  }
  return true;
}

AssignmentMatrix ps_strict(const Profile& profile) {
  const std::size_t n = profile.size();
  std::vector<std::vector<std::size_t>> acceptable(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pref = profile[i];
    if (!in_deadline_subdomain(pref)) {
      throw InputError("ps_strict: agent " + std::to_string(i + 1) + " (" + pref.to_string() +
                       ") is outside the deadline subdomain");
    }
    const auto last = pref.num_classes() - 1;
    const bool terminal_block = pref.class_end(last) - pref.class_begin(last) > 1;
    const auto end = terminal_block ? pref.class_begin(last) : n;
    for (std::size_t o = 0; o < end; ++o) acceptable[i].push_back(o);
  }

  auto p = zero_grid(n);
  RationalVector remaining(n, 1), consumed(n, 0);
  Rational time = 0;
  for (;;) {
    std::vector<std::optional<std::size_t>> eating(n);
    std::vector<long> eaters(n, 0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (consumed[i] == 1) continue;
      for (auto o : acceptable[i]) {
        if (remaining[o] > 0) {
          eating[i] = o;
          ++eaters[o];
          any = true;
          break;
        }
      }
    }
    if (!any || time == 1) break;
    Rational step = 1 - time;
    for (std::size_t o = 0; o < n; ++o) {
      if (eaters[o] > 0) step = std::min<Rational>(step, remaining[o] / eaters[o]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!eating[i]) continue;
      p[i][*eating[i]] += step;
      consumed[i] += step;
      remaining[*eating[i]] -= step;
    }
    time += step;
  }
  // Leftovers all lie in terminal classes; fill them north-west corner style.
  std::size_t o = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (consumed[i] < 1) {
      while (remaining[o] == 0) ++o;
      const Rational take = std::min<Rational>(1 - consumed[i], remaining[o]);
      p[i][o] += take;
      consumed[i] += take;
      remaining[o] -= take;
    }
  }
  return AssignmentMatrix(p);
}

namespace {

// Kuhn's augmenting-path matching of agents into allowed objects.
class ClassMatcher {
 public:
  explicit ClassMatcher(std::size_t n) : n_(n) {}

  // allowed[i] empty means agent i is unconstrained and ignored.
  bool feasible(const std::vector<std::vector<bool>>& allowed, const std::vector<bool>& constrained) {
    owner_.assign(n_, npos);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!constrained[i]) continue;
      visited_.assign(n_, false);
      if (!augment(i, allowed)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool augment(std::size_t i, const std::vector<std::vector<bool>>& allowed) {
    for (std::size_t o = 0; o < n_; ++o) {
      if (!allowed[i][o] || visited_[o]) continue;
      visited_[o] = true;
      if (owner_[o] == npos || augment(owner_[o], allowed)) {
        owner_[o] = i;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::size_t> owner_;
  std::vector<bool> visited_;
};

AssignmentMatrix average_counts(const std::vector<std::vector<long long>>& counts, long long total) {
  const std::size_t n = counts.size();
  auto p = zero_grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p[i][j] = Rational(mpz_class(std::to_string(counts[i][j])), mpz_class(std::to_string(total)));
      p[i][j].canonicalize();
    }
  }
  return AssignmentMatrix(p);
}

long long factorial(std::size_t n) {
  long long f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<long long>(k);
  return f;
}

// The index-th permutation of 0..n-1 in lexicographic order.
std::vector<std::size_t> unrank_permutation(std::size_t n, long long index) {
  std::vector<std::size_t> pool(n), out;
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t k = n; k > 0; --k) {
    const long long f = factorial(k - 1);
    const auto pos = static_cast<std::size_t>(index / f);
    index %= f;
    out.push_back(pool[pos]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return out;
}

}  // namespace

Matching serial_dictatorship(const Profile& profile, std::span<const std::size_t> order) {
  const std::size_t n = profile.size();
  if (order.size() != n) throw InputError("serial_dictatorship: order size mismatch");
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
  std::vector<bool> constrained(n, false);
  ClassMatcher matcher(n);

  for (auto k : order) {
    const auto& pref = profile[k];
    constrained[k] = true;
    bool committed = false;
    for (std::size_t c = 0; c < pref.num_classes() && !committed; ++c) {
      std::fill(allowed[k].begin(), allowed[k].end(), false);
      for (auto o = pref.class_begin(c); o < pref.class_end(c); ++o) allowed[k][o] = true;
      committed = matcher.feasible(allowed, constrained);
    }
    if (!committed) throw std::logic_error("serial_dictatorship: no feasible class");
  }

  // Lexicographically first matching honouring every commitment: fix agents
  // in label order to the smallest object that keeps the rest feasible.
  std::vector<std::size_t> object_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = allowed[i];
    bool done = false;
    for (std::size_t o = 0; o < n && !done; ++o) {
      if (!row[o]) continue;
      std::fill(allowed[i].begin(), allowed[i].end(), false);
      allowed[i][o] = true;
      if (matcher.feasible(allowed, constrained)) {
        object_of[i] = o;
        done = true;
      } else {
        allowed[i] = row;
      }
    }
    if (!done) throw std::logic_error("serial_dictatorship: commitments became infeasible");
  }
  return Matching(std::move(object_of));
}

AssignmentMatrix rp_assign(const Profile& profile) {
  const std::size_t n = profile.size();
  enforce_guard(Guard::matchings, n, "rp_assign (enumerates n! priority orders; use sampling mode)");
  const long long orders = factorial(n);
  std::vector<std::vector<long long>> counts(n, std::vector<long long>(n, 0));

#pragma omp parallel
  {
    // Per-thread tallies; integer sums so the merge order does not matter.
    std::vector<std::vector<long long>> local(n, std::vector<long long>(n, 0));
    // Blocks of consecutive orders: unrank the first, then step in
    // lexicographic order like the serial loop.
    const long long block = 64, blocks = (orders + block - 1) / block;
#pragma omp for schedule(dynamic) nowait
    for (long long b = 0; b < blocks; ++b) {
      auto order = unrank_permutation(n, b * block);
      const long long end = std::min(orders, (b + 1) * block);
      for (long long idx = b * block; idx < end; ++idx) {
        const auto m = serial_dictatorship(profile, order);
        for (std::size_t i = 0; i < n; ++i) ++local[i][m.object_of(i)];
        std::next_permutation(order.begin(), order.end());
      }
    }
#pragma omp critical(rp_merge)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t o = 0; o < n; ++o) counts[i][o] += local[i][o];
    }
  }
  return average_counts(counts, orders);
}

AssignmentMatrix rp_assign_sampled(const Profile& profile, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("rp_assign_sampled: need at least one sample");
  const std::size_t n = profile.size();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<long long>> counts(n, std::vector<long long>(n, 0));
  for (std::size_t s = 0; s < samples; ++s) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto m = serial_dictatorship(profile, order);
    for (std::size_t i = 0; i < n; ++i) ++counts[i][m.object_of(i)];
  }
  return average_counts(counts, static_cast<long long>(samples));
}

namespace serial {

AssignmentMatrix rp_assign(const Profile& profile) {
  const std::size_t n = profile.size();
  enforce_guard(Guard::matchings, n, "rp_assign");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<long long>> counts(n, std::vector<long long>(n, 0));
  long long total = 0;
  do {
    const auto m = serial_dictatorship(profile, order);
    for (std::size_t i = 0; i < n; ++i) ++counts[i][m.object_of(i)];
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));
  return average_counts(counts, total);
}

}  // namespace serial

}  // namespace ua
