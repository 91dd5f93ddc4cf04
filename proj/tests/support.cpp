#include "support.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "ua/dominance.hpp"

namespace uatest {

using ua::Rational;
using ua::RationalVector;

ua::UniformPreference random_pref(Rng& rng, std::size_t n) {
  std::vector<std::size_t> b;
  std::bernoulli_distribution cut(0.5);
  for (std::size_t k = 1; k < n; ++k) {
    if (cut(rng)) b.push_back(k);
  }
  b.push_back(n);
  return {n, b};
}

ua::Profile random_profile(Rng& rng, std::size_t n) {
  std::vector<ua::UniformPreference> prefs;
  for (std::size_t i = 0; i < n; ++i) prefs.push_back(random_pref(rng, n));
  return ua::Profile(std::move(prefs));
}

ua::AssignmentMatrix random_bistochastic(Rng& rng, std::size_t n, std::size_t terms) {
  auto g = ua::zero_grid(n);
  std::uniform_int_distribution<long> weight(1, 9);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long> w(terms);
  long total = 0;
  for (auto& x : w) total += x = weight(rng);
  for (std::size_t t = 0; t < terms; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) g[i][perm[i]] += ua::frac(w[t], total);
  }
  return ua::AssignmentMatrix(g);
}

ua::StageState random_stage(Rng& rng, std::size_t agents, std::size_t objects) {
  ua::StageState s;
  std::uniform_int_distribution<long> mass(1, 12);
  for (std::size_t o = 0; o < objects; ++o) s.remaining.push_back(ua::frac(mass(rng), 12));
  std::uniform_int_distribution<std::size_t> pick(0, objects - 1);
  std::bernoulli_distribution with_owed(0.5), extra(0.35);
  const bool owed = with_owed(rng);
  auto left = s.remaining;
  for (std::size_t a = 0; a < agents; ++a) {
    s.agents.push_back(a);
    std::vector<std::size_t> best{pick(rng)};
    for (std::size_t o = 0; o < objects; ++o) {
      if (o != best[0] && extra(rng)) best.push_back(o);
    }
    std::sort(best.begin(), best.end());
    s.best_sets.push_back(best);
    if (!owed) continue;
    // Route the owed amount out of what is still free in the best set.
    std::uniform_int_distribution<long> share(0, 4);
    Rational want = 0;
    for (auto o : best) want += left[o];
    want *= ua::frac(share(rng), 8);
    s.owed.push_back(want);
    for (auto o : best) {
      const Rational take = std::min(want, left[o]);
      left[o] -= take;
      want -= take;
    }
  }
  return s;
}

namespace {

void fill_grid(std::size_t n, long m, std::size_t cell, std::vector<std::vector<long>>& g, std::vector<long>& rows,
               std::vector<long>& cols, std::vector<ua::AssignmentMatrix>& out) {
  if (cell == n * n) {
    auto q = ua::zero_grid(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) q[i][j] = ua::frac(g[i][j], m);
    }
    out.emplace_back(q);
    return;
  }
  const std::size_t i = cell / n, j = cell % n;
  const bool last_col = j + 1 == n, last_row = i + 1 == n;
  long lo = 0, hi = std::min(m - rows[i], m - cols[j]);
  if (last_col) lo = hi = m - rows[i];
  if (last_row) {
    if (last_col && m - cols[j] != lo) return;
    lo = hi = m - cols[j];
  }
  for (long v = lo; v <= hi; ++v) {
    if (v < 0 || rows[i] + v > m || cols[j] + v > m) continue;
    g[i][j] = v;
    rows[i] += v;
    cols[j] += v;
    fill_grid(n, m, cell + 1, g, rows, cols, out);
    rows[i] -= v;
    cols[j] -= v;
  }
}

// Solves A x = b by Gauss-Jordan; nullopt unless the solution is unique.
std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b, std::size_t n) {
  const std::size_t rows = a.size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || a[q][c] == 0) continue;
      const Rational f = a[q][c];
      for (std::size_t k = 0; k < n; ++k) a[q][k] -= f * a[r][k];
      b[q] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < n) return std::nullopt;
  for (std::size_t q = r; q < rows; ++q) {
    if (b[q] != 0) return std::nullopt;
  }
  RationalVector x(n);
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = b[k];
  return x;
}

}  // namespace

std::vector<ua::AssignmentMatrix> bistochastic_grid(std::size_t n, long m) {
  std::vector<ua::AssignmentMatrix> out;
  std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
  std::vector<long> rows(n, 0), cols(n, 0);
  fill_grid(n, m, 0, g, rows, cols, out);
  return out;
}

std::optional<ua::AssignmentMatrix> grid_dominator(const ua::AssignmentMatrix& p, const ua::Profile& profile,
                                                   const std::vector<ua::AssignmentMatrix>& grid) {
  for (const auto& q : grid) {
    if (ua::matrix_sd_dominates(q, p, profile)) return q;
  }
  return std::nullopt;
}

VertexScan vertex_scan(const ua::LinearSystem& system) {
  const std::size_t n = system.num_variables();
  // Rows: equalities always tight; inequalities (incl. x >= 0) chosen.
  std::vector<RationalVector> eq_a, in_a;
  RationalVector eq_b, in_b;
  auto dense = [n](const ua::LinearExpr& e) {
    RationalVector v(n);
    for (const auto& [var, c] : e.terms()) v[var] = c;
    return v;
  };
  for (const auto& c : system.constraints()) {
    auto a = dense(c.lhs);
    if (c.rel == ua::Relation::eq) {
      eq_a.push_back(a);
      eq_b.push_back(c.rhs);
    } else {
      in_a.push_back(a);
      in_b.push_back(c.rhs);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    RationalVector e(n);
    e[v] = 1;
    in_a.push_back(e);
    in_b.push_back(0);
  }
  VertexScan out;
  const std::size_t k = in_a.size();
  // Subsets of inequalities of every size up to n; the tight system must
  // have a unique solution.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    const auto bits = static_cast<std::size_t>(std::popcount(mask));
    if (bits > n || bits + eq_a.size() < n) continue;
    auto a = eq_a;
    auto b = eq_b;
    for (std::size_t t = 0; t < k; ++t) {
      if (mask >> t & 1U) {
        a.push_back(in_a[t]);
        b.push_back(in_b[t]);
      }
    }
    if (a.size() < n) continue;
    auto x = solve_square(a, b, n);
    if (!x || !ua::satisfies(system, *x)) continue;
    ++out.vertices;
    Rational value = 0;
    if (system.objective()) value = system.objective()->expr.evaluate(*x);
    const bool better = !out.feasible || (system.objective() && (system.objective()->sense == ua::Sense::maximize
                                                                      ? value > out.best
                                                                      : value < out.best));
    if (better) out.best = value;
    out.feasible = true;
  }
  return out;
}

ua::LinearSystem random_system(Rng& rng, std::size_t vars, std::size_t rows) {
  ua::LinearSystem s;
  for (std::size_t v = 0; v < vars; ++v) s.add_variable("x" + std::to_string(v + 1));
  std::uniform_int_distribution<long> coef(-3, 3), rhs(-2, 6), rel(0, 4);
  ua::LinearExpr total;
  for (std::size_t v = 0; v < vars; ++v) total.add(v, 1);
  s.add_constraint(total, ua::Relation::le, rhs(rng) + 4, "cap");
  for (std::size_t r = 0; r < rows; ++r) {
    ua::LinearExpr e;
    for (std::size_t v = 0; v < vars; ++v) {
      if (auto c = coef(rng); c != 0) e.add(v, c);
    }
    if (e.empty()) continue;
    const auto pick = rel(rng);
    const auto relation = pick == 0 ? ua::Relation::eq : pick <= 2 ? ua::Relation::le : ua::Relation::ge;
    s.add_constraint(e, relation, rhs(rng), "r" + std::to_string(r + 1));
  }
  ua::LinearExpr obj;
  for (std::size_t v = 0; v < vars; ++v) obj.add(v, coef(rng));
  s.set_objective(obj, rel(rng) % 2 ? ua::Sense::maximize : ua::Sense::minimize);
  return s;
}

ua::BottleneckResult bottleneck_oracle(const ua::StageState& s) {
  const std::size_t k = s.agents.size();
  std::optional<Rational> best;
  std::vector<bool> in_best(k, false);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<bool> c(s.remaining.size(), false);
    Rational num = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (!(mask >> a & 1U)) continue;
      if (!s.owed.empty()) num -= s.owed[a];
      for (auto o : s.best_sets[a]) c[o] = true;
    }
    for (std::size_t o = 0; o < c.size(); ++o) {
      if (c[o]) num += s.remaining[o];
    }
    const Rational r = num / static_cast<long>(std::popcount(mask));
    if (best && r > *best) continue;
    if (!best || r < *best) std::fill(in_best.begin(), in_best.end(), false);
    best = r;
    for (std::size_t a = 0; a < k; ++a) {
      if (mask >> a & 1U) in_best[a] = true;
    }
  }
  ua::BottleneckResult out;
  out.ratio = *best;
  std::vector<bool> c(s.remaining.size(), false);
  for (std::size_t a = 0; a < k; ++a) {
    if (!in_best[a]) continue;
    out.agents.push_back(s.agents[a]);
    for (auto o : s.best_sets[a]) c[o] = true;
  }
  for (std::size_t o = 0; o < c.size(); ++o) {
    if (c[o]) out.objects.push_back(o);
  }
  return out;
}

ua::AssignmentMatrix matrix_of(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<RationalVector> g;
  for (const auto& r : rows) {
    RationalVector v;
    for (const char* x : r) v.push_back(ua::parse_rational(x));
    g.push_back(std::move(v));
  }
  return ua::AssignmentMatrix(g);
}

bool is_bistochastic(const ua::AssignmentMatrix& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = 0, c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p(i, j) < 0 || p(i, j) > 1) return false;
      r += p(i, j);
      c += p(j, i);
    }
    if (r != 1 || c != 1) return false;
  }
  return true;
}

}  // namespace uatest
