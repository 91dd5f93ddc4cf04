#include "ua/lottery.hpp"

#include <optional>
#include <stdexcept>

#include "ua/errors.hpp"

namespace ua {

AssignmentMatrix Lottery::recombine() const {
  if (entries.empty()) throw InputError("empty lottery");
  const std::size_t n = entries.front().matching.size();
  auto grid = zero_grid(n);
  Rational total = 0;
  for (const auto& e : entries) {
    if (e.weight <= 0) throw InputError("lottery weight must be positive");
    total += e.weight;
    for (std::size_t i = 0; i < n; ++i) grid[i][e.matching.object_of(i)] += e.weight;
  }
  if (total != 1) throw InputError("lottery weights sum to " + to_string(total));
  return AssignmentMatrix(grid);
}

std::size_t bvn_support_bound(std::size_t n) { return n * n - 2 * n + 2; }

namespace {

bool augment(std::size_t i, const std::vector<RationalVector>& r, std::vector<std::size_t>& owner,
             std::vector<bool>& visited, const std::vector<std::optional<std::size_t>>& fixed) {
  const std::size_t n = r.size();
  for (std::size_t o = 0; o < n; ++o) {
    if (r[i][o] <= 0 || visited[o]) continue;
    if (fixed[i] && *fixed[i] != o) continue;
    visited[o] = true;
    if (owner[o] == n || augment(owner[o], r, owner, visited, fixed)) {
      owner[o] = i;
      return true;
    }
  }
  return false;
}

bool has_perfect(const std::vector<RationalVector>& r, const std::vector<std::optional<std::size_t>>& fixed) {
  const std::size_t n = r.size();
  std::vector<std::size_t> owner(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (!augment(i, r, owner, visited, fixed)) return false;
  }
  return true;
}

std::vector<std::size_t> first_support_matching(const std::vector<RationalVector>& r) {
  const std::size_t n = r.size();
  std::vector<std::optional<std::size_t>> fixed(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < n && !fixed[i]; ++o) {
      if (r[i][o] <= 0) continue;
      bool taken = false;
      for (std::size_t k = 0; k < i; ++k) taken = taken || *fixed[k] == o;
      if (taken) continue;
      fixed[i] = o;
      if (!has_perfect(r, fixed)) fixed[i].reset();
    }
    if (!fixed[i]) throw std::logic_error("bvn: support has no perfect matching");
  }
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = *fixed[i];
  return out;
}

// Nonzero lambda with sum lambda_k v_k = 0 and sum lambda_k = 0, where v_k
// is the 0/1 vector of matching k. Exists once there are more terms than
// the affine dimension of the Birkhoff polytope plus one.
RationalVector affine_dependency(const std::vector<LotteryEntry>& entries, std::size_t n) {
  const std::size_t cols = entries.size();
  std::vector<RationalVector> a(n * n + 1, RationalVector(cols, 0));
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t i = 0; i < n; ++i) a[i * n + entries[k].matching.object_of(i)][k] = 1;
    a[n * n][k] = 1;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r2 = 0; r2 < a.size(); ++r2) {
      if (r2 == row || a[r2][c] == 0) continue;
      const Rational f = a[r2][c];
      for (std::size_t c2 = 0; c2 < cols; ++c2) a[r2][c2] -= f * a[row][c2];
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols && free_col == cols; ++c) {
    if (!is_pivot[c]) free_col = c;
  }
  if (free_col == cols) throw std::logic_error("bvn: no affine dependency");
  RationalVector lambda(cols, 0);
  lambda[free_col] = 1;
  for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2) lambda[pivot_col[r2]] = -a[r2][free_col];
  return lambda;
}

void caratheodory_reduce(std::vector<LotteryEntry>& entries, std::size_t n) {
  while (entries.size() > bvn_support_bound(n)) {
    const auto lambda = affine_dependency(entries, n);
    // Shift weights along -lambda until the first term hits zero.
    std::optional<Rational> t;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (lambda[k] > 0) {
        Rational r = entries[k].weight / lambda[k];
        if (!t || r < *t) t = r;
      }
    }
    if (!t) throw std::logic_error("bvn: dependency without positive part");
    std::vector<LotteryEntry> kept;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      Rational w = entries[k].weight - *t * lambda[k];
      if (w > 0) kept.push_back({std::move(w), entries[k].matching});
    }
    entries = std::move(kept);
  }
}

}  // namespace

Lottery bvn_decompose(const AssignmentMatrix& p) {
  const std::size_t n = p.size();
  auto r = p.rows();
  Lottery out;
  Rational left = 1;
  while (left > 0) {
    auto m = first_support_matching(r);
    Rational w = r[0][m[0]];
    for (std::size_t i = 1; i < n; ++i) {
      if (r[i][m[i]] < w) w = r[i][m[i]];
    }
    for (std::size_t i = 0; i < n; ++i) r[i][m[i]] -= w;
    left -= w;
    out.entries.push_back({std::move(w), Matching(std::move(m))});
  }
  caratheodory_reduce(out.entries, n);
  if (!(out.recombine() == p)) throw std::logic_error("bvn: decomposition does not recombine");
  return out;
}

PeDecomposition pe_decompose(const AssignmentMatrix& p, const Profile& profile) {
  auto verdict = ex_post_efficient(p, profile);
  if (!verdict.holds) return std::get<HullInfeasibility>(std::move(verdict.certificate));
  Lottery out;
  for (auto& [w, m] : std::get<PeWeights>(verdict.certificate).terms) out.entries.push_back({w, m});
  caratheodory_reduce(out.entries, p.size());
  if (!(out.recombine() == p)) throw std::logic_error("pe_decompose: weights do not recombine");
  return out;
}

}  // namespace ua
