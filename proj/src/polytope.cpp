#include "ua/polytope.hpp"

namespace ua {

MatrixVars add_bistochastic(LinearSystem& system, std::size_t n, const std::string& prefix) {
  MatrixVars p;
  p.id.assign(n, std::vector<VarId>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p.id[i][j] = system.add_variable(prefix + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    system.add_constraint(row_block(p, i, 0, n), Relation::eq, 1, "bistochastic");
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinearExpr col;
    for (std::size_t i = 0; i < n; ++i) col.add(p(i, j), 1);
    system.add_constraint(std::move(col), Relation::eq, 1, "bistochastic");
  }
  return p;
}

LinearExpr row_block(const MatrixVars& p, std::size_t i, std::size_t begin, std::size_t end) {
  LinearExpr e;
  for (auto j = begin; j < end; ++j) e.add(p(i, j), 1);
  return e;
}

void add_envy_free(LinearSystem& system, const MatrixVars& p, const Profile& profile) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pref = profile[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      // The last boundary is the row sum, equal on both sides already.
      for (std::size_t t = 0; t + 1 < pref.num_classes(); ++t) {
        const auto end = pref.class_end(t);
        system.add_constraint(row_block(p, i, 0, end) - row_block(p, k, 0, end), Relation::ge, 0, "EF");
      }
    }
  }
}

void add_equal_treatment(LinearSystem& system, const MatrixVars& p, const Profile& profile) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (!(profile[i] == profile[k])) continue;
      const auto& pref = profile[i];
      for (std::size_t t = 0; t < pref.num_classes(); ++t) {
        const auto b = pref.class_begin(t), e = pref.class_end(t);
        system.add_constraint(row_block(p, i, b, e) - row_block(p, k, b, e), Relation::eq, 0, "ETE");
      }
    }
  }
}

std::vector<VarId> add_matching_hull(LinearSystem& system, const MatrixVars& p, const std::vector<Matching>& support) {
  const std::size_t n = p.size();
  std::vector<VarId> w;
  LinearExpr total;
  for (std::size_t k = 0; k < support.size(); ++k) {
    w.push_back(system.add_variable("w[" + std::to_string(k + 1) + "]"));
    total.add(w.back(), 1);
  }
  system.add_constraint(std::move(total), Relation::eq, 1, "EPE-hull");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearExpr e = LinearExpr::term(p(i, j));
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k].object_of(i) == j) e.add(w[k], -1);
      }
      system.add_constraint(std::move(e), Relation::eq, 0, "EPE-hull");
    }
  }
  return w;
}

std::vector<RationalVector> extract_rows(const MatrixVars& p, std::span<const Rational> witness) {
  const std::size_t n = p.size();
  auto rows = zero_grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = witness[p(i, j)];
  }
  return rows;
}

}  // namespace ua
