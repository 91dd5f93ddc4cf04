#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ua/matrix.hpp"
#include "ua/preference.hpp"
#include "ua/ratlp.hpp"

namespace ua {

/// Variables p[i][j] of an n x n matrix inside a LinearSystem, named
/// "<prefix>[i][j]" with 1-based indices.
struct MatrixVars {
  std::vector<std::vector<VarId>> id;
  std::size_t size() const { return id.size(); }
  VarId operator()(std::size_t i, std::size_t j) const { return id[i][j]; }
};

/// Declares the variables and the row/column sum equalities (tag
/// "bistochastic").
MatrixVars add_bistochastic(LinearSystem& system, std::size_t n, const std::string& prefix = "p");

/// Sum of row i over objects [begin, end).
LinearExpr row_block(const MatrixVars& p, std::size_t i, std::size_t begin, std::size_t end);

/// For every ordered pair (i, k): agent i's row SD-dominates row k under
/// agent i's preference (tag "EF").
void add_envy_free(LinearSystem& system, const MatrixVars& p, const Profile& profile);

/// Agents with identical preferences get equal class masses (tag "ETE").
void add_equal_treatment(LinearSystem& system, const MatrixVars& p, const Profile& profile);

/// p equals a convex combination of the given matchings; one weight
/// variable per matching (tag "EPE-hull"). Returns the weight variables.
std::vector<VarId> add_matching_hull(LinearSystem& system, const MatrixVars& p, const std::vector<Matching>& support);

/// Reads a witness back into rows.
std::vector<RationalVector> extract_rows(const MatrixVars& p, std::span<const Rational> witness);

}  // namespace ua
