#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "ua/axioms.hpp"
#include "ua/matrix.hpp"
#include "ua/preference.hpp"

namespace ua {

struct LotteryEntry {
  Rational weight;
  Matching matching;
};

/// Positive weights summing to 1 over matchings.
struct Lottery {
  std::vector<LotteryEntry> entries;

  /// sum weight * matching; throws InputError if the weights do not sum to 1.
  AssignmentMatrix recombine() const;
};

/// Upper bound n^2 - 2n + 2 on the support of a decomposition.
std::size_t bvn_support_bound(std::size_t n);

/// Birkhoff-von Neumann peeling: repeatedly take the lexicographically first
/// perfect matching on the positive support and subtract its minimum entry.
/// If the peel count exceeds bvn_support_bound, affinely dependent terms are
/// merged away (Caratheodory) so the bound always holds.
Lottery bvn_decompose(const AssignmentMatrix& p);

/// A lottery over Pareto-efficient matchings, or the certificate that none
/// exists. Taken directly from ex_post_efficient.
using PeDecomposition = std::variant<Lottery, HullInfeasibility>;

PeDecomposition pe_decompose(const AssignmentMatrix& p, const Profile& profile);

}  // namespace ua
