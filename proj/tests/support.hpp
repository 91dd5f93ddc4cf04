#pragma once

// Random instances and brute-force oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the simplex.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ua/flownet.hpp"
#include "ua/matrix.hpp"
#include "ua/preference.hpp"
#include "ua/ratlp.hpp"

namespace uatest {

using Rng = std::mt19937_64;

ua::UniformPreference random_pref(Rng& rng, std::size_t n);
ua::Profile random_profile(Rng& rng, std::size_t n);

/// Positive integer weights over random permutations, normalised.
ua::AssignmentMatrix random_bistochastic(Rng& rng, std::size_t n, std::size_t terms);

/// A stage state whose owed amounts are routable, so every ratio is >= 0.
ua::StageState random_stage(Rng& rng, std::size_t agents, std::size_t objects);

/// All bistochastic matrices with entries in (1/m)Z.
std::vector<ua::AssignmentMatrix> bistochastic_grid(std::size_t n, long m);

/// First grid matrix that SD-dominates p, by plain search.
std::optional<ua::AssignmentMatrix> grid_dominator(const ua::AssignmentMatrix& p, const ua::Profile& profile,
                                                   const std::vector<ua::AssignmentMatrix>& grid);

/// Vertex enumeration over {x >= 0} intersected with the system. Assumes the
/// feasible set is bounded.
struct VertexScan {
  bool feasible = false;
  std::size_t vertices = 0;
  ua::Rational best;  // objective optimum over the vertices
};
VertexScan vertex_scan(const ua::LinearSystem& system);

/// Random system over `vars` variables with a total-mass cap so it stays
/// bounded, and a random objective.
ua::LinearSystem random_system(Rng& rng, std::size_t vars, std::size_t rows);

/// Brute-force maximal minimiser of (remaining(C(S)) - owed(S)) / |S|.
ua::BottleneckResult bottleneck_oracle(const ua::StageState& s);

ua::AssignmentMatrix matrix_of(std::initializer_list<std::initializer_list<const char*>> rows);

bool is_bistochastic(const ua::AssignmentMatrix& p);

}  // namespace uatest
