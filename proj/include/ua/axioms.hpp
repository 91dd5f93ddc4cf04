#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ua/matrix.hpp"
#include "ua/preference.hpp"
#include "ua/ratlp.hpp"

namespace ua {

/// Q strictly SD-dominates the checked matrix.
struct DominatingMatrix {
  AssignmentMatrix q;
};

/// LP duals proving that no doubly stochastic matrix has positive total
/// prefix slack over the checked one.
struct SlackBound {
  RationalVector duals;
};

/// Agent `envier` prefers row `envied` at the end of its class `class_index`.
struct EnvyPair {
  std::size_t envier, envied, class_index;
  Rational own_prefix, other_prefix;
};

/// Two agents with identical preferences and different class masses.
struct UnequalEquals {
  std::size_t first, second, class_index;
  Rational first_mass, second_mass;
};

/// A matching making nobody worse and someone strictly better.
struct ImprovingMatching {
  Matching better;
};

/// Convex weights on Pareto-efficient matchings recombining to the matrix.
struct PeWeights {
  std::vector<std::pair<Rational, Matching>> terms;
};

/// The matrix lies outside the Pareto-efficient hull.
struct HullInfeasibility {
  std::vector<Matching> support;
  LinearSystem system;
  FarkasCertificate certificate;
};

using AxiomCertificate = std::variant<std::monostate, DominatingMatrix, SlackBound, EnvyPair, UnequalEquals,
                                      ImprovingMatching, PeWeights, HullInfeasibility>;

struct AxiomVerdict {
  bool holds = false;
  AxiomCertificate certificate;
};

/// One-line human description of a verdict (1-based labels).
std::string describe(const AxiomVerdict& v);

/// Brute force over all matchings; Guard::matchings.
AxiomVerdict pareto_efficient(const Matching& m, const Profile& profile);

/// All Pareto-efficient matchings in lexicographic order, computed in
/// parallel over matchings. Guard::matchings.
std::vector<Matching> enumerate_pe_matchings(const Profile& profile);

/// Max-total-slack LP over doubly stochastic Q with Q's class prefixes at
/// least P's. Optimum 0 means ordinally efficient.
AxiomVerdict ordinally_efficient(const AssignmentMatrix& p, const Profile& profile);

/// LP membership in the convex hull of Pareto-efficient matchings.
AxiomVerdict ex_post_efficient(const AssignmentMatrix& p, const Profile& profile);

AxiomVerdict envy_free(const AssignmentMatrix& p, const Profile& profile);

AxiomVerdict equal_treatment(const AssignmentMatrix& p, const Profile& profile);

namespace serial {

/// Reference: pareto_efficient on each matching in turn.
std::vector<Matching> enumerate_pe_matchings(const Profile& profile);

}  // namespace serial

}  // namespace ua
