#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ua/axioms.hpp"
#include "ua/dominance.hpp"
#include "ua/mechanisms.hpp"
#include "ua/polytope.hpp"
#include "ua/ratlp.hpp"

namespace ua {

/// Builds a profile from class-notation rows such as "{o1 o2},o3,o4".
Profile profile_from_notation(const std::vector<std::string>& rows);

/// The swap lemma: if x >_i y, x ~_j y, p[i][y] > 0 and p[j][x] > 0, moving
/// eps = min(p[i][y], p[j][x]) of x from j to i (and y back) gives a matrix
/// that strictly SD-dominates p. Returns nullopt when a precondition fails;
/// throws std::logic_error if the constructed matrix does not dominate.
std::optional<AssignmentMatrix> improving_swap(const AssignmentMatrix& p, const Profile& profile, std::size_t i,
                                               std::size_t j, std::size_t x, std::size_t y);

struct Entry {
  std::size_t agent, object;  // 0-based
};

/// Holdings (k, b) that, together with a positive target entry, admit an
/// improving swap.
std::vector<Entry> swap_partners(const Profile& profile, Entry target);

struct OeZeroCertificate {
  Entry target;
  std::vector<Entry> partners;
  /// max of the target with every partner held at zero. When that system is
  /// infeasible every feasible matrix has a positive partner (vacuous case)
  /// and `outcome` carries the Farkas certificate.
  LpOutcome outcome;
  bool vacuous = false;
};

/// Certifies that no ordinally efficient matrix in the polytope has a
/// positive target entry. Throws CertificationError when the maximum is
/// positive.
OeZeroCertificate oe_zero_certify(const Profile& profile, const LinearSystem& polytope, const MatrixVars& p,
                                  Entry target);

enum class Resolution { unique, family, infeasible };

const char* to_string(Resolution r);

struct SpLink {
  std::size_t source;    // profile number (1-based)
  std::size_t deviator;  // 0-based agent
  std::vector<std::size_t> constraints;  // indices into the target system
};

struct CertifiedDerivation {
  std::size_t id = 0;  // profile number (1-based)
  Profile profile;
  LinearSystem system;
  MatrixVars p;
  std::vector<SpLink> links;
  std::vector<OeZeroCertificate> oe_zero;
  Resolution resolution = Resolution::infeasible;
  /// Per-entry ranges when feasible.
  std::vector<std::vector<Rational>> min, max;
  std::optional<FarkasCertificate> certificate;  // when infeasible

  bool entry_pinned(std::size_t i, std::size_t j) const { return min[i][j] == max[i][j]; }
  bool row_pinned(std::size_t i) const;
  /// The pinned row; throws CertificationError when it is not unique.
  RationalVector pinned_row(std::size_t i) const;
  /// The unique matrix; throws CertificationError otherwise.
  AssignmentMatrix matrix() const;
};

/// SP constraints on the target row of `deviator`: the source row dominates
/// at the source preference's boundaries and the target row dominates at
/// the target preference's boundaries. Empty when the deviator's preference
/// is unchanged. Throws CertificationError when the profiles differ in
/// another agent or the source row is not pinned.
std::vector<Constraint> sp_link_constraints(const CertifiedDerivation& source, const Profile& target,
                                            const MatrixVars& p, std::size_t deviator);

/// Range-based resolution of the system.
void resolve(CertifiedDerivation& d);

struct Theorem2Result {
  std::vector<CertifiedDerivation> profiles;  // Profiles 1..8
  /// Multipliers over profile 8's system combining the SP-link, ETE and
  /// OE-zero rows into sum_i p[i][3] >= column3_forced and subtracting the
  /// column-3 equation.
  FarkasCertificate column3_certificate;
  Rational column3_forced;
  std::string transcript;
};

/// The eight-profile chain. Throws CertificationError on any failed step.
Theorem2Result verify_theorem2();

/// The SP-link edges (source, target) used by the chain.
std::vector<std::pair<std::size_t, std::size_t>> theorem2_links();

struct AffineFamilyCheck {
  std::string name;  // parameter name
  Rational min, max;
};

struct Theorem1Core {
  Profile profile1, profile2;
  AffineFamilyCheck y, w, z;             // EF-only parameter ranges
  bool family1_matches = false;          // entries follow the printed y form
  bool family2_matches = false;          // entries follow the printed (w, z) form
  std::vector<std::pair<Rational, Rational>> wz_corners_feasible;  // (w, z) corners inside the EF polytope
  AssignmentMatrix unique1, unique2;     // EF and EPE
  SdVerdict agent3_under_truth2;         // profile-1 row vs profile-2 row under {o1 o2},o3
  SdVerdict agent3_under_truth1;         // same rows under o1,o2,o3
  /// An EF matrix of profile 2 outside the printed (w, z) region, if any.
  std::optional<AssignmentMatrix> ef_outside_printed;
};

struct PaddingCheck {
  std::size_t n;
  std::size_t pe_matchings;
  bool padded_agents_fixed;  // every PE matching gives agent i object o_i, i >= 4
  bool core_matches;         // EF and EPE pins the same 3 x 3 core in both profiles
};

struct Theorem1Result {
  Theorem1Core core;
  std::vector<PaddingCheck> padding;  // for 4..n
  std::string transcript;
};

/// Profile 1 or 2 of the first theorem padded to n agents.
Profile theorem1_profile(std::size_t which, std::size_t n);

/// Runs the n = 3 core and the padding checks for 4..n. Guard::theorem1.
Theorem1Result verify_theorem1(std::size_t n);

/// Ranges, families, the two pinned matrices, agent 3's strict gain and
/// every padding check.
bool claims_hold(const Theorem1Result& r);

struct Example31Result {
  Profile profile;
  AssignmentMatrix first, second, eps;
  AxiomVerdict first_oe, first_ef, second_oe, second_ef;
  bool inequivalent = false;
  bool eps_matches_second = false;
  bool eps_matches_first = false;
  std::string transcript;
};

Example31Result verify_example31();

/// Both matrices OE and EF, inequivalent, EPS in the second one's class.
bool claims_hold(const Example31Result& r);

}  // namespace ua
