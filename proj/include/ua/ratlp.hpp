#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ua/rational.hpp"

namespace ua {

using VarId = std::size_t;

/// Sparse linear form sum_v coef[v] * x[v] (no constant term).
class LinearExpr {
 public:
  LinearExpr() = default;

  static LinearExpr term(VarId v, const Rational& coef = 1);

  LinearExpr& add(VarId v, const Rational& coef);
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(const Rational& k);

  const std::map<VarId, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Rational coefficient(VarId v) const;
  Rational evaluate(std::span<const Rational> x) const;

  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(LinearExpr a, const Rational& k) { return a *= k; }
  friend bool operator==(const LinearExpr&, const LinearExpr&) = default;

 private:
  std::map<VarId, Rational> terms_;
};

enum class Relation { eq, le, ge };
enum class Sense { minimize, maximize };

const char* to_string(Relation r);

struct Constraint {
  LinearExpr lhs;
  Relation rel = Relation::eq;
  Rational rhs;
  std::string tag;  // justification, carried through solving untouched
};

struct Objective {
  LinearExpr expr;
  Sense sense = Sense::minimize;
};

/// Linear constraints over named variables. Every variable carries the
/// implicit bound x >= 0.
class LinearSystem {
 public:
  /// Throws InputError on a duplicate name.
  VarId add_variable(std::string name);
  /// Throws InputError if `name` was never declared.
  VarId variable(std::string_view name) const;
  std::optional<VarId> find_variable(std::string_view name) const;

  std::size_t num_variables() const { return names_.size(); }
  const std::string& variable_name(VarId v) const { return names_.at(v); }

  std::size_t add_constraint(LinearExpr lhs, Relation rel, Rational rhs, std::string tag);
  std::size_t add_constraint(Constraint c);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void set_objective(LinearExpr expr, Sense sense) { objective_ = Objective{std::move(expr), sense}; }
  void clear_objective() { objective_.reset(); }
  const std::optional<Objective>& objective() const { return objective_; }

  std::string describe(const LinearExpr& e) const;
  std::string describe(const Constraint& c) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
  std::vector<Constraint> constraints_;
  std::optional<Objective> objective_;
};

/// Multipliers mu, one per constraint, with mu >= 0 on '>=' rows, mu <= 0 on
/// '<=' rows and any sign on '=' rows, such that sum mu_k a_k <= 0
/// componentwise and sum mu_k b_k > 0. Any x >= 0 satisfying the system
/// would give 0 >= sum mu_k a_k x >= sum mu_k b_k > 0.
struct FarkasCertificate {
  RationalVector multipliers;
};

/// The combined inequality (sum mu_k a_k) x >= sum mu_k b_k.
struct Combination {
  RationalVector coefficients;
  Rational rhs;
};

Combination combine(const LinearSystem& system, std::span<const Rational> multipliers);

/// Exact re-multiplication check of a Farkas certificate.
bool verify_farkas(const LinearSystem& system, const FarkasCertificate& cert);

/// Checks that `multipliers` prove the objective bound `value`: for
/// minimisation c x >= value on the feasible set, for maximisation c x <= value.
bool verify_bound(const LinearSystem& system, const Objective& objective, std::span<const Rational> multipliers,
                  const Rational& value);

/// Exact feasibility of x (including x >= 0), no tolerance.
bool satisfies(const LinearSystem& system, std::span<const Rational> x);

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Rational value;              // objective value when optimal (0 without objective)
  RationalVector witness;      // optimal point, indexed by VarId
  RationalVector duals;        // bound certificate for `value` (see verify_bound)
  FarkasCertificate certificate;  // when infeasible
};

/// Two-phase dense simplex with Bland's rule over exact rationals. Witnesses
/// and certificates are re-checked before returning; a failed check throws
/// std::logic_error.
LpOutcome lp_solve(const LinearSystem& system);

/// Raised when a range query meets an infeasible system.
struct InfeasibleSystem : std::runtime_error {
  InfeasibleSystem(const std::string& what, FarkasCertificate cert)
      : std::runtime_error(what), certificate(std::move(cert)) {}
  FarkasCertificate certificate;
};

struct Range {
  Rational min;
  Rational max;
  LpOutcome lower;  // minimising solve
  LpOutcome upper;  // maximising solve
  bool pinned() const { return min == max; }
};

/// Exact min and max of `expr` over the system (its objective is ignored).
/// Throws InfeasibleSystem or InputError (unbounded).
Range expression_range(const LinearSystem& system, const LinearExpr& expr);
Range coordinate_range(const LinearSystem& system, VarId var);

}  // namespace ua
