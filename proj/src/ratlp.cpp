#include "ua/ratlp.hpp"

#include <limits>

#include "ua/errors.hpp"

namespace ua {

LinearExpr LinearExpr::term(VarId v, const Rational& coef) {
  LinearExpr e;
  e.add(v, coef);
  return e;
}

LinearExpr& LinearExpr::add(VarId v, const Rational& coef) {
  if (coef == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(v, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [v, c] : other.terms_) add(v, c);
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
  for (const auto& [v, c] : other.terms_) add(v, -c);
  return *this;
}

LinearExpr& LinearExpr::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [v, c] : terms_) c *= k;
  return *this;
}

Rational LinearExpr::coefficient(VarId v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LinearExpr::evaluate(std::span<const Rational> x) const {
  Rational acc = 0;
  for (const auto& [v, c] : terms_) acc += c * x[v];
  return acc;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::eq: return "=";
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
  }
  return "?";
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

VarId LinearSystem::add_variable(std::string name) {
  if (index_.count(name)) throw InputError("duplicate variable " + name);
  const VarId id = names_.size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

VarId LinearSystem::variable(std::string_view name) const {
  if (auto v = find_variable(name)) return *v;
  throw InputError("undeclared variable " + std::string(name));
}

std::optional<VarId> LinearSystem::find_variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LinearSystem::add_constraint(LinearExpr lhs, Relation rel, Rational rhs, std::string tag) {
  return add_constraint(Constraint{std::move(lhs), rel, std::move(rhs), std::move(tag)});
}

std::size_t LinearSystem::add_constraint(Constraint c) {
  for (const auto& [v, coef] : c.lhs.terms()) {
    if (v >= names_.size()) throw InputError("constraint references undeclared variable #" + std::to_string(v));
  }
  constraints_.push_back(std::move(c));
  return constraints_.size() - 1;
}

std::string LinearSystem::describe(const LinearExpr& e) const {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [v, c] : e.terms()) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += variable_name(v);
    first = false;
  }
  return out;
}

std::string LinearSystem::describe(const Constraint& c) const {
  std::string out = describe(c.lhs) + " " + to_string(c.rel) + " " + c.rhs.get_str();
  if (!c.tag.empty()) out += "  [" + c.tag + "]";
  return out;
}

Combination combine(const LinearSystem& system, std::span<const Rational> multipliers) {
  Combination out{RationalVector(system.num_variables(), 0), Rational(0)};
  const auto& cons = system.constraints();
  for (std::size_t k = 0; k < cons.size(); ++k) {
    const auto& mu = multipliers[k];
    if (mu == 0) continue;
    for (const auto& [v, c] : cons[k].lhs.terms()) out.coefficients[v] += mu * c;
    out.rhs += mu * cons[k].rhs;
  }
  return out;
}

namespace {

// Sign convention shared by Farkas certificates and minimisation bounds.
bool multiplier_signs_ok(const LinearSystem& system, std::span<const Rational> mu, bool flipped) {
  const auto& cons = system.constraints();
  if (mu.size() != cons.size()) return false;
  for (std::size_t k = 0; k < cons.size(); ++k) {
    const int s = flipped ? -sgn(mu[k]) : sgn(mu[k]);
    if (cons[k].rel == Relation::ge && s < 0) return false;
    if (cons[k].rel == Relation::le && s > 0) return false;
  }
  return true;
}

}  // namespace

bool verify_farkas(const LinearSystem& system, const FarkasCertificate& cert) {
  if (!multiplier_signs_ok(system, cert.multipliers, false)) return false;
  const auto comb = combine(system, cert.multipliers);
  for (const auto& c : comb.coefficients) {
    if (c > 0) return false;
  }
  return comb.rhs > 0;
}

bool verify_bound(const LinearSystem& system, const Objective& objective, std::span<const Rational> multipliers,
                  const Rational& value) {
  const bool maximize = objective.sense == Sense::maximize;
  if (!multiplier_signs_ok(system, multipliers, maximize)) return false;
  const auto comb = combine(system, multipliers);
  for (VarId v = 0; v < system.num_variables(); ++v) {
    const Rational c = objective.expr.coefficient(v);
    if (maximize ? comb.coefficients[v] < c : comb.coefficients[v] > c) return false;
  }
  return comb.rhs == value;
}

bool satisfies(const LinearSystem& system, std::span<const Rational> x) {
  if (x.size() != system.num_variables()) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& c : system.constraints()) {
    const Rational lhs = c.lhs.evaluate(x);
    switch (c.rel) {
      case Relation::eq:
        if (lhs != c.rhs) return false;
        break;
      case Relation::le:
        if (lhs > c.rhs) return false;
        break;
      case Relation::ge:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau for  min c x  s.t.  A x (rel) b, x >= 0, one artificial per
// row. Columns: structural | slack/surplus | artificial | rhs.
class Simplex {
 public:
  explicit Simplex(const LinearSystem& system) : system_(system) {
    const auto& cons = system.constraints();
    m_ = cons.size();
    n_struct_ = system.num_variables();
    std::size_t n_slack = 0;
    for (const auto& c : cons) {
      if (c.rel != Relation::eq) ++n_slack;
    }
    art_base_ = n_struct_ + n_slack;
    ncols_ = art_base_ + m_;
    rows_.assign(m_, RationalVector(ncols_ + 1, 0));
    sign_.assign(m_, 1);
    basis_.assign(m_, kNone);

    std::size_t slack = n_struct_;
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& c = cons[r];
      auto rel = c.rel;
      sign_[r] = c.rhs < 0 ? -1 : 1;
      if (sign_[r] < 0 && rel != Relation::eq) rel = rel == Relation::le ? Relation::ge : Relation::le;
      auto& row = rows_[r];
      for (const auto& [v, coef] : c.lhs.terms()) row[v] = sign_[r] > 0 ? coef : Rational(-coef);
      row[ncols_] = sign_[r] > 0 ? c.rhs : Rational(-c.rhs);
      if (rel == Relation::le) row[slack++] = 1;
      if (rel == Relation::ge) row[slack++] = -1;
      row[art_base_ + r] = 1;
      basis_[r] = art_base_ + r;
    }
  }

  LpOutcome run() {
    LpOutcome out;

    // Phase 1: minimise the sum of artificials.
    RationalVector cost(ncols_, 0);
    for (std::size_t r = 0; r < m_; ++r) cost[art_base_ + r] = 1;
    load_costs(cost);
    iterate(ncols_);
    const Rational phase1 = -cost_row_[ncols_];
    if (phase1 > 0) {
      out.status = LpStatus::infeasible;
      out.certificate.multipliers.resize(m_);
      for (std::size_t r = 0; r < m_; ++r) {
        out.certificate.multipliers[r] = (1 - cost_row_[art_base_ + r]) * sign_[r];
      }
      if (!verify_farkas(system_, out.certificate)) throw std::logic_error("simplex: Farkas certificate failed");
      return out;
    }

    drive_out_artificials();

    // Phase 2 on the true objective; artificials may not re-enter.
    const auto& obj = system_.objective();
    const bool maximize = obj && obj->sense == Sense::maximize;
    std::fill(cost.begin(), cost.end(), Rational(0));
    if (obj) {
      for (const auto& [v, c] : obj->expr.terms()) cost[v] = maximize ? Rational(-c) : c;
    }
    load_costs(cost);
    if (!iterate(art_base_)) {
      out.status = LpStatus::unbounded;
      return out;
    }

    out.status = LpStatus::optimal;
    out.witness.assign(n_struct_, 0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_struct_) out.witness[basis_[r]] = rows_[r][ncols_];
    }
    if (!satisfies(system_, out.witness)) throw std::logic_error("simplex: witness violates the system");
    out.value = obj ? obj->expr.evaluate(out.witness) : Rational(0);
    out.duals.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational y = -cost_row_[art_base_ + r] * sign_[r];
      out.duals[r] = maximize ? Rational(-y) : y;
    }
    if (obj && !verify_bound(system_, *obj, out.duals, out.value)) {
      throw std::logic_error("simplex: dual bound certificate failed");
    }
    return out;
  }

 private:
  void load_costs(const RationalVector& cost) {
    cost_row_.assign(ncols_ + 1, 0);
    for (std::size_t j = 0; j < ncols_; ++j) cost_row_[j] = cost[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& cb = cost[basis_[r]];
      if (cb == 0) continue;
      const auto& row = rows_[r];
      for (std::size_t j = 0; j <= ncols_; ++j) {
        if (sgn(row[j]) != 0) cost_row_[j] -= cb * row[j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    auto& prow = rows_[r];
    const Rational inv = 1 / prow[q];
    for (auto& x : prow) {
      if (sgn(x) != 0) x *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= ncols_; ++j) {
      if (sgn(prow[j]) != 0) nz.push_back(j);
    }
    auto eliminate = [&](RationalVector& row) {
      if (sgn(row[q]) == 0) return;
      const Rational f = row[q];
      for (auto j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t k = 0; k < m_; ++k) {
      if (k != r) eliminate(rows_[k]);
    }
    eliminate(cost_row_);
    basis_[r] = q;
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test go
  // to the lowest-index basic variable. Returns false on unboundedness.
  bool iterate(std::size_t allowed_cols) {
    for (;;) {
      std::size_t q = kNone;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (sgn(cost_row_[j]) < 0) {
          q = j;
          break;
        }
      }
      if (q == kNone) return true;
      std::size_t r = kNone;
      Rational best;
      for (std::size_t k = 0; k < m_; ++k) {
        if (sgn(rows_[k][q]) <= 0) continue;
        Rational ratio = rows_[k][ncols_] / rows_[k][q];
        if (r == kNone || ratio < best || (ratio == best && basis_[k] < basis_[r])) {
          r = k;
          best = std::move(ratio);
        }
      }
      if (r == kNone) return false;
      pivot(r, q);
    }
  }

  // Artificials still basic after a zero phase 1 sit at level 0. Pivot them
  // out where the row has a non-artificial entry; otherwise the row is
  // redundant and its zero row keeps the artificial at 0 through phase 2.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < art_base_) continue;
      for (std::size_t j = 0; j < art_base_; ++j) {
        if (sgn(rows_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  const LinearSystem& system_;
  std::size_t m_ = 0, n_struct_ = 0, art_base_ = 0, ncols_ = 0;
  std::vector<RationalVector> rows_;
  RationalVector cost_row_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpOutcome lp_solve(const LinearSystem& system) {
  for (const auto& c : system.constraints()) {
    for (const auto& [v, coef] : c.lhs.terms()) {
      if (v >= system.num_variables()) throw InputError("constraint references undeclared variable");
    }
  }
  if (const auto& obj = system.objective()) {
    for (const auto& [v, coef] : obj->expr.terms()) {
      if (v >= system.num_variables()) throw InputError("objective references undeclared variable");
    }
  }
  return Simplex(system).run();
}

Range expression_range(const LinearSystem& system, const LinearExpr& expr) {
  LinearSystem copy = system;
  Range out;
  for (auto sense : {Sense::minimize, Sense::maximize}) {
    copy.set_objective(expr, sense);
    auto res = lp_solve(copy);
    if (res.status == LpStatus::infeasible) {
      throw InfeasibleSystem("range query on an infeasible system", std::move(res.certificate));
    }
    if (res.status == LpStatus::unbounded) throw InputError("range query: expression is unbounded");
    if (sense == Sense::minimize) {
      out.min = res.value;
      out.lower = std::move(res);
    } else {
      out.max = res.value;
      out.upper = std::move(res);
    }
  }
  return out;
}

Range coordinate_range(const LinearSystem& system, VarId var) {
  if (var >= system.num_variables()) throw InputError("coordinate_range: undeclared variable");
  return expression_range(system, LinearExpr::term(var));
}

}  // namespace ua
