#include "ua/axioms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ua/dominance.hpp"
#include "ua/errors.hpp"
#include "ua/guards.hpp"
#include "ua/polytope.hpp"

namespace ua {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

std::string matching_string(const Matching& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << i + 1 << "->o" << m.object_of(i) + 1;
  return out.str();
}

// Class index each agent attains under m.
std::vector<std::size_t> class_vector(const Matching& m, const Profile& profile) {
  std::vector<std::size_t> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = profile[i].class_of(m.object_of(i));
  return out;
}

// a Pareto-dominates b: nobody worse, someone better (lower class = better).
bool class_dominates(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    strict = strict || a[i] < b[i];
  }
  return strict;
}

void check_sizes(const AssignmentMatrix& p, const Profile& profile) {
  if (p.size() != profile.size()) throw InputError("matrix and profile sizes differ");
}

}  // namespace

std::string describe(const AxiomVerdict& v) {
  std::ostringstream out;
  out << (v.holds ? "holds" : "fails");
  std::visit(Overloaded{
                 [](const std::monostate&) {},
                 [&](const DominatingMatrix& d) { out << "; dominated by\n" << d.q.to_string(); },
                 [&](const SlackBound&) { out << "; slack LP optimum 0 (dual bound attached)"; },
                 [&](const EnvyPair& e) {
                   out << "; agent " << e.envier + 1 << " envies agent " << e.envied + 1 << " at class "
                       << e.class_index + 1 << " (" << to_string(e.own_prefix) << " < " << to_string(e.other_prefix)
                       << ")";
                 },
                 [&](const UnequalEquals& u) {
                   out << "; agents " << u.first + 1 << " and " << u.second + 1 << " differ on class "
                       << u.class_index + 1 << " (" << to_string(u.first_mass) << " vs " << to_string(u.second_mass)
                       << ")";
                 },
                 [&](const ImprovingMatching& m) { out << "; improved by " << matching_string(m.better); },
                 [&](const PeWeights& w) {
                   out << "; " << w.terms.size() << " Pareto-efficient matchings";
                   for (const auto& [weight, m] : w.terms) out << "\n  " << to_string(weight) << "  " << matching_string(m);
                 },
                 [&](const HullInfeasibility& h) {
                   out << "; outside the hull of " << h.support.size() << " Pareto-efficient matchings (Farkas certificate)";
                 },
             },
             v.certificate);
  return out.str();
}

AxiomVerdict pareto_efficient(const Matching& m, const Profile& profile) {
  const std::size_t n = profile.size();
  if (m.size() != n) throw InputError("matching and profile sizes differ");
  enforce_guard(Guard::matchings, n, "Pareto efficiency brute force");
  const auto mine = class_vector(m, profile);
  for (const auto& other : all_matchings(n)) {
    if (class_dominates(class_vector(other, profile), mine)) return {false, ImprovingMatching{other}};
  }
  return {true, std::monostate{}};
}

std::vector<Matching> enumerate_pe_matchings(const Profile& profile) {
  const std::size_t n = profile.size();
  enforce_guard(Guard::matchings, n, "Pareto-efficient matching enumeration");
  const auto all = all_matchings(n);
  const auto count = static_cast<long>(all.size());
  std::vector<std::vector<std::size_t>> vecs(all.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) vecs[static_cast<std::size_t>(k)] = class_vector(all[static_cast<std::size_t>(k)], profile);

  // Efficiency depends only on the class vector; test each distinct one once.
  auto distinct = vecs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const auto d = static_cast<long>(distinct.size());
  std::vector<char> efficient(distinct.size(), 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (long a = 0; a < d; ++a) {
    for (const auto& b : distinct) {
      if (class_dominates(b, distinct[static_cast<std::size_t>(a)])) {
        efficient[static_cast<std::size_t>(a)] = 0;
        break;
      }
    }
  }
  std::vector<Matching> out;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto pos = std::lower_bound(distinct.begin(), distinct.end(), vecs[k]) - distinct.begin();
    if (efficient[static_cast<std::size_t>(pos)]) out.push_back(all[k]);
  }
  return out;
}

namespace serial {

std::vector<Matching> enumerate_pe_matchings(const Profile& profile) {
  enforce_guard(Guard::matchings, profile.size(), "Pareto-efficient matching enumeration");
  std::vector<Matching> out;
  for (const auto& m : all_matchings(profile.size())) {
    if (pareto_efficient(m, profile).holds) out.push_back(m);
  }
  return out;
}

}  // namespace serial

AxiomVerdict ordinally_efficient(const AssignmentMatrix& p, const Profile& profile) {
  check_sizes(p, profile);
  const std::size_t n = p.size();
  LinearSystem lp;
  const auto q = add_bistochastic(lp, n, "q");
  LinearExpr total_slack;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pref = profile[i];
    const auto prefix = class_prefix_sums(p.row(i), pref);
    for (std::size_t t = 0; t + 1 < pref.num_classes(); ++t) {
      const auto s = lp.add_variable("s[" + std::to_string(i + 1) + "][" + std::to_string(t + 1) + "]");
      total_slack.add(s, 1);
      lp.add_constraint(row_block(q, i, 0, pref.class_end(t)) - LinearExpr::term(s), Relation::eq, prefix[t],
                        "prefix");
    }
  }
  lp.set_objective(total_slack, Sense::maximize);
  const auto res = lp_solve(lp);
  if (res.status != LpStatus::optimal) throw std::logic_error("OE slack LP must be feasible and bounded");
  if (res.value == 0) return {true, SlackBound{res.duals}};
  AssignmentMatrix witness(extract_rows(q, res.witness));
  if (!matrix_sd_dominates(witness, p, profile)) throw std::logic_error("OE witness does not dominate");
  return {false, DominatingMatrix{std::move(witness)}};
}

AxiomVerdict ex_post_efficient(const AssignmentMatrix& p, const Profile& profile) {
  check_sizes(p, profile);
  const std::size_t n = p.size();
  auto support = enumerate_pe_matchings(profile);
  LinearSystem lp;
  std::vector<VarId> w;
  LinearExpr total;
  for (std::size_t k = 0; k < support.size(); ++k) {
    w.push_back(lp.add_variable("w[" + std::to_string(k + 1) + "]"));
    total.add(w.back(), 1);
  }
  lp.add_constraint(total, Relation::eq, 1, "weights");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearExpr e;
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k].object_of(i) == j) e.add(w[k], 1);
      }
      lp.add_constraint(std::move(e), Relation::eq, p(i, j),
                        "p[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
    }
  }
  auto res = lp_solve(lp);
  if (res.status == LpStatus::infeasible) {
    return {false, HullInfeasibility{std::move(support), std::move(lp), std::move(res.certificate)}};
  }
  PeWeights weights;
  auto check = zero_grid(n);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto& x = res.witness[w[k]];
    if (x == 0) continue;
    for (std::size_t i = 0; i < n; ++i) check[i][support[k].object_of(i)] += x;
    weights.terms.emplace_back(x, support[k]);
  }
  if (!(AssignmentMatrix(check) == p)) throw std::logic_error("EPE weights do not recombine");
  return {true, std::move(weights)};
}

AxiomVerdict envy_free(const AssignmentMatrix& p, const Profile& profile) {
  check_sizes(p, profile);
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = class_prefix_sums(p.row(i), profile[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const auto other = class_prefix_sums(p.row(k), profile[i]);
      for (std::size_t t = 0; t < own.size(); ++t) {
        if (own[t] < other[t]) return {false, EnvyPair{i, k, t, own[t], other[t]}};
      }
    }
  }
  return {true, std::monostate{}};
}

AxiomVerdict equal_treatment(const AssignmentMatrix& p, const Profile& profile) {
  check_sizes(p, profile);
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (!(profile[i] == profile[k])) continue;
      const auto a = class_masses(p.row(i), profile[i]);
      const auto b = class_masses(p.row(k), profile[i]);
      for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t] != b[t]) return {false, UnequalEquals{i, k, t, a[t], b[t]}};
      }
    }
  }
  return {true, std::monostate{}};
}

}  // namespace ua
