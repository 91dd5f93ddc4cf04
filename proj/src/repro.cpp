#include "ua/repro.hpp"

#include <algorithm>
#include <sstream>

#include "ua/dominance.hpp"
#include "ua/errors.hpp"
#include "ua/guards.hpp"
#include "ua/io.hpp"

namespace ua {

Profile profile_from_notation(const std::vector<std::string>& rows) {
  std::vector<UniformPreference> prefs;
  for (const auto& r : rows) prefs.push_back(parse_preference_notation(r, rows.size()));
  return Profile(std::move(prefs));
}

std::optional<AssignmentMatrix> improving_swap(const AssignmentMatrix& p, const Profile& profile, std::size_t i,
                                               std::size_t j, std::size_t x, std::size_t y) {
  if (i == j || !profile[i].prefers(x, y) || !profile[j].indifferent(x, y)) return std::nullopt;
  if (p(i, y) <= 0 || p(j, x) <= 0) return std::nullopt;
  const Rational eps = std::min(p(i, y), p(j, x));
  auto rows = p.rows();
  rows[i][x] += eps;
  rows[i][y] -= eps;
  rows[j][x] -= eps;
  rows[j][y] += eps;
  AssignmentMatrix q(rows);
  if (!matrix_sd_dominates(q, p, profile)) throw std::logic_error("swap lemma: traded matrix does not dominate");
  return q;
}

std::vector<Entry> swap_partners(const Profile& profile, Entry target) {
  const std::size_t n = profile.size();
  const auto j = target.agent;
  const auto a = target.object;
  std::vector<Entry> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      // j indifferent and k strict: k gives b for a.
      const bool k_gains = profile[j].indifferent(a, b) && profile[k].prefers(a, b);
      // j strict for b over a and k indifferent: j gives a for b.
      const bool j_gains = profile[j].prefers(b, a) && profile[k].indifferent(a, b);
      if (k_gains || j_gains) out.push_back({k, b});
    }
  }
  return out;
}

namespace {

std::string entry_name(Entry e) { return "p[" + std::to_string(e.agent + 1) + "][" + std::to_string(e.object + 1) + "]"; }

}  // namespace

OeZeroCertificate oe_zero_certify(const Profile& profile, const LinearSystem& polytope, const MatrixVars& p,
                                  Entry target) {
  OeZeroCertificate cert;
  cert.target = target;
  cert.partners = swap_partners(profile, target);
  if (cert.partners.empty()) {
    throw CertificationError("OE-zero " + entry_name(target) + ": no swap partner exists");
  }
  LinearSystem lp = polytope;
  for (auto e : cert.partners) lp.add_constraint(LinearExpr::term(p(e.agent, e.object)), Relation::eq, 0, "partner-zero");
  lp.set_objective(LinearExpr::term(p(target.agent, target.object)), Sense::maximize);
  cert.outcome = lp_solve(lp);
  if (cert.outcome.status == LpStatus::infeasible) {
    if (!verify_farkas(lp, cert.outcome.certificate)) throw std::logic_error("OE-zero: bad Farkas certificate");
    cert.vacuous = true;
    return cert;
  }
  if (cert.outcome.status != LpStatus::optimal || cert.outcome.value != 0) {
    throw CertificationError("OE-zero " + entry_name(target) + ": target can stay positive with all partners at zero");
  }
  if (!verify_bound(lp, *lp.objective(), cert.outcome.duals, 0)) throw std::logic_error("OE-zero: bad bound certificate");
  return cert;
}

const char* to_string(Resolution r) {
  switch (r) {
    case Resolution::unique: return "unique";
    case Resolution::family: return "family";
    case Resolution::infeasible: return "infeasible";
  }
  return "?";
}

bool CertifiedDerivation::row_pinned(std::size_t i) const {
  if (resolution == Resolution::infeasible) return false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!entry_pinned(i, j)) return false;
  }
  return true;
}

RationalVector CertifiedDerivation::pinned_row(std::size_t i) const {
  if (!row_pinned(i)) {
    throw CertificationError("profile " + std::to_string(id) + ": row " + std::to_string(i + 1) + " is not unique");
  }
  return min[i];
}

AssignmentMatrix CertifiedDerivation::matrix() const {
  if (resolution != Resolution::unique) throw CertificationError("profile " + std::to_string(id) + " is not unique");
  return AssignmentMatrix(min);
}

std::vector<Constraint> sp_link_constraints(const CertifiedDerivation& source, const Profile& target,
                                            const MatrixVars& p, std::size_t deviator) {
  const auto& from = source.profile;
  if (from.size() != target.size()) throw CertificationError("SP link: profile sizes differ");
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (i != deviator && !(from[i] == target[i])) {
      throw CertificationError("SP link: profiles differ in agent " + std::to_string(i + 1));
    }
  }
  if (from[deviator] == target[deviator]) return {};
  const auto row = source.pinned_row(deviator);
  const std::string tag = "SP-link(P" + std::to_string(source.id) + ", agent " + std::to_string(deviator + 1) + ")";
  std::vector<Constraint> out;
  // Truth in the source: the source row must dominate the target row.
  const auto& src_pref = from[deviator];
  for (std::size_t t = 0; t + 1 < src_pref.num_classes(); ++t) {
    const auto end = src_pref.class_end(t);
    Rational bound = 0;
    for (std::size_t j = 0; j < end; ++j) bound += row[j];
    out.push_back({row_block(p, deviator, 0, end), Relation::le, bound, tag});
  }
  // Truth in the target: the target row must dominate the source row.
  const auto& dst_pref = target[deviator];
  for (std::size_t t = 0; t + 1 < dst_pref.num_classes(); ++t) {
    const auto end = dst_pref.class_end(t);
    Rational bound = 0;
    for (std::size_t j = 0; j < end; ++j) bound += row[j];
    out.push_back({row_block(p, deviator, 0, end), Relation::ge, bound, tag});
  }
  return out;
}

void resolve(CertifiedDerivation& d) {
  const std::size_t n = d.p.size();
  auto feas = lp_solve(d.system);
  if (feas.status == LpStatus::infeasible) {
    d.resolution = Resolution::infeasible;
    d.certificate = feas.certificate;
    d.min.clear();
    d.max.clear();
    return;
  }
  d.min.assign(n, RationalVector(n));
  d.max.assign(n, RationalVector(n));
  bool unique = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto r = coordinate_range(d.system, d.p(i, j));
      d.min[i][j] = r.min;
      d.max[i][j] = r.max;
      unique = unique && r.pinned();
    }
  }
  d.resolution = unique ? Resolution::unique : Resolution::family;
}

namespace {

// An affine parameter constant + expr(p) and the printed entries as affine
// functions of the parameters.
struct AffineParam {
  std::string name;
  Rational constant;
  LinearExpr expr;
};

struct AffineEntry {
  Rational constant;
  std::vector<Rational> coef;  // per parameter
};

struct PrintedFamily {
  std::vector<AffineParam> params;
  std::vector<std::vector<AffineEntry>> entries;
  // Region a . theta <= b, and its vertices.
  std::vector<std::pair<std::vector<Rational>, Rational>> region;
  std::vector<std::vector<Rational>> vertices;
};

AffineEntry constant_entry(Rational c) { return {std::move(c), {}}; }

// Every entry follows the printed form, the parameters stay in the region,
// and every vertex of the region is attained.
bool family_matches(const LinearSystem& system, const MatrixVars& p, const PrintedFamily& f, std::ostream& log) {
  const std::size_t n = p.size();
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = f.entries[i][j];
      LinearExpr expr = LinearExpr::term(p(i, j));
      Rational target = e.constant;
      for (std::size_t k = 0; k < e.coef.size(); ++k) {
        expr -= f.params[k].expr * e.coef[k];
        target += e.coef[k] * f.params[k].constant;
      }
      auto r = expression_range(system, expr);
      if (!(r.pinned() && r.min == target)) {
        log << "    entry p[" << i + 1 << "][" << j + 1 << "] departs from the printed form\n";
        ok = false;
      }
    }
  }
  for (const auto& [a, b] : f.region) {
    LinearExpr expr;
    Rational shift = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      expr += f.params[k].expr * a[k];
      shift += a[k] * f.params[k].constant;
    }
    auto r = expression_range(system, expr);
    if (r.max + shift > b) {
      log << "    parameters leave the printed region\n";
      ok = false;
    }
  }
  for (const auto& v : f.vertices) {
    LinearSystem pinned = system;
    for (std::size_t k = 0; k < v.size(); ++k) {
      pinned.add_constraint(f.params[k].expr, Relation::eq, v[k] - f.params[k].constant, "vertex");
    }
    if (lp_solve(pinned).status != LpStatus::optimal) {
      log << "    printed region vertex is not attained\n";
      ok = false;
    }
  }
  return ok;
}

std::string rows_string(const std::vector<RationalVector>& rows, const std::string& indent) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << indent << i + 1 << ":";
    for (const auto& x : rows[i]) out << " " << to_string(x);
    out << "\n";
  }
  return out.str();
}

std::string range_rows(const CertifiedDerivation& d, const std::string& indent) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    out << indent << i + 1 << ":";
    for (std::size_t j = 0; j < d.p.size(); ++j) {
      if (d.entry_pinned(i, j)) {
        out << " " << to_string(d.min[i][j]);
      } else {
        out << " [" << to_string(d.min[i][j]) << "," << to_string(d.max[i][j]) << "]";
      }
    }
    out << "\n";
  }
  return out.str();
}

std::vector<RationalVector> grid(std::initializer_list<std::initializer_list<std::pair<long, long>>> rows) {
  std::vector<RationalVector> out;
  for (const auto& r : rows) {
    RationalVector row;
    for (auto [a, b] : r) row.push_back(frac(a, b));
    out.push_back(std::move(row));
  }
  return out;
}

struct ChainStep {
  std::vector<std::string> prefs;
  std::vector<std::pair<std::size_t, std::size_t>> links;  // (source profile, 0-based deviator)
  std::vector<Entry> oe_targets;
};

std::vector<ChainStep> theorem2_steps() {
  const std::string s = "o1,o2,o3,o4", h = "{o1 o2},o3,o4", m = "o1,{o2 o3},o4";
  return {
      {{s, s, s, s}, {}, {}},
      {{s, s, s, h}, {{1, 3}}, {{3, 0}}},
      {{s, s, h, h}, {{2, 2}}, {{2, 0}, {3, 0}}},
      {{h, s, h, h}, {{3, 0}}, {{1, 1}}},
      {{s, m, s, s}, {{1, 1}}, {{1, 1}}},
      {{s, m, s, h}, {{2, 1}, {5, 3}}, {{1, 1}, {3, 0}}},
      {{s, m, h, h}, {{3, 1}, {6, 2}}, {{1, 1}, {0, 1}}},
      {{h, m, h, h}, {{4, 1}, {7, 0}}, {{1, 1}}},
  };
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> theorem2_links() {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto steps = theorem2_steps();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    for (auto [src, dev] : steps[k].links) out.emplace_back(src, k + 1);
  }
  return out;
}

Theorem2Result verify_theorem2() {
  Theorem2Result out;
  std::ostringstream log;
  const auto steps = theorem2_steps();
  log << "Theorem 2 (n = 4): OE + ETE + SP is impossible\n";
  log << "Reading notes: the profile-8 relation written with x-variables is read with p-variables; in profile 4 the\n"
         "SP relation to profile 3 is applied to agent 1 and ETE then equalizes agents 1, 3 and 4.\n";

  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& step = steps[k];
    CertifiedDerivation d{k + 1, profile_from_notation(step.prefs), {}, {}, {}, {}, Resolution::infeasible, {}, {}, {}};
    d.p = add_bistochastic(d.system, 4);
    add_equal_treatment(d.system, d.p, d.profile);
    log << "\nPROFILE " << d.id << "\n" << d.profile.to_string();
    for (auto [src, dev] : step.links) {
      const auto& source = out.profiles.at(src - 1);
      SpLink link{src, dev, {}};
      for (auto& c : sp_link_constraints(source, d.profile, d.p, dev)) {
        log << "  " << c.tag << ": " << d.system.describe(c) << "\n";
        link.constraints.push_back(d.system.add_constraint(std::move(c)));
      }
      d.links.push_back(std::move(link));
    }
    for (auto target : step.oe_targets) {
      auto cert = oe_zero_certify(d.profile, d.system, d.p, target);
      log << "  OE-zero: " << entry_name(target) << " = 0 (partners";
      for (auto e : cert.partners) log << " " << entry_name(e);
      log << "; " << (cert.vacuous ? "partners cannot all vanish" : "max with partners at zero is 0") << ")\n";
      d.system.add_constraint(LinearExpr::term(d.p(target.agent, target.object)), Relation::eq, 0, "OE-zero");
      d.oe_zero.push_back(std::move(cert));
    }
    resolve(d);
    if (d.resolution == Resolution::infeasible) {
      log << "  no matrix satisfies the constraints (Farkas certificate verified)\n";
    } else {
      log << "  resolution: " << to_string(d.resolution) << "\n" << range_rows(d, "    ");
    }
    out.profiles.push_back(std::move(d));
  }

  // Printed claims.
  const std::vector<std::vector<RationalVector>> printed_unique = {
      grid({{{1, 4}, {1, 4}, {1, 4}, {1, 4}}, {{1, 4}, {1, 4}, {1, 4}, {1, 4}}, {{1, 4}, {1, 4}, {1, 4}, {1, 4}},
            {{1, 4}, {1, 4}, {1, 4}, {1, 4}}}),
      grid({{{1, 3}, {1, 6}, {1, 4}, {1, 4}}, {{1, 3}, {1, 6}, {1, 4}, {1, 4}}, {{1, 3}, {1, 6}, {1, 4}, {1, 4}},
            {{0, 1}, {1, 2}, {1, 4}, {1, 4}}}),
      grid({{{1, 2}, {0, 1}, {1, 4}, {1, 4}}, {{1, 2}, {0, 1}, {1, 4}, {1, 4}}, {{0, 1}, {1, 2}, {1, 4}, {1, 4}},
            {{0, 1}, {1, 2}, {1, 4}, {1, 4}}}),
      {},
      grid({{{1, 4}, {1, 3}, {1, 6}, {1, 4}}, {{1, 4}, {0, 1}, {1, 2}, {1, 4}}, {{1, 4}, {1, 3}, {1, 6}, {1, 4}},
            {{1, 4}, {1, 3}, {1, 6}, {1, 4}}}),
      grid({{{1, 3}, {5, 24}, {5, 24}, {1, 4}}, {{1, 3}, {0, 1}, {5, 12}, {1, 4}}, {{1, 3}, {5, 24}, {5, 24}, {1, 4}},
            {{0, 1}, {7, 12}, {1, 6}, {1, 4}}}),
  };
  log << "\nChecks against the printed matrices\n";
  for (std::size_t k : {0, 1, 2, 4, 5}) {
    const auto& d = out.profiles[k];
    const bool ok = d.resolution == Resolution::unique && d.min == printed_unique[k];
    log << "  profile " << k + 1 << " unique and as printed: " << (ok ? "yes" : "NO") << "\n";
    if (!ok) throw CertificationError("profile " + std::to_string(k + 1) + " does not resolve to the printed matrix");
  }

  {
    const auto& d = out.profiles[3];
    const auto& p = d.p;
    PrintedFamily f;
    f.params = {{"x", 0, LinearExpr::term(p(0, 0))}, {"y", 0, LinearExpr::term(p(2, 0))}};
    const auto q = frac(1, 4), h = frac(1, 2);
    f.entries = {
        {{0, {1, 0}}, {h, {-1, 0}}, constant_entry(q), constant_entry(q)},
        {constant_entry(h), constant_entry(0), constant_entry(q), constant_entry(q)},
        {{0, {0, 1}}, {h, {0, -1}}, constant_entry(q), constant_entry(q)},
        {{h, {-1, -1}}, {0, {1, 1}}, constant_entry(q), constant_entry(q)},
    };
    f.region = {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, h}};
    f.vertices = {{0, 0}, {h, 0}, {0, h}};
    const bool ok = d.resolution == Resolution::family && family_matches(d.system, p, f, log);
    log << "  profile 4 is the printed (x, y) family, x, y >= 0, x + y <= 1/2: " << (ok ? "yes" : "NO") << "\n";
    if (!ok) throw CertificationError("profile 4 does not resolve to the printed family");
  }
  {
    const auto& d = out.profiles[6];
    const auto& p = d.p;
    PrintedFamily f;
    f.params = {{"z", 0, LinearExpr::term(p(2, 0))}};
    const auto q = frac(1, 4);
    f.entries = {
        {constant_entry(frac(5, 12)), constant_entry(0), constant_entry(frac(1, 3)), constant_entry(q)},
        {constant_entry(frac(1, 2)), constant_entry(0), constant_entry(q), constant_entry(q)},
        {{0, {1}}, {frac(13, 24), {-1}}, constant_entry(frac(5, 24)), constant_entry(q)},
        {{frac(1, 12), {-1}}, {frac(11, 24), {1}}, constant_entry(frac(5, 24)), constant_entry(q)},
    };
    f.region = {{{-1}, 0}, {{1}, frac(1, 12)}};
    f.vertices = {{0}, {frac(1, 12)}};
    const bool ok = d.resolution == Resolution::family && family_matches(d.system, p, f, log);
    log << "  profile 7 is the printed z family, 0 <= z <= 1/12: " << (ok ? "yes" : "NO") << "\n";
    if (!ok) throw CertificationError("profile 7 does not resolve to the printed family");
  }

  // Profile 8: the column-3 contradiction from the SP-link, ETE and OE-zero rows.
  auto& last = out.profiles[7];
  if (last.resolution != Resolution::infeasible) throw CertificationError("profile 8 admits a matrix");
  {
    const auto& sys = last.system;
    LinearSystem sub;
    for (std::size_t v = 0; v < sys.num_variables(); ++v) sub.add_variable(sys.variable_name(v));
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < sys.constraints().size(); ++c) {
      if (sys.constraints()[c].tag == "bistochastic") continue;
      kept.push_back(c);
      sub.add_constraint(sys.constraints()[c]);
    }
    LinearExpr column3;
    for (std::size_t i = 0; i < 4; ++i) column3.add(last.p(i, 2), 1);
    sub.set_objective(column3, Sense::minimize);
    const auto res = lp_solve(sub);
    if (res.status != LpStatus::optimal) throw CertificationError("profile 8: column-3 bound LP failed");
    out.column3_forced = res.value;
    // Locate the column-3 equation among the bistochastic rows.
    std::optional<std::size_t> col_row;
    for (std::size_t c = 0; c < sys.constraints().size(); ++c) {
      const auto& con = sys.constraints()[c];
      if (con.tag == "bistochastic" && con.rel == Relation::eq && con.lhs == column3) col_row = c;
    }
    if (!col_row) throw std::logic_error("profile 8: column-3 equation missing");
    RationalVector mu(sys.constraints().size(), 0);
    for (std::size_t k = 0; k < kept.size(); ++k) mu[kept[k]] = res.duals[k];
    mu[*col_row] = -1;
    out.column3_certificate.multipliers = mu;
    if (!verify_farkas(sys, out.column3_certificate)) {
      throw CertificationError("profile 8: column-3 certificate does not verify");
    }
    log << "  profile 8: SP-link, ETE and OE-zero rows force p[1][3]+p[2][3]+p[3][3]+p[4][3] >= "
        << to_string(out.column3_forced) << ", contradicting the column sum 1 (certificate verified)\n";
    if (out.column3_forced != frac(5, 4)) throw CertificationError("profile 8: unexpected column-3 bound");
  }
  log << "\nPROFILE 8: INFEASIBLE\n";
  out.transcript = log.str();
  return out;
}

Profile theorem1_profile(std::size_t which, std::size_t n) {
  if (which != 1 && which != 2) throw InputError("theorem 1 has profiles 1 and 2");
  if (n < 3) throw InputError("theorem 1 needs n >= 3");
  std::vector<std::vector<std::size_t>> core = {{1, 2, 3}, {1, 3}, which == 1 ? std::vector<std::size_t>{1, 2, 3}
                                                                             : std::vector<std::size_t>{2, 3}};
  std::vector<UniformPreference> prefs;
  for (auto b : core) {
    for (std::size_t k = 4; k <= n; ++k) b.push_back(k);
    prefs.emplace_back(n, std::move(b));
  }
  for (std::size_t i = 4; i <= n; ++i) {
    std::vector<std::size_t> b;
    for (std::size_t k = i; k <= n; ++k) b.push_back(k);
    prefs.emplace_back(n, std::move(b));
  }
  return Profile(std::move(prefs));
}

namespace {

struct EfPolytope {
  LinearSystem system;
  MatrixVars p;
};

EfPolytope ef_polytope(const Profile& profile) {
  EfPolytope out;
  out.p = add_bistochastic(out.system, profile.size());
  add_envy_free(out.system, out.p, profile);
  return out;
}

AssignmentMatrix unique_point(EfPolytope poly, const Profile& profile, const std::string& what) {
  add_matching_hull(poly.system, poly.p, enumerate_pe_matchings(profile));
  const std::size_t n = profile.size();
  auto rows = zero_grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = coordinate_range(poly.system, poly.p(i, j));
      if (!r.pinned()) throw CertificationError(what + ": EF and EPE leave p[" + std::to_string(i + 1) + "][" +
                                                std::to_string(j + 1) + "] free");
      rows[i][j] = r.min;
    }
  }
  return AssignmentMatrix(rows);
}

}  // namespace

Theorem1Result verify_theorem1(std::size_t n) {
  if (n < 3) throw InputError("theorem 1 needs n >= 3");
  enforce_guard(Guard::theorem1, n, "theorem 1 padding");
  std::ostringstream log;
  log << "Theorem 1: EF + EPE rules out weak strategyproofness\n";

  const auto prof1 = theorem1_profile(1, 3), prof2 = theorem1_profile(2, 3);
  auto poly1 = ef_polytope(prof1), poly2 = ef_polytope(prof2);
  const auto& p1 = poly1.p;
  const auto& p2 = poly2.p;

  // Parameters as printed: y = 1/2 - p12 in profile 1; w = 1/2 - p11 and
  // z = p13 - 1/4 in profile 2.
  PrintedFamily f1;
  f1.params = {{"y", frac(1, 2), LinearExpr::term(p1(0, 1), -1)}};
  const auto t = frac(1, 3);
  f1.entries = {
      {constant_entry(t), {frac(1, 2), {-1}}, {frac(1, 6), {1}}},
      {constant_entry(t), {0, {2}}, {frac(2, 3), {-2}}},
      {constant_entry(t), {frac(1, 2), {-1}}, {frac(1, 6), {1}}},
  };
  f1.region = {{{-1}, 0}, {{1}, frac(1, 6)}};
  f1.vertices = {{0}, {frac(1, 6)}};

  PrintedFamily f2;
  f2.params = {{"w", frac(1, 2), LinearExpr::term(p2(0, 0), -1)}, {"z", frac(-1, 4), LinearExpr::term(p2(0, 2))}};
  f2.entries = {
      {{frac(1, 2), {-1, 0}}, {frac(1, 4), {1, -1}}, {frac(1, 4), {0, 1}}},
      {{frac(1, 2), {-1, 0}}, {0, {1, 2}}, {frac(1, 2), {0, -2}}},
      {{0, {2, 0}}, {frac(3, 4), {-2, -1}}, {frac(1, 4), {0, 1}}},
  };
  f2.region = {{{-1, 0}, 0}, {{1, 0}, frac(1, 6)}, {{0, -1}, 0}, {{0, 1}, frac(1, 12)}};

  auto param_range = [](const LinearSystem& sys, const AffineParam& a) {
    auto r = expression_range(sys, a.expr);
    return AffineFamilyCheck{a.name, a.constant + r.min, a.constant + r.max};
  };

  Theorem1Core core{prof1,
                    prof2,
                    param_range(poly1.system, f1.params[0]),
                    param_range(poly2.system, f2.params[0]),
                    param_range(poly2.system, f2.params[1]),
                    false,
                    false,
                    {},
                    AssignmentMatrix::uniform(3),
                    AssignmentMatrix::uniform(3),
                    SdVerdict::incomparable,
                    SdVerdict::incomparable,
                    std::nullopt};
  log << "\nPROFILE 1\n" << prof1.to_string();
  log << "  EF polytope: y in [" << to_string(core.y.min) << ", " << to_string(core.y.max) << "]\n";
  core.family1_matches = family_matches(poly1.system, p1, f1, log);
  log << "  entries follow the printed y form: " << (core.family1_matches ? "yes" : "NO") << "\n";

  log << "\nPROFILE 2\n" << prof2.to_string();
  log << "  EF polytope: w in [" << to_string(core.w.min) << ", " << to_string(core.w.max) << "], z in ["
      << to_string(core.z.min) << ", " << to_string(core.z.max) << "]\n";
  core.family2_matches = family_matches(poly2.system, p2, f2, log);
  log << "  entries follow the printed (w, z) form: " << (core.family2_matches ? "yes" : "NO") << "\n";
  if (core.z.min < 0) {
    // An EF matrix with z below the printed bound.
    LinearSystem low = poly2.system;
    low.set_objective(f2.params[1].expr, Sense::minimize);
    const auto lo = lp_solve(low);
    AssignmentMatrix q(extract_rows(p2, lo.witness));
    log << "  EF point with z = " << to_string(core.z.min) << ":\n" << rows_string(q.rows(), "    ");
    log << "    EF: " << describe(envy_free(q, prof2)) << "; EPE: "
        << (ex_post_efficient(q, prof2).holds ? "holds" : "fails") << "\n";
    core.ef_outside_printed = std::move(q);
  }
  for (const auto& w : {Rational(0), frac(1, 6)}) {
    for (const auto& z : {Rational(0), frac(1, 12)}) {
      LinearSystem pinned = poly2.system;
      pinned.add_constraint(f2.params[0].expr, Relation::eq, w - f2.params[0].constant, "corner");
      pinned.add_constraint(f2.params[1].expr, Relation::eq, z - f2.params[1].constant, "corner");
      const bool inside = lp_solve(pinned).status == LpStatus::optimal;
      log << "  corner (w, z) = (" << to_string(w) << ", " << to_string(z) << "): " << (inside ? "inside" : "outside")
          << "\n";
      if (inside) core.wz_corners_feasible.emplace_back(w, z);
    }
  }

  core.unique1 = unique_point(poly1, prof1, "profile 1");
  core.unique2 = unique_point(poly2, prof2, "profile 2");
  log << "\nEF and EPE pin profile 1 to\n" << rows_string(core.unique1.rows(), "  ");
  log << "EF and EPE pin profile 2 to\n" << rows_string(core.unique2.rows(), "  ");

  core.agent3_under_truth2 = sd_compare(core.unique1.row(2), core.unique2.row(2), prof2[2]);
  core.agent3_under_truth1 = sd_compare(core.unique1.row(2), core.unique2.row(2), prof1[2]);
  log << "Agent 3, profile-1 row vs profile-2 row: " << to_string(core.agent3_under_truth2) << " under "
      << prof2[2].to_string() << ", " << to_string(core.agent3_under_truth1) << " under " << prof1[2].to_string()
      << "\n";
  if (core.agent3_under_truth2 == SdVerdict::strictly_dominates) {
    log << "Agent 3 with truth " << prof2[2].to_string() << " gains by reporting " << prof1[2].to_string()
        << ": every EF and EPE mechanism fails weak strategyproofness\n";
  }

  Theorem1Result out{std::move(core), {}, {}};
  for (std::size_t m = 4; m <= n; ++m) {
    PaddingCheck pc{m, 0, true, true};
    for (std::size_t which : {1, 2}) {
      const auto prof = theorem1_profile(which, m);
      const auto pe = enumerate_pe_matchings(prof);
      pc.pe_matchings += pe.size();
      for (const auto& match : pe) {
        for (std::size_t i = 3; i < m; ++i) pc.padded_agents_fixed = pc.padded_agents_fixed && match.object_of(i) == i;
      }
      const auto point = unique_point(ef_polytope(prof), prof, "padded profile " + std::to_string(which));
      const auto& small = which == 1 ? out.core.unique1 : out.core.unique2;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const Rational expect = (i < 3 && j < 3) ? small(i, j) : Rational(i == j ? 1 : 0);
          pc.core_matches = pc.core_matches && point(i, j) == expect;
        }
      }
    }
    log << "\nPadding n = " << m << ": " << pc.pe_matchings << " Pareto-efficient matchings over both profiles; agents 4.."
        << m << " always hold their own object: " << (pc.padded_agents_fixed ? "yes" : "NO")
        << "; same 3 x 3 core: " << (pc.core_matches ? "yes" : "NO") << "\n";
    out.padding.push_back(pc);
  }
  out.transcript = log.str();
  return out;
}

Example31Result verify_example31() {
  const auto profile =
      profile_from_notation({"o1,{o2 o3},o4", "o1,{o2 o3},o4", "{o1 o2},o3,o4", "{o1 o2},o3,o4"});
  const AssignmentMatrix first(grid({{{1, 4}, {0, 1}, {1, 2}, {1, 4}},
                                     {{1, 4}, {0, 1}, {1, 2}, {1, 4}},
                                     {{1, 4}, {1, 2}, {0, 1}, {1, 4}},
                                     {{1, 4}, {1, 2}, {0, 1}, {1, 4}}}));
  const AssignmentMatrix second(grid({{{1, 2}, {0, 1}, {1, 4}, {1, 4}},
                                      {{1, 2}, {0, 1}, {1, 4}, {1, 4}},
                                      {{0, 1}, {1, 2}, {1, 4}, {1, 4}},
                                      {{0, 1}, {1, 2}, {1, 4}, {1, 4}}}));
  auto eps = eps_assign(profile).matrix;
  Example31Result r{profile,
                    first,
                    second,
                    eps,
                    ordinally_efficient(first, profile),
                    envy_free(first, profile),
                    ordinally_efficient(second, profile),
                    envy_free(second, profile),
                    !assignments_equivalent(first, second, profile),
                    assignments_equivalent(eps, second, profile),
                    assignments_equivalent(eps, first, profile),
                    {}};
  std::ostringstream log;
  log << "Non-uniqueness of OE and EF assignments\n" << profile.to_string();
  log << "First matrix\n" << rows_string(first.rows(), "  ");
  log << "  OE: " << describe(r.first_oe) << "\n  EF: " << describe(r.first_ef) << "\n";
  log << "Second matrix\n" << rows_string(second.rows(), "  ");
  log << "  OE: " << describe(r.second_oe) << "\n  EF: " << describe(r.second_ef) << "\n";
  log << "Equivalent: " << (r.inequivalent ? "no" : "yes") << "\n";
  log << "EPS\n" << rows_string(eps.rows(), "  ");
  log << "EPS in the class of the second matrix: " << (r.eps_matches_second ? "yes" : "no")
      << "; of the first: " << (r.eps_matches_first ? "yes" : "no") << "\n";
  r.transcript = log.str();
  return r;
}

bool claims_hold(const Theorem1Result& r) {
  const auto& c = r.core;
  const AssignmentMatrix at_y0(grid({{{1, 3}, {1, 2}, {1, 6}}, {{1, 3}, {0, 1}, {2, 3}}, {{1, 3}, {1, 2}, {1, 6}}}));
  const AssignmentMatrix at_wz0(grid({{{1, 2}, {1, 4}, {1, 4}}, {{1, 2}, {0, 1}, {1, 2}}, {{0, 1}, {3, 4}, {1, 4}}}));
  bool ok = c.y.min == 0 && c.y.max == frac(1, 6) && c.w.min == 0 && c.w.max == frac(1, 6) && c.z.min == 0 &&
            c.z.max == frac(1, 12) && c.family1_matches && c.family2_matches && c.unique1 == at_y0 &&
            c.unique2 == at_wz0 && c.agent3_under_truth2 == SdVerdict::strictly_dominates &&
            c.agent3_under_truth1 == SdVerdict::strictly_dominates;
  for (const auto& pc : r.padding) ok = ok && pc.padded_agents_fixed && pc.core_matches;
  return ok;
}

bool claims_hold(const Example31Result& r) {
  return r.first_oe.holds && r.first_ef.holds && r.second_oe.holds && r.second_ef.holds && r.inequivalent &&
         r.eps_matches_second;
}

}  // namespace ua
