#include "ua/io.hpp"

#include <sstream>
#include <variant>

#include "ua/dominance.hpp"
#include "ua/errors.hpp"

namespace ua {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the line and column.
    throw InputError(std::string(what) + ": " + e.what());
  }
}

std::size_t as_index(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < 1) throw InputError(path + ": expected a positive integer, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) throw InputError(path + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw InputError(path + ": missing field \"" + name + "\"");
  return *it;
}

// Classes must list 1..n in order, each class consecutive.
UniformPreference pref_from_classes(const json& classes, std::size_t n, const std::string& path) {
  if (!classes.is_array() || classes.empty()) throw InputError(path + ": expected a non-empty array of classes");
  std::vector<std::size_t> bounds;
  std::size_t next = 1;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto cpath = path + "[" + std::to_string(k) + "]";
    const auto& cls = classes[k];
    if (!cls.is_array() || cls.empty()) throw InputError(cpath + ": expected a non-empty array of objects");
    for (std::size_t m = 0; m < cls.size(); ++m) {
      const auto o = as_index(cls[m], cpath + "[" + std::to_string(m) + "]");
      if (o != next) {
        throw InputError(cpath + ": object " + std::to_string(o) + " out of the common order (expected " +
                         std::to_string(next) + ")");
      }
      ++next;
    }
    bounds.push_back(next - 1);
  }
  if (next != n + 1) throw InputError(path + ": classes cover " + std::to_string(next - 1) + " of " + std::to_string(n) + " objects");
  return UniformPreference(n, std::move(bounds));
}

std::string matching_notation(const Matching& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(i + 1) + "->o" + std::to_string(m.object_of(i) + 1);
  }
  return out;
}

json rational_row(std::span<const Rational> row) {
  json out = json::array();
  for (const auto& x : row) out.push_back(to_string(x));
  return out;
}

json rows_json(const std::vector<RationalVector>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(rational_row(r));
  return out;
}

}  // namespace

UniformPreference parse_preference_notation(std::string_view text, std::size_t n) {
  std::vector<std::size_t> bounds;
  std::size_t next = 1, pos = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("preference \"" + std::string(text) + "\" at position " + std::to_string(pos) + ": " + why);
  };
  auto skip_space = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto read_object = [&] {
    skip_space();
    if (pos >= text.size() || text[pos] != 'o') fail("expected an object like o3");
    ++pos;
    std::size_t v = 0, digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::size_t>(text[pos++] - '0');
      ++digits;
    }
    if (!digits) fail("missing object number");
    if (v != next) fail("object o" + std::to_string(v) + " out of the common order (expected o" + std::to_string(next) + ")");
    ++next;
  };
  while (true) {
    skip_space();
    if (pos < text.size() && text[pos] == '{') {
      ++pos;
      read_object();
      skip_space();
      while (pos < text.size() && text[pos] != '}') {
        read_object();
        skip_space();
      }
      if (pos >= text.size()) fail("unclosed '{'");
      ++pos;
    } else {
      read_object();
    }
    bounds.push_back(next - 1);
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != ',') fail("expected ','");
    ++pos;
  }
  if (next != n + 1) fail("lists " + std::to_string(next - 1) + " of " + std::to_string(n) + " objects");
  return UniformPreference(n, std::move(bounds));
}

Instance parse_instance(std::string_view text) {
  const auto doc = parse_json(text, "instance");
  const auto n = as_index(field(doc, "n", "instance"), "n");
  const auto& agents = field(doc, "agents", "instance");
  if (!agents.is_array()) throw InputError("agents: expected an array");
  if (agents.size() != n) {
    throw InputError("agents: " + std::to_string(agents.size()) + " agents for " + std::to_string(n) +
                     " objects (balance with dummy agents or objects)");
  }
  std::vector<UniformPreference> prefs;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto path = "agents[" + std::to_string(i) + "]";
    const auto& a = agents[i];
    std::string name = std::to_string(i + 1);
    if (a.is_object() && a.contains("name")) {
      if (!a["name"].is_string()) throw InputError(path + ".name: expected a string");
      name = a["name"].get<std::string>();
    }
    prefs.push_back(pref_from_classes(field(a, "classes", path), n, path + ".classes"));
    names.push_back(std::move(name));
  }
  return Instance{Profile(std::move(prefs)), std::move(names)};
}

Profile parse_profile(std::string_view text) { return parse_instance(text).profile; }

std::string serialize_profile(const Profile& profile, const std::vector<std::string>& names) {
  std::ostringstream out;
  const std::size_t n = profile.size();
  out << "{\"n\": " << n << ", \"agents\": [\n";
  for (std::size_t i = 0; i < n; ++i) {
    json classes = json::array();
    const auto& pref = profile[i];
    for (std::size_t k = 0; k < pref.num_classes(); ++k) {
      json cls = json::array();
      for (auto o = pref.class_begin(k); o < pref.class_end(k); ++o) cls.push_back(o + 1);
      classes.push_back(std::move(cls));
    }
    json agent = {{"name", i < names.size() ? names[i] : std::to_string(i + 1)}, {"classes", std::move(classes)}};
    out << "  " << agent.dump() << (i + 1 < n ? ",\n" : "\n");
  }
  out << "]}\n";
  return out.str();
}

AssignmentMatrix parse_matrix(std::string_view text) {
  auto doc = parse_json(text, "matrix");
  if (doc.is_object()) doc = field(doc, "matrix", "matrix");
  if (!doc.is_array() || doc.empty()) throw InputError("matrix: expected an array of rows");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto path = "matrix[" + std::to_string(i) + "]";
    if (!doc[i].is_array()) throw InputError(path + ": expected an array");
    RationalVector row;
    for (std::size_t j = 0; j < doc[i].size(); ++j) {
      const auto& cell = doc[i][j];
      const auto cpath = path + "[" + std::to_string(j) + "]";
      try {
        if (cell.is_string()) {
          row.push_back(parse_rational(cell.get<std::string>()));
        } else if (cell.is_number_integer()) {
          row.push_back(Rational(cell.get<long>()));
        } else {
          throw InputError("expected an \"a/b\" string");
        }
      } catch (const InputError& e) {
        throw InputError(cpath + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return AssignmentMatrix(rows);
}

std::string serialize_matrix(const AssignmentMatrix& m) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < m.size(); ++i) out << "  " << rational_row(m.row(i)).dump() << (i + 1 < m.size() ? ",\n" : "\n");
  out << "]\n";
  return out.str();
}

JobInstance parse_jobs(std::string_view text) {
  const auto doc = parse_json(text, "jobs");
  const auto& d = field(doc, "deadlines", "jobs");
  if (!d.is_array() || d.empty()) throw InputError("deadlines: expected a non-empty array");
  JobInstance out;
  for (std::size_t k = 0; k < d.size(); ++k) out.deadlines.push_back(as_index(d[k], "deadlines[" + std::to_string(k) + "]"));
  for (std::size_t k = 0; k < out.deadlines.size(); ++k) {
    const auto v = out.deadlines[k];
    if (v < 1 || v > out.deadlines.size()) {
      throw InputError("deadlines[" + std::to_string(k) + "]: " + std::to_string(v) + " outside 1.." +
                       std::to_string(out.deadlines.size()));
    }
  }
  return out;
}

Profile jobs_to_profile(const JobInstance& jobs) {
  const std::size_t n = jobs.deadlines.size();
  if (n == 0) throw InputError("jobs: no jobs");
  std::vector<UniformPreference> prefs;
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = jobs.deadlines[k];
    if (d < 1 || d > n) {
      throw InputError("deadlines[" + std::to_string(k) + "]: " + std::to_string(d) + " outside 1.." + std::to_string(n));
    }
    std::vector<std::size_t> bounds;
    for (std::size_t b = 1; b <= d; ++b) bounds.push_back(b);
    if (d < n) bounds.push_back(n);
    prefs.emplace_back(n, std::move(bounds));
  }
  return Profile(std::move(prefs));
}

json to_json(const AssignmentMatrix& m) { return rows_json(m.rows()); }

json to_json(const Matching& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m.object_of(i) + 1);
  return out;
}

json farkas_json(const LinearSystem& system, const FarkasCertificate& cert) {
  json rows = json::array();
  const auto& cons = system.constraints();
  for (std::size_t k = 0; k < cons.size(); ++k) {
    if (cert.multipliers[k] == 0) continue;
    rows.push_back({{"constraint", system.describe(cons[k])}, {"tag", cons[k].tag}, {"multiplier", to_string(cert.multipliers[k])}});
  }
  const auto comb = combine(system, cert.multipliers);
  json coef = json::object();
  for (std::size_t v = 0; v < comb.coefficients.size(); ++v) {
    if (comb.coefficients[v] != 0) coef[system.variable_name(v)] = to_string(comb.coefficients[v]);
  }
  return {{"rows", std::move(rows)},
          {"combined_coefficients", std::move(coef)},
          {"combined_rhs", to_string(comb.rhs)},
          {"verified", verify_farkas(system, cert)}};
}

json to_json(const AxiomVerdict& v) {
  json out = {{"holds", v.holds}};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DominatingMatrix>) {
          out["dominated_by"] = to_json(c.q);
        } else if constexpr (std::is_same_v<T, SlackBound>) {
          json duals = json::array();
          for (const auto& d : c.duals) duals.push_back(to_string(d));
          out["slack_bound_duals"] = std::move(duals);
        } else if constexpr (std::is_same_v<T, EnvyPair>) {
          out["envy"] = {{"envier", c.envier + 1},
                         {"envied", c.envied + 1},
                         {"class", c.class_index + 1},
                         {"own_prefix", to_string(c.own_prefix)},
                         {"other_prefix", to_string(c.other_prefix)}};
        } else if constexpr (std::is_same_v<T, UnequalEquals>) {
          out["unequal"] = {{"agents", {c.first + 1, c.second + 1}},
                            {"class", c.class_index + 1},
                            {"masses", {to_string(c.first_mass), to_string(c.second_mass)}}};
        } else if constexpr (std::is_same_v<T, ImprovingMatching>) {
          out["improved_by"] = to_json(c.better);
        } else if constexpr (std::is_same_v<T, PeWeights>) {
          json terms = json::array();
          for (const auto& [w, m] : c.terms) terms.push_back({{"weight", to_string(w)}, {"matching", to_json(m)}});
          out["pe_weights"] = std::move(terms);
        } else if constexpr (std::is_same_v<T, HullInfeasibility>) {
          out["farkas"] = farkas_json(c.system, c.certificate);
        }
      },
      v.certificate);
  return out;
}

json to_json(const Lottery& l) {
  json out = json::array();
  for (const auto& e : l.entries) {
    out.push_back({{"weight", to_string(e.weight)}, {"matching", to_json(e.matching)}, {"pairs", matching_notation(e.matching)}});
  }
  return out;
}

json to_json(const ManipulationReport& r) {
  return {{"agent", r.agent + 1},
          {"truth", r.truth.to_string()},
          {"misreport", r.misreport.to_string()},
          {"truthful_row", rational_row(r.truthful_row)},
          {"misreport_row", rational_row(r.misreport_row)},
          {"truthful_prefix", rational_row(r.truthful_prefix)},
          {"misreport_prefix", rational_row(r.misreport_prefix)},
          {"comparison", to_string(r.misreport_vs_truth)},
          {"kind", to_string(r.kind)}};
}

json to_json(const SweepSummary& s) {
  json out = {{"n", s.n},
              {"profiles", s.profiles},
              {"sp_violations", s.sp_violations},
              {"weak_sp_violations", s.weak_sp_violations},
              {"profiles_with_sp_violation", s.profiles_with_sp_violation}};
  auto witness = [](const SweepWitness& w) {
    json prefs = json::array();
    for (const auto& p : w.profile.agents()) prefs.push_back(p.to_string());
    return json{{"profile", std::move(prefs)}, {"report", to_json(w.report)}};
  };
  if (s.first_sp) out["first_sp"] = witness(*s.first_sp);
  if (s.first_weak_sp) out["first_weak_sp"] = witness(*s.first_weak_sp);
  return out;
}

json to_json(const Theorem2Result& r) {
  json profiles = json::array();
  for (const auto& d : r.profiles) {
    json prefs = json::array();
    for (const auto& p : d.profile.agents()) prefs.push_back(p.to_string());
    json entry = {{"profile", d.id}, {"preferences", std::move(prefs)}, {"resolution", to_string(d.resolution)}};
    json links = json::array();
    for (const auto& l : d.links) {
      json rows = json::array();
      for (auto c : l.constraints) rows.push_back(d.system.describe(d.system.constraints()[c]));
      links.push_back({{"source", l.source}, {"deviator", l.deviator + 1}, {"constraints", std::move(rows)}});
    }
    entry["sp_links"] = std::move(links);
    json oe = json::array();
    for (const auto& c : d.oe_zero) {
      json partners = json::array();
      for (auto e : c.partners) partners.push_back({e.agent + 1, e.object + 1});
      oe.push_back({{"target", {c.target.agent + 1, c.target.object + 1}},
                    {"partners", std::move(partners)},
                    {"vacuous", c.vacuous},
                    {"max", c.vacuous ? json(nullptr) : json(to_string(c.outcome.value))}});
    }
    entry["oe_zero"] = std::move(oe);
    if (d.resolution == Resolution::infeasible) {
      entry["farkas"] = farkas_json(d.system, *d.certificate);
    } else {
      entry["min"] = rows_json(d.min);
      entry["max"] = rows_json(d.max);
    }
    profiles.push_back(std::move(entry));
  }
  return {{"theorem", 2},
          {"profiles", std::move(profiles)},
          {"column3_forced", to_string(r.column3_forced)},
          {"column3_certificate", farkas_json(r.profiles.back().system, r.column3_certificate)},
          {"conclusion", "PROFILE 8: INFEASIBLE"}};
}

json to_json(const Theorem1Result& r) {
  const auto& c = r.core;
  json corners = json::array();
  for (const auto& [w, z] : c.wz_corners_feasible) corners.push_back({to_string(w), to_string(z)});
  json padding = json::array();
  for (const auto& p : r.padding) {
    padding.push_back({{"n", p.n},
                       {"pe_matchings", p.pe_matchings},
                       {"padded_agents_fixed", p.padded_agents_fixed},
                       {"core_matches", p.core_matches}});
  }
  return {{"theorem", 1},
          {"y", {to_string(c.y.min), to_string(c.y.max)}},
          {"w", {to_string(c.w.min), to_string(c.w.max)}},
          {"z", {to_string(c.z.min), to_string(c.z.max)}},
          {"profile1_family_matches", c.family1_matches},
          {"profile2_family_matches", c.family2_matches},
          {"wz_corners_feasible", std::move(corners)},
          {"profile2_ef_outside_printed", c.ef_outside_printed ? to_json(*c.ef_outside_printed) : json(nullptr)},
          {"profile1_unique", to_json(c.unique1)},
          {"profile2_unique", to_json(c.unique2)},
          {"agent3_under_profile2_truth", to_string(c.agent3_under_truth2)},
          {"agent3_under_profile1_truth", to_string(c.agent3_under_truth1)},
          {"padding", std::move(padding)}};
}

json to_json(const Example31Result& r) {
  return {{"first", to_json(r.first)},
          {"second", to_json(r.second)},
          {"eps", to_json(r.eps)},
          {"first_oe", to_json(r.first_oe)},
          {"first_ef", to_json(r.first_ef)},
          {"second_oe", to_json(r.second_oe)},
          {"second_ef", to_json(r.second_ef)},
          {"inequivalent", r.inequivalent},
          {"eps_matches_second", r.eps_matches_second},
          {"eps_matches_first", r.eps_matches_first}};
}

}  // namespace ua
