#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ua/axioms.hpp"
#include "ua/lottery.hpp"
#include "ua/matrix.hpp"
#include "ua/preference.hpp"
#include "ua/repro.hpp"
#include "ua/strategy.hpp"

namespace ua {

/// "o1,{o2 o3},o4" over n objects. Throws InputError naming the offending
/// token.
UniformPreference parse_preference_notation(std::string_view text, std::size_t n);

/// A profile plus optional agent names, as read from an instance file:
/// {"n": 4, "agents": [{"name": "a", "classes": [[1], [2, 3], [4]]}, ...]}
struct Instance {
  Profile profile;
  std::vector<std::string> names;
};

/// Errors carry the JSON line/column or the field path (e.g.
/// "agents[2].classes[1]").
Instance parse_instance(std::string_view text);
Profile parse_profile(std::string_view text);

/// One agent per line, newline-terminated.
std::string serialize_profile(const Profile& profile, const std::vector<std::string>& names = {});

/// Array of arrays of "a/b" strings, or an object with a "matrix" field.
AssignmentMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const AssignmentMatrix& m);

/// Deadline instance: {"deadlines": [3, 1, 2]}, n = number of jobs.
struct JobInstance {
  std::vector<std::size_t> deadlines;
};

JobInstance parse_jobs(std::string_view text);

/// Job j's preference: singletons o1..o_{d_j}, then one terminal class.
Profile jobs_to_profile(const JobInstance& jobs);

nlohmann::json to_json(const AssignmentMatrix& m);
nlohmann::json to_json(const Matching& m);
nlohmann::json to_json(const AxiomVerdict& v);
nlohmann::json to_json(const Lottery& l);
nlohmann::json to_json(const ManipulationReport& r);
nlohmann::json to_json(const SweepSummary& s);
nlohmann::json farkas_json(const LinearSystem& system, const FarkasCertificate& cert);
nlohmann::json to_json(const Theorem2Result& r);
nlohmann::json to_json(const Theorem1Result& r);
nlohmann::json to_json(const Example31Result& r);

}  // namespace ua
