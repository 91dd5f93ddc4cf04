#include "ua/dominance.hpp"

#include "ua/errors.hpp"

namespace ua {

namespace {

void check_row(std::span<const Rational> row, const UniformPreference& pref) {
  if (row.size() != pref.size()) {
    throw InputError("row has " + std::to_string(row.size()) + " entries but the preference ranks " +
                     std::to_string(pref.size()) + " objects");
  }
}

void check_square(const AssignmentMatrix& p, const AssignmentMatrix& q, const Profile& profile) {
  if (p.size() != q.size() || p.size() != profile.size()) throw InputError("matrix/profile size mismatch");
}

}  // namespace

const char* to_string(SdVerdict v) {
  switch (v) {
    case SdVerdict::strictly_dominates: return "strictly_dominates";
    case SdVerdict::equivalent: return "equivalent";
    case SdVerdict::incomparable: return "incomparable";
    case SdVerdict::dominated: return "dominated";
  }
  return "?";
}

RationalVector class_prefix_sums(std::span<const Rational> row, const UniformPreference& pref) {
  check_row(row, pref);
  RationalVector out;
  out.reserve(pref.num_classes());
  Rational acc = 0;
  for (std::size_t k = 0; k < pref.num_classes(); ++k) {
    for (std::size_t o = pref.class_begin(k); o < pref.class_end(k); ++o) acc += row[o];
    out.push_back(acc);
  }
  return out;
}

RationalVector class_masses(std::span<const Rational> row, const UniformPreference& pref) {
  check_row(row, pref);
  RationalVector out(pref.num_classes(), 0);
  for (std::size_t o = 0; o < row.size(); ++o) out[pref.class_of(o)] += row[o];
  return out;
}

SdVerdict sd_compare(std::span<const Rational> row_p, std::span<const Rational> row_q, const UniformPreference& pref) {
  const auto a = class_prefix_sums(row_p, pref);
  const auto b = class_prefix_sums(row_q, pref);
  bool some_greater = false, some_less = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) some_greater = true;
    if (a[k] < b[k]) some_less = true;
  }
  if (some_greater && some_less) return SdVerdict::incomparable;
  if (some_greater) return SdVerdict::strictly_dominates;
  if (some_less) return SdVerdict::dominated;
  return SdVerdict::equivalent;
}

bool matrix_sd_dominates(const AssignmentMatrix& p, const AssignmentMatrix& q, const Profile& profile) {
  check_square(p, q, profile);
  bool strict = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto v = sd_compare(p.row(i), q.row(i), profile[i]);
    if (!weakly_dominates(v)) return false;
    strict = strict || v == SdVerdict::strictly_dominates;
  }
  return strict;
}

bool assignments_equivalent(const AssignmentMatrix& p, const AssignmentMatrix& q, const Profile& profile) {
  check_square(p, q, profile);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (class_masses(p.row(i), profile[i]) != class_masses(q.row(i), profile[i])) return false;
  }
  return true;
}

}  // namespace ua
