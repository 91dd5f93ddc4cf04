#include "ua/preference.hpp"

#include <algorithm>

#include "ua/errors.hpp"

namespace ua {

UniformPreference::UniformPreference(std::size_t n, std::vector<std::size_t> boundaries)
    : n_(n), bounds_(std::move(boundaries)) {
  if (n_ == 0) throw InputError("a preference needs at least one object");
  if (bounds_.empty() || bounds_.back() != n_) {
    throw InputError("class boundaries must end at n = " + std::to_string(n_));
  }
  std::size_t prev = 0;
  for (auto b : bounds_) {
    if (b <= prev) throw InputError("class boundaries must be strictly increasing and positive");
    prev = b;
  }
  class_index_.resize(n_);
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    for (std::size_t o = class_begin(k); o < class_end(k); ++o) class_index_[o] = k;
  }
}

UniformPreference UniformPreference::strict(std::size_t n) {
  std::vector<std::size_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = i + 1;
  return UniformPreference(n, std::move(b));
}

UniformPreference UniformPreference::indifferent(std::size_t n) { return UniformPreference(n, {n}); }

std::string UniformPreference::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < num_classes(); ++k) {
    if (k) out += ',';
    const bool braces = class_end(k) - class_begin(k) > 1;
    if (braces) out += '{';
    for (std::size_t o = class_begin(k); o < class_end(k); ++o) {
      if (o != class_begin(k)) out += ' ';
      out += 'o' + std::to_string(o + 1);
    }
    if (braces) out += '}';
  }
  return out;
}

std::vector<UniformPreference> enumerate_uniform_prefs(std::size_t n) {
  if (n == 0) throw InputError("enumerate_uniform_prefs: n must be at least 1");
  if (n > 24) throw GuardError("enumerate_uniform_prefs: n too large");
  std::vector<UniformPreference> out;
  const std::size_t count = std::size_t{1} << (n - 1);
  out.reserve(count);
  // Bit k of mask set <=> a class boundary after object k+1 (k < n-1).
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (mask >> k & 1U) b.push_back(k + 1);
    }
    b.push_back(n);
    out.emplace_back(n, std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Profile::Profile(std::vector<UniformPreference> agents) : agents_(std::move(agents)) {
  if (agents_.empty()) throw InputError("a profile needs at least one agent");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].size() != agents_.size()) {
      throw InputError("agent " + std::to_string(i + 1) + " ranks " + std::to_string(agents_[i].size()) +
                       " objects but there are " + std::to_string(agents_.size()) +
                       " agents; pad the instance with dummy agents or objects");
    }
  }
}

Profile Profile::with(std::size_t i, UniformPreference pref) const {
  auto copy = agents_;
  copy.at(i) = std::move(pref);
  return Profile(std::move(copy));
}

std::string Profile::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    out += std::to_string(i + 1) + ": " + agents_[i].to_string() + "\n";
  }
  return out;
}

}  // namespace ua
