#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ua {

/// A weak order on objects o_1..o_n that respects the common order
/// o_1 >= o_2 >= ... >= o_n. It is stored as the end position of each
/// indifference class: class k holds the 0-based objects
/// [boundary(k-1), boundary(k)), and the last boundary is n.
class UniformPreference {
 public:
  /// Throws InputError unless `boundaries` is strictly increasing, positive,
  /// and ends at n.
  UniformPreference(std::size_t n, std::vector<std::size_t> boundaries);

  static UniformPreference strict(std::size_t n);
  static UniformPreference indifferent(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t num_classes() const { return bounds_.size(); }
  std::span<const std::size_t> boundaries() const { return bounds_; }

  std::size_t class_begin(std::size_t k) const { return k == 0 ? 0 : bounds_[k - 1]; }
  std::size_t class_end(std::size_t k) const { return bounds_[k]; }
  std::size_t class_of(std::size_t object) const { return class_index_[object]; }

  bool prefers(std::size_t a, std::size_t b) const { return class_of(a) < class_of(b); }
  bool indifferent(std::size_t a, std::size_t b) const { return class_of(a) == class_of(b); }

  /// Class notation, e.g. "o1,{o2 o3},o4".
  std::string to_string() const;

  friend bool operator==(const UniformPreference& a, const UniformPreference& b) {
    return a.n_ == b.n_ && a.bounds_ == b.bounds_;
  }
  friend std::strong_ordering operator<=>(const UniformPreference& a, const UniformPreference& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bounds_ <=> b.bounds_;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> bounds_;
  std::vector<std::size_t> class_index_;
};

/// All 2^(n-1) uniform preferences over n objects, ordered by boundary list.
std::vector<UniformPreference> enumerate_uniform_prefs(std::size_t n);

/// Square problem: agent i's preference is agents()[i], over n = agent count
/// objects.
class Profile {
 public:
  explicit Profile(std::vector<UniformPreference> agents);

  std::size_t size() const { return agents_.size(); }
  const UniformPreference& operator[](std::size_t i) const { return agents_[i]; }
  std::span<const UniformPreference> agents() const { return agents_; }

  /// Copy with agent i's preference replaced.
  Profile with(std::size_t i, UniformPreference pref) const;

  std::string to_string() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<UniformPreference> agents_;
};

}  // namespace ua
