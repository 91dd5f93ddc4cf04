#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ua/rational.hpp"

namespace ua {

/// A perfect matching of agents to objects: object_of(i) is agent i's object.
class Matching {
 public:
  /// Throws InputError unless `object_of` is a permutation of 0..n-1.
  explicit Matching(std::vector<std::size_t> object_of);

  static Matching identity(std::size_t n);

  std::size_t size() const { return object_of_.size(); }
  std::size_t object_of(std::size_t agent) const { return object_of_[agent]; }
  std::span<const std::size_t> objects() const { return object_of_; }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<std::size_t> object_of_;
};

/// All n! matchings in lexicographic order of object_of.
std::vector<Matching> all_matchings(std::size_t n);

/// Doubly stochastic n x n matrix of rationals; entry (i, j) is the
/// probability that agent i receives object o_j. Every constructor checks the
/// row and column sums exactly.
class AssignmentMatrix {
 public:
  /// Throws InputError if the rows are not square, have entries outside
  /// [0, 1], or fail any row/column sum.
  explicit AssignmentMatrix(const std::vector<RationalVector>& rows);

  static AssignmentMatrix uniform(std::size_t n);
  static AssignmentMatrix from_matching(const Matching& m);

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const Rational> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::vector<RationalVector> rows() const;

  /// True when every entry is 0 or 1.
  bool is_deterministic() const;
  /// The matching of a deterministic matrix. Throws InputError otherwise.
  Matching to_matching() const;

  std::string to_string() const;

  friend bool operator==(const AssignmentMatrix&, const AssignmentMatrix&) = default;

 private:
  AssignmentMatrix() = default;
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

/// Zero-initialised n x n grid for intermediate computations.
std::vector<RationalVector> zero_grid(std::size_t n);

}  // namespace ua
