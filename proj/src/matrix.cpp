#include "ua/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "ua/errors.hpp"

namespace ua {

Matching::Matching(std::vector<std::size_t> object_of) : object_of_(std::move(object_of)) {
  std::vector<bool> seen(object_of_.size(), false);
  for (auto o : object_of_) {
    if (o >= object_of_.size() || seen[o]) throw InputError("matching is not a permutation");
    seen[o] = true;
  }
}

Matching Matching::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Matching(std::move(v));
}

std::vector<Matching> all_matchings(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

AssignmentMatrix::AssignmentMatrix(const std::vector<RationalVector>& rows) : n_(rows.size()) {
  if (n_ == 0) throw InputError("assignment matrix must be non-empty");
  entries_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw InputError("assignment matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(n_));
    }
    for (const auto& x : rows[i]) entries_.push_back(x);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    Rational row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& x = (*this)(i, j);
      if (x < 0 || x > 1) {
        throw InputError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + ua::to_string(x) +
                         " is outside [0, 1]");
      }
      row_sum += x;
      col_sum += (*this)(j, i);
    }
    if (row_sum != 1) throw InputError("row " + std::to_string(i + 1) + " sums to " + ua::to_string(row_sum));
    if (col_sum != 1) throw InputError("column " + std::to_string(i + 1) + " sums to " + ua::to_string(col_sum));
  }
}

AssignmentMatrix AssignmentMatrix::uniform(std::size_t n) {
  AssignmentMatrix m;
  m.n_ = n;
  m.entries_.assign(n * n, frac(1, static_cast<long>(n)));
  return m;
}

AssignmentMatrix AssignmentMatrix::from_matching(const Matching& match) {
  AssignmentMatrix m;
  m.n_ = match.size();
  m.entries_.assign(m.n_ * m.n_, Rational(0));
  for (std::size_t i = 0; i < m.n_; ++i) m.entries_[i * m.n_ + match.object_of(i)] = 1;
  return m;
}

std::vector<RationalVector> AssignmentMatrix::rows() const {
  std::vector<RationalVector> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

bool AssignmentMatrix::is_deterministic() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0 || x == 1; });
}

Matching AssignmentMatrix::to_matching() const {
  if (!is_deterministic()) throw InputError("matrix is not a permutation matrix");
  std::vector<std::size_t> obj(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(i, j) == 1) obj[i] = j;
    }
  }
  return Matching(std::move(obj));
}

std::string AssignmentMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    out += std::to_string(i + 1) + ":";
    for (std::size_t j = 0; j < n_; ++j) out += " " + (*this)(i, j).get_str();
    out += "\n";
  }
  return out;
}

std::vector<RationalVector> zero_grid(std::size_t n) { return std::vector<RationalVector>(n, RationalVector(n, 0)); }

}  // namespace ua
