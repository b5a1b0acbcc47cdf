#pragma once

#include "detvar/matrix.hpp"
#include "detvar/polynomial.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace detvar {

using SymbolicMatrix = Matrix<Polynomial>;

/// d × n matrix whose (i, j) entry is variable i·n + j (x_{i+1}_{j+1} in Ring::matrix).
inline SymbolicMatrix generic_matrix(std::size_t rows, std::size_t cols) {
  SymbolicMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Polynomial::variable(i * cols + j);
  return m;
}

namespace detail {

class MinorExpander {
 public:
  MinorExpander(const SymbolicMatrix& m, std::span<const std::size_t> rows) : m_(m), rows_(rows) {}

  // Determinant of rows_[depth..] against the columns in `mask`, expanding
  // along the first remaining row.
  Polynomial expand(std::size_t depth, std::uint64_t mask) {
    if (depth == rows_.size()) return Polynomial(1);
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    Polynomial acc;
    int sign = 1;
    for (std::size_t c = 0; c < 64; ++c) {
      if (!(mask >> c & 1)) continue;
      const Polynomial& entry = m_(rows_[depth], c);
      if (!entry.is_zero()) {
        Polynomial sub = expand(depth + 1, mask & ~(std::uint64_t{1} << c));
        if (!sub.is_zero()) {
          Polynomial term = entry * sub;
          acc = sign > 0 ? acc + term : acc - term;
        }
      }
      sign = -sign;
    }
    memo_.emplace(mask, acc);
    return acc;
  }

 private:
  const SymbolicMatrix& m_;
  std::span<const std::size_t> rows_;
  std::unordered_map<std::uint64_t, Polynomial> memo_;
};

inline void check_index_set(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= bound) throw std::invalid_argument(std::string("minor: ") + what + " index out of range");
    if (k && idx[k] <= idx[k - 1]) throw std::invalid_argument(std::string("minor: ") + what + " not strictly increasing");
  }
}

}  // namespace detail

/// det of the submatrix on (rows, cols); both index sets strictly increasing.
/// Sign follows the Leibniz formula with rows and columns taken in the given order.
inline Polynomial minor(const SymbolicMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  if (rows.size() != cols.size() || rows.empty()) throw std::invalid_argument("minor: |I| must equal |J| and be >= 1");
  detail::check_index_set(rows, m.rows(), "row");
  detail::check_index_set(cols, m.cols(), "column");
  if (m.cols() > 64) {
    // Relabel the chosen columns so the memo mask fits in 64 bits.
    std::vector<std::size_t> all(rows.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    const SymbolicMatrix sub = m.select_columns(cols);
    return minor(sub, rows, all);
  }
  std::uint64_t mask = 0;
  for (auto c : cols) mask |= std::uint64_t{1} << c;
  detail::MinorExpander ex(m, rows);
  return ex.expand(0, mask);
}

/// Lexicographic enumeration of the k-subsets of {0, ..., n-1}.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    f(std::span<const std::size_t>(s));
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for_each_subset(n, k, [&](std::span<const std::size_t> s) { out.emplace_back(s.begin(), s.end()); });
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All k-minors of m, row subsets outer, column subsets inner, each lexicographic.
inline std::vector<Polynomial> all_minors(const SymbolicMatrix& m, std::size_t k) {
  std::vector<Polynomial> out;
  if (k == 0) return out;
  for_each_subset(m.rows(), k, [&](std::span<const std::size_t> r) {
    for_each_subset(m.cols(), k, [&](std::span<const std::size_t> c) { out.push_back(minor(m, r, c)); });
  });
  return out;
}

}  // namespace detvar
