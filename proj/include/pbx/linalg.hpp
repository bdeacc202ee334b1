#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pbx/rational.hpp"

// Exact linear algebra over small integer matrices (indicator vectors of
// generator sets). Elimination is fraction-free (Bareiss), so every
// intermediate value is a minor of the input; an overflow of the 64-bit
// range raises std::overflow_error rather than wrapping.
namespace pbx::linalg {

using IntVector = std::vector<std::int64_t>;

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// Matrix whose rows are the given vectors (all of equal length).
  static IntMatrix from_rows(std::span<const IntVector> rows);
  /// Matrix whose columns are the given vectors.
  static IntMatrix from_columns(std::span<const IntVector> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

std::size_t rank(IntMatrix m);

std::int64_t determinant(IntMatrix m);

/// Nonzero integer vector spanning the kernel of an (n-1) x n matrix of rank
/// n-1 (signed maximal minors). Returns nullopt when the rank is deficient.
std::optional<IntVector> kernel_vector(const IntMatrix& m);

/// Unique solution x of A x = b for square nonsingular A; nullopt if singular.
std::optional<std::vector<Rational>> solve(IntMatrix a, std::span<const Rational> b);

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

}  // namespace pbx::linalg
