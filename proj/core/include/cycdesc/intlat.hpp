#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace cycdesc {

using IntVector = std::vector<mpz_class>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// From rows; all rows must have the same length.
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  /// Matrix whose columns are the given vectors (each of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  IntVector column(std::size_t c) const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix& other) const;

  /// Bareiss determinant of a square matrix.
  mpz_class determinant() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... and
/// nonnegative (zeros last).
struct SNFResult {
  IntMatrix U, D, V;
  /// min(rows, cols) diagonal entries of D.
  IntVector diagonal() const;
  std::size_t rank() const;
};

/// Pivots on the smallest nonzero absolute value, ties by position. The
/// result is checked (product, unimodularity, divisibility) before return.
SNFResult snf(const IntMatrix& a);

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Columns spanning the integer kernel of A (a basis of the kernel lattice).
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/// Invariant factors of Z^rank / (column span of gens): one entry per
/// ambient dimension, ascending with zeros (free summands) last.
IntVector quotient_invariants(std::size_t ambient_rank, const IntMatrix& gens);

/// True when Z^rank / span(gens) is torsion free.
bool is_saturated(std::size_t ambient_rank, const IntMatrix& gens);

}  // namespace cycdesc
