#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freemv/rational.hpp"

namespace freemv {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix. Sizes are tiny (n + 1 <= 5), so
/// everything is plain Gaussian elimination over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Rational>& data() const { return data_; }
  Vector row(std::size_t r) const;

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  bool operator==(const Matrix& other) const = default;

  Rational determinant() const;
  std::optional<Matrix> inverse() const;
  bool is_integral() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank of the row set.
std::size_t rank(std::vector<Vector> rows);

/// Unique solution of A x = b for square A, or nullopt if A is singular.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Rational dot(const Vector& a, const Vector& b);

}  // namespace freemv
