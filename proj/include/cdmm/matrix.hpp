#pragma once

#include <cassert>
#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "cdmm/fixedpoint.hpp"
#include "cdmm/rational.hpp"

namespace cdmm {

/// Minimal dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
    requires std::default_initializable<T>
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    assert(rows >= 0 && cols >= 0);
  }
  Matrix(int rows, int cols, std::vector<T> cells) : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    assert(cells_.size() == static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return cells_.size(); }

  T& at(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
  }
  const T& at(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
  }

  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

using RatMatrix = Matrix<Rational>;
using FpMatrix = Matrix<TruncatedValue>;

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix add(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);
RatMatrix rat_identity(int n);

/// Entrywise truncation of a rational matrix.
FpMatrix truncate(const RatMatrix& m, std::int32_t gamma, std::int32_t base = 10);

/// Exact rational view of a fixed-point matrix.
RatMatrix to_rational(const FpMatrix& m);

}  // namespace cdmm
