#include "cdmm/matrix.hpp"

#include <stdexcept>

namespace cdmm {

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

RatMatrix add(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  RatMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

RatMatrix transpose(const RatMatrix& a) {
  RatMatrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

RatMatrix rat_identity(int n) {
  RatMatrix out(n, n);
  for (int i = 0; i < n; ++i) out.at(i, i) = Rational(1);
  return out;
}

FpMatrix truncate(const RatMatrix& m, std::int32_t gamma, std::int32_t base) {
  std::vector<TruncatedValue> cells;
  cells.reserve(m.size());
  for (const Rational& x : m.cells()) cells.push_back(truncate(x, gamma, base));
  return FpMatrix(m.rows(), m.cols(), std::move(cells));
}

RatMatrix to_rational(const FpMatrix& m) {
  std::vector<Rational> cells;
  cells.reserve(m.size());
  for (const TruncatedValue& t : m.cells()) cells.push_back(t.value());
  return RatMatrix(m.rows(), m.cols(), std::move(cells));
}

}  // namespace cdmm
