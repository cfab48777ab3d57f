#pragma once

#include <vector>

#include "cdmm/matrix.hpp"

namespace cdmm {

/// Exact LU factorization of a square rational matrix with row pivoting.
/// Construction throws std::invalid_argument when the matrix is singular;
/// solve() is then exact for any right-hand side.
class ExactLinearSolver {
 public:
  explicit ExactLinearSolver(RatMatrix a);
  int dimension() const { return n_; }
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const;

 private:
  int n_;
  RatMatrix lu_;
  std::vector<int> perm_;
};

/// Polynomial with exact rational coefficients, ascending degree order.
using Poly = std::vector<Rational>;

Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_derivative(const Poly& p);

/// Characteristic polynomial det(xI - A) of a square rational matrix,
/// monic, computed exactly (Faddeev-LeVerrier).
Poly char_poly(const RatMatrix& a);

/// Sturm chain of the square-free part of a polynomial; counts distinct
/// real roots in half-open intervals (lo, hi]. Endpoints must not be roots.
class SturmChain {
 public:
  explicit SturmChain(Poly p);
  bool is_root(const Rational& x) const;
  int count_in(const Rational& lo, const Rational& hi) const;

 private:
  int variations_at(const Rational& x) const;
  std::vector<Poly> chain_;
};

/// Extreme eigenvalues of a symmetric positive-definite rational matrix,
/// bracketed by exact bisection on the characteristic polynomial until the
/// brackets are tighter than the requested relative width (power of 1/2).
struct EigenvalueBrackets {
  Rational min_lo, min_hi;  // smallest eigenvalue in (min_lo, min_hi]
  Rational max_lo, max_hi;  // largest eigenvalue in (max_lo, max_hi]
};
EigenvalueBrackets spd_extreme_eigenvalues(const RatMatrix& a, int relative_bits = 50);

}  // namespace cdmm
