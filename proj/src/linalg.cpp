#include "cdmm/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cdmm {

ExactLinearSolver::ExactLinearSolver(RatMatrix a) : n_(a.rows()), lu_(std::move(a)), perm_(static_cast<std::size_t>(n_)) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("ExactLinearSolver: matrix must be square");
  std::iota(perm_.begin(), perm_.end(), 0);
  for (int k = 0; k < n_; ++k) {
    // Largest-magnitude pivot; any nonzero pivot is exact, the choice only
    // bounds operand growth.
    int pivot = -1;
    Rational best(0);
    for (int i = k; i < n_; ++i) {
      Rational mag = lu_.at(perm_[static_cast<std::size_t>(i)], k).abs();
      if (pivot < 0 || mag > best) {
        pivot = i;
        best = mag;
      }
    }
    if (best.is_zero()) throw std::invalid_argument("ExactLinearSolver: singular matrix");
    std::swap(perm_[static_cast<std::size_t>(k)], perm_[static_cast<std::size_t>(pivot)]);
    int pk = perm_[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < n_; ++i) {
      int pi = perm_[static_cast<std::size_t>(i)];
      Rational factor = lu_.at(pi, k) / lu_.at(pk, k);
      lu_.at(pi, k) = factor;
      for (int j = k + 1; j < n_; ++j) lu_.at(pi, j) -= factor * lu_.at(pk, j);
    }
  }
}

std::vector<Rational> ExactLinearSolver::solve(const std::vector<Rational>& rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("ExactLinearSolver: rhs size mismatch");
  std::vector<Rational> y(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Rational acc = rhs[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
    for (int j = 0; j < i; ++j) acc -= lu_.at(perm_[static_cast<std::size_t>(i)], j) * y[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = std::move(acc);
  }
  std::vector<Rational> x(static_cast<std::size_t>(n_));
  for (int i = n_ - 1; i >= 0; --i) {
    Rational acc = y[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n_; ++j) acc -= lu_.at(perm_[static_cast<std::size_t>(i)], j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / lu_.at(perm_[static_cast<std::size_t>(i)], i);
  }
  return x;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(Rational(static_cast<long>(k)) * p[k]);
  if (d.empty()) d.push_back(Rational(0));
  return d;
}

namespace {

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  if (p.empty()) p.push_back(Rational(0));  // canonical zero polynomial
}

bool poly_is_zero(const Poly& p) { return p.size() == 1 && p[0].is_zero(); }

// Remainder of a by b (degrees exact, b nonzero).
Poly poly_rem(Poly a, const Poly& b) {
  poly_trim(a);
  while (!poly_is_zero(a) && a.size() >= b.size()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

Poly poly_monic(Poly p) {
  poly_trim(p);
  if (poly_is_zero(p)) return p;
  Rational lead = p.back();
  for (Rational& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  a = poly_monic(std::move(a));
  b = poly_monic(std::move(b));
  while (!poly_is_zero(b)) {
    Poly r = poly_monic(poly_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Exact quotient, valid when b divides a.
Poly poly_quotient(Poly a, const Poly& b) {
  poly_trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (!poly_is_zero(a) && a.size() >= b.size()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.pop_back();
    poly_trim(a);
  }
  return q;
}

}  // namespace

Poly char_poly(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: matrix must be square");
  int n = a.rows();
  Poly coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
  coeffs[static_cast<std::size_t>(n)] = Rational(1);
  RatMatrix m = rat_identity(n);
  Rational c(1);
  for (int k = 1; k <= n; ++k) {
    // M_k = A * (M_{k-1} + c_{k-1} I); c_k = -tr(M_k)/k
    RatMatrix shifted = m;
    if (k > 1)
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c;
    m = multiply(a, shifted);
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += m.at(i, i);
    c = -tr / Rational(static_cast<long>(k));
    coeffs[static_cast<std::size_t>(n - k)] = c;
  }
  return coeffs;
}

SturmChain::SturmChain(Poly p) {
  p = poly_monic(std::move(p));
  if (poly_is_zero(p)) throw std::invalid_argument("SturmChain: zero polynomial");
  // Square-free part keeps the chain valid with repeated eigenvalues.
  Poly g = poly_gcd(p, poly_derivative(p));
  if (g.size() > 1) p = poly_monic(poly_quotient(std::move(p), g));
  chain_.push_back(p);
  if (p.size() > 1) {
    chain_.push_back(poly_derivative(p));
    while (true) {
      Poly r = poly_rem(chain_[chain_.size() - 2], chain_.back());
      if (poly_is_zero(r)) break;
      for (Rational& coeff : r) coeff = -coeff;
      chain_.push_back(std::move(r));
      if (chain_.back().size() == 1) break;
    }
  }
}

bool SturmChain::is_root(const Rational& x) const { return poly_eval(chain_.front(), x).is_zero(); }

int SturmChain::variations_at(const Rational& x) const {
  int count = 0, prev = 0;
  for (const Poly& p : chain_) {
    int s = poly_eval(p, x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int SturmChain::count_in(const Rational& lo, const Rational& hi) const {
  if (is_root(lo) || is_root(hi)) throw std::invalid_argument("SturmChain: interval endpoint is a root");
  return variations_at(lo) - variations_at(hi);
}

namespace {

// Bisection midpoint that avoids landing exactly on a root.
Rational safe_midpoint(const SturmChain& chain, const Rational& lo, const Rational& hi) {
  const long num[] = {1, 1, 2, 3};
  const long den[] = {2, 3, 5, 7};
  for (int k = 0; k < 4; ++k) {
    Rational mid = lo + (hi - lo) * Rational(num[k], den[k]);
    if (!chain.is_root(mid)) return mid;
  }
  throw std::logic_error("safe_midpoint: could not avoid roots");
}

}  // namespace

EigenvalueBrackets spd_extreme_eigenvalues(const RatMatrix& a, int relative_bits) {
  if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("spd_extreme_eigenvalues: bad shape");
  int n = a.rows();
  Poly chi = char_poly(a);
  if (chi[0].is_zero()) throw std::invalid_argument("spd_extreme_eigenvalues: singular matrix");
  SturmChain chain(chi);

  Rational trace(0);
  for (int i = 0; i < n; ++i) trace += a.at(i, i);
  // All eigenvalues of an SPD matrix lie in (0, trace]; widen the top end
  // slightly so `trace` itself is never an endpoint root.
  Rational top = trace * Rational(2);
  while (chain.is_root(top)) top *= Rational(2);
  Rational zero(0);
  if (chain.is_root(zero)) throw std::invalid_argument("spd_extreme_eigenvalues: zero eigenvalue");

  const auto tight = [&](const Rational& lo, const Rational& hi) {
    if (lo.sign() <= 0) return false;
    // (hi - lo)/lo <= 2^-relative_bits
    return (hi - lo) * Rational(mpz_class(1) << relative_bits, mpz_class(1)) <= lo;
  };

  EigenvalueBrackets out;
  // Smallest eigenvalue: maintain lambda_min in (lo, hi].
  {
    Rational lo = zero, hi = top;
    for (int iter = 0; iter < 100000 && !tight(lo, hi); ++iter) {
      Rational mid = safe_midpoint(chain, lo, hi);
      if (chain.count_in(lo, mid) >= 1)
        hi = mid;
      else
        lo = mid;
    }
    out.min_lo = lo;
    out.min_hi = hi;
  }
  // Largest eigenvalue.
  {
    Rational lo = zero, hi = top;
    for (int iter = 0; iter < 100000 && !tight(lo, hi); ++iter) {
      Rational mid = safe_midpoint(chain, lo, hi);
      if (chain.count_in(mid, hi) >= 1)
        lo = mid;
      else
        hi = mid;
    }
    out.max_lo = lo;
    out.max_hi = hi;
  }
  return out;
}

}  // namespace cdmm
