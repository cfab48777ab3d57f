#include "cdmm/decoding.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cdmm/fixedpoint.hpp"
#include "cdmm/linalg.hpp"

namespace cdmm {

ThresholdError::ThresholdError(int required, int available)
    : std::runtime_error("recovery threshold violation: need " + std::to_string(required) +
                         " answers, have " + std::to_string(available)),
      required_(required),
      available_(available) {}

std::vector<std::string> DecodeResult::rendered(int digits, int base) const {
  std::vector<std::string> out;
  out.reserve(c_hat.size());
  for (const Rational& x : c_hat.cells()) out.push_back(truncate(x, digits, base).to_string());
  return out;
}

namespace {

std::vector<const ServerAnswer*> pick_available(const std::vector<ServerAnswer>& answers, int needed) {
  std::vector<const ServerAnswer*> picked;
  for (const ServerAnswer& a : answers)
    if (a.available) picked.push_back(&a);
  std::sort(picked.begin(), picked.end(),
            [](const ServerAnswer* a, const ServerAnswer* b) { return a->server_id < b->server_id; });
  if (static_cast<int>(picked.size()) < needed) throw ThresholdError(needed, static_cast<int>(picked.size()));
  picked.resize(static_cast<std::size_t>(needed));
  return picked;
}

void require_distinct_points(const std::vector<const ServerAnswer*>& picked) {
  std::set<Rational> seen;
  for (const ServerAnswer* a : picked)
    if (!seen.insert(a->alpha).second)
      throw std::invalid_argument("decode: repeated evaluation point among selected answers");
}

// Row [1, alpha, ..., alpha^(cols-1)].
std::vector<Rational> vandermonde_row(const Rational& alpha, int cols) {
  std::vector<Rational> row(static_cast<std::size_t>(cols));
  row[0] = Rational(1);
  for (int k = 1; k < cols; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k) - 1] * alpha;
  return row;
}

}  // namespace

DecodeResult decode_exact_matdot(const std::vector<ServerAnswer>& answers, int p) {
  if (p < 1) throw std::invalid_argument("decode_exact_matdot: p must be >= 1");
  int r = 2 * p - 1;
  auto picked = pick_available(answers, r);
  require_distinct_points(picked);

  RatMatrix system(r, r);
  for (int i = 0; i < r; ++i) {
    auto row = vandermonde_row(picked[static_cast<std::size_t>(i)]->alpha, r);
    for (int j = 0; j < r; ++j) system.at(i, j) = row[static_cast<std::size_t>(j)];
  }
  ExactLinearSolver solver(std::move(system));

  std::vector<RatMatrix> ys;
  ys.reserve(picked.size());
  for (const ServerAnswer* a : picked) ys.push_back(a->y.values());
  int rows = ys.front().rows(), cols = ys.front().cols();

  DecodeResult out;
  out.kind = SchemeKind::kMatDot;
  out.c_hat = RatMatrix(rows, cols);
  std::vector<Rational> rhs(static_cast<std::size_t>(r));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < r; ++k) rhs[static_cast<std::size_t>(k)] = ys[static_cast<std::size_t>(k)].at(i, j);
      out.c_hat.at(i, j) = solver.solve(rhs)[static_cast<std::size_t>(p) - 1];
    }
  for (const ServerAnswer* a : picked) out.servers_used.push_back(a->server_id);
  return out;
}

namespace {

DecodeResult min_norm_from(const std::vector<const ServerAnswer*>& picked, int p) {
  require_distinct_points(picked);
  int width = 2 * p - 1;

  RatMatrix m(p, width);
  for (int i = 0; i < p; ++i) {
    auto row = vandermonde_row(picked[static_cast<std::size_t>(i)]->alpha, width);
    for (int j = 0; j < width; ++j) m.at(i, j) = row[static_cast<std::size_t>(j)];
  }
  RatMatrix mt = transpose(m);
  RatMatrix gram = multiply(m, mt);  // p x p, nonsingular for distinct points
  ExactLinearSolver solver(std::move(gram));

  std::vector<RatMatrix> ys;
  ys.reserve(picked.size());
  for (const ServerAnswer* a : picked) ys.push_back(a->y.values());
  int rows = ys.front().rows(), cols = ys.front().cols();

  DecodeResult out;
  out.kind = SchemeKind::kAmd;
  out.c_hat = RatMatrix(rows, cols);
  std::vector<Rational> rhs(static_cast<std::size_t>(p));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < p; ++k) rhs[static_cast<std::size_t>(k)] = ys[static_cast<std::size_t>(k)].at(i, j);
      std::vector<Rational> w = solver.solve(rhs);
      // x_hat = M^T w; only coefficient p-1 is wanted.
      Rational coeff(0);
      for (int k = 0; k < p; ++k) coeff += mt.at(p - 1, k) * w[static_cast<std::size_t>(k)];
      out.c_hat.at(i, j) = std::move(coeff);
    }
  for (const ServerAnswer* a : picked) out.servers_used.push_back(a->server_id);
  return out;
}

}  // namespace

DecodeResult decode_min_norm(const std::vector<ServerAnswer>& answers, int p) {
  if (p < 1) throw std::invalid_argument("decode_min_norm: p must be >= 1");
  return min_norm_from(pick_available(answers, p), p);
}

DecodeResult decode_min_norm(const std::vector<ServerAnswer>& answers, int p, const std::vector<int>& use_servers) {
  if (p < 1) throw std::invalid_argument("decode_min_norm: p must be >= 1");
  if (static_cast<int>(use_servers.size()) != p)
    throw std::invalid_argument("decode_min_norm: need exactly p server ids");
  std::vector<const ServerAnswer*> picked;
  for (int id : use_servers) {
    auto it = std::find_if(answers.begin(), answers.end(),
                           [&](const ServerAnswer& a) { return a.server_id == id && a.available; });
    if (it == answers.end())
      throw std::invalid_argument("decode_min_norm: server " + std::to_string(id) + " has no available answer");
    picked.push_back(&*it);
  }
  return min_norm_from(picked, p);
}

DecodeResult decode_repetition(const std::vector<ServerAnswer>& answers) {
  auto picked = pick_available(answers, 1);
  DecodeResult out;
  out.kind = SchemeKind::kRepetition;
  out.c_hat = picked.front()->y.values();
  out.servers_used.push_back(picked.front()->server_id);
  return out;
}

double vandermonde_condition_log(const std::vector<Rational>& alphas, int base) {
  int p = static_cast<int>(alphas.size());
  if (p < 1) throw std::invalid_argument("vandermonde_condition_log: empty point list");
  std::set<Rational> distinct(alphas.begin(), alphas.end());
  if (static_cast<int>(distinct.size()) != p)
    throw std::invalid_argument("vandermonde_condition_log: repeated evaluation point");
  if (p == 1) return 0.0;

  RatMatrix a(p, p);
  for (int i = 0; i < p; ++i) {
    auto row = vandermonde_row(alphas[static_cast<std::size_t>(i)], p);
    for (int j = 0; j < p; ++j) a.at(i, j) = row[static_cast<std::size_t>(j)];
  }
  RatMatrix gram = multiply(transpose(a), a);
  EigenvalueBrackets ev = spd_extreme_eigenvalues(gram, 50);
  // kappa^2 = lambda_max / lambda_min; report log_B(kappa).
  double log_ratio = log_rational(ev.max_hi, base) - log_rational(ev.min_hi, base);
  return 0.5 * log_ratio;
}

}  // namespace cdmm
