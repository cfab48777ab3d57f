#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cdmm/matrix.hpp"

namespace cdmm {

enum class SchemeKind { kMatDot, kAmd, kRepetition };

std::string_view to_string(SchemeKind kind);
SchemeKind scheme_from_string(std::string_view name);

/// Minimum number of server answers the scheme's decoder needs.
int recovery_threshold(SchemeKind kind, int p);

/// Digit budget for an upload or download; nullopt means no truncation
/// (exact values flow through, the "unbounded precision" sentinel).
using DigitBudget = std::optional<std::int32_t>;

/// U split column-wise and V row-wise into p blocks along the shared
/// inner dimension, so that sum_i u_blocks[i] * v_blocks[i] == U*V.
struct BlockPartition {
  std::vector<RatMatrix> u_blocks;  // each lambda x (w/p)
  std::vector<RatMatrix> v_blocks;  // each (w/p) x kappa
  int p = 1;
};

BlockPartition partition(const RatMatrix& u, const RatMatrix& v, int p);

/// One of the three schemes plus everything needed to run it.
struct SchemeSpec {
  SchemeKind kind = SchemeKind::kAmd;
  int p = 1;
  int num_servers = 1;               // N
  std::vector<Rational> eval_points; // N pairwise-distinct points; empty for repetition
  DigitBudget upload_digits;         // gamma_u
  DigitBudget download_digits;       // gamma_y
  int base = 10;

  void validate() const;  // throws std::invalid_argument on a broken spec
  int threshold() const { return recovery_threshold(kind, p); }
};

/// Matrix payload on the wire: fixed point when a digit budget was applied,
/// exact rationals otherwise.
class ShareMatrix {
 public:
  ShareMatrix() : payload_(RatMatrix()) {}
  explicit ShareMatrix(FpMatrix fixed) : payload_(std::move(fixed)) {}
  explicit ShareMatrix(RatMatrix exact) : payload_(std::move(exact)) {}

  bool is_fixed() const { return std::holds_alternative<FpMatrix>(payload_); }
  const FpMatrix& fixed() const;
  const RatMatrix& exact() const;

  int rows() const;
  int cols() const;
  std::size_t size() const { return static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()); }

  /// Exact rational view of the entries, either mode.
  RatMatrix values() const;

  /// Digit budget of the fixed representation, nullopt for exact payloads.
  DigitBudget scale() const;

 private:
  std::variant<FpMatrix, RatMatrix> payload_;
};

/// Coded shares bound for one server.
struct EncodedTask {
  int server_id = 0;  // 1-based
  Rational alpha;     // evaluation point; 0 for repetition
  ShareMatrix f;
  ShareMatrix g;
};

/// Polynomial shares evaluated at alpha:
///   F = sum_j U_j alpha^(j-1),  G = sum_j V_(p+1-j) alpha^(j-1),
/// truncated entrywise to gamma_u digits when a budget is given.
std::pair<ShareMatrix, ShareMatrix> encode_matdot(const BlockPartition& bp, const Rational& alpha,
                                                  DigitBudget gamma_u, int base = 10);

/// Full-matrix shares, identical for every server.
std::pair<ShareMatrix, ShareMatrix> encode_repetition(const RatMatrix& u, const RatMatrix& v,
                                                      DigitBudget gamma_u, int base = 10);

/// alpha_i = (i/n) * alpha_max for i in 1..n.
std::vector<Rational> equispaced_points(const Rational& alpha_max, int n);

/// Largest admissible evaluation-point magnitude for approximate decoding at
/// error epsilon with Frobenius norms bounded by sqrt(eta_sq):
///   epsilon / (6 eta^2 sqrt(2p-1) (p^2-p)),
/// computed as a rational under-approximation (the sqrt is replaced by a
/// rational upper bound) so the inequality holds strictly.
Rational amd_alpha_bound(const Rational& epsilon, const Rational& eta_sq, int p);

/// N distinct equispaced points with max|alpha_i| = amd_alpha_bound(...).
/// Requires p >= 2 and 0 < epsilon <= min(2, 3 eta^2 sqrt(2p-1)).
std::vector<Rational> select_amd_points(const Rational& epsilon, const Rational& eta_sq, int p, int n);

/// delta such that max_i |alpha_i| = base^(-delta). Exact when the maximum is
/// an integer power of the base, otherwise a fixed-precision log estimate
/// (rounded at 1e-9). Requires nonempty points with 0 < max|alpha_i| <= 1.
Rational effective_delta(const std::vector<Rational>& eval_points, int base = 10);

}  // namespace cdmm
