#pragma once

#include <stdexcept>
#include <vector>

#include "cdmm/coding.hpp"
#include "cdmm/matrix.hpp"

namespace cdmm {

/// Raised when fewer answers are available than the scheme's recovery
/// threshold requires.
class ThresholdError : public std::runtime_error {
 public:
  ThresholdError(int required, int available);
  int required() const { return required_; }
  int available() const { return available_; }

 private:
  int required_;
  int available_;
};

/// One server's downloaded product share.
struct ServerAnswer {
  int server_id = 0;
  Rational alpha;
  ShareMatrix y;
  bool available = true;
};

struct DecodeResult {
  RatMatrix c_hat;
  SchemeKind kind = SchemeKind::kMatDot;
  std::vector<int> servers_used;

  /// Entries rendered as fixed-point decimal strings at `digits` fractional
  /// digits (truncated), for logging and CSV output.
  std::vector<std::string> rendered(int digits, int base = 10) const;
};

/// Exact polynomial interpolation from any 2p-1 answers: solves the
/// (2p-1)x(2p-1) Vandermonde system in exact rational arithmetic and returns
/// the coefficient of alpha^(p-1). With untruncated answers this is U*V exactly.
DecodeResult decode_exact_matdot(const std::vector<ServerAnswer>& answers, int p);

/// Minimum-Euclidean-norm solve from p answers through the wide p x (2p-1)
/// Vandermonde map M: x = M^T (M M^T)^(-1) y per output entry, exactly;
/// returns coefficient index p-1. Never declares failure on large norms.
/// Uses the available answers with the lowest server ids by default.
DecodeResult decode_min_norm(const std::vector<ServerAnswer>& answers, int p);

/// Same, restricted to an explicit subset of server ids (all must be available).
DecodeResult decode_min_norm(const std::vector<ServerAnswer>& answers, int p, const std::vector<int>& use_servers);

/// First available answer, verbatim.
DecodeResult decode_repetition(const std::vector<ServerAnswer>& answers);

/// log_base of the 2-norm condition number of the p x p Vandermonde matrix on
/// the given points (rows [1, a_i, ..., a_i^(p-1)]). Extreme singular values
/// are bracketed by exact rational bisection on the characteristic polynomial
/// of A^T A, so no precision is lost regardless of how tiny the points are.
double vandermonde_condition_log(const std::vector<Rational>& alphas, int base = 10);

}  // namespace cdmm
