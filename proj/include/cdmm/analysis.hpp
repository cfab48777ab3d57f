#pragma once

#include <array>
#include <string>

#include "cdmm/coding.hpp"
#include "cdmm/rational.hpp"

namespace cdmm {

/// Digit-precision levels of the two uploads, the download, and the
/// evaluation-point smallness exponent, all in base-B digits. Magnitude
/// scales are normalized to zero.
struct PrecisionBudget {
  Rational nu_f;    // upload precision of F
  Rational nu_g;    // upload precision of G
  Rational nu_y;    // download precision
  Rational delta;   // |alpha_i| = B^(-delta) * Theta(1)
  int p = 1;

  /// The download cannot carry more digits than the product has:
  /// nu_y <= min(nu_f, nu_g).
  bool download_within_upload() const;
};

/// Recoverable product precision: (min(nu_y, p*delta) - (p-1)*delta)^+.
Rational predicted_precision(const Rational& nu_y, const Rational& delta, int p);

/// Unclamped variant, min(nu_y, p*delta) - (p-1)*delta; negative values
/// predict the error exponent when recovery is impossible.
Rational predicted_precision_raw(const Rational& nu_y, const Rational& delta, int p);

/// Budget form; uses the effective download precision min(nu_y, nu_f, nu_g).
Rational predicted_precision(const PrecisionBudget& budget);

/// Equivalent two-bound form, min(delta, (nu_y - (p-1)*delta)^+).
Rational appendix_form_precision(const Rational& nu_y, const Rational& delta, int p);

/// Upload precision needed for a product at nu digits: p * nu.
Rational required_upload_precision(const Rational& nu, int p);

struct Theorem1Bound {
  Rational alpha_bound;    // rational under-approximation of the admissible max |alpha|
  Rational implied_delta;  // -log_B(alpha_bound); the induced smallness exponent
};

/// Evaluation-point bound for target error epsilon with squared Frobenius
/// norms at most eta_sq, plus the smallness exponent it implies so callers
/// can verify delta >= nu.
Theorem1Bound theorem1_alpha_bound(const Rational& epsilon, const Rational& eta_sq, int p, int base = 10);

/// Per-scheme cost accounting at partition level p and product precision nu.
/// Uploads are digit counts per original matrix entry, downloads digit counts
/// per output entry summed over the downloaded answers; compute terms carry
/// both the symbolic form and digit-op counts under the scalar_mul_cost model
/// for the canonical single-entry task (lambda = kappa = 1, w = p).
struct CostReport {
  SchemeKind kind = SchemeKind::kMatDot;
  long recovery_threshold = 0;
  Rational upload_per_server;
  Rational total_download;
  Rational compute_digit_ops;
  std::string recovery_expr;
  std::string upload_expr;
  std::string download_expr;
  std::string compute_expr;
};

std::array<CostReport, 3> cost_table(int p, const Rational& nu);

/// Aligned text rendering of a cost table.
std::string cost_table_text(const std::array<CostReport, 3>& table);

/// CSV with columns scheme,R,upload,download,compute_digit_ops.
std::string cost_table_csv(const std::array<CostReport, 3>& table);

}  // namespace cdmm
