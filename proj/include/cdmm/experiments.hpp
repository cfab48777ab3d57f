#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdmm/cluster.hpp"

namespace cdmm {

/// Counter-based random stream over (seed, stream, counter); bit-identical
/// across platforms and independent of execution order, so parallel and
/// serial trial schedules agree.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();

  /// Unbiased uniform digit in [0, base) via rejection sampling.
  std::uint32_t uniform_digit(std::uint32_t base);

  /// Uniform integer in [0, base^digits), most significant digit first.
  mpz_class uniform_integer(int digits, std::uint32_t base);

 private:
  std::uint64_t state_;
};

struct ExperimentConfig {
  SchemeKind scheme = SchemeKind::kAmd;
  int p = 3;
  int num_servers = 3;
  int base = 10;
  long trials = 10000;
  std::uint64_t seed = 0;
  int rows = 1;   // lambda
  int inner = 3;  // w (must be divisible by p)
  int cols = 1;   // kappa
  // Source entries are uniform k / base^q with q = gamma_u + guard_digits,
  // or q = exact_source_digits when uploads are unbounded.
  int guard_digits = 8;
  int exact_source_digits = 20;
  std::set<int> stragglers;

  void validate() const;
};

/// Uniform random matrix with entries k / base^q, k uniform on [0, base^q).
RatMatrix sample_matrix(int rows, int cols, int q, int base, CounterRng& rng);

/// One end-to-end trial: sample U and V, encode, run the cluster, decode,
/// and return |c_hat - (UV)| for every output entry as exact rationals.
std::vector<Rational> run_trial(const ExperimentConfig& cfg, DigitBudget gamma_u, DigitBudget gamma_y,
                                const std::vector<Rational>& eval_points, std::uint64_t trial_index);

struct SweepResult {
  std::string axis_name;
  std::vector<std::string> axis_labels;
  std::vector<Rational> mae;            // exact mean absolute error per axis value
  std::vector<long> samples;            // error samples behind each mean
  std::optional<Rational> repetition_mae;  // constant baseline when present

  /// Header row plus one row per axis value; the repetition baseline, when
  /// present, is a trailing constant column.
  std::string csv() const;
};

/// MAE versus the shared upload/download budget gamma_u = gamma_y = gamma,
/// evaluation points (i/N) * alpha_max.
SweepResult sweep_gamma(const ExperimentConfig& cfg, int gamma_lo, int gamma_hi, const Rational& alpha_max);

/// MAE versus alpha_max = base^k for k in [logb_lo, logb_hi], at fixed gamma;
/// includes the repetition baseline at nu = baseline_nu (default gamma / p)
/// with matched total upload.
SweepResult sweep_alpha(const ExperimentConfig& cfg, int logb_lo, int logb_hi, int gamma,
                        std::optional<int> baseline_nu = std::nullopt);

/// Exact mean of absolute errors accumulated over repeated trials.
Rational mean_absolute_error(const ExperimentConfig& cfg, DigitBudget gamma_u, DigitBudget gamma_y,
                             const std::vector<Rational>& eval_points);

}  // namespace cdmm
