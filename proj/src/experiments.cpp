#include "cdmm/experiments.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cdmm {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(splitmix64(seed) ^ splitmix64(stream * kGolden + 1)) {}

std::uint64_t CounterRng::next() {
  state_ += kGolden;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint32_t CounterRng::uniform_digit(std::uint32_t base) {
  std::uint64_t limit = ~0ULL - (~0ULL % base);  // rejection threshold
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<std::uint32_t>(x % base);
}

mpz_class CounterRng::uniform_integer(int digits, std::uint32_t base) {
  mpz_class acc(0);
  for (int i = 0; i < digits; ++i) {
    acc *= base;
    acc += uniform_digit(base);
  }
  return acc;
}

void ExperimentConfig::validate() const {
  if (p < 1) throw std::invalid_argument("experiment config: p must be >= 1");
  if (trials < 1) throw std::invalid_argument("experiment config: trials must be >= 1");
  if (base < 2) throw std::invalid_argument("experiment config: base must be >= 2");
  if (rows < 1 || cols < 1 || inner < 1) throw std::invalid_argument("experiment config: bad matrix dims");
  if (scheme != SchemeKind::kRepetition && inner % p != 0)
    throw std::invalid_argument("experiment config: p must divide the inner dimension");
  if (guard_digits < 0 || exact_source_digits < 1)
    throw std::invalid_argument("experiment config: bad source precision");
}

RatMatrix sample_matrix(int rows, int cols, int q, int base, CounterRng& rng) {
  mpz_class denom = int_pow(static_cast<std::uint32_t>(base), static_cast<std::uint64_t>(q));
  RatMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      out.at(i, j) = Rational(rng.uniform_integer(q, static_cast<std::uint32_t>(base)), denom);
  return out;
}

namespace {

SchemeSpec spec_for(const ExperimentConfig& cfg, DigitBudget gamma_u, DigitBudget gamma_y,
                    const std::vector<Rational>& eval_points) {
  SchemeSpec spec;
  spec.kind = cfg.scheme;
  spec.p = cfg.scheme == SchemeKind::kRepetition ? 1 : cfg.p;
  spec.num_servers = cfg.num_servers;
  spec.eval_points = cfg.scheme == SchemeKind::kRepetition ? std::vector<Rational>{} : eval_points;
  spec.upload_digits = gamma_u;
  spec.download_digits = gamma_y;
  spec.base = cfg.base;
  return spec;
}

int source_digits(const ExperimentConfig& cfg, DigitBudget gamma_u) {
  return gamma_u ? *gamma_u + cfg.guard_digits : cfg.exact_source_digits;
}

}  // namespace

std::vector<Rational> run_trial(const ExperimentConfig& cfg, DigitBudget gamma_u, DigitBudget gamma_y,
                                const std::vector<Rational>& eval_points, std::uint64_t trial_index) {
  cfg.validate();
  CounterRng rng(cfg.seed, trial_index);
  int q = source_digits(cfg, gamma_u);
  RatMatrix u = sample_matrix(cfg.rows, cfg.inner, q, cfg.base, rng);
  RatMatrix v = sample_matrix(cfg.inner, cfg.cols, q, cfg.base, rng);

  ClusterRun run = run_cluster(u, v, spec_for(cfg, gamma_u, gamma_y, eval_points), cfg.stragglers);
  DecodeResult decoded = decode_run(run);
  RatMatrix truth = multiply(u, v);

  std::vector<Rational> errors;
  errors.reserve(truth.size());
  for (int i = 0; i < truth.rows(); ++i)
    for (int j = 0; j < truth.cols(); ++j) errors.push_back((decoded.c_hat.at(i, j) - truth.at(i, j)).abs());
  return errors;
}

Rational mean_absolute_error(const ExperimentConfig& cfg, DigitBudget gamma_u, DigitBudget gamma_y,
                             const std::vector<Rational>& eval_points) {
  Rational total(0);
  long count = 0;
  for (long t = 0; t < cfg.trials; ++t) {
    for (const Rational& e : run_trial(cfg, gamma_u, gamma_y, eval_points, static_cast<std::uint64_t>(t))) {
      total += e;
      ++count;
    }
  }
  return total / Rational(count);
}

namespace {

std::string format_mae(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", x.to_double());
  return buf;
}

}  // namespace

std::string SweepResult::csv() const {
  std::ostringstream os;
  os << axis_name << ",mae";
  if (repetition_mae) os << ",repetition_mae";
  os << "\n";
  for (std::size_t i = 0; i < axis_labels.size(); ++i) {
    os << axis_labels[i] << "," << format_mae(mae[i]);
    if (repetition_mae) os << "," << format_mae(*repetition_mae);
    os << "\n";
  }
  return os.str();
}

SweepResult sweep_gamma(const ExperimentConfig& cfg, int gamma_lo, int gamma_hi, const Rational& alpha_max) {
  if (gamma_lo < 0 || gamma_hi < gamma_lo) throw std::invalid_argument("sweep_gamma: bad gamma range");
  cfg.validate();
  std::vector<Rational> points = equispaced_points(alpha_max, cfg.num_servers);
  SweepResult out;
  out.axis_name = "gamma";
  for (int gamma = gamma_lo; gamma <= gamma_hi; ++gamma) {
    out.axis_labels.push_back(std::to_string(gamma));
    out.mae.push_back(mean_absolute_error(cfg, gamma, gamma, points));
    out.samples.push_back(cfg.trials * static_cast<long>(cfg.rows) * cfg.cols);
  }
  return out;
}

SweepResult sweep_alpha(const ExperimentConfig& cfg, int logb_lo, int logb_hi, int gamma,
                        std::optional<int> baseline_nu) {
  if (logb_hi < logb_lo) throw std::invalid_argument("sweep_alpha: bad exponent range");
  if (gamma < 0) throw std::invalid_argument("sweep_alpha: gamma must be >= 0");
  cfg.validate();

  SweepResult out;
  out.axis_name = cfg.base == 10 ? "log10_alpha_max" : "logB_alpha_max";
  for (int k = logb_lo; k <= logb_hi; ++k) {
    Rational alpha_max = k >= 0 ? Rational(int_pow(static_cast<std::uint32_t>(cfg.base), static_cast<std::uint64_t>(k)))
                                : Rational(mpz_class(1), int_pow(static_cast<std::uint32_t>(cfg.base),
                                                                 static_cast<std::uint64_t>(-k)));
    std::vector<Rational> points = equispaced_points(alpha_max, cfg.num_servers);
    out.axis_labels.push_back(std::to_string(k));
    out.mae.push_back(mean_absolute_error(cfg, gamma, gamma, points));
    out.samples.push_back(cfg.trials * static_cast<long>(cfg.rows) * cfg.cols);
  }

  // Matched-upload repetition baseline: nu digits on p times the entries.
  int nu = baseline_nu ? *baseline_nu : gamma / cfg.p;
  ExperimentConfig rep = cfg;
  rep.scheme = SchemeKind::kRepetition;
  out.repetition_mae = mean_absolute_error(rep, nu, nu, {});
  return out;
}

}  // namespace cdmm
