#include "cdmm/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cdmm/cluster.hpp"

namespace cdmm {

namespace {

Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

Rational clamp_nonnegative(const Rational& x) { return x.sign() < 0 ? Rational(0) : x; }

void check_budget_args(const Rational& nu_y, const Rational& delta, int p) {
  if (p < 1) throw std::invalid_argument("precision bound: p must be >= 1");
  if (nu_y.sign() < 0 || delta.sign() < 0)
    throw std::invalid_argument("precision bound: precisions must be nonnegative");
}

}  // namespace

bool PrecisionBudget::download_within_upload() const { return nu_y <= rat_min(nu_f, nu_g); }

Rational predicted_precision_raw(const Rational& nu_y, const Rational& delta, int p) {
  check_budget_args(nu_y, delta, p);
  return rat_min(nu_y, Rational(p) * delta) - Rational(p - 1) * delta;
}

Rational predicted_precision(const Rational& nu_y, const Rational& delta, int p) {
  return clamp_nonnegative(predicted_precision_raw(nu_y, delta, p));
}

Rational predicted_precision(const PrecisionBudget& budget) {
  Rational effective = rat_min(budget.nu_y, rat_min(budget.nu_f, budget.nu_g));
  return predicted_precision(effective, budget.delta, budget.p);
}

Rational appendix_form_precision(const Rational& nu_y, const Rational& delta, int p) {
  check_budget_args(nu_y, delta, p);
  return rat_min(delta, clamp_nonnegative(nu_y - Rational(p - 1) * delta));
}

Rational required_upload_precision(const Rational& nu, int p) {
  if (p < 1) throw std::invalid_argument("required_upload_precision: p must be >= 1");
  if (nu.sign() < 0) throw std::invalid_argument("required_upload_precision: nu must be >= 0");
  return Rational(p) * nu;
}

Theorem1Bound theorem1_alpha_bound(const Rational& epsilon, const Rational& eta_sq, int p, int base) {
  Theorem1Bound out;
  out.alpha_bound = amd_alpha_bound(epsilon, eta_sq, p);
  out.implied_delta = effective_delta({out.alpha_bound}, base);
  return out;
}

namespace {

// Digit-op count for one scalar multiplication at nu-digit operands, with
// fractional budgets rounded up to whole digits.
Rational model_cost(const Rational& nu) {
  mpz_class digits;
  mpz_cdiv_q(digits.get_mpz_t(), nu.num().get_mpz_t(), nu.den().get_mpz_t());
  int n = static_cast<int>(digits.get_si());
  return Rational(static_cast<long>(scalar_mul_cost(n, n)));
}

}  // namespace

std::array<CostReport, 3> cost_table(int p, const Rational& nu) {
  if (p < 1) throw std::invalid_argument("cost_table: p must be >= 1");
  if (nu.sign() < 0) throw std::invalid_argument("cost_table: nu must be >= 0");
  Rational rp(static_cast<long>(p));

  CostReport matdot;
  matdot.kind = SchemeKind::kMatDot;
  matdot.recovery_threshold = 2L * p - 1;
  matdot.upload_per_server = nu / rp;
  matdot.total_download = Rational(2L * p - 1) * nu;
  matdot.compute_digit_ops = model_cost(nu);  // one block multiply per server at nu digits
  matdot.recovery_expr = "2p-1";
  matdot.upload_expr = "nu/p";
  matdot.download_expr = "(2p-1)nu";
  matdot.compute_expr = "O~(nu log(nu) / p)";

  CostReport amd;
  amd.kind = SchemeKind::kAmd;
  amd.recovery_threshold = p;
  amd.upload_per_server = nu;
  amd.total_download = rp * rp * nu;
  amd.compute_digit_ops = model_cost(rp * nu);  // one block multiply per server at p*nu digits
  amd.recovery_expr = "p";
  amd.upload_expr = "nu";
  amd.download_expr = "p^2 nu";
  amd.compute_expr = "O~(nu log(p nu))";

  CostReport rep;
  rep.kind = SchemeKind::kRepetition;
  rep.recovery_threshold = 1;
  rep.upload_per_server = nu;
  rep.total_download = nu;
  rep.compute_digit_ops = rp * model_cost(nu);  // p scalar multiplies per server at nu digits
  rep.recovery_expr = "1";
  rep.upload_expr = "nu";
  rep.download_expr = "nu";
  rep.compute_expr = "O~(nu log(nu))";

  return {matdot, amd, rep};
}

std::string cost_table_text(const std::array<CostReport, 3>& table) {
  const std::array<std::string, 5> labels = {"", "recovery threshold", "upload/server", "total download",
                                             "compute digit-ops"};
  std::array<std::array<std::string, 5>, 3> cols;
  for (std::size_t i = 0; i < 3; ++i) {
    const CostReport& r = table[i];
    cols[i] = {std::string(to_string(r.kind)),
               std::to_string(r.recovery_threshold) + " (" + r.recovery_expr + ")",
               r.upload_per_server.to_string() + " (" + r.upload_expr + ")",
               r.total_download.to_string() + " (" + r.download_expr + ")",
               r.compute_digit_ops.to_string() + " (" + r.compute_expr + ")"};
  }
  std::size_t label_w = 0;
  for (const std::string& l : labels) label_w = std::max(label_w, l.size());
  std::array<std::size_t, 3> col_w{};
  for (std::size_t i = 0; i < 3; ++i)
    for (const std::string& c : cols[i]) col_w[i] = std::max(col_w[i], c.size());

  std::ostringstream os;
  for (std::size_t row = 0; row < 5; ++row) {
    os << labels[row] << std::string(label_w - labels[row].size() + 2, ' ');
    for (std::size_t i = 0; i < 3; ++i) {
      os << cols[i][row];
      if (i < 2) os << std::string(col_w[i] - cols[i][row].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string cost_table_csv(const std::array<CostReport, 3>& table) {
  std::ostringstream os;
  os << "scheme,R,upload,download,compute_digit_ops\n";
  for (const CostReport& r : table)
    os << to_string(r.kind) << "," << r.recovery_threshold << "," << r.upload_per_server.to_string() << ","
       << r.total_download.to_string() << "," << r.compute_digit_ops.to_string() << "\n";
  return os.str();
}

}  // namespace cdmm
