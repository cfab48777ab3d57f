// Command line front end: precision-aware coded matrix multiplication
// sweeps, cost tables, precision bounds, and single-run demos.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cdmm/analysis.hpp"
#include "cdmm/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitThreshold = 3;

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, colon));
      r.hi = std::stoi(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected INT or LO:HI, got '" + text + "'");
  }
  if (r.hi < r.lo) throw CLI::ValidationError("range", "empty range '" + text + "'");
  return r;
}

cdmm::DigitBudget parse_budget(const std::string& text) {
  if (text == "inf" || text == "none") return std::nullopt;
  try {
    int v = std::stoi(text);
    if (v < 0) throw std::invalid_argument("negative");
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError("digits", "expected a nonnegative integer or 'inf', got '" + text + "'");
  }
}

std::set<int> parse_id_set(const std::string& text) {
  std::set<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      ids.insert(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("ids", "expected comma-separated integers, got '" + text + "'");
    }
  }
  return ids;
}

cdmm::Rational parse_rational_flag(const std::string& name, const std::string& text) {
  try {
    return cdmm::Rational::from_decimal(text);
  } catch (const std::exception& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

// Plain-text matrix: one row per line, whitespace-separated decimal entries.
cdmm::RatMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::vector<std::vector<cdmm::Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<cdmm::Rational> row;
    std::string tok;
    while (ss >> tok) row.push_back(cdmm::Rational::from_decimal(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix file '" + path + "' has no entries");
  int cols = static_cast<int>(rows[0].size());
  cdmm::RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != cols)
      throw std::runtime_error("matrix file '" + path + "' has ragged rows");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write to '" + path + "'");
  out << content;
}

struct SweepFlags {
  int p = 3;
  int servers = 0;  // 0: recovery threshold of the scheme
  int base = 10;
  long trials = 10000;
  std::uint64_t seed = 0;
  std::string scheme = "amd";
  int rows = 1, inner = 0, cols = 1;  // inner 0: defaults to p
  int guard = 8;
  std::string out = "-";

  cdmm::ExperimentConfig to_config() const {
    cdmm::ExperimentConfig cfg;
    cfg.scheme = cdmm::scheme_from_string(scheme);
    cfg.p = p;
    cfg.num_servers = servers > 0 ? servers : cdmm::recovery_threshold(cfg.scheme, p);
    cfg.base = base;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.rows = rows;
    cfg.inner = inner > 0 ? inner : p;
    cfg.cols = cols;
    cfg.guard_digits = guard;
    return cfg;
  }
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--p", f.p, "Partition level p");
  cmd->add_option("--n", f.servers, "Server count N (default: the scheme's recovery threshold)");
  cmd->add_option("--base", f.base, "Digit base B");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per sweep point");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--scheme", f.scheme, "Scheme: amd, matdot or repetition")
      ->check(CLI::IsMember({"amd", "matdot", "repetition"}));
  cmd->add_option("--rows", f.rows, "Rows of U");
  cmd->add_option("--inner", f.inner, "Shared inner dimension (default: p)");
  cmd->add_option("--cols", f.cols, "Columns of V");
  cmd->add_option("--guard", f.guard, "Guard digits for source entries");
  cmd->add_option("--out", f.out, "CSV output path, '-' for stdout");
}

int run_sweep_gamma(const SweepFlags& flags, const std::string& gamma_text, const std::string& alpha_text) {
  Range gamma = parse_range(gamma_text);
  cdmm::Rational alpha_max = parse_rational_flag("--alpha-max", alpha_text);
  auto result = cdmm::sweep_gamma(flags.to_config(), gamma.lo, gamma.hi, alpha_max);
  write_output(flags.out, result.csv());
  if (flags.out != "-")
    std::cout << "wrote " << result.axis_labels.size() << " sweep points to " << flags.out << "\n";
  return kExitOk;
}

int run_sweep_alpha(const SweepFlags& flags, const std::string& exp_text, int gamma, int baseline_nu) {
  Range exps = parse_range(exp_text);
  std::optional<int> baseline = baseline_nu >= 0 ? std::optional<int>(baseline_nu) : std::nullopt;
  auto result = cdmm::sweep_alpha(flags.to_config(), exps.lo, exps.hi, gamma, baseline);
  write_output(flags.out, result.csv());
  if (flags.out != "-")
    std::cout << "wrote " << result.axis_labels.size() << " sweep points to " << flags.out << "\n";
  return kExitOk;
}

int run_cost_table(int p, const std::string& nu_text, const std::string& out) {
  auto table = cdmm::cost_table(p, parse_rational_flag("--nu", nu_text));
  if (out.empty()) {
    std::cout << cdmm::cost_table_text(table);
  } else {
    write_output(out, cdmm::cost_table_csv(table));
  }
  return kExitOk;
}

int run_bounds(int p, const std::string& nu_y, const std::string& delta, const std::string& nu_f,
               const std::string& nu_g, const std::string& epsilon, const std::string& eta_sq, int base) {
  cdmm::PrecisionBudget budget;
  budget.p = p;
  budget.nu_y = parse_rational_flag("--nu-y", nu_y);
  budget.delta = parse_rational_flag("--delta", delta);
  budget.nu_f = nu_f.empty() ? budget.nu_y : parse_rational_flag("--nu-f", nu_f);
  budget.nu_g = nu_g.empty() ? budget.nu_y : parse_rational_flag("--nu-g", nu_g);

  cdmm::Rational nu = cdmm::predicted_precision(budget);
  std::cout << "predicted precision: " << nu.to_string() << "\n";
  std::cout << "appendix form:       "
            << cdmm::appendix_form_precision(budget.nu_y, budget.delta, p).to_string() << "\n";
  std::cout << "required upload for that precision (p*nu): "
            << cdmm::required_upload_precision(nu, p).to_string() << "\n";
  if (!budget.download_within_upload())
    std::cout << "note: nu_y exceeds min(nu_f, nu_g); the excess digits carry no information\n";
  if (!epsilon.empty()) {
    auto bound = cdmm::theorem1_alpha_bound(parse_rational_flag("--epsilon", epsilon),
                                            eta_sq.empty() ? cdmm::Rational(1)
                                                           : parse_rational_flag("--eta-sq", eta_sq),
                                            p, base);
    std::cout << "alpha bound for epsilon: " << bound.alpha_bound.to_string() << " (~"
              << bound.alpha_bound.to_double() << "), implied delta " << bound.implied_delta.to_double()
              << "\n";
  }
  return kExitOk;
}

struct DemoFlags {
  std::string scheme = "amd";
  int p = 3;
  int servers = 0;
  int base = 10;
  std::string gamma_u = "12";
  std::string gamma_y = "12";
  std::string alpha_max = "1e-4";
  std::uint64_t seed = 0;
  std::string stragglers;
  std::string u_file, v_file;
  int display_digits = 12;
  int guard = 8;
};

int run_demo(const DemoFlags& f) {
  cdmm::SchemeSpec spec;
  spec.kind = cdmm::scheme_from_string(f.scheme);
  spec.p = spec.kind == cdmm::SchemeKind::kRepetition ? 1 : f.p;
  spec.num_servers = f.servers > 0 ? f.servers : cdmm::recovery_threshold(spec.kind, spec.p);
  spec.base = f.base;
  spec.upload_digits = parse_budget(f.gamma_u);
  spec.download_digits = parse_budget(f.gamma_y);
  if (spec.kind != cdmm::SchemeKind::kRepetition)
    spec.eval_points =
        cdmm::equispaced_points(parse_rational_flag("--alpha-max", f.alpha_max), spec.num_servers);

  cdmm::RatMatrix u, v;
  if (!f.u_file.empty() != !f.v_file.empty())
    throw std::runtime_error("provide both --u-file and --v-file, or neither");
  if (!f.u_file.empty()) {
    u = read_matrix_file(f.u_file);
    v = read_matrix_file(f.v_file);
  } else {
    cdmm::CounterRng rng(f.seed, 0);
    int q = spec.upload_digits ? *spec.upload_digits + f.guard : 20;
    int inner = spec.kind == cdmm::SchemeKind::kRepetition ? f.p : spec.p;
    u = cdmm::sample_matrix(1, inner, q, f.base, rng);
    v = cdmm::sample_matrix(inner, 1, q, f.base, rng);
  }

  auto run = cdmm::run_cluster(u, v, spec, parse_id_set(f.stragglers));
  std::cout << run.transcript();

  auto decoded = cdmm::decode_run(run);
  auto truth = cdmm::multiply(u, v);
  std::cout << "decoded (first " << f.display_digits << " digits):";
  for (const std::string& s : decoded.rendered(f.display_digits, f.base)) std::cout << " " << s;
  std::cout << "\nexact product:";
  for (const cdmm::Rational& x : truth.cells())
    std::cout << " " << cdmm::truncate(x, f.display_digits, f.base).to_string();
  std::cout << "\nmax abs error: ";
  cdmm::Rational worst(0);
  for (int i = 0; i < truth.rows(); ++i)
    for (int j = 0; j < truth.cols(); ++j) {
      cdmm::Rational e = (decoded.c_hat.at(i, j) - truth.at(i, j)).abs();
      if (e > worst) worst = e;
    }
  std::cout << worst.to_double() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precision-aware coded distributed matrix multiplication simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file (flags override)");

  SweepFlags gamma_flags;
  std::string gamma_range = "4:16", gamma_alpha = "1e-4";
  CLI::App* sweep_gamma_cmd = app.add_subcommand("sweep-gamma", "MAE versus the upload/download budget gamma");
  add_sweep_flags(sweep_gamma_cmd, gamma_flags);
  sweep_gamma_cmd->add_option("--gamma", gamma_range, "Budget range LO:HI (both gamma_u and gamma_y)");
  sweep_gamma_cmd->add_option("--alpha-max", gamma_alpha, "Largest evaluation point");

  SweepFlags alpha_flags;
  std::string alpha_exps = "-7:-1";
  int alpha_gamma = 12, baseline_nu = -1;
  CLI::App* sweep_alpha_cmd = app.add_subcommand("sweep-alpha", "MAE versus alpha_max = B^k");
  add_sweep_flags(sweep_alpha_cmd, alpha_flags);
  sweep_alpha_cmd->add_option("--log10-alpha", alpha_exps, "Exponent range LO:HI for alpha_max = B^k");
  sweep_alpha_cmd->add_option("--gamma", alpha_gamma, "Fixed upload/download budget");
  sweep_alpha_cmd->add_option("--baseline-nu", baseline_nu,
                              "Repetition baseline digits (default gamma/p)");

  int ct_p = 3;
  std::string ct_nu = "4", ct_out;
  CLI::App* cost_cmd = app.add_subcommand("cost-table", "Per-scheme cost accounting at (p, nu)");
  cost_cmd->add_option("--p", ct_p, "Partition level p");
  cost_cmd->add_option("--nu", ct_nu, "Product precision nu in digits");
  cost_cmd->add_option("--out", ct_out, "Write CSV here instead of the text table ('-' for stdout)");

  int b_p = 3, b_base = 10;
  std::string b_nu_y = "12", b_delta = "4", b_nu_f, b_nu_g, b_eps, b_eta_sq;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Dimensional-analysis precision calculators");
  bounds_cmd->add_option("--p", b_p, "Partition level p");
  bounds_cmd->add_option("--nu-y", b_nu_y, "Download precision");
  bounds_cmd->add_option("--delta", b_delta, "Evaluation-point smallness exponent");
  bounds_cmd->add_option("--nu-f", b_nu_f, "Upload precision of F (default nu_y)");
  bounds_cmd->add_option("--nu-g", b_nu_g, "Upload precision of G (default nu_y)");
  bounds_cmd->add_option("--epsilon", b_eps, "Also report the evaluation-point bound for this error");
  bounds_cmd->add_option("--eta-sq", b_eta_sq, "Squared Frobenius norm bound (default 1)");
  bounds_cmd->add_option("--base", b_base, "Digit base B");

  DemoFlags demo_flags;
  CLI::App* demo_cmd = app.add_subcommand("demo", "One encode/compute/decode run with a transcript");
  demo_cmd->add_option("--scheme", demo_flags.scheme, "Scheme: amd, matdot or repetition")
      ->check(CLI::IsMember({"amd", "matdot", "repetition"}));
  demo_cmd->add_option("--p", demo_flags.p, "Partition level p");
  demo_cmd->add_option("--n", demo_flags.servers, "Server count N (default: recovery threshold)");
  demo_cmd->add_option("--base", demo_flags.base, "Digit base B");
  demo_cmd->add_option("--gamma-u", demo_flags.gamma_u, "Upload digits, or 'inf'");
  demo_cmd->add_option("--gamma-y", demo_flags.gamma_y, "Download digits, or 'inf'");
  demo_cmd->add_option("--alpha-max", demo_flags.alpha_max, "Largest evaluation point");
  demo_cmd->add_option("--seed", demo_flags.seed, "Random seed for sampled inputs");
  demo_cmd->add_option("--stragglers", demo_flags.stragglers, "Comma-separated straggler ids");
  demo_cmd->add_option("--u-file", demo_flags.u_file, "Matrix U as rows of decimal entries");
  demo_cmd->add_option("--v-file", demo_flags.v_file, "Matrix V as rows of decimal entries");
  demo_cmd->add_option("--display-digits", demo_flags.display_digits, "Digits shown for decoded entries");
  demo_cmd->add_option("--guard", demo_flags.guard, "Guard digits for sampled entries");

  try {
    app.parse(argc, argv);
    if (sweep_gamma_cmd->parsed()) return run_sweep_gamma(gamma_flags, gamma_range, gamma_alpha);
    if (sweep_alpha_cmd->parsed()) return run_sweep_alpha(alpha_flags, alpha_exps, alpha_gamma, baseline_nu);
    if (cost_cmd->parsed()) return run_cost_table(ct_p, ct_nu, ct_out);
    if (bounds_cmd->parsed())
      return run_bounds(b_p, b_nu_y, b_delta, b_nu_f, b_nu_g, b_eps, b_eta_sq, b_base);
    if (demo_cmd->parsed()) return run_demo(demo_flags);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const cdmm::ThresholdError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitThreshold;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
