#include "cdmm/cluster.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "cdmm/fixedpoint.hpp"

namespace cdmm {

std::int64_t scalar_mul_cost(int digits_a, int digits_b) {
  auto n = static_cast<std::int64_t>(std::max({digits_a, digits_b, 1}));
  auto log_term = static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(n)));  // ceil(log2(n+1))
  return n * log_term;
}

namespace {

FpMatrix fixed_product(const FpMatrix& f, const FpMatrix& g, TrafficLedger* ledger) {
  if (f.cols() != g.rows()) throw std::invalid_argument("server_compute: inner dimension mismatch");
  std::vector<TruncatedValue> cells;
  cells.reserve(static_cast<std::size_t>(f.rows()) * static_cast<std::size_t>(g.cols()));
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      TruncatedValue acc = fp_mul(f.at(i, 0), g.at(0, j));
      if (ledger) {
        ledger->multiplications += 1;
        ledger->digit_mul_cost += scalar_mul_cost(f.at(i, 0).mantissa_digits(), g.at(0, j).mantissa_digits());
      }
      for (int k = 1; k < f.cols(); ++k) {
        TruncatedValue term = fp_mul(f.at(i, k), g.at(k, j));
        if (ledger) {
          ledger->multiplications += 1;
          ledger->digit_mul_cost += scalar_mul_cost(f.at(i, k).mantissa_digits(), g.at(k, j).mantissa_digits());
        }
        acc = fp_add(acc, term);
      }
      cells.push_back(std::move(acc));
    }
  return FpMatrix(f.rows(), g.cols(), std::move(cells));
}

RatMatrix exact_product(const RatMatrix& f, const RatMatrix& g, TrafficLedger* ledger) {
  if (f.cols() != g.rows()) throw std::invalid_argument("server_compute: inner dimension mismatch");
  if (ledger)
    ledger->multiplications += static_cast<std::int64_t>(f.rows()) * g.cols() * f.cols();
  return multiply(f, g);
}

}  // namespace

ServerAnswer server_compute(const EncodedTask& task, DigitBudget gamma_y, TrafficLedger* ledger, int base) {
  ServerAnswer answer;
  answer.server_id = task.server_id;
  answer.alpha = task.alpha;
  answer.available = true;
  if (task.f.is_fixed() != task.g.is_fixed())
    throw std::invalid_argument("server_compute: mixed fixed/exact shares");
  if (task.f.is_fixed()) {
    FpMatrix product = fixed_product(task.f.fixed(), task.g.fixed(), ledger);
    if (gamma_y) {
      std::vector<TruncatedValue> cells;
      cells.reserve(product.size());
      for (const TruncatedValue& t : product.cells()) cells.push_back(truncate(t, *gamma_y));
      product = FpMatrix(product.rows(), product.cols(), std::move(cells));
    }
    answer.y = ShareMatrix(std::move(product));
  } else {
    RatMatrix product = exact_product(task.f.exact(), task.g.exact(), ledger);
    if (gamma_y)
      answer.y = ShareMatrix(truncate(product, *gamma_y, base));
    else
      answer.y = ShareMatrix(std::move(product));
  }
  return answer;
}

ClusterRun run_cluster(const RatMatrix& u, const RatMatrix& v, const SchemeSpec& spec,
                       const std::set<int>& stragglers) {
  spec.validate();
  for (int id : stragglers)
    if (id < 1 || id > spec.num_servers)
      throw std::invalid_argument("run_cluster: straggler id " + std::to_string(id) + " outside 1.." +
                                  std::to_string(spec.num_servers));
  int responsive = spec.num_servers - static_cast<int>(stragglers.size());
  if (responsive < spec.threshold()) throw ThresholdError(spec.threshold(), responsive);

  ClusterRun run;
  run.spec = spec;
  run.straggler_ids = stragglers;

  if (spec.upload_digits && spec.download_digits && *spec.download_digits > 2 * *spec.upload_digits)
    run.warnings.push_back("download budget gamma_y=" + std::to_string(*spec.download_digits) +
                           " exceeds the product scale 2*gamma_u=" + std::to_string(2 * *spec.upload_digits) +
                           "; extra digits are zero padding");

  if (spec.kind == SchemeKind::kRepetition) {
    auto [f, g] = encode_repetition(u, v, spec.upload_digits, spec.base);
    for (int id = 1; id <= spec.num_servers; ++id)
      run.tasks.push_back(EncodedTask{id, Rational(0), f, g});
  } else {
    BlockPartition bp = partition(u, v, spec.p);
    for (int id = 1; id <= spec.num_servers; ++id) {
      const Rational& alpha = spec.eval_points[static_cast<std::size_t>(id) - 1];
      auto [f, g] = encode_matdot(bp, alpha, spec.upload_digits, spec.base);
      run.tasks.push_back(EncodedTask{id, alpha, std::move(f), std::move(g)});
    }
  }

  if (spec.upload_digits) {
    const EncodedTask& t = run.tasks.front();
    run.traffic.upload_digits_per_server =
        static_cast<std::int64_t>(t.f.size() + t.g.size()) * *spec.upload_digits;
  }

  for (const EncodedTask& task : run.tasks) {
    if (stragglers.count(task.server_id)) continue;
    ServerAnswer answer = server_compute(task, spec.download_digits, &run.traffic, spec.base);
    if (spec.download_digits)
      run.traffic.download_digits_total += static_cast<std::int64_t>(answer.y.size()) * *spec.download_digits;
    run.answers.push_back(std::move(answer));
  }
  return run;
}

DecodeResult decode_run(const ClusterRun& run) {
  switch (run.spec.kind) {
    case SchemeKind::kMatDot: return decode_exact_matdot(run.answers, run.spec.p);
    case SchemeKind::kAmd: return decode_min_norm(run.answers, run.spec.p);
    case SchemeKind::kRepetition: return decode_repetition(run.answers);
  }
  throw std::logic_error("decode_run: bad scheme");
}

namespace {

std::string budget_text(DigitBudget b) { return b ? std::to_string(*b) : "unbounded"; }

std::string payload_text(const ShareMatrix& m) {
  std::string out = "[";
  if (m.is_fixed()) {
    const auto& cells = m.fixed().cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ", ";
      out += cells[i].to_string();
    }
  } else {
    const auto& cells = m.exact().cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ", ";
      out += cells[i].to_string();
    }
  }
  out += "]";
  return out;
}

}  // namespace

std::string ClusterRun::transcript() const {
  std::ostringstream os;
  os << "scheme: " << to_string(spec.kind) << "\n";
  os << "p: " << spec.p << "\n";
  os << "servers: " << spec.num_servers << "\n";
  os << "base: " << spec.base << "\n";
  os << "gamma_u: " << budget_text(spec.upload_digits) << "\n";
  os << "gamma_y: " << budget_text(spec.download_digits) << "\n";
  os << "stragglers:";
  for (int id : straggler_ids) os << " " << id;
  os << "\n";
  os << "upload_digits_per_server: " << traffic.upload_digits_per_server << "\n";
  os << "download_digits_total: " << traffic.download_digits_total << "\n";
  os << "multiplications: " << traffic.multiplications << "\n";
  os << "digit_mul_cost: " << traffic.digit_mul_cost << "\n";
  for (const std::string& w : warnings) os << "warning: " << w << "\n";
  for (const EncodedTask& t : tasks) {
    os << "server " << t.server_id << ": alpha=" << t.alpha.to_string();
    os << " F=" << payload_text(t.f) << " G=" << payload_text(t.g);
    if (straggler_ids.count(t.server_id)) {
      os << " (straggler)\n";
      continue;
    }
    for (const ServerAnswer& a : answers)
      if (a.server_id == t.server_id) {
        os << " Y=" << payload_text(a.y);
        break;
      }
    os << "\n";
  }
  return os.str();
}

}  // namespace cdmm
