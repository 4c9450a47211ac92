#include "mprp/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>
#include <stdexcept>

#include "mprp/solution.hpp"

namespace mprp {

namespace {

double base_factor(int T, int m) {
  if (T < 2) throw std::invalid_argument("theoretical_factor: T must be >= 2");
  if (m < 1) throw std::invalid_argument("theoretical_factor: m must be >= 1");
  const double fleet = 1.0 + 1.0 / (1.0 + std::sqrt(static_cast<double>(m)));
  return 8.0 * std::numbers::ln2 * std::log2(static_cast<double>(T)) * fleet * fleet;
}

}  // namespace

double theoretical_factor(int T, int m, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("theoretical_factor: epsilon < 0");
  return base_factor(T, m) * (1.0 + epsilon);
}

double theoretical_factor_delta(int T, int m, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("theoretical_factor: epsilon < 0");
  const double delta = 2.0 * epsilon + epsilon * epsilon;
  return base_factor(T, m) * (1.0 + delta);
}

Instance generate(const GenParams& params) {
  if (params.n < 0 || params.m < 1 || params.T < 1 || params.Q < 1 ||
      params.spread <= 0.0)
    throw GenError("generate: parameters must be positive");
  if (params.alpha <= 1.0) throw GenError("generate: alpha must exceed 1");

  std::mt19937_64 rng(params.seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  auto uniform_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto uniform_real = [&](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };

  // q_max values are drawn from [q_lo, floor(alpha q_lo)]; the band is made
  // wide enough to contain a multiple of any accepted window length.
  const int q_lo = std::max(4, static_cast<int>(std::ceil(2.0 / (params.alpha - 1.0))));
  const int q_hi = static_cast<int>(std::floor(params.alpha * q_lo + 1e-9));
  if (q_hi <= q_lo) throw GenError("generate: alpha band admits no integer quantities");

  Instance inst;
  inst.depot = {params.spread / 2.0, params.spread / 2.0};
  inst.m = params.m;
  inst.Q = params.Q;
  inst.T = params.T;
  inst.alpha = params.alpha;
  inst.constant_supply = params.constant_supply;

  for (int i = 1; i <= params.n; ++i) {
    Site s;
    s.id = i;
    s.x = uniform_real(0.0, params.spread);
    s.y = uniform_real(0.0, params.spread);
    s.constant_supply = params.constant_supply;
    bool placed = false;
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      const int e = uniform_int(0, params.T - 1);
      const int l = uniform_int(e + 1, params.T);
      const int w = l - e;
      const int rho_min = std::max(1, (q_lo + w - 1) / w);
      const int rho_max = q_hi / w;
      if (rho_min > rho_max) continue;
      s.e = e;
      s.l = l;
      s.rho = uniform_int(rho_min, rho_max);
      placed = true;
    }
    if (!placed)
      throw GenError("generate: no feasible window/rate combination for alpha=" +
                     std::to_string(params.alpha));
    inst.sites.push_back(s);
  }
  return inst;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

BenchReport run_experiment(const std::vector<std::string>& files,
                           const BenchConfig& config) {
  using clock = std::chrono::steady_clock;
  BenchReport report;
  for (const std::string& file : files) {
    Instance inst;
    try {
      inst = load_instance(file);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusParseError(file + ": byte " + std::to_string(e.byte) + ": " +
                             e.what());
    }
    BenchRow row;
    row.file = file;
    row.n = static_cast<int>(inst.sites.size());
    row.m = inst.m;
    row.T = inst.T;
    row.epsilon = config.pipeline.epsilon;
    row.factor_eps = theoretical_factor(std::max(inst.T, 2), inst.m, row.epsilon);
    row.factor_delta = theoretical_factor_delta(std::max(inst.T, 2), inst.m, row.epsilon);
    row.upper_bound = inst.total_q_max();

    const auto t0 = clock::now();
    const SolveResult solved = solve(inst, config.pipeline);
    row.pipeline_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    row.pipeline_profit = profit(solved.solution, inst);
    row.feasible = check_feasibility(solved.solution, inst).empty();
    if (!row.feasible) report.all_feasible = false;

    if (config.run_oracle &&
        row.n <= config.oracle.max_sites && inst.m <= config.oracle.max_vehicles) {
      const auto t1 = clock::now();
      const Solution exact = solve_exact(inst, config.oracle);
      row.oracle_ms =
          std::chrono::duration<double, std::milli>(clock::now() - t1).count();
      row.oracle_profit = profit(exact, inst);
      row.has_oracle = true;
    }
    row.reference = row.has_oracle ? row.oracle_profit : row.upper_bound;
    row.ratio = row.reference > 0.0 ? row.pipeline_profit / row.reference : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "# mprp bench report; log base 2 in theoretical factors; "
         "factor_delta substitutes delta = 2*eps + eps^2\n";
  out << "file,n,m,T,epsilon,pipeline_profit,has_oracle,oracle_profit,"
         "upper_bound,reference,ratio,factor_eps,factor_delta,feasible,"
         "pipeline_ms,oracle_ms\n";
  for (const BenchRow& r : report.rows) {
    out << r.file << ',' << r.n << ',' << r.m << ',' << r.T << ','
        << fmt(r.epsilon) << ',' << fmt(r.pipeline_profit) << ','
        << (r.has_oracle ? 1 : 0) << ',' << fmt(r.oracle_profit) << ','
        << fmt(r.upper_bound) << ',' << fmt(r.reference) << ',' << fmt(r.ratio)
        << ',' << fmt(r.factor_eps) << ',' << fmt(r.factor_delta) << ','
        << (r.feasible ? 1 : 0) << ',' << fmt(r.pipeline_ms) << ','
        << fmt(r.oracle_ms) << '\n';
  }
  return out.str();
}

BenchReport parse_csv(const std::string& text) {
  BenchReport report;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 16) throw std::runtime_error("parse_csv: bad row: " + line);
    BenchRow r;
    r.file = fields[0];
    r.n = std::stoi(fields[1]);
    r.m = std::stoi(fields[2]);
    r.T = std::stoi(fields[3]);
    r.epsilon = std::stod(fields[4]);
    r.pipeline_profit = std::stod(fields[5]);
    r.has_oracle = fields[6] == "1";
    r.oracle_profit = std::stod(fields[7]);
    r.upper_bound = std::stod(fields[8]);
    r.reference = std::stod(fields[9]);
    r.ratio = std::stod(fields[10]);
    r.factor_eps = std::stod(fields[11]);
    r.factor_delta = std::stod(fields[12]);
    r.feasible = fields[13] == "1";
    r.pipeline_ms = std::stod(fields[14]);
    r.oracle_ms = std::stod(fields[15]);
    if (!r.feasible) report.all_feasible = false;
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace mprp
