#ifndef MPRP_BENCH_HPP
#define MPRP_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mprp/instance.hpp"
#include "mprp/oracle.hpp"
#include "mprp/pipeline.hpp"

namespace mprp {

// Worst-case ratio 8 ln2 log2(T) (1+eps) (1 + 1/(1+sqrt(m)))^2. log is
// base 2, which keeps the T=2 anchor at 8 ln 2 ~ 5.545.
double theoretical_factor(int T, int m, double epsilon);

// The same bound written with delta = 2 eps + eps^2 in place of eps, i.e.
// the (1+eps)^2 reading; the looser of the two printed forms.
double theoretical_factor_delta(int T, int m, double epsilon);

struct GenParams {
  std::uint64_t seed = 1;
  int n = 8;
  int m = 2;
  int T = 8;
  int Q = 20;
  double alpha = 2.0;
  double spread = 10.0;
  bool constant_supply = false;
};

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reproducible pseudo-random instance: coordinates uniform in a square of
// side `spread` with the depot at its center, integer windows inside [0, T],
// integer rates chosen so every q_max lies in a band of ratio at most alpha.
Instance generate(const GenParams& params);

struct BenchConfig {
  PipelineConfig pipeline;
  OracleConfig oracle;
  bool run_oracle = false;
};

struct BenchRow {
  std::string file;
  int n = 0, m = 0, T = 0;
  double epsilon = 0.0;
  double pipeline_profit = 0.0;
  bool has_oracle = false;
  double oracle_profit = 0.0;
  double upper_bound = 0.0;     // sum of q_max
  double reference = 0.0;       // oracle profit when present, else upper bound
  double ratio = 0.0;           // pipeline / reference (0 when reference <= 0)
  double factor_eps = 0.0;      // theoretical_factor
  double factor_delta = 0.0;    // theoretical_factor_delta
  bool feasible = false;
  double pipeline_ms = 0.0;
  double oracle_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  bool all_feasible = true;
};

// Parse failure naming the offending file; the message carries the byte
// offset reported by the JSON parser.
struct CorpusParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One row per instance file, in input order. Parse failures throw
// CorpusParseError (exit code 3 at the CLI); infeasible pipeline output
// flips all_feasible (exit code 1).
BenchReport run_experiment(const std::vector<std::string>& files,
                           const BenchConfig& config);

// CSV with a leading `#` comment line documenting conventions; numbers are
// printed with 17 significant digits so re-parsing reproduces them exactly.
std::string report_to_csv(const BenchReport& report);
BenchReport parse_csv(const std::string& text);

}  // namespace mprp

#endif
