// Command-line front end: instance generation, pipeline and oracle solving,
// reduction/WSPD dumps and the bench report.
//
// Exit codes: 0 success, 1 feasibility failure, 2 argument error, 3 parse
// error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mprp/bench.hpp"
#include "mprp/discretize.hpp"
#include "mprp/oracle.hpp"
#include "mprp/pipeline.hpp"
#include "mprp/solution.hpp"
#include "mprp/wspd.hpp"

namespace {

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write output file: " + out);
  f << text;
}

mprp::SegmentMode parse_mode(const std::string& mode) {
  if (mode == "exact") return mprp::SegmentMode::Exact;
  if (mode == "heuristic") return mprp::SegmentMode::Heuristic;
  if (mode == "auto") return mprp::SegmentMode::Auto;
  throw CLI::ValidationError("--segment-mode", "must be exact|heuristic|auto");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mprp: maximum-profit routing with variable supply"};
  app.require_subcommand(1);

  // Shared knobs.
  double epsilon = 0.5;
  bool mprp_mode = false;
  std::uint64_t seed = 1;
  int time_grid = 4;
  std::string out;
  app.add_option("--epsilon", epsilon, "reduction parameter epsilon > 0");
  app.add_flag("--mprp-mode", mprp_mode, "fixed-supply mode: skip the reduction");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--time-grid", time_grid, "time subdivisions per hour");
  app.add_option("--out", out, "output file (default: stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  mprp::GenParams gp;
  gen->add_option("--n", gp.n, "site count");
  gen->add_option("--m", gp.m, "vehicle count");
  gen->add_option("--T", gp.T, "horizon");
  gen->add_option("--Q", gp.Q, "capacity");
  gen->add_option("--alpha", gp.alpha, "discrepancy bound");
  gen->add_option("--spread", gp.spread, "coordinate square side");
  gen->add_flag("--constant-supply", gp.constant_supply, "fixed-supply instance");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run the approximation pipeline");
  std::string solve_file;
  std::string segment_mode = "auto";
  int exact_limit = 12;
  bool no_pruning = false;
  bool reassign_fp = false;
  solve_cmd->add_option("instance", solve_file, "instance JSON file")->required();
  solve_cmd->add_option("--segment-mode", segment_mode, "exact|heuristic|auto");
  solve_cmd->add_option("--exact-limit", exact_limit, "max copies for exact mode");
  solve_cmd->add_flag("--no-subset-pruning", no_pruning, "disable subset-sum pruning");
  solve_cmd->add_flag("--reassign-fixed-point", reassign_fp,
                      "sweep reassignment to a fixed point");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact brute-force solve");
  std::string oracle_file;
  int max_sites = 8, max_vehicles = 2;
  oracle_cmd->add_option("instance", oracle_file, "instance JSON file")->required();
  oracle_cmd->add_option("--max-sites", max_sites, "site cap");
  oracle_cmd->add_option("--max-vehicles", max_vehicles, "vehicle cap");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "per-instance ratio report (CSV)");
  std::vector<std::string> bench_files;
  bool with_oracle = false;
  std::string bench_segment_mode = "auto";
  bool no_timings = false;
  bench_cmd->add_option("instances", bench_files, "instance JSON files");
  bench_cmd->add_flag("--oracle", with_oracle, "compare against the oracle when in caps");
  bench_cmd->add_option("--segment-mode", bench_segment_mode, "exact|heuristic|auto");
  bench_cmd->add_flag("--no-timings", no_timings,
                      "zero the timing columns (reproducible output)");

  // dump-reduced
  auto* dump_red = app.add_subcommand("dump-reduced", "emit the reduced instance");
  std::string red_file;
  dump_red->add_option("instance", red_file, "instance JSON file")->required();

  // dump-wspd
  auto* dump_wspd = app.add_subcommand("dump-wspd", "emit the WSPD pair list");
  std::string wspd_file;
  double wspd_s = 0.0;
  dump_wspd->add_option("instance", wspd_file, "instance JSON file")->required();
  dump_wspd->add_option("--s", wspd_s, "separation factor (default sqrt(m))");

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : {gen, solve_cmd, oracle_cmd, bench_cmd, dump_red, dump_wspd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      gp.seed = seed;
      write_output(out, mprp::instance_to_json(mprp::generate(gp)));
      return 0;
    }

    mprp::PipelineConfig config;
    config.epsilon = epsilon;
    config.mprp_mode = mprp_mode;
    config.policy.time_grid = time_grid;

    if (solve_cmd->parsed()) {
      config.policy.mode = parse_mode(segment_mode);
      config.policy.exact_limit = exact_limit;
      config.subset_sum_pruning = !no_pruning;
      config.reassign_fixed_point = reassign_fp;
      const mprp::Instance inst = mprp::load_instance(solve_file);
      const mprp::SolveResult result = mprp::solve(inst, config);
      write_output(out, mprp::solution_to_json(result.solution, inst));
      return mprp::check_feasibility(result.solution, inst).empty() ? 0 : 1;
    }

    if (oracle_cmd->parsed()) {
      const mprp::Instance inst = mprp::load_instance(oracle_file);
      mprp::OracleConfig oc{time_grid, max_sites, max_vehicles};
      const mprp::Solution sol = mprp::solve_exact(inst, oc);
      write_output(out, mprp::solution_to_json(sol, inst));
      return mprp::check_feasibility(sol, inst).empty() ? 0 : 1;
    }

    if (bench_cmd->parsed()) {
      mprp::BenchConfig bc;
      bc.pipeline = config;
      bc.pipeline.policy.mode = parse_mode(bench_segment_mode);
      bc.oracle.grid = time_grid;
      bc.run_oracle = with_oracle;
      mprp::BenchReport report = mprp::run_experiment(bench_files, bc);
      if (no_timings)
        for (mprp::BenchRow& row : report.rows) row.pipeline_ms = row.oracle_ms = 0.0;
      write_output(out, mprp::report_to_csv(report));
      return report.all_feasible ? 0 : 1;
    }

    if (dump_red->parsed()) {
      const mprp::Instance inst = mprp::load_instance(red_file);
      const mprp::ReducedInstance red = mprp::reduce(inst, {epsilon});
      nlohmann::ordered_json j;
      j["depot"] = {red.depot.x, red.depot.y};
      j["m"] = 1;
      j["Q"] = red.Q;
      j["T"] = red.T;
      j["epsilon"] = red.epsilon;
      j["N"] = red.N;
      j["sites"] = nlohmann::ordered_json::array();
      for (const mprp::SiteCopy& c : red.copies) {
        nlohmann::ordered_json cj;
        cj["label"] = {c.site_id, c.tau};
        cj["x"] = c.x;
        cj["y"] = c.y;
        cj["e"] = c.win_start;
        cj["l"] = c.win_end;
        cj["q"] = c.q_fixed;
        j["sites"].push_back(cj);
      }
      write_output(out, j.dump(2) + "\n");
      return 0;
    }

    if (dump_wspd->parsed()) {
      const mprp::Instance inst = mprp::load_instance(wspd_file);
      const double s =
          wspd_s > 0.0 ? wspd_s
                       : std::max(1.0, std::sqrt(static_cast<double>(inst.m)));
      std::vector<int> ids;
      std::vector<mprp::Point> pts;
      for (const mprp::Site& site : inst.sites) {
        ids.push_back(site.id);
        pts.push_back(site.pos());
      }
      const mprp::PairDecomposition decomp = mprp::build_wspd(ids, pts, s);
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const mprp::WsPair& p : decomp.pairs) {
        nlohmann::ordered_json pj;
        pj["A"] = p.a;
        pj["B"] = p.b;
        j.push_back(pj);
      }
      write_output(out, j.dump(2) + "\n");
      return 0;
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const mprp::CorpusParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const mprp::GenError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const mprp::OracleRefusal& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
