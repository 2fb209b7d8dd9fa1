// Command line for the cardinality-constrained QP solvers and the synthetic
// best-subset-selection benchmark:
//   gen     write a synthetic regression instance as JSON
//   solve   run one algorithm on an instance, print a run record as JSON
//   bench   sweep shapes x examples x snr x seeds x algorithms into a CSV
//   report  turn run CSVs into performance-profile / box-plot CSVs

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccqo/bench.hpp"
#include "ccqo/classic_bb.hpp"
#include "ccqo/ibbplus.hpp"
#include "ccqo/instance_gen.hpp"
#include "ccqo/sfs.hpp"

namespace {

using namespace ccqo;

struct SolveFlags {
  std::string select = "bfs";
  long max_iter = 1'000'000;
  double time_limit = 600.0;
  long soft_iters = 500;
  double soft_time = 300.0;
  double qp_tol = 1e-9;
  int sfs_every = 100;
  bool no_bound_deletion = false;
  bool no_ordering = false;
  bool trace = false;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--select", f.select, "Node selection: bfs|dfs")
      ->check(CLI::IsMember({"bfs", "dfs"}));
  cmd->add_option("--max-iter", f.max_iter, "Hard iteration limit");
  cmd->add_option("--time-limit", f.time_limit, "Hard wall-clock limit in seconds");
  cmd->add_option("--soft-iters", f.soft_iters, "Stop after this many non-improving iterations");
  cmd->add_option("--soft-time", f.soft_time, "Stop after this long without improvement (s)");
  cmd->add_option("--qp-tol", f.qp_tol, "KKT tolerance of the inner box-QP solves");
  cmd->add_option("--sfs-every", f.sfs_every,
                  "Run SFS sampling every Nth created node (0: root only)");
  cmd->add_flag("--no-bound-deletion", f.no_bound_deletion,
                "Disable incumbent-vs-bound deletions (full enumeration tree)");
  cmd->add_flag("--no-ordering", f.no_ordering, "bb: disable in-level candidate ordering");
  cmd->add_flag("--trace", f.trace, "Per-iteration trace lines on stderr");
}

SolverConfig to_config(const SolveFlags& f) {
  SolverConfig cfg;
  cfg.selection = f.select == "dfs" ? Selection::DepthFirst : Selection::BestFirst;
  cfg.max_iterations = f.max_iter;
  cfg.hard_time_limit = f.time_limit;
  cfg.soft_no_improve_iters = f.soft_iters;
  cfg.soft_no_improve_time = f.soft_time;
  cfg.qp_tol = f.qp_tol;
  cfg.sfs_every = f.sfs_every;
  cfg.disable_bound_deletion = f.no_bound_deletion;
  cfg.in_level_ordering = !f.no_ordering;
  cfg.trace = f.trace ? &std::cerr : nullptr;
  return cfg;
}

bench::RunRecord run_algorithm(const std::string& algo, const RegressionInstance& inst, int k,
                               const SolverConfig& cfg) {
  const QuadraticObjective obj = build_ccqo(inst.X, inst.y);
  const SearchBox box = inst.box();

  bench::RunRecord rec;
  rec.label = inst.label + "/k" + std::to_string(k);
  rec.algo = algo;
  rec.seed = inst.seed;

  const auto t0 = std::chrono::steady_clock::now();
  if (algo == "ibb") {
    const SolveResult r = solve_ibb(obj, box, k, cfg);
    rec.value = r.value;
    rec.lb_calls = r.lb_calls;
    rec.nodes_created = r.nodes_created;
    rec.stop_reason = to_string(r.stop_reason);
  } else if (algo == "bb") {
    const SolveResult r = solve_bb(obj, box, k, cfg);
    rec.value = r.value;
    rec.lb_calls = r.lb_calls;
    rec.nodes_created = r.nodes_created;
    rec.stop_reason = to_string(r.stop_reason);
  } else if (algo == "sfs") {
    const IndexSet init = default_initial_support(obj, box, k, cfg.qp_tol);
    const SfsResult r = run_sfs(obj, box, k, init, cfg.qp_tol);
    rec.value = r.value;
    rec.lb_calls = r.qp_calls + 1;  // + the reference fit behind the seed
    rec.nodes_created = 0;
    rec.stop_reason = "Exhausted";
  } else if (algo == "oracle") {
    const auto r = bench::brute_force_oracle(obj, box, k, cfg.qp_tol);
    rec.value = r.value;
    rec.lb_calls = r.lb_calls;
    rec.nodes_created = 0;
    rec.stop_reason = "Exhausted";
  } else {
    throw InvalidInputError("unknown algorithm: " + algo);
  }
  rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<std::string> parse_string_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

// "1..20" or "3,7,9".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  const auto dots = text.find("..");
  std::vector<std::uint64_t> out;
  if (dots != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, dots));
    const auto hi = std::stoull(text.substr(dots + 2));
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  } else {
    for (int v : parse_int_list(text)) out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

int cmd_gen(const std::string& type, const std::string& design_case, int example, double snr,
            int k0, int k, std::uint64_t seed, const std::string& out_path) {
  const auto shape = find_shape(type);
  if (!shape) throw InvalidInputError("unknown --type " + type + " (see shape table)");
  const DesignCase design =
      design_case == "ud" ? DesignCase::Underdetermined : DesignCase::Overdetermined;
  GenParams params;
  params.example_id = example;
  params.snr = snr;
  params.seed = seed;
  params.k0 = k0;
  params.k = k;
  const RegressionInstance inst = generate(*shape, design, params);
  save_instance(inst, out_path);
  std::cerr << "wrote " << inst.label << " (n=" << inst.n << ", p=" << inst.p << ") to "
            << out_path << '\n';
  return 0;
}

int cmd_solve(const std::string& algo, const std::string& instance_path, int k,
              const SolveFlags& flags) {
  const RegressionInstance inst = load_instance(instance_path);
  const int kk = k > 0 ? k : inst.k;
  const bench::RunRecord rec = run_algorithm(algo, inst, kk, to_config(flags));
  nlohmann::json j;
  j["label"] = rec.label;
  j["algo"] = rec.algo;
  j["k"] = kk;
  j["value"] = rec.value;
  j["elapsed_s"] = rec.elapsed;
  j["lb_calls"] = rec.lb_calls;
  j["nodes"] = rec.nodes_created;
  j["stop_reason"] = rec.stop_reason;
  j["seed"] = rec.seed;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_bench(const std::string& suite, const std::string& design_case, const std::string& ks,
              const std::string& snrs, const std::string& examples, const std::string& seeds,
              const std::string& algos, int k0, const std::string& out_dir, int jobs,
              const SolveFlags& flags) {
  std::filesystem::create_directories(out_dir);
  const DesignCase design =
      design_case == "ud" ? DesignCase::Underdetermined : DesignCase::Overdetermined;

  std::vector<ShapeSpec> shapes;
  for (const ShapeSpec& s : shape_table())
    if (s.name.rfind(suite + "-", 0) == 0) shapes.push_back(s);
  if (shapes.empty()) {
    const auto one = find_shape(suite);  // allow a single shape name too
    if (!one) throw InvalidInputError("unknown --suite " + suite);
    shapes.push_back(*one);
  }

  struct Job {
    ShapeSpec shape;
    int example;
    double snr;
    std::uint64_t seed;
    int k;
    std::string algo;
  };
  std::vector<Job> work;
  for (const ShapeSpec& shape : shapes)
    for (int example : parse_int_list(examples))
      for (double snr : parse_double_list(snrs))
        for (std::uint64_t seed : parse_seeds(seeds))
          for (int k : parse_int_list(ks))
            for (const std::string& algo : parse_string_list(algos))
              work.push_back(Job{shape, example, snr, seed, k, algo});

  const SolverConfig cfg = to_config(flags);
  std::vector<bench::RunRecord> records(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      const Job& job = work[i];
      GenParams params;
      params.example_id = job.example;
      params.snr = job.snr;
      params.seed = job.seed;
      params.k0 = std::min(k0, job.shape.p - 1);
      params.k = job.k;
      const RegressionInstance inst = generate(job.shape, design, params);
      records[i] = run_algorithm(job.algo, inst, job.k, cfg);
      std::lock_guard<std::mutex> lock(log_mutex);
      std::cerr << records[i].label << " seed=" << records[i].seed << ' ' << records[i].algo
                << ": value=" << records[i].value << " lb_calls=" << records[i].lb_calls << " ("
                << records[i].elapsed << " s, " << records[i].stop_reason << ")\n";
    }
  };
  const int nthreads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Deterministic output order regardless of worker interleaving.
  std::stable_sort(records.begin(), records.end(),
                   [](const bench::RunRecord& a, const bench::RunRecord& b) {
                     if (a.label != b.label) return a.label < b.label;
                     if (a.seed != b.seed) return a.seed < b.seed;
                     return a.algo < b.algo;
                   });
  const std::string runs_path = (std::filesystem::path(out_dir) / "runs.csv").string();
  bench::write_runs_csv(runs_path, records);

  nlohmann::json manifest;
  manifest["suite"] = suite;
  manifest["case"] = design_case;
  manifest["k"] = parse_int_list(ks);
  manifest["snr"] = parse_double_list(snrs);
  manifest["examples"] = parse_int_list(examples);
  manifest["seeds"] = parse_seeds(seeds);
  manifest["algos"] = parse_string_list(algos);
  manifest["k0"] = k0;
  manifest["select"] = flags.select;
  manifest["max_iter"] = flags.max_iter;
  manifest["time_limit_s"] = flags.time_limit;
  manifest["soft_iters"] = flags.soft_iters;
  manifest["soft_time_s"] = flags.soft_time;
  std::ofstream(std::filesystem::path(out_dir) / "manifest.json") << manifest.dump(2) << '\n';
  std::cerr << "wrote " << records.size() << " runs to " << runs_path << '\n';
  return 0;
}

int cmd_report(const std::string& runs, const std::string& metric, const std::string& profile_out,
               const std::string& boxplot_out) {
  std::filesystem::path path(runs);
  if (std::filesystem::is_directory(path)) path /= "runs.csv";
  const auto records = bench::read_runs_csv(path.string());
  if (records.empty()) throw InvalidInputError("no runs in " + path.string());

  // A problem is one (label, seed) pair; f* is the best value any algorithm found.
  auto problem_key = [](const bench::RunRecord& r) {
    return r.label + "#seed" + std::to_string(r.seed);
  };
  std::map<std::string, double> best;
  for (const auto& r : records) {
    auto [it, inserted] = best.emplace(problem_key(r), r.value);
    if (!inserted) it->second = std::min(it->second, r.value);
  }

  std::vector<bench::Measurement> measurements;
  std::map<std::string, std::vector<double>> per_solver;
  for (const auto& r : records) {
    double t;
    if (metric == "time") {
      t = r.elapsed;
    } else {
      const double f_star = best.at(problem_key(r));
      if (f_star == 0.0) continue;  // undefined gap for this problem
      t = bench::relative_gap_percent(r.value, f_star);
    }
    measurements.push_back({problem_key(r), r.algo, t});
    per_solver[r.algo].push_back(t);
  }

  if (!boxplot_out.empty()) {
    std::ofstream out(boxplot_out);
    out << "algo,q25,median,q75,lower_extreme,upper_extreme,outliers\n";
    out.precision(17);
    for (const auto& [algo, sample] : per_solver) {
      const auto s = bench::boxplot_stats(sample);
      out << algo << ',' << s.q25 << ',' << s.median << ',' << s.q75 << ',' << s.lower_extreme
          << ',' << s.upper_extreme << ',';
      for (std::size_t i = 0; i < s.outliers.size(); ++i) {
        if (i > 0) out << ';';
        out << s.outliers[i];
      }
      out << '\n';
    }
    std::cerr << "wrote box-plot summary to " << boxplot_out << '\n';
  }

  if (!profile_out.empty()) {
    const auto profiles = bench::performance_profile(measurements);
    std::ofstream out(profile_out);
    out << "algo,ratio,fraction\n";
    out.precision(17);
    for (const auto& [algo, points] : profiles)
      for (const auto& pt : points) out << algo << ',' << pt.ratio << ',' << pt.fraction << '\n';
    std::cerr << "wrote performance profile to " << profile_out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cardinality-constrained quadratic optimization solvers and benchmark harness"};
  app.require_subcommand(1);

  // gen
  std::string gen_type = "small-1", gen_case = "od", gen_out = "instance.json";
  int gen_example = 2, gen_k0 = 10, gen_k = 0;
  double gen_snr = 1.0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic regression instance");
  gen->add_option("--type", gen_type, "Shape name, e.g. small-1, medium-3")->required();
  gen->add_option("--case", gen_case, "od (p<n) or ud (p>n)")->check(CLI::IsMember({"od", "ud"}));
  gen->add_option("--example", gen_example, "beta0 pattern 1|2|3")->check(CLI::Range(1, 3));
  gen->add_option("--snr", gen_snr, "Signal-to-noise ratio");
  gen->add_option("--k0", gen_k0, "True sparsity of beta0");
  gen->add_option("--k", gen_k, "Default target sparsity stored in the instance");
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--out", gen_out, "Output JSON path")->required();

  // solve
  std::string solve_algo, solve_instance;
  int solve_k = 0;
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance");
  solve->add_option("--algo", solve_algo, "ibb|bb|sfs|oracle")
      ->required()
      ->check(CLI::IsMember({"ibb", "bb", "sfs", "oracle"}));
  solve->add_option("--instance", solve_instance, "Instance JSON path")->required();
  solve->add_option("--k", solve_k, "Target sparsity (defaults to the instance's k)");
  add_solver_flags(solve, solve_flags);

  // bench
  std::string bench_suite = "small", bench_case = "od", bench_ks = "5,10";
  std::string bench_snrs = "0.05,0.5,1,5", bench_examples = "1,2,3", bench_seeds = "1..20";
  std::string bench_algos = "ibb,bb,sfs", bench_out = "bench_out";
  int bench_k0 = 10, bench_jobs = 1;
  SolveFlags bench_flags;
  auto* benchc = app.add_subcommand("bench", "Sweep a suite into runs.csv");
  benchc->add_option("--suite", bench_suite, "small|medium|large or one shape name");
  benchc->add_option("--case", bench_case, "od|ud")->check(CLI::IsMember({"od", "ud"}));
  benchc->add_option("--k", bench_ks, "Comma list of target sparsities");
  benchc->add_option("--snr", bench_snrs, "Comma list of SNR values");
  benchc->add_option("--examples", bench_examples, "Comma list of beta0 patterns");
  benchc->add_option("--seeds", bench_seeds, "Range lo..hi or comma list");
  benchc->add_option("--algos", bench_algos, "Comma list from ibb,bb,sfs,oracle");
  benchc->add_option("--k0", bench_k0, "True sparsity of beta0");
  benchc->add_option("--out", bench_out, "Output directory")->required();
  benchc->add_option("--jobs", bench_jobs, "Parallel workers (runs stay single-threaded)");
  add_solver_flags(benchc, bench_flags);

  // report
  std::string report_runs, report_metric = "time", report_profile, report_boxplot;
  auto* report = app.add_subcommand("report", "Profiles and box plots from run CSVs");
  report->add_option("--runs", report_runs, "runs.csv path or its directory")->required();
  report->add_option("--metric", report_metric, "time|gap")->check(CLI::IsMember({"time", "gap"}));
  report->add_option("--profile", report_profile, "Performance-profile CSV output path");
  report->add_option("--boxplot", report_boxplot, "Box-plot summary CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(gen_type, gen_case, gen_example, gen_snr, gen_k0, gen_k, gen_seed, gen_out);
    if (solve->parsed()) return cmd_solve(solve_algo, solve_instance, solve_k, solve_flags);
    if (benchc->parsed())
      return cmd_bench(bench_suite, bench_case, bench_ks, bench_snrs, bench_examples, bench_seeds,
                       bench_algos, bench_k0, bench_out, bench_jobs, bench_flags);
    if (report->parsed())
      return cmd_report(report_runs, report_metric, report_profile, report_boxplot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
