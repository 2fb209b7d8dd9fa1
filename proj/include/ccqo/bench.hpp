#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccqo/qp_core.hpp"
#include "ccqo/types.hpp"

namespace ccqo::bench {

struct OracleResult {
  IndexSet support;
  Vector point;  // full p-vector
  double value = 0.0;
  long lb_calls = 0;
};

/// Enumerate every size-k support and solve the restricted box QP; smaller
/// supports are interior to some size-k restriction because every box
/// contains 0. Guarded to C(p,k) <= 1e6 subsets (TooLargeError).
OracleResult brute_force_oracle(const QuadraticObjective& obj, const SearchBox& box, int k,
                                double tol = 1e-9);

/// 100 * (f_tilde - f_star) / f_star. Throws ZeroBestError when f_star == 0.
double relative_gap_percent(double f_tilde, double f_star);

/// C(p+1, k+1) - C(p-1, k+1): bound evaluations both solvers need to exhaust
/// the tree when nothing is deleted by bounds (and BB runs unordered).
std::uint64_t expected_lb_calls(int p, int k);

/// One benchmark run.
struct RunRecord {
  std::string label;
  std::string algo;  // ibb | bb | sfs | oracle
  double value = 0.0;
  double elapsed = 0.0;
  long lb_calls = 0;
  long nodes_created = 0;
  std::string stop_reason;
  std::uint64_t seed = 0;
};

struct Measurement {
  std::string instance;
  std::string solver;
  double t = 0.0;
};

struct ProfilePoint {
  double ratio = 1.0;     // tau >= 1
  double fraction = 0.0;  // share of problems with ratio <= tau
};

/// Performance profiles: per solver, the empirical CDF of t divided by the
/// best t on the same instance. Requires a full (instance x solver) grid with
/// positive measures; otherwise MissingCellError / InvalidInputError.
std::map<std::string, std::vector<ProfilePoint>> performance_profile(
    const std::vector<Measurement>& measurements);

struct BoxplotSummary {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double lower_extreme = 0.0;
  double upper_extreme = 0.0;
  std::vector<double> outliers;  // beyond 1.5 * IQR from the box edges
};

/// Five-number summary with the 1.5*IQR outlier rule. Percentiles use linear
/// interpolation between order statistics.
BoxplotSummary boxplot_stats(std::vector<double> sample);

struct RecurrenceEntry {
  int p = 0;
  int k = 0;
  long nodes = 0;
};

struct RecurrenceReport {
  std::vector<RecurrenceEntry> entries;
  std::vector<std::string> violations;
  bool ok = false;
};

/// Instrumented check of the full-tree node-count recurrence
/// T(p,k) = T(p-1,k) + T(p-1,k-1) + 1 over all 1 <= k < p <= p_max
/// (deletion disabled), including T(5,2) = 19. p_max <= 9.
RecurrenceReport tree_size_recurrence_check(int p_max);

/// CSV round trip for run records; the gap column is derived per label group
/// at write time (NA when the group's best value is 0).
void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_csv(const std::string& path);

}  // namespace ccqo::bench
