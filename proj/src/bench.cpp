#include "ccqo/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ccqo/ibbplus.hpp"

namespace ccqo::bench {

namespace {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // Multiply before dividing; the running value is always an integer.
    const std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    std::uint64_t tmp;
    if (__builtin_mul_overflow(result, num, &tmp))
      throw TooLargeError("binomial coefficient overflows 64 bits");
    result = tmp / static_cast<std::uint64_t>(i);
  }
  return result;
}

// Interpolated percentile on a sorted sample (numpy "linear" convention).
double percentile(const std::vector<double>& sorted, double frac) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = frac * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

OracleResult brute_force_oracle(const QuadraticObjective& obj, const SearchBox& box, int k,
                                double tol) {
  const int p = obj.dim();
  if (k < 1 || k > p) throw InvalidInputError("need 1 <= k <= p");
  if (box.dim() != p) throw InvalidInputError("box dimension does not match objective");
  const std::uint64_t count = binomial(p, k);
  if (count > 1'000'000ULL)
    throw TooLargeError("C(p,k) = " + std::to_string(count) + " exceeds the 1e6 oracle guard");

  OracleResult best;
  best.value = std::numeric_limits<double>::infinity();

  IndexSet support(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;
  while (true) {
    const QpSolution sol = lower_bound(obj, box, support, tol);
    ++best.lb_calls;
    if (sol.value < best.value) {
      best.value = sol.value;
      best.point = sol.point;
      best.support = support;
    }
    // Next k-combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && support[static_cast<std::size_t>(i)] == p - k + i) --i;
    if (i < 0) break;
    ++support[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

double relative_gap_percent(double f_tilde, double f_star) {
  if (f_star == 0.0) throw ZeroBestError();
  return (f_tilde - f_star) / f_star * 100.0;
}

std::uint64_t expected_lb_calls(int p, int k) {
  if (k < 1 || k >= p) throw InvalidInputError("need 1 <= k < p");
  return binomial(p + 1, k + 1) - binomial(p - 1, k + 1);
}

std::map<std::string, std::vector<ProfilePoint>> performance_profile(
    const std::vector<Measurement>& measurements) {
  std::set<std::string> instances;
  std::set<std::string> solvers;
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const Measurement& m : measurements) {
    if (!(m.t > 0.0))
      throw InvalidInputError("performance measure must be positive (" + m.instance + ", " +
                              m.solver + ")");
    instances.insert(m.instance);
    solvers.insert(m.solver);
    if (!cell.emplace(std::make_pair(m.instance, m.solver), m.t).second)
      throw InvalidInputError("duplicate measurement for (" + m.instance + ", " + m.solver + ")");
  }
  if (instances.empty()) throw InvalidInputError("no measurements");

  std::map<std::string, double> best;
  for (const std::string& inst : instances) {
    double lo = std::numeric_limits<double>::infinity();
    for (const std::string& s : solvers) {
      const auto it = cell.find({inst, s});
      if (it == cell.end())
        throw MissingCellError("missing measurement for (" + inst + ", " + s + ")");
      lo = std::min(lo, it->second);
    }
    best[inst] = lo;
  }

  std::map<std::string, std::vector<ProfilePoint>> profiles;
  const double n = static_cast<double>(instances.size());
  for (const std::string& s : solvers) {
    std::vector<double> ratios;
    ratios.reserve(instances.size());
    for (const std::string& inst : instances) ratios.push_back(cell.at({inst, s}) / best.at(inst));
    std::sort(ratios.begin(), ratios.end());
    std::vector<ProfilePoint> pts;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const double frac = static_cast<double>(i + 1) / n;
      if (!pts.empty() && pts.back().ratio == ratios[i])
        pts.back().fraction = frac;
      else
        pts.push_back(ProfilePoint{ratios[i], frac});
    }
    profiles[s] = std::move(pts);
  }
  return profiles;
}

BoxplotSummary boxplot_stats(std::vector<double> sample) {
  if (sample.empty()) throw EmptySampleError();
  std::sort(sample.begin(), sample.end());

  BoxplotSummary s;
  s.q25 = percentile(sample, 0.25);
  s.median = percentile(sample, 0.50);
  s.q75 = percentile(sample, 0.75);
  const double iqr = s.q75 - s.q25;
  const double lo_fence = s.q25 - 1.5 * iqr;
  const double hi_fence = s.q75 + 1.5 * iqr;

  s.lower_extreme = std::numeric_limits<double>::quiet_NaN();
  s.upper_extreme = std::numeric_limits<double>::quiet_NaN();
  for (double v : sample) {
    if (v < lo_fence || v > hi_fence) {
      s.outliers.push_back(v);
    } else {
      if (std::isnan(s.lower_extreme)) s.lower_extreme = v;
      s.upper_extreme = v;
    }
  }
  // A sample where everything is an outlier cannot happen: the quartiles
  // themselves lie inside the fences.
  return s;
}

RecurrenceReport tree_size_recurrence_check(int p_max) {
  if (p_max > 9) throw TooLargeError("full-tree enumeration is limited to p_max <= 9");
  RecurrenceReport report;
  std::map<std::pair<int, int>, long> nodes;

  for (int p = 2; p <= p_max; ++p) {
    // Any valid instance gives the same tree size; deletions are off and the
    // terminality conditions depend only on flag counts.
    Matrix Q = Matrix::Identity(p, p);
    Vector q(p);
    for (int i = 0; i < p; ++i) q[i] = -1.0 - 0.25 * static_cast<double>(i);
    const QuadraticObjective obj(std::move(Q), std::move(q), 1.0);
    const SearchBox box = SearchBox::cube(p, 10.0);
    for (int k = 1; k < p; ++k) {
      SolverConfig cfg;
      cfg.disable_bound_deletion = true;
      cfg.max_iterations = 10'000'000;
      cfg.soft_no_improve_iters = 10'000'000;
      cfg.hard_time_limit = 1e9;
      cfg.soft_no_improve_time = 1e9;
      const SolveResult r = solve_ibb(obj, box, k, cfg);
      nodes[{p, k}] = r.nodes_created;
      report.entries.push_back(RecurrenceEntry{p, k, r.nodes_created});
    }
  }

  for (const auto& [pk, n] : nodes) {
    const auto [p, k] = pk;
    const auto left = nodes.find({p - 1, k});
    const auto right = nodes.find({p - 1, k - 1});
    if (left == nodes.end() || right == nodes.end()) continue;
    if (n != left->second + right->second + 1)
      report.violations.push_back("T(" + std::to_string(p) + "," + std::to_string(k) + ") = " +
                                  std::to_string(n) + " != " + std::to_string(left->second) +
                                  " + " + std::to_string(right->second) + " + 1");
  }
  if (p_max >= 5 && nodes.at({5, 2}) != 19)
    report.violations.push_back("T(5,2) = " + std::to_string(nodes.at({5, 2})) + " != 19");
  report.ok = report.violations.empty();
  return report;
}

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records) {
  // One problem is one (label, seed) pair; f* is the best value any
  // algorithm found on it.
  std::map<std::pair<std::string, std::uint64_t>, double> best;
  for (const RunRecord& r : records) {
    auto [it, inserted] = best.emplace(std::make_pair(r.label, r.seed), r.value);
    if (!inserted) it->second = std::min(it->second, r.value);
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "label,algo,value,gap_pct,elapsed_s,lb_calls,nodes,stop_reason,seed\n";
  out.precision(17);
  for (const RunRecord& r : records) {
    const double f_star = best.at({r.label, r.seed});
    out << r.label << ',' << r.algo << ',' << r.value << ',';
    if (f_star == 0.0)
      out << "NA";
    else
      out << relative_gap_percent(r.value, f_star);
    out << ',' << r.elapsed << ',' << r.lb_calls << ',' << r.nodes_created << ','
        << r.stop_reason << ',' << r.seed << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty csv " + path);
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw Error("malformed csv row: " + line);
    RunRecord r;
    r.label = fields[0];
    r.algo = fields[1];
    r.value = std::stod(fields[2]);
    r.elapsed = std::stod(fields[4]);
    r.lb_calls = std::stol(fields[5]);
    r.nodes_created = std::stol(fields[6]);
    r.stop_reason = fields[7];
    r.seed = std::stoull(fields[8]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace ccqo::bench
