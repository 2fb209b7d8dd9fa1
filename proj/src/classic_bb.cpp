#include "ccqo/classic_bb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <vector>

#include "ccqo/qp_core.hpp"

namespace ccqo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Frame {
  IndexSet retained;       // features still in the model, |retained| = p - level
  IndexSet avail;          // features this subtree may still delete
  double value = 0.0;      // q(retained), meaningful when evaluated
  bool evaluated = false;  // right-most chain nodes skip their evaluation
  int level = 0;           // number of features deleted so far
};

IndexSet erase_sorted(const IndexSet& s, int x) {
  IndexSet out;
  out.reserve(s.size());
  for (int i : s)
    if (i != x) out.push_back(i);
  return out;
}

}  // namespace

SolveResult solve_bb(const QuadraticObjective& obj, const SearchBox& box, int k,
                     const SolverConfig& cfg) {
  const int p = obj.dim();
  if (k < 1 || k >= p) throw InvalidInputError("need 1 <= k < p");
  if (box.dim() != p) throw InvalidInputError("box dimension does not match objective");
  cfg.validate();

  const auto t0 = Clock::now();
  const int depth = p - k;  // deletions from the full model down to k features
  const bool pruning = !cfg.disable_bound_deletion;

  SolveResult res;
  res.stop_reason = StopReason::Exhausted;

  long lb_calls = 0;
  auto criterion = [&](const IndexSet& retained) {
    ++lb_calls;
    return lower_bound(obj, box, retained, cfg.qp_tol);
  };

  Vector best_point = Vector::Zero(p);
  double best_value = obj.c();
  long last_improve_iter = 0;
  auto last_improve_time = t0;
  long iter = 0;
  auto try_improve = [&](const Vector& point, double value) {
    if (value < best_value) {
      best_point = point;
      best_value = value;
      last_improve_iter = iter;
      last_improve_time = Clock::now();
    }
  };

  std::vector<Frame> stack;
  {
    const QpSolution root = criterion(full_index_set(p));
    stack.push_back(Frame{full_index_set(p), full_index_set(p), root.value, true, 0});
    res.nodes_created = 1;
  }

  while (!stack.empty()) {
    if (seconds_since(t0) >= cfg.hard_time_limit) {
      res.stop_reason = StopReason::HardTime;
      break;
    }
    if (iter >= cfg.max_iterations) {
      res.stop_reason = StopReason::HardIter;
      break;
    }
    if (iter - last_improve_iter >= cfg.soft_no_improve_iters) {
      res.stop_reason = StopReason::SoftNoImproveIters;
      break;
    }
    if (seconds_since(last_improve_time) >= cfg.soft_no_improve_time) {
      res.stop_reason = StopReason::SoftNoImproveTime;
      break;
    }

    Frame f = std::move(stack.back());
    stack.pop_back();
    ++iter;

    // Deleting features never decreases the criterion, so nothing below can
    // strictly beat the incumbent.
    if (pruning && f.evaluated && f.value >= best_value) continue;

    const int remaining = depth - f.level;
    const IndexSet& A = f.avail;
    const int m = static_cast<int>(A.size()) - remaining + 1;

    if (remaining == 1) {
      // All children are leaves: every candidate deletion is a feasible model.
      for (int s : A) {
        ++res.nodes_created;
        const QpSolution sol = criterion(erase_sorted(f.retained, s));
        try_improve(sol.point, sol.value);
      }
      continue;
    }

    if (m == 1) {
      // Single-chain subtree: descend without evaluating (covered by its leaf).
      ++res.nodes_created;
      stack.push_back(Frame{erase_sorted(f.retained, A.front()), erase_sorted(A, A.front()),
                            0.0, false, f.level + 1});
      continue;
    }

    std::vector<int> order(A.begin(), A.end());
    std::vector<double> child_value(A.size(), 0.0);
    std::vector<bool> child_evaluated(A.size(), false);
    if (cfg.in_level_ordering) {
      // Evaluate every candidate; the values order the children (ascending
      // gain, i.e. least damaging deletions get the largest subtrees) and
      // serve as the children's criterion values.
      std::vector<std::pair<double, int>> vals;
      vals.reserve(A.size());
      for (int s : A) vals.emplace_back(criterion(erase_sorted(f.retained, s)).value, s);
      std::sort(vals.begin(), vals.end());
      for (std::size_t i = 0; i < vals.size(); ++i) {
        order[i] = vals[i].second;
        child_value[i] = vals[i].first;
        child_evaluated[i] = true;
      }
    } else {
      for (int i = 0; i + 1 < m; ++i) {
        child_value[static_cast<std::size_t>(i)] =
            criterion(erase_sorted(f.retained, order[static_cast<std::size_t>(i)])).value;
        child_evaluated[static_cast<std::size_t>(i)] = true;
      }
      // Right-most child stays unevaluated (minimum-solution-tree skip).
    }

    // Child i may delete order[i] and passes order[i+1..] of the candidates on.
    std::vector<Frame> children;
    children.reserve(static_cast<std::size_t>(m));
    IndexSet avail_rest = A;
    for (int i = 0; i < m; ++i) {
      const int s = order[static_cast<std::size_t>(i)];
      avail_rest = erase_sorted(avail_rest, s);
      ++res.nodes_created;
      if (pruning && child_evaluated[static_cast<std::size_t>(i)] &&
          child_value[static_cast<std::size_t>(i)] >= best_value)
        continue;
      children.push_back(Frame{erase_sorted(f.retained, s), avail_rest,
                               child_value[static_cast<std::size_t>(i)],
                               child_evaluated[static_cast<std::size_t>(i)], f.level + 1});
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }

  res.point = best_point;
  res.value = best_value;
  res.iterations = iter;
  res.lb_calls = lb_calls;
  res.elapsed = seconds_since(t0);
  return res;
}

}  // namespace ccqo
