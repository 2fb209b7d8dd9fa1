#include "ccqo/ibbplus.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <queue>
#include <utility>

#include "ccqo/sfs.hpp"

namespace ccqo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct NodeCompare {
  Selection selection;
  // std::priority_queue pops its comparator's maximum, so "a after b".
  bool operator()(const Node& a, const Node& b) const { return selected_before(b, a, selection); }
};

}  // namespace

bool selected_before(const Node& a, const Node& b, Selection selection) {
  if (selection == Selection::BestFirst) {
    if (a.lower_bound_value != b.lower_bound_value)
      return a.lower_bound_value < b.lower_bound_value;
  } else {
    if (a.fb.count_two() != b.fb.count_two()) return a.fb.count_two() > b.fb.count_two();
  }
  return a.insertion_order < b.insertion_order;
}

const Node& select_node(const std::vector<Node>& list, Selection selection) {
  if (list.empty()) throw EmptyListError();
  const Node* best = &list.front();
  for (const Node& n : list)
    if (selected_before(n, *best, selection)) best = &n;
  return *best;
}

int choose_branch_coordinate(const FlagBox& fb, const Vector& lb_minimizer) {
  int eta = -1;
  double best = -1.0;
  for (int i = 0; i < fb.dim(); ++i) {
    if (fb.flag(i) != 1) continue;
    const double mag = std::abs(lb_minimizer[i]);
    if (mag > best) {
      best = mag;
      eta = i;
    }
  }
  if (eta < 0) throw NoBranchableCoordinateError();
  return eta;
}

Incumbent update_incumbent(const Incumbent& inc, const Vector& candidate_point,
                           double candidate_value, const SearchBox& box, int k) {
  if (count_nonzeros(candidate_point) > k)
    throw InfeasibleCandidateError("candidate has more than k nonzeros");
  if (!box.contains(candidate_point))
    throw InfeasibleCandidateError("candidate lies outside the box");
  if (candidate_value < inc.value) return Incumbent{candidate_point, candidate_value};
  return inc;
}

SolveResult solve_ibb(const QuadraticObjective& obj, const SearchBox& box, int k,
                      const SolverConfig& cfg) {
  const int p = obj.dim();
  if (k < 1 || k >= p) throw InvalidInputError("need 1 <= k < p");
  if (box.dim() != p) throw InvalidInputError("box dimension does not match objective");
  cfg.validate();

  const auto t0 = Clock::now();
  SolveResult res;
  res.stop_reason = StopReason::Exhausted;

  long lb_calls = 0;
  auto bound_solve = [&](const IndexSet& support) {
    if (!support.empty()) ++lb_calls;
    return lower_bound(obj, box, support, cfg.qp_tol);
  };

  // The zero point is always feasible, so the incumbent starts defined.
  Incumbent inc{Vector::Zero(p), obj.c()};
  long last_improve_iter = 0;
  auto last_improve_time = t0;
  auto try_improve = [&](const Vector& point, double value, long iter) {
    if (value < inc.value) {
      inc.point = point;
      inc.value = value;
      last_improve_iter = iter;
      last_improve_time = Clock::now();
    }
  };

  const QpSolution root_sol = bound_solve(full_index_set(p));

  const bool sampling = !cfg.disable_bound_deletion;
  if (sampling) {
    const IndexSet seed = top_k_by_magnitude(root_sol.point, full_index_set(p), k);
    const SfsResult sfs = run_sfs(obj, box, k, seed, cfg.qp_tol);
    lb_calls += sfs.qp_calls;
    try_improve(sfs.point, sfs.value, 0);
  }

  long insertion_counter = 0;
  std::priority_queue<Node, std::vector<Node>, NodeCompare> list(NodeCompare{cfg.selection});
  list.push(Node{initial_flagbox(p), inc.point, inc.value, root_sol.value, false, root_sol.point,
                 insertion_counter++});
  res.nodes_created = 1;

  long iter = 0;
  while (true) {
    if (list.empty()) {
      res.stop_reason = StopReason::Exhausted;
      break;
    }
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

    Node cur = std::move(const_cast<Node&>(list.top()));
    list.pop();
    ++iter;

    if (cfg.trace != nullptr) {
      (*cfg.trace) << "iter=" << iter << " list=" << list.size() << " incumbent=" << inc.value
                   << " node=" << cur.fb.to_string() << " lb=" << cur.lower_bound_value << '\n';
    }

    const int eta = choose_branch_coordinate(cur.fb, cur.lb_minimizer);
    auto [child_zero, child_two] = cur.fb.branch(eta);

    for (int which = 0; which < 2; ++which) {
      const FlagBox& child = which == 0 ? child_zero : child_two;
      ++res.nodes_created;
      const DeletionVerdict verdict = check_deletion(child, k);
      if (verdict.kind == VerdictKind::Infeasible) continue;
      if (verdict.kind != VerdictKind::Continue) {
        // Terminal: the bound over the resolved support is attained by a
        // feasible point (its support has exactly k coordinates).
        const QpSolution sol = bound_solve(verdict.support);
        try_improve(sol.point, sol.value, iter);
        continue;
      }

      QpSolution child_sol;
      bool inherited;
      if (which == 1) {
        // Forcing a coordinate nonzero keeps the support, so the bound and
        // its minimizer carry over unchanged.
        child_sol = QpSolution{cur.lb_minimizer, cur.lower_bound_value, 0.0, 0};
        inherited = true;
      } else {
        child_sol = bound_solve(child.support());
        inherited = false;
      }

      if (sampling && cfg.sfs_every > 0 && res.nodes_created % cfg.sfs_every == 0) {
        IndexSet seed = child.indices_with_flag(2);
        const IndexSet pad =
            top_k_by_magnitude(child_sol.point, child.indices_with_flag(1),
                               k - static_cast<int>(seed.size()));
        seed.insert(seed.end(), pad.begin(), pad.end());
        std::sort(seed.begin(), seed.end());
        if (static_cast<int>(seed.size()) == k) {
          const SfsResult sfs = run_sfs(obj, box, k, seed, cfg.qp_tol);
          lb_calls += sfs.qp_calls;
          try_improve(sfs.point, sfs.value, iter);
        }
      }

      if (!cfg.disable_bound_deletion && inc.value < child_sol.value) {
        if (cfg.collect_audit) res.deleted_boxes.push_back(child);
        continue;
      }
      list.push(Node{child, inc.point, inc.value, child_sol.value, inherited,
                     child_sol.point, insertion_counter++});
    }

    if (cfg.collect_audit) res.incumbent_history.push_back(inc.value);
  }

  res.point = inc.point;
  res.value = inc.value;
  res.iterations = iter;
  res.lb_calls = lb_calls;
  res.elapsed = seconds_since(t0);
  return res;
}

}  // namespace ccqo
