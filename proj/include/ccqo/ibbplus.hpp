#pragma once

#include "ccqo/flag_box.hpp"
#include "ccqo/qp_core.hpp"
#include "ccqo/solver_types.hpp"
#include "ccqo/types.hpp"

namespace ccqo {

/// List entry of the branch-and-bound: a flag box, the best feasible point
/// known when it was stored, its tight lower bound, and the bound's minimizer
/// (used to pick the branching coordinate). A child forcing a coordinate
/// nonzero keeps its parent's support, hence inherits bound and minimizer
/// without a new QP solve.
struct Node {
  FlagBox fb;
  Vector feasible_point;
  double feasible_value = 0.0;
  double lower_bound_value = 0.0;
  bool lb_inherited = false;
  Vector lb_minimizer;
  long insertion_order = 0;
};

struct Incumbent {
  Vector point;
  double value = 0.0;
};

/// True when a should be selected before b under the given rule.
/// Best-first: smallest lower bound; depth-first: most flag-2 coordinates.
/// Ties go to the earlier insertion.
bool selected_before(const Node& a, const Node& b, Selection selection);

/// Selection over an explicit list (the solver keeps a heap with the same
/// ordering). Throws EmptyListError on an empty list.
const Node& select_node(const std::vector<Node>& list, Selection selection);

/// Branching coordinate: among flag-1 coordinates, the one maximizing |x_i| of
/// the node's bound minimizer; ties to the lowest index; all-zero magnitudes
/// fall back to the lowest-index flag-1 coordinate.
int choose_branch_coordinate(const FlagBox& fb, const Vector& lb_minimizer);

/// Strict-improvement incumbent update; the candidate must be feasible
/// (at most k nonzeros, inside the box).
Incumbent update_incumbent(const Incumbent& inc, const Vector& candidate_point,
                           double candidate_value, const SearchBox& box, int k);

/// Cardinality-constrained minimization of the objective over the box by
/// interval-style branch-and-bound on integer flag boxes, branching only at
/// zero, with tight lower bounds and SFS feasibility sampling. Returns the
/// global optimum when it stops with StopReason::Exhausted.
SolveResult solve_ibb(const QuadraticObjective& obj, const SearchBox& box, int k,
                      const SolverConfig& cfg = {});

}  // namespace ccqo
