#pragma once

#include "ccqo/solver_types.hpp"
#include "ccqo/types.hpp"

namespace ccqo {

/// Classical feature-selection branch-and-bound baseline: depth-first over the
/// deletion tree (one feature removed per level, down to p-k deletions), with
/// monotone-criterion pruning against the incumbent, optional in-level
/// ordering of deletion candidates by ascending gain, and the
/// minimum-solution-tree rule that skips the criterion evaluation of each
/// right-most non-leaf child (a single chain covered by its leaf).
///
/// With cfg.disable_bound_deletion (pruning off) and cfg.in_level_ordering
/// off, the number of criterion evaluations equals the closed-form count
/// shared with the flag-box solver.
SolveResult solve_bb(const QuadraticObjective& obj, const SearchBox& box, int k,
                     const SolverConfig& cfg = {});

}  // namespace ccqo
