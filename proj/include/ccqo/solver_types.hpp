#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccqo/flag_box.hpp"
#include "ccqo/types.hpp"

namespace ccqo {

enum class Selection { BestFirst, DepthFirst };

enum class StopReason {
  Exhausted,           // node list emptied; the incumbent is the global optimum
  HardTime,
  HardIter,
  SoftNoImproveIters,
  SoftNoImproveTime,
};

struct SolverConfig {
  Selection selection = Selection::BestFirst;
  long max_iterations = 1'000'000;
  double hard_time_limit = 600.0;        // seconds, wall clock
  long soft_no_improve_iters = 500;
  double soft_no_improve_time = 300.0;   // seconds, wall clock
  double qp_tol = 1e-9;

  // Instrumentation: skip incumbent-vs-bound deletions (and feasibility
  // sampling) so the full enumeration tree is generated.
  bool disable_bound_deletion = false;

  // Feasibility sampling frequency: SFS always runs at the root; a child
  // additionally gets a pass when its creation index is a multiple of this.
  // 0 means root only.
  int sfs_every = 100;

  // Classical BB only: order deletion candidates by ascending gain.
  bool in_level_ordering = true;

  // Record incumbent history and bound-deleted boxes in the result.
  bool collect_audit = false;

  // Per-iteration trace lines (iteration, list size, incumbent, node flags).
  std::ostream* trace = nullptr;

  void validate() const;
};

struct SolveResult {
  Vector point;
  double value = 0.0;
  long iterations = 0;
  long lb_calls = 0;       // restricted box-QP solves actually run (inherited bounds excluded)
  long nodes_created = 0;  // root plus every child box materialized
  double elapsed = 0.0;    // seconds around the solve only
  StopReason stop_reason = StopReason::Exhausted;

  // Populated when SolverConfig::collect_audit is set.
  std::vector<double> incumbent_history;
  std::vector<FlagBox> deleted_boxes;
};

const char* to_string(StopReason reason);
const char* to_string(Selection selection);

}  // namespace ccqo
