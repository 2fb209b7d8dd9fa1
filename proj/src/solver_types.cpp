#include "ccqo/solver_types.hpp"

namespace ccqo {

void SolverConfig::validate() const {
  if (max_iterations <= 0) throw InvalidInputError("max_iterations must be positive");
  if (!(hard_time_limit > 0.0)) throw InvalidInputError("hard_time_limit must be positive");
  if (soft_no_improve_iters <= 0) throw InvalidInputError("soft_no_improve_iters must be positive");
  if (!(soft_no_improve_time > 0.0)) throw InvalidInputError("soft_no_improve_time must be positive");
  if (!(qp_tol > 0.0)) throw InvalidInputError("qp_tol must be positive");
  if (sfs_every < 0) throw InvalidInputError("sfs_every must be >= 0");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Exhausted: return "Exhausted";
    case StopReason::HardTime: return "HardTime";
    case StopReason::HardIter: return "HardIter";
    case StopReason::SoftNoImproveIters: return "SoftNoImproveIters";
    case StopReason::SoftNoImproveTime: return "SoftNoImproveTime";
  }
  return "?";
}

const char* to_string(Selection selection) {
  return selection == Selection::BestFirst ? "bfs" : "dfs";
}

}  // namespace ccqo
