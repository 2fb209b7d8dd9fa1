#pragma once

#include <functional>

#include "ccqo/types.hpp"

namespace ccqo {

/// Solution of a box-constrained convex QP. `point` has the dimension of the
/// problem that was solved (|support| for restricted solves before scattering).
struct QpSolution {
  Vector point;
  double value = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// Max violation of the box KKT conditions at x: at the lower bound the
/// gradient must be >= 0, at the upper bound <= 0, in the interior 0.
double kkt_residual(const QuadraticObjective& obj, const SearchBox& box, const Vector& x);

/// Global minimum of the convex quadratic over the box, to KKT residual <= tol.
/// Projected gradient with exact line search along the projection arc, plus a
/// subspace Newton refinement on the free coordinates. Iteration cap is 50*p;
/// throws NonConvergenceError beyond it.
QpSolution minimize_box_qp(const QuadraticObjective& obj, const SearchBox& box, double tol,
                           const Vector* warm_start = nullptr);

/// Restriction (Q_I, q_I, c) of the objective to a support set.
/// Throws EmptySupportError for an empty support (f(0) = c is the caller's case).
QuadraticObjective restrict_objective(const QuadraticObjective& obj, const IndexSet& support);

/// Tight lower bound over the box region whose off-support coordinates are
/// fixed to zero: min of the restricted objective over the closed restricted
/// box. The returned point is scattered back to a full p-vector, so it doubles
/// as a feasible candidate when |support| <= k. Empty support gives (0, c).
QpSolution lower_bound(const QuadraticObjective& obj, const SearchBox& box,
                       const IndexSet& support, double tol);

/// Thread-local hook invoked with (restricted objective, restricted box,
/// solution) after every successful minimize_box_qp. Used by verification
/// harnesses to re-check KKT certificates independently. Pass nullptr to clear.
using QpAuditHook = std::function<void(const QuadraticObjective&, const SearchBox&, const QpSolution&)>;
void set_qp_audit_hook(QpAuditHook hook);

}  // namespace ccqo
