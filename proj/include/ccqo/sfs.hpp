#pragma once

#include "ccqo/qp_core.hpp"
#include "ccqo/types.hpp"

namespace ccqo {

/// q(I): minimum of the objective over the box with off-support coordinates
/// fixed to zero. Value-only convenience over lower_bound; empty support
/// gives c without a QP solve.
double support_value(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support,
                     double tol);

/// G(s) = q(I \ {s}) - q(I) for s in I. Nonnegative up to tolerance: dropping
/// a free coordinate cannot lower the minimum.
double gain(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support, int s,
            double tol);

/// R(s) = q(I) - q(I ∪ {s}) for s outside I. Nonnegative up to tolerance.
double reduction(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support,
                 int s, double tol);

/// Default initial support: the k largest |beta_i| of the full box-QP
/// minimizer, ties to the lowest index.
IndexSet default_initial_support(const QuadraticObjective& obj, const SearchBox& box, int k,
                                 double tol);

/// Indices of the k largest |x_i| among the candidates, ties to lowest index.
IndexSet top_k_by_magnitude(const Vector& x, const IndexSet& candidates, int k);

struct SfsResult {
  IndexSet support;
  Vector point;   // full p-vector, zeros off support
  double value = 0.0;
  long iterations = 0;
  long switches = 0;
  long qp_calls = 0;
  std::vector<double> value_history;  // q(I) after the initial solve and each switch
};

/// Sequential feature swapping over size-k supports: drop the minimum-gain
/// index, pick the maximum-reduction index, switch while the swapped support
/// strictly improves. Strictly decreasing q(I) guarantees termination.
SfsResult run_sfs(const QuadraticObjective& obj, const SearchBox& box, int k,
                  const IndexSet& initial_support, double tol);

}  // namespace ccqo
