#include "ccqo/sfs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccqo {

namespace {

// Sorted copy with s removed.
IndexSet without(const IndexSet& support, int s) {
  IndexSet out;
  out.reserve(support.size());
  for (int i : support)
    if (i != s) out.push_back(i);
  return out;
}

// Sorted copy with s inserted.
IndexSet with(const IndexSet& support, int s) {
  IndexSet out = support;
  out.insert(std::upper_bound(out.begin(), out.end(), s), s);
  return out;
}

}  // namespace

double support_value(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support,
                     double tol) {
  return lower_bound(obj, box, support, tol).value;
}

double gain(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support, int s,
            double tol) {
  if (support.size() < 2) throw InvalidInputError("gain needs |support| >= 2");
  if (!std::binary_search(support.begin(), support.end(), s))
    throw InvalidInputError("gain: s must belong to the support");
  return support_value(obj, box, without(support, s), tol) - support_value(obj, box, support, tol);
}

double reduction(const QuadraticObjective& obj, const SearchBox& box, const IndexSet& support,
                 int s, double tol) {
  if (s < 0 || s >= obj.dim() || std::binary_search(support.begin(), support.end(), s))
    throw InvalidInputError("reduction: s must lie outside the support");
  return support_value(obj, box, support, tol) - support_value(obj, box, with(support, s), tol);
}

IndexSet top_k_by_magnitude(const Vector& x, const IndexSet& candidates, int k) {
  IndexSet picked = candidates;
  std::stable_sort(picked.begin(), picked.end(), [&](int a, int b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  picked.resize(static_cast<std::size_t>(std::min<std::size_t>(picked.size(), static_cast<std::size_t>(k))));
  std::sort(picked.begin(), picked.end());
  return picked;
}

IndexSet default_initial_support(const QuadraticObjective& obj, const SearchBox& box, int k,
                                 double tol) {
  if (k < 1 || k > obj.dim()) throw InvalidInputError("need 1 <= k <= p");
  const QpSolution root = minimize_box_qp(obj, box, tol);
  return top_k_by_magnitude(root.point, full_index_set(obj.dim()), k);
}

SfsResult run_sfs(const QuadraticObjective& obj, const SearchBox& box, int k,
                  const IndexSet& initial_support, double tol) {
  const int p = obj.dim();
  if (k < 1 || k >= p) throw InvalidInputError("need 1 <= k < p");
  if (static_cast<int>(initial_support.size()) != k || !is_valid_index_set(initial_support, p))
    throw InvalidInputError("initial support must be a sorted set of k valid indices");

  SfsResult res;
  res.support = initial_support;

  // q(I) evaluations share one entry point so call accounting matches the
  // rest of the library: one restricted QP per non-empty support.
  auto solve_support = [&](const IndexSet& s) {
    if (s.empty()) return QpSolution{Vector::Zero(p), obj.c(), 0.0, 0};
    ++res.qp_calls;
    return lower_bound(obj, box, s, tol);
  };

  QpSolution cur = solve_support(res.support);
  res.value_history.push_back(cur.value);

  while (true) {
    ++res.iterations;

    // Drop: j = argmin_{s in I} G(s); q(I) is common, so compare q(I \ s).
    int drop = -1;
    double drop_val = std::numeric_limits<double>::infinity();
    for (int s : res.support) {
      const double v = solve_support(without(res.support, s)).value;
      if (v < drop_val) {
        drop_val = v;
        drop = s;
      }
    }

    // Pick: i = argmax_{s not in I} R(s); equivalently argmin q(I ∪ s).
    int pick = -1;
    double pick_val = std::numeric_limits<double>::infinity();
    for (int s = 0; s < p; ++s) {
      if (std::binary_search(res.support.begin(), res.support.end(), s)) continue;
      const double v = solve_support(with(res.support, s)).value;
      if (v < pick_val) {
        pick_val = v;
        pick = s;
      }
    }

    const IndexSet swapped = with(without(res.support, drop), pick);
    const QpSolution cand = solve_support(swapped);
    if (cand.value < cur.value) {
      res.support = swapped;
      cur = cand;
      ++res.switches;
      res.value_history.push_back(cur.value);
    } else {
      break;
    }
  }

  res.point = cur.point;
  res.value = cur.value;
  return res;
}

}  // namespace ccqo
