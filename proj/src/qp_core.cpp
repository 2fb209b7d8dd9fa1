#include "ccqo/qp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace ccqo {

namespace {

thread_local QpAuditHook g_audit_hook;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Snap coordinates that landed within rounding distance of a bound onto it,
// so bound classification in the KKT test is exact.
void snap_to_bounds(const SearchBox& box, Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double band_lo = 1e-13 * (1.0 + std::abs(box.lower[i]));
    const double band_hi = 1e-13 * (1.0 + std::abs(box.upper[i]));
    if (x[i] - box.lower[i] <= band_lo)
      x[i] = box.lower[i];
    else if (box.upper[i] - x[i] <= band_hi)
      x[i] = box.upper[i];
  }
}

double kkt_residual_at(const SearchBox& box, const Vector& x, const Vector& g) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double v;
    if (x[i] <= box.lower[i])
      v = std::max(0.0, -g[i]);
    else if (x[i] >= box.upper[i])
      v = std::max(0.0, g[i]);
    else
      v = std::abs(g[i]);
    r = std::max(r, v);
  }
  return r;
}

// Exact minimization of f along the piecewise-linear arc t -> clamp(x - t g).
// Walks breakpoints in order, updating slope and curvature incrementally as
// coordinates hit their bounds.
Vector cauchy_arc_minimize(const QuadraticObjective& obj, const SearchBox& box, const Vector& x,
                           const Vector& g) {
  const Eigen::Index p = x.size();
  Vector d = -g;
  std::vector<std::pair<double, Eigen::Index>> breaks;
  breaks.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    if (d[i] > 0.0) {
      const double t = (box.upper[i] - x[i]) / d[i];
      if (t <= 0.0)
        d[i] = 0.0;
      else
        breaks.emplace_back(t, i);
    } else if (d[i] < 0.0) {
      const double t = (box.lower[i] - x[i]) / d[i];
      if (t <= 0.0)
        d[i] = 0.0;
      else
        breaks.emplace_back(t, i);
    }
  }
  if (breaks.empty()) return x;
  std::sort(breaks.begin(), breaks.end());

  Vector z = x;
  Vector gz = obj.gradient(z);
  Vector Qd = obj.Q() * d;
  double slope = gz.dot(d);
  double curv = d.dot(Qd);
  double t_cur = 0.0;
  std::size_t next = 0;

  while (true) {
    if (slope >= 0.0) break;
    const double t_next = next < breaks.size() ? breaks[next].first : kInf;
    const double seg = t_next - t_cur;
    const double dt_star = curv > 0.0 ? -slope / curv : kInf;
    if (dt_star < seg) {
      z += dt_star * d;
      break;
    }
    if (next >= breaks.size()) {
      // All moving coordinates have hit their bounds; nothing left to move.
      break;
    }
    z += seg * d;
    gz += seg * Qd;
    slope += seg * curv;
    t_cur = t_next;
    while (next < breaks.size() && breaks[next].first == t_cur) {
      const Eigen::Index b = breaks[next].second;
      const double db = d[b];
      z[b] = db > 0.0 ? box.upper[b] : box.lower[b];
      curv += -2.0 * db * Qd[b] + db * db * obj.Q()(b, b);
      slope -= db * gz[b];
      Qd -= db * obj.Q().col(b);
      d[b] = 0.0;
      ++next;
    }
  }
  z = box.clamp(z);
  return z;
}

enum class StepKind { None, Interior, Clipped };

// Newton step on the free coordinates with exact line search, clipped at the
// first bound crossing. Falls back to steepest descent when the reduced
// system is singular or yields a non-descent direction.
StepKind subspace_step(const QuadraticObjective& obj, const SearchBox& box, Vector& x) {
  const Eigen::Index p = x.size();
  std::vector<Eigen::Index> free_set;
  free_set.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i)
    if (x[i] > box.lower[i] && x[i] < box.upper[i]) free_set.push_back(i);
  if (free_set.empty()) return StepKind::None;

  const Eigen::Index m = static_cast<Eigen::Index>(free_set.size());
  Vector g = obj.gradient(x);
  Matrix Qff(m, m);
  Vector gf(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    gf[a] = g[free_set[static_cast<std::size_t>(a)]];
    for (Eigen::Index b = 0; b < m; ++b)
      Qff(a, b) = obj.Q()(free_set[static_cast<std::size_t>(a)], free_set[static_cast<std::size_t>(b)]);
  }

  Vector dz = Qff.ldlt().solve(-gf);
  const double gnorm = gf.lpNorm<Eigen::Infinity>();
  bool ok = dz.allFinite() && (Qff * dz + gf).lpNorm<Eigen::Infinity>() <= 1e-8 * (1.0 + gnorm);
  if (!ok) {
    // Rank-deficient reduced system: a slightly ridged solve still gives a
    // strict descent direction, and the exact line searches keep convergence.
    const double ridge = 1e-10 * std::max(1.0, Qff.diagonal().maxCoeff());
    dz = (Qff + ridge * Matrix::Identity(m, m)).ldlt().solve(-gf);
    ok = dz.allFinite() && gf.dot(dz) < 0.0;
  }
  if (!ok || gf.dot(dz) >= 0.0) dz = -gf;

  const double slope = gf.dot(dz);
  if (slope >= 0.0) return StepKind::None;

  double alpha_max = kInf;
  for (Eigen::Index a = 0; a < m; ++a) {
    const Eigen::Index i = free_set[static_cast<std::size_t>(a)];
    if (dz[a] > 0.0)
      alpha_max = std::min(alpha_max, (box.upper[i] - x[i]) / dz[a]);
    else if (dz[a] < 0.0)
      alpha_max = std::min(alpha_max, (box.lower[i] - x[i]) / dz[a]);
  }
  const double curv = dz.dot(Qff * dz);
  const double alpha_star = curv > 0.0 ? -slope / curv : kInf;
  const double alpha = std::min(alpha_star, alpha_max);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) return StepKind::None;

  const bool clipped = alpha == alpha_max && alpha_max < alpha_star;
  for (Eigen::Index a = 0; a < m; ++a) x[free_set[static_cast<std::size_t>(a)]] += alpha * dz[a];
  if (alpha == alpha_max) {
    // Land the limiting coordinates exactly on their bounds.
    for (Eigen::Index a = 0; a < m; ++a) {
      const Eigen::Index i = free_set[static_cast<std::size_t>(a)];
      if (dz[a] > 0.0 && (box.upper[i] - x[i]) <= 1e-13 * (1.0 + std::abs(box.upper[i])))
        x[i] = box.upper[i];
      else if (dz[a] < 0.0 && (x[i] - box.lower[i]) <= 1e-13 * (1.0 + std::abs(box.lower[i])))
        x[i] = box.lower[i];
    }
  }
  x = box.clamp(x);
  return clipped ? StepKind::Clipped : StepKind::Interior;
}

}  // namespace

void set_qp_audit_hook(QpAuditHook hook) { g_audit_hook = std::move(hook); }

double kkt_residual(const QuadraticObjective& obj, const SearchBox& box, const Vector& x) {
  return kkt_residual_at(box, x, obj.gradient(x));
}

QpSolution minimize_box_qp(const QuadraticObjective& obj, const SearchBox& box, double tol,
                           const Vector* warm_start) {
  const int p = obj.dim();
  if (box.dim() != p) throw InvalidInputError("box dimension does not match objective");
  if (!(tol > 0.0)) throw InvalidInputError("tol must be positive");

  Vector x = warm_start != nullptr ? box.clamp(*warm_start) : Vector::Zero(p);
  snap_to_bounds(box, x);

  const int max_iter = 50 * p;
  double res = kInf;
  for (int it = 0; it <= max_iter; ++it) {
    Vector g = obj.gradient(x);
    res = kkt_residual_at(box, x, g);
    if (res <= tol) {
      QpSolution sol{x, obj.value(x), res, it};
      if (g_audit_hook) g_audit_hook(obj, box, sol);
      return sol;
    }
    if (it == max_iter) break;
    x = cauchy_arc_minimize(obj, box, x, g);
    // Descend through faces: each clipped step fixes at least one more
    // coordinate at a bound, so this loop is finite; it ends on the interior
    // minimizer of the final face.
    for (int face = 0; face < 64; ++face)
      if (subspace_step(obj, box, x) != StepKind::Clipped) break;
    snap_to_bounds(box, x);
  }
  throw NonConvergenceError(res, max_iter);
}

QuadraticObjective restrict_objective(const QuadraticObjective& obj, const IndexSet& support) {
  if (support.empty()) throw EmptySupportError();
  if (!is_valid_index_set(support, obj.dim()))
    throw InvalidInputError("support is not a sorted set of valid indices");
  const Eigen::Index m = static_cast<Eigen::Index>(support.size());
  Matrix Qs(m, m);
  Vector qs(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    qs[a] = obj.q()[support[static_cast<std::size_t>(a)]];
    for (Eigen::Index b = 0; b < m; ++b)
      Qs(a, b) = obj.Q()(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
  }
  return QuadraticObjective::trusted(std::move(Qs), std::move(qs), obj.c());
}

QpSolution lower_bound(const QuadraticObjective& obj, const SearchBox& box,
                       const IndexSet& support, double tol) {
  const int p = obj.dim();
  if (support.empty()) return QpSolution{Vector::Zero(p), obj.c(), 0.0, 0};
  if (!is_valid_index_set(support, p))
    throw InvalidInputError("support is not a sorted set of valid indices");
  if (static_cast<int>(support.size()) == p) {
    return minimize_box_qp(obj, box, tol);
  }
  const QuadraticObjective sub = restrict_objective(obj, support);
  const SearchBox sub_box = box.restricted(support);
  QpSolution sol = minimize_box_qp(sub, sub_box, tol);
  sol.point = scatter(sol.point, support, p);
  return sol;
}

}  // namespace ccqo
