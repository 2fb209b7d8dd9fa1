#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ccqo/errors.hpp"

namespace ccqo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Coordinate indices are 0-based everywhere in this library.
/// An index set is kept sorted and duplicate-free.
using IndexSet = std::vector<int>;

bool is_valid_index_set(const IndexSet& support, int p);

/// Full index set {0, ..., p-1}.
IndexSet full_index_set(int p);

/// Scatter a |support|-vector into a p-vector with zeros off the support.
Vector scatter(const Vector& z, const IndexSet& support, int p);

/// Gather the support coordinates of a p-vector.
Vector gather(const Vector& x, const IndexSet& support);

/// Number of entries with |x_i| > tol.
int count_nonzeros(const Vector& x, double tol = 0.0);

/// Convex quadratic f(x) = 0.5 x'Qx + q'x + c with Q symmetric positive
/// semi-definite. Symmetry is checked to 1e-12; the PSD check (smallest
/// eigenvalue >= -1e-8 * largest magnitude) runs on construction for
/// p <= 500 and is trusted above that.
class QuadraticObjective {
 public:
  QuadraticObjective(Matrix Q, Vector q, double c);

  /// Construction path for objectives already known valid (principal
  /// submatrices of a validated objective stay symmetric PSD).
  static QuadraticObjective trusted(Matrix Q, Vector q, double c);

  int dim() const { return static_cast<int>(q_.size()); }
  const Matrix& Q() const { return Q_; }
  const Vector& q() const { return q_; }
  double c() const { return c_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  struct Unchecked {};
  QuadraticObjective(Unchecked, Matrix Q, Vector q, double c);

  Matrix Q_;
  Vector q_;
  double c_;
};

/// Per-coordinate interval bounds [lower_i, upper_i] with lower_i <= 0 <= upper_i
/// and lower_i < upper_i (branching at zero needs 0 in every interval).
struct SearchBox {
  Vector lower;
  Vector upper;

  SearchBox(Vector lo, Vector hi);

  /// Symmetric box [-half_width, half_width]^p.
  static SearchBox cube(int p, double half_width);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x, double tol = 1e-12) const;

  /// Sub-box over the given support coordinates (closed intervals).
  SearchBox restricted(const IndexSet& support) const;

  /// Clamp a point into the box coordinate-wise.
  Vector clamp(const Vector& x) const;
};

}  // namespace ccqo
