#include "ccqo/types.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ccqo {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-8;
constexpr int kPsdCheckMaxDim = 500;

void validate_objective(const Matrix& Q, const Vector& q) {
  const auto p = q.size();
  if (p < 1) throw InvalidInputError("objective dimension must be positive");
  if (Q.rows() != p || Q.cols() != p)
    throw InvalidInputError("Q must be p x p with p = q.size()");
  const double asym = (Q - Q.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol)
    throw InvalidInputError("Q is not symmetric: max |Q_ij - Q_ji| = " + std::to_string(asym));
  if (p <= kPsdCheckMaxDim) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    if (lo < -kPsdTol * std::max(hi, 1.0))
      throw InvalidInputError("Q is not positive semi-definite: min eigenvalue " +
                              std::to_string(lo));
  }
}

}  // namespace

bool is_valid_index_set(const IndexSet& support, int p) {
  int prev = -1;
  for (int i : support) {
    if (i <= prev || i < 0 || i >= p) return false;
    prev = i;
  }
  return true;
}

IndexSet full_index_set(int p) {
  IndexSet s(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) s[static_cast<std::size_t>(i)] = i;
  return s;
}

Vector scatter(const Vector& z, const IndexSet& support, int p) {
  Vector x = Vector::Zero(p);
  for (std::size_t j = 0; j < support.size(); ++j) x[support[j]] = z[static_cast<Eigen::Index>(j)];
  return x;
}

Vector gather(const Vector& x, const IndexSet& support) {
  Vector z(static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) z[static_cast<Eigen::Index>(j)] = x[support[j]];
  return z;
}

int count_nonzeros(const Vector& x, double tol) {
  int n = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tol) ++n;
  return n;
}

QuadraticObjective::QuadraticObjective(Matrix Q, Vector q, double c)
    : Q_(std::move(Q)), q_(std::move(q)), c_(c) {
  validate_objective(Q_, q_);
}

QuadraticObjective::QuadraticObjective(Unchecked, Matrix Q, Vector q, double c)
    : Q_(std::move(Q)), q_(std::move(q)), c_(c) {}

QuadraticObjective QuadraticObjective::trusted(Matrix Q, Vector q, double c) {
  return QuadraticObjective(Unchecked{}, std::move(Q), std::move(q), c);
}

double QuadraticObjective::value(const Vector& x) const {
  return 0.5 * x.dot(Q_ * x) + q_.dot(x) + c_;
}

Vector QuadraticObjective::gradient(const Vector& x) const { return Q_ * x + q_; }

SearchBox::SearchBox(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() < 1)
    throw InvalidInputError("box bounds must be non-empty vectors of equal size");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= 0.0 && 0.0 <= upper[i]))
      throw InvalidInputError("box must contain 0 in every coordinate");
    if (!(lower[i] < upper[i]))
      throw InvalidInputError("box must have lower_i < upper_i in every coordinate");
  }
}

SearchBox SearchBox::cube(int p, double half_width) {
  return SearchBox(Vector::Constant(p, -half_width), Vector::Constant(p, half_width));
}

bool SearchBox::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  return true;
}

SearchBox SearchBox::restricted(const IndexSet& support) const {
  Vector lo(static_cast<Eigen::Index>(support.size()));
  Vector hi(static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    lo[static_cast<Eigen::Index>(j)] = lower[support[j]];
    hi[static_cast<Eigen::Index>(j)] = upper[support[j]];
  }
  return SearchBox(std::move(lo), std::move(hi));
}

Vector SearchBox::clamp(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

}  // namespace ccqo
