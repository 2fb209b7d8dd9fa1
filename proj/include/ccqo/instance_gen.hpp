#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccqo/types.hpp"

namespace ccqo {

enum class DesignCase { Overdetermined, Underdetermined };

struct ShapeSpec {
  std::string name;
  int p;
  int n_od;
  int n_ud;
};

/// Dimension table: small-1..4, medium-1..4, large-1..4.
const std::vector<ShapeSpec>& shape_table();
std::optional<ShapeSpec> find_shape(const std::string& name);

/// Synthetic regression instance: rows of X drawn i.i.d. from N(0, Sigma) with
/// equicorrelated Sigma, columns standardized to zero mean and unit l2-norm,
/// y = X beta0 + eps with noise variance sigma2 = ||X beta0||^2 / snr.
struct RegressionInstance {
  std::string label;
  int n = 0;
  int p = 0;
  int k = 0;   // default target sparsity for solves
  int k0 = 0;  // true sparsity of beta0
  double snr = 0.0;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  Matrix X;
  Vector y;
  Vector beta0;
  Vector box_lower;
  Vector box_upper;

  SearchBox box() const { return SearchBox(box_lower, box_upper); }
};

struct GenParams {
  int example_id = 2;    // beta0 pattern, 1..3
  double snr = 1.0;
  std::uint64_t seed = 0;
  int k0 = 10;
  int k = 0;             // 0: defaults to min(k0, p-1)
  double rho = 0.8;      // off-diagonal correlation of Sigma
  double tau = 1.0;      // box enlargement factor
};

RegressionInstance generate(const ShapeSpec& shape, DesignCase design, const GenParams& params);

/// Same construction for dimensions outside the named table.
RegressionInstance generate_custom(int p, int n, const GenParams& params,
                                   const std::string& label_prefix = "custom");

/// Reduction of least squares to the quadratic form: Q = 2 X'X, q = -2 X'y,
/// c = y'y, so that f(beta) = ||y - X beta||^2 identically.
QuadraticObjective build_ccqo(const Matrix& X, const Vector& y);

/// Non-uniform initial box around a reference fit: with m = max_i |beta_hat_i|,
/// B_i = [-tau*m - |beta_hat_i|, |beta_hat_i| + tau*m]. Throws
/// DegenerateBoxError when m = 0 (callers substitute a unit box).
SearchBox initial_box(const Vector& beta_hat, double tau = 1.0);

/// Least-squares fit over the given box (or a very large default box when
/// none is supplied).
Vector ols_fit(const Matrix& X, const Vector& y, const SearchBox* box = nullptr,
               double tol = 1e-9);

/// Single-document JSON round trip of an instance (row-major X).
std::string instance_to_json(const RegressionInstance& inst);
RegressionInstance instance_from_json(const std::string& text);
void save_instance(const RegressionInstance& inst, const std::string& path);
RegressionInstance load_instance(const std::string& path);

}  // namespace ccqo
