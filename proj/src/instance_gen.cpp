#include "ccqo/instance_gen.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ccqo/qp_core.hpp"

namespace ccqo {

namespace {

// Deterministic seeded stream: xoshiro-free, just splitmix64 for stream
// derivation feeding mt19937_64, uniforms via 53-bit mantissa, normals via
// Box-Muller. Bit-identical per (seed, platform libm).
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xa0761d6478bd642fULL * (stream + 1));
    state_ = splitmix64(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  double uniform01() {  // in (0, 1]
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum Stream : std::uint64_t { kStreamX = 1, kStreamBeta = 2, kStreamNoise = 3 };

Vector make_beta0(int p, int k0, int example_id, Rng& rng) {
  Vector beta0 = Vector::Zero(p);
  switch (example_id) {
    case 1: {
      // k0 equally spaced indices over {1..p}, floor convention, collisions
      // shifted right.
      int prev = -1;
      for (int j = 0; j < k0; ++j) {
        int idx = k0 == 1 ? 0
                          : static_cast<int>(std::floor(static_cast<double>(j) * (p - 1) /
                                                        static_cast<double>(k0 - 1)));
        if (idx <= prev) idx = prev + 1;
        beta0[idx] = 1.0;
        prev = idx;
      }
      break;
    }
    case 2:
      beta0.head(k0).setOnes();
      break;
    case 3: {
      // Random k0-subset with i.i.d. uniform integer values in {1..5}.
      std::vector<int> idx(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < k0; ++i) {
        const int j = rng.uniform_int(i, p - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
      for (int i = 0; i < k0; ++i)
        beta0[idx[static_cast<std::size_t>(i)]] = static_cast<double>(rng.uniform_int(1, 5));
      break;
    }
    default:
      throw InvalidInputError("example_id must be 1, 2, or 3");
  }
  return beta0;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

RegressionInstance generate_impl(int p, int n, DesignCase design, const GenParams& params,
                                 const std::string& shape_name) {
  if (p < 2 || n < 1) throw InvalidInputError("need p >= 2 and n >= 1");
  if (params.k0 < 1 || params.k0 > p) throw InvalidInputError("need 1 <= k0 <= p");
  if (!(params.snr > 0.0)) throw InvalidInputError("snr must be positive");
  if (!(params.rho >= 0.0 && params.rho < 1.0)) throw InvalidInputError("need 0 <= rho < 1");

  RegressionInstance inst;
  inst.n = n;
  inst.p = p;
  inst.k0 = params.k0;
  inst.k = params.k > 0 ? params.k : std::min(params.k0, p - 1);
  inst.snr = params.snr;
  inst.seed = params.seed;
  inst.label = shape_name + (design == DesignCase::Overdetermined ? "/OD" : "/UD") + "/ex" +
               std::to_string(params.example_id) + "/snr" + format_double(params.snr);

  // Equicorrelated covariance, Cholesky factor once.
  Matrix sigma = Matrix::Constant(p, p, params.rho);
  sigma.diagonal().setOnes();
  const Matrix chol = sigma.llt().matrixL();

  Rng rng_x(params.seed, kStreamX);
  inst.X.resize(n, p);
  Vector z(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z[j] = rng_x.normal();
    inst.X.row(i) = (chol * z).transpose();
  }
  // Standardize columns: zero mean, then unit l2-norm.
  for (int j = 0; j < p; ++j) {
    inst.X.col(j).array() -= inst.X.col(j).mean();
    const double norm = inst.X.col(j).norm();
    if (norm > 0.0) inst.X.col(j) /= norm;
  }

  Rng rng_beta(params.seed, kStreamBeta);
  inst.beta0 = make_beta0(p, params.k0, params.example_id, rng_beta);

  const Vector signal = inst.X * inst.beta0;
  inst.sigma2 = signal.squaredNorm() / params.snr;
  const double noise_sd = std::sqrt(inst.sigma2);

  Rng rng_noise(params.seed, kStreamNoise);
  inst.y.resize(n);
  for (int i = 0; i < n; ++i) inst.y[i] = signal[i] + noise_sd * rng_noise.normal();

  // Initial box around the reference least-squares fit.
  const Vector beta_hat = ols_fit(inst.X, inst.y);
  SearchBox box = [&] {
    try {
      return initial_box(beta_hat, params.tau);
    } catch (const DegenerateBoxError&) {
      return SearchBox::cube(p, 1.0);
    }
  }();
  inst.box_lower = std::move(box.lower);
  inst.box_upper = std::move(box.upper);
  return inst;
}

}  // namespace

const std::vector<ShapeSpec>& shape_table() {
  static const std::vector<ShapeSpec> table = {
      {"small-1", 20, 100, 10},    {"small-2", 40, 200, 20},   {"small-3", 60, 300, 30},
      {"small-4", 80, 400, 40},    {"medium-1", 200, 1000, 100}, {"medium-2", 300, 1000, 100},
      {"medium-3", 400, 2000, 100}, {"medium-4", 500, 2000, 100}, {"large-1", 800, 4000, 200},
      {"large-2", 1000, 4000, 200}, {"large-3", 1500, 8000, 300}, {"large-4", 2000, 8000, 300},
  };
  return table;
}

std::optional<ShapeSpec> find_shape(const std::string& name) {
  for (const ShapeSpec& s : shape_table())
    if (s.name == name) return s;
  return std::nullopt;
}

RegressionInstance generate(const ShapeSpec& shape, DesignCase design, const GenParams& params) {
  const int n = design == DesignCase::Overdetermined ? shape.n_od : shape.n_ud;
  return generate_impl(shape.p, n, design, params, shape.name);
}

RegressionInstance generate_custom(int p, int n, const GenParams& params,
                                   const std::string& label_prefix) {
  const DesignCase design =
      p < n ? DesignCase::Overdetermined : DesignCase::Underdetermined;
  return generate_impl(p, n, design, params,
                       label_prefix + "-p" + std::to_string(p) + "n" + std::to_string(n));
}

QuadraticObjective build_ccqo(const Matrix& X, const Vector& y) {
  if (X.rows() != y.size()) throw InvalidInputError("X rows must match y size");
  Matrix Q = 2.0 * (X.transpose() * X);
  Q = 0.5 * (Q + Q.transpose()).eval();  // exact symmetry
  Vector q = -2.0 * (X.transpose() * y);
  return QuadraticObjective(std::move(Q), std::move(q), y.squaredNorm());
}

SearchBox initial_box(const Vector& beta_hat, double tau) {
  if (!(tau > 0.0)) throw InvalidInputError("tau must be positive");
  const double m = beta_hat.size() > 0 ? beta_hat.cwiseAbs().maxCoeff() : 0.0;
  if (m == 0.0) throw DegenerateBoxError();
  const Vector mag = beta_hat.cwiseAbs();
  return SearchBox(-(mag.array() + tau * m).matrix(), (mag.array() + tau * m).matrix());
}

Vector ols_fit(const Matrix& X, const Vector& y, const SearchBox* box, double tol) {
  const QuadraticObjective obj = build_ccqo(X, y);
  if (box != nullptr) return minimize_box_qp(obj, *box, tol).point;
  const double half = 1e6 * (1.0 + (X.transpose() * y).cwiseAbs().maxCoeff());
  return minimize_box_qp(obj, SearchBox::cube(static_cast<int>(X.cols()), half), tol).point;
}

namespace {

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const nlohmann::json& arr) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

}  // namespace

std::string instance_to_json(const RegressionInstance& inst) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["label"] = inst.label;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["k"] = inst.k;
  j["k0"] = inst.k0;
  j["snr"] = inst.snr;
  j["sigma2"] = inst.sigma2;
  j["seed"] = inst.seed;
  nlohmann::json x = nlohmann::json::array();
  for (int i = 0; i < inst.n; ++i)
    for (int c = 0; c < inst.p; ++c) x.push_back(inst.X(i, c));
  j["X"] = std::move(x);
  j["y"] = vector_to_json(inst.y);
  j["beta0"] = vector_to_json(inst.beta0);
  j["box_lower"] = vector_to_json(inst.box_lower);
  j["box_upper"] = vector_to_json(inst.box_upper);
  return j.dump();
}

RegressionInstance instance_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RegressionInstance inst;
  inst.label = j.at("label").get<std::string>();
  inst.n = j.at("n").get<int>();
  inst.p = j.at("p").get<int>();
  inst.k = j.at("k").get<int>();
  inst.k0 = j.at("k0").get<int>();
  inst.snr = j.at("snr").get<double>();
  inst.sigma2 = j.at("sigma2").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  const auto& x = j.at("X");
  if (static_cast<int>(x.size()) != inst.n * inst.p)
    throw InvalidInputError("X has wrong size in instance file");
  inst.X.resize(inst.n, inst.p);
  std::size_t pos = 0;
  for (int i = 0; i < inst.n; ++i)
    for (int c = 0; c < inst.p; ++c) inst.X(i, c) = x[pos++].get<double>();
  inst.y = vector_from_json(j.at("y"));
  inst.beta0 = vector_from_json(j.at("beta0"));
  inst.box_lower = vector_from_json(j.at("box_lower"));
  inst.box_upper = vector_from_json(j.at("box_upper"));
  if (inst.y.size() != inst.n || inst.beta0.size() != inst.p ||
      inst.box_lower.size() != inst.p || inst.box_upper.size() != inst.p)
    throw InvalidInputError("inconsistent dimensions in instance file");
  return inst;
}

void save_instance(const RegressionInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << instance_to_json(inst) << '\n';
}

RegressionInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

}  // namespace ccqo
