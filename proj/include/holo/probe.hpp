#pragma once

// Floating-point holonomy evidence for a realized quadratic metric:
// Christoffel symbols away from the origin, RK4 parallel transport around
// small coordinate squares, and the span of the resulting log-holonomies.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holo/liealg.hpp"
#include "holo/realize.hpp"

namespace holo {

class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Double-precision copy of a QuadraticMetric, converted once.
struct FloatMetric {
  std::size_t n = 0;
  Eigen::MatrixXd g0;
  /// Bcal_{ij,pq} at ((i*n + j)*n + p)*n + q.
  std::vector<double> bcal;

  static FloatMetric from_exact(const QuadraticMetric& qm);

  double b(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const {
    return bcal[((i * n + j) * n + p) * n + q];
  }
  Eigen::MatrixXd metric(const Eigen::VectorXd& x) const;
  /// d_a g_ij(x) for each a.
  std::vector<Eigen::MatrixXd> metric_gradient(const Eigen::VectorXd& x) const;
};

/// Gamma^k_ij at a point, stored at (k*n + i)*n + j.
struct Christoffel {
  std::size_t n = 0;
  std::vector<double> data;

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return data[(k * n + i) * n + j]; }
  /// (Gamma[v])^k_j = sum_i Gamma^k_ij v^i
  Eigen::MatrixXd contract(const Eigen::VectorXd& v) const;
};

/// Throws SingularMetricError when g(x) is not safely invertible.
Christoffel christoffel(const FloatMetric& m, const Eigen::VectorXd& x);

/// Axis-aligned square of side `side` in the (alpha, beta) coordinate plane
/// with corner at `basepoint`, traversed +alpha, +beta, -alpha, -beta. A
/// nonzero basepoint is reached from the origin along a straight tether that
/// is retraced afterwards, so every loop is based at the origin.
struct LoopSpec {
  Eigen::VectorXd basepoint;
  std::size_t alpha = 0;
  std::size_t beta = 1;
  double side = 1e-2;
  /// RK4 steps per side; at least 16.
  std::size_t steps = 100;
};

struct HolonomySample {
  Eigen::MatrixXd transport;
  /// (A - I) - (A - I)^2 / 2
  Eigen::MatrixXd log_approx;
  double membership_residual = 0;
  /// || g0 - A^T g0 A ||_F
  double metric_defect = 0;
  double determinant = 1;
  LoopSpec loop;
};

struct ProbeConfig {
  double membership_tol = 1e-6;
  double rank_threshold = 1e-8;
  double side = 1e-2;
  double max_step = 1e-4;
  std::size_t random_basepoints = 2;
  double basepoint_radius = 0.05;
  std::uint64_t seed = 0;
  /// Log-holonomies with Frobenius norm below this are reported with zero
  /// membership residual: their direction is rounding noise.
  double negligible_norm = 1e-13;
};

/// Transport of a matrix P along the straight segment a -> b with
/// dP/dt = -Gamma(gamma(t))[gamma'(t)] P, classical RK4, `steps` steps.
Eigen::MatrixXd transport_segment(const FloatMetric& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                  std::size_t steps, Eigen::MatrixXd p);

class HolonomyProbe {
 public:
  HolonomyProbe(FloatMetric metric, const SubspaceBasis& algebra, double negligible_norm = 1e-13);

  const FloatMetric& metric() const { return metric_; }
  std::size_t algebra_dim() const { return static_cast<std::size_t>(orthonormal_.cols()); }

  /// Throws std::invalid_argument for malformed loops, SingularMetricError
  /// when the metric degenerates along the path.
  HolonomySample parallel_transport(const LoopSpec& loop) const;

  /// ||Psi - proj(Psi)||_F / ||Psi||_F onto the algebra.
  double membership_residual(const Eigen::MatrixXd& psi) const;

 private:
  FloatMetric metric_;
  Eigen::MatrixXd orthonormal_;  // n^2 x d, columns orthonormal
  double negligible_norm_;
};

/// Squares in every coordinate plane at the origin plus
/// config.random_basepoints seeded points with ||x||_inf <= radius.
std::vector<LoopSpec> standard_loop_family(std::size_t n, const ProbeConfig& config);

struct SpanReport {
  std::size_t span_rank = 0;
  std::size_t dim_gL = 0;
  double max_membership_residual = 0;
  std::vector<double> singular_values;
  /// sigma_{rank-1} / sigma_rank; infinity when nothing was discarded.
  double gap = 0;
  double max_metric_defect = 0;
  std::vector<HolonomySample> samples;

  bool passes(const ProbeConfig& config) const {
    return span_rank == dim_gL && max_membership_residual < config.membership_tol;
  }
};

/// Loops are integrated concurrently; samples keep loop order.
SpanReport holonomy_span(const HolonomyProbe& probe, const std::vector<LoopSpec>& loops,
                         const ProbeConfig& config);

/// max |(nabla L)^i_{kj}| at x for constant L.
double nablaL_residual(const FloatMetric& m, const Eigen::MatrixXd& L, const Eigen::VectorXd& x);

Eigen::MatrixXd to_eigen(const RatMatrix& m);

}  // namespace holo
