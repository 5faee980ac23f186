#pragma once

// Quadratic metrics g(x) = g0 + Bcal(x, x) whose Levi-Civita connection keeps
// L parallel and whose curvature at the origin is a prescribed formal
// curvature tensor.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "holo/berger.hpp"
#include "holo/canonical.hpp"
#include "holo/exactla.hpp"
#include "holo/liealg.hpp"

namespace holo {

/// Dense rank-4 array of rationals, n^4 entries, last index fastest.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n) {}

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  const Rational& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  std::vector<Rational>& data() { return data_; }
  const std::vector<Rational>& data() const { return data_; }
  bool is_zero() const;

  Tensor4& operator+=(const Tensor4& o);
  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// coeff * (left (x) right), acting on X as coeff * left X right.
struct BTerm {
  Rational coeff;
  RatMatrix left;
  RatMatrix right;
};

/// A (2,2)-tensor B = sum_a coeff_a C_a (x) D_a with C_a, D_a g-symmetric and
/// commuting with L.
struct BTensor {
  std::size_t n = 0;
  std::vector<BTerm> terms;
  /// Block pairs (i, j) that contributed terms, in construction order.
  std::vector<WedgeTag> provenance;

  RatMatrix apply(const RatMatrix& x) const;
  /// B^{alpha, beta}_{j, q} stored at (alpha, beta, j, q).
  Tensor4 components() const;
};

/// For every block pair (i, j) of one eigenvalue, with P the projector onto
/// blocks i and j, N = P (L - lambda) and m = max(n_i, n_j):
///   B^_ij = -1/2 sum_{s<m} N^{m-1-s} (x) N^s   (N^0 = P).
/// Pairs of distinct eigenvalues contribute nothing.
BTensor build_B(const CanonicalPair& pair);

struct QuadraticMetric {
  RatMatrix g0;
  /// Bcal_{ij,pq} stored at (i, j, p, q).
  Tensor4 lowered;
  /// False when lowering produced a tensor not symmetric in (p, q) and an
  /// explicit symmetrization was applied.
  bool symmetrization_noop = true;

  std::size_t dim() const { return g0.rows(); }
};

/// Bcal_{ij,pq} = g0_{i alpha} g0_{p beta} B^{alpha beta}_{j q}.
QuadraticMetric lower_B(const BTensor& b, const RatMatrix& g0);

/// Bcal_{ij,pq} = Bcal_{ji,pq} and Bcal_{ij,pq} = Bcal_{ij,qp}.
bool has_metric_symmetries(const QuadraticMetric& qm);

struct MetricValue {
  RatMatrix g;
  bool singular = false;
  /// Whether ||x||_inf is below validity_radius(); outside the estimate the
  /// value is still returned.
  bool in_neighborhood = true;
};

/// g0_ij + sum_pq Bcal_{ij,pq} x^p x^q
MetricValue metric_at(const QuadraticMetric& qm, const RatVector& x);

/// Crude radius rho with g(x) invertible for ||x||_inf < rho:
/// rho = (||g0^{-1}||_inf * max_i sum_{j,p,q} |Bcal_{ij,pq}|)^{-1/2}.
double validity_radius(const QuadraticMetric& qm);

struct IndexCheck {
  bool ok = true;
  /// First index tuple at which the identity fails.
  std::optional<std::array<std::size_t, 4>> first_failure;
};

/// (Bcal_{ip,bq} - Bcal_{ib,pq}) L^b_k = (Bcal_{bi,kq} - Bcal_{ik,bq}) L^b_p
/// for all (i, p, q, k); tuple reported as (i, p, q, k).
IndexCheck check_nablaL(const QuadraticMetric& qm, const RatMatrix& L);

/// Bcal_{ij,pq} L^i_l = Bcal_{il,pq} L^i_j for all (j, l, p, q).
IndexCheck check_gsym(const QuadraticMetric& qm, const RatMatrix& L);

/// R^i_{k alpha beta} = g^{is}(Bcal_{beta s,alpha k} + Bcal_{alpha k,beta s}
///                             - Bcal_{beta k,alpha s} - Bcal_{alpha s,beta k}),
/// stored at (i, k, alpha, beta).
Tensor4 riemann_from_coefficients(const QuadraticMetric& qm);

/// R^i_{k alpha beta} = d_alpha Gamma^i_{beta k} - d_beta Gamma^i_{alpha k}
///   + Gamma^i_{alpha s} Gamma^s_{beta k} - Gamma^i_{beta s} Gamma^s_{alpha k}
/// from the exact 2-jet of g at the origin.
Tensor4 riemann_from_christoffel(const QuadraticMetric& qm);

/// Curvature operator with R(e_alpha ^ e_beta)^i_k = R^i_{k alpha beta}.
CurvatureMap curvature_map_from_riemann(const Tensor4& riemann, const RatMatrix& g0, const RatMatrix& L);

struct OriginCurvature {
  CurvatureMap map;
  bool routes_agree = false;
};

/// Both routes, the coefficient formula being the returned map.
OriginCurvature riemann_at_origin(const QuadraticMetric& qm, const RatMatrix& L);

struct RealizationReport {
  bool metric_symmetric = false;
  bool symmetrization_noop = false;
  bool nabla_l_ok = false;
  bool g_symmetric_ok = false;
  bool routes_agree = false;
  bool matches_r_formal = false;
  std::size_t curvature_rank = 0;
  std::optional<std::array<std::size_t, 4>> nabla_l_failure;
  std::optional<std::array<std::size_t, 4>> g_symmetric_failure;

  bool passes() const {
    return metric_symmetric && nabla_l_ok && g_symmetric_ok && routes_agree && matches_r_formal;
  }
};

/// build_B -> lower_B -> check_nablaL -> check_gsym -> riemann_at_origin,
/// compared with r_formal(pair). The built metric is written to `metric` when
/// non-null.
RealizationReport verify_realization(const CanonicalPair& pair, QuadraticMetric* metric = nullptr);

}  // namespace holo
