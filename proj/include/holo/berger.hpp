#pragma once

// Formal curvature tensors built from the minimal polynomial of L, their
// blockwise variant R_formal = sum_{i<j} R^_ij, and exact checks of the first
// Bianchi identity, the sectional-operator conditions and Im R = g_L.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "holo/canonical.hpp"
#include "holo/exactla.hpp"
#include "holo/liealg.hpp"

namespace holo {

/// A linear map so(g) -> gl(V), stored by its values on so_basis(g).
class CurvatureMap {
 public:
  CurvatureMap(RatMatrix g, RatMatrix L, std::vector<RatMatrix> values);

  /// Evaluates every so_basis(g) element through `f`.
  static CurvatureMap from_function(const RatMatrix& g, const RatMatrix& L,
                                    const std::function<RatMatrix(const RatMatrix&)>& f);

  std::size_t dim() const { return g_.rows(); }
  const RatMatrix& g() const { return g_; }
  const RatMatrix& L() const { return L_; }
  const SubspaceBasis& base() const { return base_; }
  const std::vector<RatMatrix>& values() const { return values_; }

  /// R(e_i ^ e_j) for any i, j (antisymmetric extension; zero when i == j).
  RatMatrix on_wedge(std::size_t i, std::size_t j) const;
  /// Linear extension to an arbitrary g-skew X.
  RatMatrix apply(const RatMatrix& x) const;

  friend bool operator==(const CurvatureMap& a, const CurvatureMap& b) {
    return a.g_ == b.g_ && a.values_ == b.values_;
  }

 private:
  RatMatrix g_;
  RatMatrix g_inverse_;
  RatMatrix L_;
  SubspaceBasis base_;
  std::vector<RatMatrix> values_;
};

/// d/dt|_0 p_min(L + tX) = sum_m a_m sum_{j<m} L^{m-1-j} X L^j.
RatMatrix r_minpoly(const CanonicalPair& pair, const RatMatrix& x);

/// Blockwise curvature R^_ij(X) for global block indices i < j of one
/// eigenvalue: block (i,j) is sum_s N_i^{n_ij-1-s} X_ij N_j^s and block (j,i)
/// the same with the roles swapped, N = L - lambda, n_ij = max(n_i, n_j).
RatMatrix r_hat(const CanonicalPair& pair, std::size_t i, std::size_t j, const RatMatrix& x);

/// Pairs (i, j), i < j, of global block indices sharing an eigenvalue.
std::vector<WedgeTag> block_pairs(const CanonicalPair& pair);

CurvatureMap r_formal(const CanonicalPair& pair);

struct BianchiResult {
  bool ok = true;
  /// Triple (i, j, k) with the largest cyclic-sum entry, when any fails.
  std::optional<std::array<std::size_t, 3>> witness;
  Rational worst_violation;
};

BianchiResult check_bianchi(const CurvatureMap& r);

struct SectionalResult {
  bool commutes_with_L = true;
  bool g_skew = true;
  /// First so-basis tag whose value fails either condition.
  std::optional<WedgeTag> failing;

  bool ok() const { return commutes_with_L && g_skew; }
};

/// [R(X), L] = 0 and R(X) in so(g) on every basis element.
SectionalResult check_sectional(const CurvatureMap& r);

struct BergerCertificate {
  std::size_t dim_gL = 0;
  std::size_t image_rank = 0;
  bool bianchi_ok = false;
  bool containment_ok = false;
  std::vector<WedgeTag> witnesses;

  bool passes() const { return bianchi_ok && containment_ok && image_rank == dim_gL; }
};

/// Witness wedges are chosen greedily in lexicographic (i, j) order.
BergerCertificate berger_certificate(const CanonicalPair& pair);

/// Same, for a precomputed map and centraliser basis.
BergerCertificate berger_certificate(const CurvatureMap& r, const SubspaceBasis& centralizer);

}  // namespace holo
