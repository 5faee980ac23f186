#pragma once

// Bivectors as g-skew operators, bases of so(g), of the centraliser of L in
// so(g), and of its pairwise block pieces m_ij.

#include <cstddef>
#include <optional>
#include <vector>

#include "holo/canonical.hpp"
#include "holo/exactla.hpp"

namespace holo {

/// Either a basis bivector e_i ^ e_j (i < j) or, for m_ij generators, the
/// pair of block indices the generator lives on.
struct WedgeTag {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const WedgeTag&, const WedgeTag&) = default;
};

struct SubspaceBasis {
  std::size_t n = 0;
  std::vector<RatMatrix> elements;
  /// Same length as `elements`, or empty when the basis carries no tags.
  std::vector<WedgeTag> tags;

  std::size_t size() const { return elements.size(); }
};

/// u (x) g(v) - v (x) g(u), i.e. w -> u g(v,w) - v g(u,w).
RatMatrix wedge(const RatVector& u, const RatVector& v, const RatMatrix& g);

RatVector unit_vector(std::size_t n, std::size_t i);

/// True when gX + X^T g = 0.
bool is_g_skew(const RatMatrix& x, const RatMatrix& g);

/// {wedge(e_i, e_j)}_{i<j} in lexicographic order, tagged. Throws
/// std::invalid_argument when g is not symmetric and nondegenerate.
SubspaceBasis so_basis(const RatMatrix& g);

/// Index of the tag (i, j), i < j, inside so_basis ordering.
std::size_t wedge_index(std::size_t n, std::size_t i, std::size_t j);

/// Coordinates of a g-skew X in the so_basis(g) basis: c_ij = (X g^{-1})_ij.
RatVector so_coords(const RatMatrix& x, const RatMatrix& g_inverse);

RatMatrix inverse(const RatMatrix& m);

/// Kernel of {gX + X^T g = 0, XL = LX}. Throws std::logic_error if a kernel
/// element couples two distinct eigenvalues.
SubspaceBasis centralizer_basis(const CanonicalPair& pair);

/// sum over eigenvalues of sum_i (k - i) n_i, blocks sorted ascending.
std::size_t centralizer_dimension_formula(const CanonicalPair& pair);

/// Kernel of the centraliser system restricted to matrices supported on the
/// (i, j) and (j, i) blocks. i < j are global block indices of one eigenvalue.
SubspaceBasis m_ij_basis(const CanonicalPair& pair, std::size_t i, std::size_t j);

/// The explicit shifted upper-Toeplitz generators of m_ij: for t = 1..n_i,
/// mu_t = 1 and the others 0, with M_ji = -g_j M_ij^T g_i.
SubspaceBasis m_ij_pattern(const CanonicalPair& pair, std::size_t i, std::size_t j);

/// Exact coordinates of X in span(basis), or nullopt if X is not a member.
std::optional<RatVector> member_coords(const RatMatrix& x, const SubspaceBasis& basis);

/// Rank of the elements viewed as vectors of length n^2.
std::size_t span_rank(const std::vector<RatMatrix>& elements);

}  // namespace holo
