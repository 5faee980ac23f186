#pragma once

// Declarative Jordan data for a g-symmetric operator and its canonical
// (g, L) matrices: per block an upper-shift Jordan block plus lambda, and a
// signed antidiagonal form, assembled block-diagonally.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "holo/exactla.hpp"

namespace holo {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs the engine deliberately does not handle (complex blocks).
class UnsupportedError : public SpecError {
 public:
  using SpecError::SpecError;
};

struct BlockSpec {
  std::size_t size = 1;
  int sign = 1;
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

struct EigenSpec {
  Rational lambda;
  std::vector<BlockSpec> blocks;
  friend bool operator==(const EigenSpec&, const EigenSpec&) = default;
};

struct PencilSpec {
  std::vector<EigenSpec> eigens;

  std::size_t dimension() const;
  std::size_t block_count() const;
  friend bool operator==(const PencilSpec&, const PencilSpec&) = default;
};

/// Sorts blocks by (size, + before -) and checks every structural
/// constraint. Throws SpecError.
PencilSpec normalized(PencilSpec spec);

struct BlockLayout {
  std::size_t offset = 0;
  std::size_t size = 0;
  int sign = 1;
  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

struct EigenLayout {
  Rational lambda;
  std::size_t offset = 0;
  std::size_t dim = 0;
  std::vector<BlockLayout> blocks;
  friend bool operator==(const EigenLayout&, const EigenLayout&) = default;
};

struct CanonicalPair {
  RatMatrix g;
  RatMatrix L;
  std::vector<EigenLayout> layout;

  std::size_t dim() const { return g.rows(); }

  /// All blocks across all eigenvalues, in layout order. Block indices used
  /// by the Lie-algebra and curvature code refer to this flattening.
  std::vector<BlockLayout> blocks() const;
  /// Index into `layout` of the eigenvalue owning global block `b`.
  std::size_t eigen_of_block(std::size_t b) const;

  friend bool operator==(const CanonicalPair&, const CanonicalPair&) = default;
};

CanonicalPair build_canonical(const PencilSpec& spec);

struct PairValidation {
  bool g_symmetric = false;
  bool g_nondegenerate = false;
  bool l_g_symmetric = false;

  bool ok() const { return g_symmetric && g_nondegenerate && l_g_symmetric; }
  /// Empty when ok(); otherwise names the first failing condition.
  std::string failure() const;
};

/// Throws std::invalid_argument on non-square or mismatched inputs.
PairValidation validate_pair(const RatMatrix& g, const RatMatrix& L);

/// Replaces L by L - lambda*I. Requires exactly one eigenvalue.
CanonicalPair shift_to_nilpotent(const CanonicalPair& pair);

/// Restrictions of (g, L) to each generalised eigenspace, offsets rebased.
std::vector<CanonicalPair> eigen_split(const CanonicalPair& pair);

/// Inverse of eigen_split.
CanonicalPair reassemble(const std::vector<CanonicalPair>& parts);

/// Upper-shift nilpotent Jordan block of size n.
RatMatrix jordan_block(std::size_t n);
/// sign * (antidiagonal ones), size n.
RatMatrix signed_antidiagonal(std::size_t n, int sign);

}  // namespace holo
