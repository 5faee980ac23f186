#pragma once

// Shared helpers for the test binaries: seeded random rationals and an
// elimination routine written independently of holo::rank, used as oracle.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "holo/canonical.hpp"
#include "holo/exactla.hpp"

namespace testsupport {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  /// p/q with |p| <= num, 1 <= q <= den.
  holo::Rational rational(long num = 9, long den = 5) {
    holo::Rational r(integer(-num, num), integer(1, den));
    r.canonicalize();
    return r;
  }

  holo::Rational nonzero_rational(long num = 9, long den = 5) {
    for (;;) {
      auto r = rational(num, den);
      if (r != 0) return r;
    }
  }

  holo::RatMatrix matrix(std::size_t rows, std::size_t cols, long num = 4, long den = 3) {
    holo::RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational(num, den);
    return m;
  }

  /// Sparse integer matrix, often rank deficient.
  holo::RatMatrix sparse_matrix(std::size_t rows, std::size_t cols) {
    holo::RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (integer(0, 2) == 0) m(r, c) = integer(-2, 2);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Fraction-free Gaussian elimination on integer-scaled rows.
inline std::size_t bareiss_rank(const holo::RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) l = lcm(l, m(r, c).get_den());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Stacks matrices as rows of their row-major entries.
inline holo::RatMatrix stack_rows(const std::vector<holo::RatMatrix>& ms) {
  if (ms.empty()) return holo::RatMatrix(0, 0);
  holo::RatMatrix out(ms.size(), ms[0].rows() * ms[0].cols());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    auto e = ms[k].entries();
    for (std::size_t c = 0; c < e.size(); ++c) out(k, c) = e[c];
  }
  return out;
}

inline holo::RatMatrix e_ab(std::size_t n, std::size_t a, std::size_t b) {
  holo::RatMatrix m(n, n);
  m(a, b) = 1;
  return m;
}

/// mu_s = x_{m-s+1,1} + x_{m-s+2,2} + ... + x_{m,s} (1-based), s = 1..m,
/// for an m x n block with m <= n.
inline std::vector<holo::Rational> toeplitz_mu(const holo::RatMatrix& x12) {
  const std::size_t m = x12.rows();
  std::vector<holo::Rational> mu(m);
  for (std::size_t s = 1; s <= m; ++s)
    for (std::size_t d = 1; d <= s; ++d) mu[s - 1] += x12(m - s + d - 1, d - 1);
  return mu;
}

/// m x n block, zero in the first n - m columns, upper-triangular Toeplitz
/// with mu_1 on the shifted diagonal.
inline holo::RatMatrix mu_block(std::size_t m, std::size_t n, const std::vector<holo::Rational>& mu) {
  holo::RatMatrix b(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; r + s < m; ++s) b(r, n - m + r + s) = mu[s];
  return b;
}

// dim {X : gX + X^T g = 0, XL = LX} from the n^2 x n^2 linear system.
inline std::size_t centralizer_dim_oracle(const holo::CanonicalPair& p) {
  const std::size_t n = p.dim();
  std::vector<holo::RatMatrix> skew_images, comm_images;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const holo::RatMatrix e = e_ab(n, a, b);
      skew_images.push_back(p.g * e + e.transpose() * p.g);
      comm_images.push_back(e * p.L - p.L * e);
    }
  // Column (a,b) of the system holds the images of E_ab.
  holo::RatMatrix sys(2 * n * n, n * n);
  for (std::size_t col = 0; col < n * n; ++col) {
    auto s = skew_images[col].entries();
    auto c = comm_images[col].entries();
    for (std::size_t r = 0; r < n * n; ++r) {
      sys(r, col) = s[r];
      sys(n * n + r, col) = c[r];
    }
  }
  return n * n - bareiss_rank(sys);
}

}  // namespace testsupport
