#include "holo/liealg.hpp"

#include <stdexcept>
#include <string>

namespace holo {

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector e(n);
  e.at(i) = 1;
  return e;
}

RatMatrix wedge(const RatVector& u, const RatVector& v, const RatMatrix& g) {
  const std::size_t n = g.rows();
  if (u.size() != n || v.size() != n) throw std::invalid_argument("wedge: dimension mismatch");
  RatVector gu = g * u;
  RatVector gv = g * v;
  RatMatrix x(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) x(r, c) = u[r] * gv[c] - v[r] * gu[c];
  return x;
}

bool is_g_skew(const RatMatrix& x, const RatMatrix& g) {
  return (g * x + x.transpose() * g).is_zero();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: non-square");
  const std::size_t n = m.rows();
  RatMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    auto col = solve(m, unit_vector(n, c));
    if (!col) throw std::invalid_argument("inverse: singular matrix");
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = (*col)[r];
  }
  if (!(m * inv == RatMatrix::identity(n))) throw std::invalid_argument("inverse: singular matrix");
  return inv;
}

SubspaceBasis so_basis(const RatMatrix& g) {
  if (!g.is_square() || !(g.transpose() == g)) throw std::invalid_argument("so_basis: g not symmetric");
  if (rank(g) != g.rows()) throw std::invalid_argument("so_basis: degenerate g");
  const std::size_t n = g.rows();
  SubspaceBasis b{n, {}, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      b.elements.push_back(wedge(unit_vector(n, i), unit_vector(n, j), g));
      b.tags.push_back({i, j});
    }
  return b;
}

std::size_t wedge_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw std::out_of_range("wedge_index: need i < j < n");
  // Rows 0..i-1 contribute (n-1) + (n-2) + ... + (n-i) entries.
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

RatVector so_coords(const RatMatrix& x, const RatMatrix& g_inverse) {
  const std::size_t n = x.rows();
  RatMatrix c = x * g_inverse;
  RatVector out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(c(i, j));
  return out;
}

namespace {

// Linear system encoding gX + X^T g = 0 and XL - LX = 0. Unknowns are the
// row-major entries of X listed in `unknowns`; all other entries are zero.
RatMatrix centralizer_system(const RatMatrix& g, const RatMatrix& L,
                             const std::vector<std::size_t>& unknowns) {
  const std::size_t n = g.rows();
  const std::size_t m = unknowns.size();
  RatMatrix sys(2 * n * n, m);
  for (std::size_t u = 0; u < m; ++u) {
    const std::size_t a = unknowns[u] / n;
    const std::size_t b = unknowns[u] % n;
    // X = E_ab contributes (gE_ab)_{rc} = g_ra [c==b] and (E_ab^T g)_{rc} = [r==b] g_ac.
    for (std::size_t r = 0; r < n; ++r) {
      sys(r * n + b, u) += g(r, a);
      sys(b * n + r, u) += g(a, r);
    }
    // (E_ab L)_{rc} = [r==a] L_bc ; (L E_ab)_{rc} = L_ra [c==b].
    for (std::size_t c = 0; c < n; ++c) sys(n * n + a * n + c, u) += L(b, c);
    for (std::size_t r = 0; r < n; ++r) sys(n * n + r * n + b, u) -= L(r, a);
  }
  return sys;
}

SubspaceBasis kernel_matrices(const RatMatrix& g, const RatMatrix& L,
                              const std::vector<std::size_t>& unknowns) {
  const std::size_t n = g.rows();
  SubspaceBasis out{n, {}, {}};
  for (const auto& v : kernel_basis(centralizer_system(g, L, unknowns))) {
    RatMatrix x(n, n);
    for (std::size_t u = 0; u < unknowns.size(); ++u) x(unknowns[u] / n, unknowns[u] % n) = v[u];
    out.elements.push_back(std::move(x));
  }
  return out;
}

void require_same_eigen_pair(const CanonicalPair& pair, std::size_t i, std::size_t j) {
  const auto blocks = pair.blocks();
  if (!(i < j && j < blocks.size()))
    throw std::out_of_range("m_ij: need i < j < number of blocks");
  if (pair.eigen_of_block(i) != pair.eigen_of_block(j))
    throw std::out_of_range("m_ij: blocks belong to different eigenvalues");
}

}  // namespace

SubspaceBasis centralizer_basis(const CanonicalPair& pair) {
  const std::size_t n = pair.dim();
  std::vector<std::size_t> all(n * n);
  for (std::size_t k = 0; k < n * n; ++k) all[k] = k;
  SubspaceBasis basis = kernel_matrices(pair.g, pair.L, all);
  std::vector<std::size_t> owner(n);
  for (std::size_t e = 0; e < pair.layout.size(); ++e)
    for (std::size_t k = 0; k < pair.layout[e].dim; ++k) owner[pair.layout[e].offset + k] = e;
  for (const auto& x : basis.elements)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (owner[r] != owner[c] && sgn(x(r, c)) != 0)
          throw std::logic_error("centraliser element couples distinct eigenvalues");
  return basis;
}

std::size_t centralizer_dimension_formula(const CanonicalPair& pair) {
  std::size_t dim = 0;
  for (const auto& e : pair.layout) {
    const std::size_t k = e.blocks.size();
    for (std::size_t i = 0; i < k; ++i) dim += (k - 1 - i) * e.blocks[i].size;
  }
  return dim;
}

SubspaceBasis m_ij_basis(const CanonicalPair& pair, std::size_t i, std::size_t j) {
  require_same_eigen_pair(pair, i, j);
  const auto blocks = pair.blocks();
  const std::size_t n = pair.dim();
  const auto& bi = blocks[i];
  const auto& bj = blocks[j];
  std::vector<std::size_t> unknowns;
  for (std::size_t r = 0; r < bi.size; ++r)
    for (std::size_t c = 0; c < bj.size; ++c) unknowns.push_back((bi.offset + r) * n + bj.offset + c);
  for (std::size_t r = 0; r < bj.size; ++r)
    for (std::size_t c = 0; c < bi.size; ++c) unknowns.push_back((bj.offset + r) * n + bi.offset + c);
  SubspaceBasis out = kernel_matrices(pair.g, pair.L, unknowns);
  out.tags.assign(out.elements.size(), WedgeTag{i, j});
  return out;
}

SubspaceBasis m_ij_pattern(const CanonicalPair& pair, std::size_t i, std::size_t j) {
  require_same_eigen_pair(pair, i, j);
  const auto blocks = pair.blocks();
  const std::size_t n = pair.dim();
  const auto& bi = blocks[i];
  const auto& bj = blocks[j];
  const std::size_t ni = bi.size;
  const std::size_t nj = bj.size;
  if (ni > nj) throw std::logic_error("m_ij_pattern: blocks not sorted by size");
  RatMatrix gi = pair.g.block(bi.offset, bi.offset, ni, ni);
  RatMatrix gj = pair.g.block(bj.offset, bj.offset, nj, nj);
  SubspaceBasis out{n, {}, {}};
  for (std::size_t t = 1; t <= ni; ++t) {
    // Row r (1-based) holds mu_s in column (nj - ni) + r + s - 1.
    RatMatrix mij(ni, nj);
    for (std::size_t r = 1; r + t - 1 <= ni; ++r) mij(r - 1, (nj - ni) + r + t - 2) = 1;
    RatMatrix mji = -(gj * mij.transpose() * gi);
    RatMatrix x(n, n);
    x.set_block(bi.offset, bj.offset, mij);
    x.set_block(bj.offset, bi.offset, mji);
    out.elements.push_back(std::move(x));
    out.tags.push_back({i, j});
  }
  return out;
}

std::optional<RatVector> member_coords(const RatMatrix& x, const SubspaceBasis& basis) {
  const std::size_t n = basis.n;
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("member_coords: dimension mismatch");
  RatMatrix cols(n * n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto e = basis.elements[k].entries();
    for (std::size_t r = 0; r < n * n; ++r) cols(r, k) = e[r];
  }
  return solve(cols, x.flatten());
}

std::size_t span_rank(const std::vector<RatMatrix>& elements) {
  if (elements.empty()) return 0;
  const std::size_t len = elements.front().rows() * elements.front().cols();
  RatMatrix m(elements.size(), len);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    auto e = elements[k].entries();
    for (std::size_t c = 0; c < len; ++c) m(k, c) = e[c];
  }
  return rank(m);
}

}  // namespace holo
