#include "holo/berger.hpp"

#include <algorithm>
#include <stdexcept>

namespace holo {

CurvatureMap::CurvatureMap(RatMatrix g, RatMatrix L, std::vector<RatMatrix> values)
    : g_(std::move(g)), L_(std::move(L)), values_(std::move(values)) {
  base_ = so_basis(g_);
  g_inverse_ = inverse(g_);
  if (values_.size() != base_.size())
    throw std::invalid_argument("CurvatureMap: one value per so(g) basis element required");
}

CurvatureMap CurvatureMap::from_function(const RatMatrix& g, const RatMatrix& L,
                                         const std::function<RatMatrix(const RatMatrix&)>& f) {
  std::vector<RatMatrix> values;
  for (const auto& x : so_basis(g).elements) values.push_back(f(x));
  return CurvatureMap(g, L, std::move(values));
}

RatMatrix CurvatureMap::on_wedge(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  if (i == j) return RatMatrix::zero(n, n);
  if (i < j) return values_[wedge_index(n, i, j)];
  return -values_[wedge_index(n, j, i)];
}

RatMatrix CurvatureMap::apply(const RatMatrix& x) const {
  const std::size_t n = dim();
  RatVector c = so_coords(x, g_inverse_);
  RatMatrix out(n, n);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (sgn(c[k]) != 0) out += c[k] * values_[k];
  return out;
}

RatMatrix r_minpoly(const CanonicalPair& pair, const RatMatrix& x) {
  const RatMatrix& L = pair.L;
  if (x.rows() != L.rows() || x.cols() != L.cols()) throw std::invalid_argument("r_minpoly: size mismatch");
  Poly p = minimal_polynomial(L);
  const std::size_t deg = static_cast<std::size_t>(p.degree());
  auto pw = matrix_powers(L, deg);
  RatMatrix out(L.rows(), L.cols());
  for (std::size_t m = 1; m <= deg; ++m) {
    if (sgn(p.coeffs[m]) == 0) continue;
    RatMatrix term(L.rows(), L.cols());
    for (std::size_t j = 0; j < m; ++j) term += pw[m - 1 - j] * x * pw[j];
    out += p.coeffs[m] * term;
  }
  return out;
}

std::vector<WedgeTag> block_pairs(const CanonicalPair& pair) {
  std::vector<WedgeTag> out;
  std::size_t base = 0;
  for (const auto& e : pair.layout) {
    for (std::size_t i = 0; i < e.blocks.size(); ++i)
      for (std::size_t j = i + 1; j < e.blocks.size(); ++j) out.push_back({base + i, base + j});
    base += e.blocks.size();
  }
  return out;
}

namespace {

// sum_s A^{m-1-s} X B^s over s = 0..m-1 for nilpotent shifted blocks.
RatMatrix sandwich_sum(const std::vector<RatMatrix>& left_powers, const RatMatrix& x,
                       const std::vector<RatMatrix>& right_powers, std::size_t m) {
  RatMatrix out(x.rows(), x.cols());
  for (std::size_t s = 0; s < m; ++s) out += left_powers[m - 1 - s] * x * right_powers[s];
  return out;
}

std::vector<RatMatrix> shifted_block_powers(const CanonicalPair& pair, const BlockLayout& b,
                                            const Rational& lambda, std::size_t count) {
  RatMatrix nb = pair.L.block(b.offset, b.offset, b.size, b.size);
  for (std::size_t d = 0; d < b.size; ++d) nb(d, d) -= lambda;
  return matrix_powers(nb, count);
}

}  // namespace

RatMatrix r_hat(const CanonicalPair& pair, std::size_t i, std::size_t j, const RatMatrix& x) {
  if (i >= j) throw std::invalid_argument("r_hat: need i < j");
  const auto blocks = pair.blocks();
  if (j >= blocks.size()) throw std::out_of_range("r_hat: block index out of range");
  const std::size_t e = pair.eigen_of_block(i);
  if (e != pair.eigen_of_block(j)) throw std::invalid_argument("r_hat: blocks of different eigenvalues");
  const std::size_t n = pair.dim();
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("r_hat: size mismatch");

  const auto& bi = blocks[i];
  const auto& bj = blocks[j];
  const std::size_t nij = std::max(bi.size, bj.size);
  const Rational& lambda = pair.layout[e].lambda;
  auto pi = shifted_block_powers(pair, bi, lambda, nij);
  auto pj = shifted_block_powers(pair, bj, lambda, nij);

  RatMatrix out(n, n);
  out.set_block(bi.offset, bj.offset,
                sandwich_sum(pi, x.block(bi.offset, bj.offset, bi.size, bj.size), pj, nij));
  out.set_block(bj.offset, bi.offset,
                sandwich_sum(pj, x.block(bj.offset, bi.offset, bj.size, bi.size), pi, nij));
  return out;
}

CurvatureMap r_formal(const CanonicalPair& pair) {
  const auto pairs = block_pairs(pair);
  return CurvatureMap::from_function(pair.g, pair.L, [&](const RatMatrix& x) {
    RatMatrix acc(pair.dim(), pair.dim());
    for (const auto& p : pairs) acc += r_hat(pair, p.i, p.j, x);
    return acc;
  });
}

BianchiResult check_bianchi(const CurvatureMap& r) {
  const std::size_t n = r.dim();
  BianchiResult res;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        // R(e_i^e_j)e_k + R(e_j^e_k)e_i + R(e_k^e_i)e_j
        RatVector s = r.on_wedge(i, j).column_vector(k);
        RatVector t = r.on_wedge(j, k).column_vector(i);
        RatVector u = r.on_wedge(k, i).column_vector(j);
        for (std::size_t c = 0; c < n; ++c) {
          Rational v = abs(s[c] + t[c] + u[c]);
          if (v > res.worst_violation) {
            res.ok = false;
            res.worst_violation = v;
            res.witness = std::array<std::size_t, 3>{i, j, k};
          }
        }
      }
  return res;
}

SectionalResult check_sectional(const CurvatureMap& r) {
  SectionalResult res;
  for (std::size_t k = 0; k < r.values().size(); ++k) {
    const RatMatrix& v = r.values()[k];
    bool commutes = commutator(v, r.L()).is_zero();
    bool skew = is_g_skew(v, r.g());
    if (!commutes) res.commutes_with_L = false;
    if (!skew) res.g_skew = false;
    if ((!commutes || !skew) && !res.failing) res.failing = r.base().tags[k];
  }
  return res;
}

BergerCertificate berger_certificate(const CurvatureMap& r, const SubspaceBasis& centralizer) {
  BergerCertificate cert;
  cert.dim_gL = centralizer.size();
  cert.bianchi_ok = check_bianchi(r).ok;
  bool contained = check_sectional(r).ok();
  for (const auto& v : r.values())
    if (contained && !member_coords(v, centralizer)) contained = false;
  cert.containment_ok = contained;
  const std::size_t n = r.dim();
  RowSpace image(n * n);
  for (std::size_t k = 0; k < r.values().size(); ++k)
    if (image.add(r.values()[k].flatten())) cert.witnesses.push_back(r.base().tags[k]);
  cert.image_rank = image.rank();
  return cert;
}

BergerCertificate berger_certificate(const CanonicalPair& pair) {
  return berger_certificate(r_formal(pair), centralizer_basis(pair));
}

}  // namespace holo
