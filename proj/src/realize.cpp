#include "holo/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace holo {

bool Tensor4::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  if (o.n_ != n_) throw std::invalid_argument("Tensor4: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RatMatrix BTensor::apply(const RatMatrix& x) const {
  RatMatrix out(n, n);
  for (const auto& t : terms) out += t.coeff * (t.left * x * t.right);
  return out;
}

Tensor4 BTensor::components() const {
  Tensor4 c(n);
  for (const auto& t : terms)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(t.left(a, j)) == 0) continue;
        Rational lc = t.coeff * t.left(a, j);
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t q = 0; q < n; ++q)
            if (sgn(t.right(b, q)) != 0) c(a, b, j, q) += lc * t.right(b, q);
      }
  return c;
}

BTensor build_B(const CanonicalPair& pair) {
  const std::size_t n = pair.dim();
  BTensor b{n, {}, {}};
  const auto blocks = pair.blocks();
  for (const auto& bp : block_pairs(pair)) {
    const auto& bi = blocks[bp.i];
    const auto& bj = blocks[bp.j];
    const Rational& lambda = pair.layout[pair.eigen_of_block(bp.i)].lambda;
    RatMatrix proj(n, n);
    for (const auto* blk : {&bi, &bj})
      for (std::size_t d = 0; d < blk->size; ++d) proj(blk->offset + d, blk->offset + d) = 1;
    RatMatrix shifted = pair.L;
    for (std::size_t d = 0; d < n; ++d) shifted(d, d) -= lambda;
    const RatMatrix nil = proj * shifted;
    const std::size_t m = std::max(bi.size, bj.size);
    std::vector<RatMatrix> pw{proj};
    for (std::size_t k = 1; k < m; ++k) pw.push_back(pw.back() * nil);
    for (std::size_t s = 0; s < m; ++s) b.terms.push_back({Rational(-1, 2), pw[m - 1 - s], pw[s]});
    b.provenance.push_back(bp);
  }
  return b;
}

QuadraticMetric lower_B(const BTensor& b, const RatMatrix& g0) {
  const std::size_t n = b.n;
  if (g0.rows() != n || g0.cols() != n) throw std::invalid_argument("lower_B: g0 size mismatch");
  const Tensor4 comp = b.components();
  // step(i, beta, j, q) = g_{i alpha} B^{alpha beta}_{j q}
  Tensor4 step(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      if (sgn(g0(i, a)) == 0) continue;
      for (std::size_t be = 0; be < n; ++be)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t q = 0; q < n; ++q)
            if (sgn(comp(a, be, j, q)) != 0) step(i, be, j, q) += g0(i, a) * comp(a, be, j, q);
    }
  QuadraticMetric qm{g0, Tensor4(n), true};
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t be = 0; be < n; ++be) {
      if (sgn(g0(p, be)) == 0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t q = 0; q < n; ++q)
            if (sgn(step(i, be, j, q)) != 0) qm.lowered(i, j, p, q) += g0(p, be) * step(i, be, j, q);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
          if (qm.lowered(i, j, p, q) != qm.lowered(i, j, q, p)) qm.symmetrization_noop = false;
  if (!qm.symmetrization_noop) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = p + 1; q < n; ++q) {
            Rational avg = (qm.lowered(i, j, p, q) + qm.lowered(i, j, q, p)) / 2;
            qm.lowered(i, j, p, q) = avg;
            qm.lowered(i, j, q, p) = avg;
          }
  }
  return qm;
}

bool has_metric_symmetries(const QuadraticMetric& qm) {
  const std::size_t n = qm.dim();
  const Tensor4& t = qm.lowered;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (t(i, j, p, q) != t(j, i, p, q) || t(i, j, p, q) != t(i, j, q, p)) return false;
  return true;
}

MetricValue metric_at(const QuadraticMetric& qm, const RatVector& x) {
  const std::size_t n = qm.dim();
  if (x.size() != n) throw std::invalid_argument("metric_at: point dimension mismatch");
  MetricValue mv{qm.g0, false, true};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p) {
        if (sgn(x[p]) == 0) continue;
        for (std::size_t q = 0; q < n; ++q)
          if (sgn(x[q]) != 0 && sgn(qm.lowered(i, j, p, q)) != 0)
            mv.g(i, j) += qm.lowered(i, j, p, q) * x[p] * x[q];
      }
  mv.singular = rank(mv.g) < n;
  double norm = 0;
  for (const auto& c : x) norm = std::max(norm, std::abs(c.get_d()));
  mv.in_neighborhood = norm < validity_radius(qm);
  return mv;
}

double validity_radius(const QuadraticMetric& qm) {
  const std::size_t n = qm.dim();
  const RatMatrix ginv = inverse(qm.g0);
  double ginv_norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(ginv(i, j).get_d());
    ginv_norm = std::max(ginv_norm, row);
  }
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) row += std::abs(qm.lowered(i, j, p, q).get_d());
    s = std::max(s, row);
  }
  if (s == 0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(ginv_norm * s);
}

IndexCheck check_nablaL(const QuadraticMetric& qm, const RatMatrix& L) {
  const std::size_t n = qm.dim();
  const Tensor4& b = qm.lowered;
  IndexCheck res;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t k = 0; k < n; ++k) {
          Rational lhs, rhs;
          for (std::size_t be = 0; be < n; ++be) {
            if (sgn(L(be, k)) != 0) lhs += (b(i, p, be, q) - b(i, be, p, q)) * L(be, k);
            if (sgn(L(be, p)) != 0) rhs += (b(be, i, k, q) - b(i, k, be, q)) * L(be, p);
          }
          if (lhs != rhs) {
            res.ok = false;
            if (!res.first_failure) res.first_failure = std::array<std::size_t, 4>{i, p, q, k};
            return res;
          }
        }
  return res;
}

IndexCheck check_gsym(const QuadraticMetric& qm, const RatMatrix& L) {
  const std::size_t n = qm.dim();
  const Tensor4& b = qm.lowered;
  IndexCheck res;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          Rational lhs, rhs;
          for (std::size_t i = 0; i < n; ++i) {
            if (sgn(L(i, l)) != 0) lhs += b(i, j, p, q) * L(i, l);
            if (sgn(L(i, j)) != 0) rhs += b(i, l, p, q) * L(i, j);
          }
          if (lhs != rhs) {
            res.ok = false;
            res.first_failure = std::array<std::size_t, 4>{j, l, p, q};
            return res;
          }
        }
  return res;
}

Tensor4 riemann_from_coefficients(const QuadraticMetric& qm) {
  const std::size_t n = qm.dim();
  const Tensor4& b = qm.lowered;
  const RatMatrix ginv = inverse(qm.g0);
  Tensor4 r(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t be = 0; be < n; ++be)
        for (std::size_t s = 0; s < n; ++s) {
          Rational lowered = b(be, s, a, k) + b(a, k, be, s) - b(be, k, a, s) - b(a, s, be, k);
          if (sgn(lowered) == 0) continue;
          for (std::size_t i = 0; i < n; ++i)
            if (sgn(ginv(i, s)) != 0) r(i, k, a, be) += ginv(i, s) * lowered;
        }
  return r;
}

Tensor4 riemann_from_christoffel(const QuadraticMetric& qm) {
  const std::size_t n = qm.dim();
  const Tensor4& b = qm.lowered;
  // 2-jet of g at the origin, from g_ij(x) = g0_ij + sum_pq Bcal_{ij,pq} x^p x^q.
  // d_a g_ij(0) = sum_p (Bcal_{ij,ap} + Bcal_{ij,pa}) x^p at x = 0, i.e. 0.
  Tensor4 hess(n);  // (i, j, a, c) -> d_a d_c g_ij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) hess(i, j, a, c) = b(i, j, a, c) + b(i, j, c, a);
  std::vector<RatMatrix> dg(n, RatMatrix(n, n));  // all zero at the origin

  const RatMatrix ginv = inverse(qm.g0);
  // Gamma_{s,ij} = 1/2 (d_i g_sj + d_j g_si - d_s g_ij), d_a of it from hess.
  auto idx3 = [n](std::size_t s, std::size_t i, std::size_t j) { return (s * n + i) * n + j; };
  std::vector<Rational> gamma_low(n * n * n);
  Tensor4 dgamma_low(n);  // (s, i, j, a) -> d_a Gamma_{s,ij}
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        gamma_low[idx3(s, i, j)] = (dg[i](s, j) + dg[j](s, i) - dg[s](i, j)) / 2;
        for (std::size_t a = 0; a < n; ++a)
          dgamma_low(s, i, j, a) = (hess(s, j, i, a) + hess(s, i, j, a) - hess(i, j, s, a)) / 2;
      }
  // Gamma^m_ij = g^{ms} Gamma_{s,ij};
  // d_a Gamma^m_ij = -g^{mt} (d_a g_tu) g^{us} Gamma_{s,ij} + g^{ms} d_a Gamma_{s,ij}.
  std::vector<Rational> gamma(n * n * n);
  Tensor4 dgamma(n);  // (m, i, j, a)
  for (std::size_t a = 0; a < n; ++a) {
    RatMatrix dginv = -(ginv * dg[a] * ginv);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Rational acc;
          for (std::size_t s = 0; s < n; ++s) {
            if (sgn(dginv(m, s)) != 0) acc += dginv(m, s) * gamma_low[idx3(s, i, j)];
            if (sgn(ginv(m, s)) != 0) acc += ginv(m, s) * dgamma_low(s, i, j, a);
          }
          dgamma(m, i, j, a) = acc;
        }
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < n; ++s) gamma[idx3(m, i, j)] += ginv(m, s) * gamma_low[idx3(s, i, j)];

  Tensor4 r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t be = 0; be < n; ++be) {
          Rational v = dgamma(i, be, k, a) - dgamma(i, a, k, be);
          for (std::size_t s = 0; s < n; ++s)
            v += gamma[idx3(i, a, s)] * gamma[idx3(s, be, k)] - gamma[idx3(i, be, s)] * gamma[idx3(s, a, k)];
          r(i, k, a, be) = v;
        }
  return r;
}

CurvatureMap curvature_map_from_riemann(const Tensor4& riemann, const RatMatrix& g0, const RatMatrix& L) {
  const std::size_t n = riemann.dim();
  std::vector<RatMatrix> values;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t be = a + 1; be < n; ++be) {
      RatMatrix v(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) v(i, k) = riemann(i, k, a, be);
      values.push_back(std::move(v));
    }
  return CurvatureMap(g0, L, std::move(values));
}

OriginCurvature riemann_at_origin(const QuadraticMetric& qm, const RatMatrix& L) {
  Tensor4 by_formula = riemann_from_coefficients(qm);
  Tensor4 by_christoffel = riemann_from_christoffel(qm);
  return {curvature_map_from_riemann(by_formula, qm.g0, L), by_formula == by_christoffel};
}

RealizationReport verify_realization(const CanonicalPair& pair, QuadraticMetric* metric) {
  RealizationReport rep;
  QuadraticMetric qm = lower_B(build_B(pair), pair.g);
  rep.symmetrization_noop = qm.symmetrization_noop;
  rep.metric_symmetric = has_metric_symmetries(qm);
  IndexCheck nl = check_nablaL(qm, pair.L);
  rep.nabla_l_ok = nl.ok;
  rep.nabla_l_failure = nl.first_failure;
  IndexCheck gs = check_gsym(qm, pair.L);
  rep.g_symmetric_ok = gs.ok;
  rep.g_symmetric_failure = gs.first_failure;
  OriginCurvature oc = riemann_at_origin(qm, pair.L);
  rep.routes_agree = oc.routes_agree;
  rep.matches_r_formal = oc.map == r_formal(pair);
  rep.curvature_rank = span_rank(oc.map.values());
  if (metric) *metric = std::move(qm);
  return rep;
}

}  // namespace holo
