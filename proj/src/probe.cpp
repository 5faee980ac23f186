#include "holo/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "holo/parallel.hpp"

namespace holo {

Eigen::MatrixXd to_eigen(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

FloatMetric FloatMetric::from_exact(const QuadraticMetric& qm) {
  FloatMetric fm;
  fm.n = qm.dim();
  fm.g0 = to_eigen(qm.g0);
  fm.bcal.reserve(qm.lowered.data().size());
  for (const auto& q : qm.lowered.data()) fm.bcal.push_back(q.get_d());
  return fm;
}

Eigen::MatrixXd FloatMetric::metric(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd g = g0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) acc += b(i, j, p, q) * x[p] * x[q];
      g(i, j) += acc;
    }
  return g;
}

std::vector<Eigen::MatrixXd> FloatMetric::metric_gradient(const Eigen::VectorXd& x) const {
  std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0;
        for (std::size_t p = 0; p < n; ++p) acc += (b(i, j, a, p) + b(i, j, p, a)) * x[p];
        dg[a](i, j) = acc;
      }
  return dg;
}

Eigen::MatrixXd Christoffel::contract(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) m(k, j) += (*this)(k, i, j) * v[i];
    }
  return m;
}

Christoffel christoffel(const FloatMetric& m, const Eigen::VectorXd& x) {
  const std::size_t n = m.n;
  if (static_cast<std::size_t>(x.size()) != n) throw std::invalid_argument("christoffel: point dimension mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m.metric(x));
  if (!(lu.rcond() > 1e-12)) throw SingularMetricError("metric is singular at the requested point");
  Eigen::MatrixXd ginv = lu.inverse();
  auto dg = m.metric_gradient(x);
  std::vector<double> low(n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        low[(s * n + i) * n + j] = 0.5 * (dg[i](s, j) + dg[j](s, i) - dg[s](i, j));
  Christoffel c{n, std::vector<double>(n * n * n, 0.0)};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t s = 0; s < n; ++s) {
      const double gks = ginv(k, s);
      if (gks == 0) continue;
      for (std::size_t ij = 0; ij < n * n; ++ij) c.data[k * n * n + ij] += gks * low[s * n * n + ij];
    }
  return c;
}

Eigen::MatrixXd transport_segment(const FloatMetric& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                  std::size_t steps, Eigen::MatrixXd p) {
  const Eigen::VectorXd velocity = b - a;
  if (velocity.isZero(0.0)) return p;
  const double dt = 1.0 / static_cast<double>(steps);
  auto rhs = [&](double t, const Eigen::MatrixXd& state) -> Eigen::MatrixXd {
    Eigen::VectorXd x = a + t * velocity;
    return -christoffel(m, x).contract(velocity) * state;
  };
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = s * dt;
    Eigen::MatrixXd k1 = rhs(t, p);
    Eigen::MatrixXd k2 = rhs(t + 0.5 * dt, p + 0.5 * dt * k1);
    Eigen::MatrixXd k3 = rhs(t + 0.5 * dt, p + 0.5 * dt * k2);
    Eigen::MatrixXd k4 = rhs(t + dt, p + dt * k3);
    p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return p;
}

HolonomyProbe::HolonomyProbe(FloatMetric metric, const SubspaceBasis& algebra, double negligible_norm)
    : metric_(std::move(metric)), negligible_norm_(negligible_norm) {
  const std::size_t n = metric_.n;
  if (algebra.size() == 0) {
    orthonormal_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * n), 0);
    return;
  }
  Eigen::MatrixXd cols(n * n, algebra.size());
  for (std::size_t k = 0; k < algebra.size(); ++k) {
    const auto entries = algebra.elements[k].entries();
    for (std::size_t r = 0; r < n * n; ++r) cols(r, k) = entries[r].get_d();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  orthonormal_ = qr.householderQ() * Eigen::MatrixXd::Identity(n * n, algebra.size());
}

double HolonomyProbe::membership_residual(const Eigen::MatrixXd& psi) const {
  // The algebra was flattened row-major; Eigen storage is column-major.
  Eigen::MatrixXd psi_t = psi.transpose();
  Eigen::Map<const Eigen::VectorXd> v(psi_t.data(), psi_t.size());
  const double norm = v.norm();
  if (norm < negligible_norm_) return 0.0;
  Eigen::VectorXd proj = orthonormal_ * (orthonormal_.transpose() * v);
  return (v - proj).norm() / norm;
}

HolonomySample HolonomyProbe::parallel_transport(const LoopSpec& loop) const {
  const std::size_t n = metric_.n;
  if (static_cast<std::size_t>(loop.basepoint.size()) != n) throw std::invalid_argument("loop basepoint dimension");
  if (!(loop.alpha < loop.beta && loop.beta < n)) throw std::invalid_argument("loop plane must satisfy alpha < beta < n");
  if (!(loop.side > 0)) throw std::invalid_argument("loop side must be positive");
  if (loop.steps < 16) throw std::invalid_argument("loop needs at least 16 steps per side");

  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd& x0 = loop.basepoint;
  Eigen::VectorXd ea = Eigen::VectorXd::Zero(n), eb = Eigen::VectorXd::Zero(n);
  ea[loop.alpha] = loop.side;
  eb[loop.beta] = loop.side;
  const double step_len = loop.side / static_cast<double>(loop.steps);
  const std::size_t tether_steps =
      std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(x0.norm() / step_len)));

  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  p = transport_segment(metric_, origin, x0, tether_steps, p);
  const Eigen::VectorXd corners[5] = {x0, x0 + ea, x0 + ea + eb, x0 + eb, x0};
  for (int s = 0; s < 4; ++s) p = transport_segment(metric_, corners[s], corners[s + 1], loop.steps, p);
  p = transport_segment(metric_, x0, origin, tether_steps, p);

  HolonomySample sample;
  sample.loop = loop;
  sample.transport = p;
  const Eigen::MatrixXd e = p - Eigen::MatrixXd::Identity(n, n);
  sample.log_approx = e - 0.5 * e * e;
  sample.membership_residual = membership_residual(sample.log_approx);
  sample.metric_defect = (metric_.g0 - p.transpose() * metric_.g0 * p).norm();
  sample.determinant = p.determinant();
  return sample;
}

std::vector<LoopSpec> standard_loop_family(std::size_t n, const ProbeConfig& config) {
  std::vector<Eigen::VectorXd> basepoints{Eigen::VectorXd::Zero(n)};
  std::mt19937_64 rng(config.seed);
  for (std::size_t k = 0; k < config.random_basepoints; ++k) {
    Eigen::VectorXd x(n);
    for (std::size_t c = 0; c < n; ++c) {
      // 53 random bits in [0, 1), independent of the library's distributions.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[c] = (2.0 * u - 1.0) * config.basepoint_radius;
    }
    basepoints.push_back(x);
  }
  const std::size_t steps =
      std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(config.side / config.max_step - 1e-9)));
  std::vector<LoopSpec> loops;
  for (const auto& x : basepoints)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) loops.push_back({x, a, b, config.side, steps});
  return loops;
}

SpanReport holonomy_span(const HolonomyProbe& probe, const std::vector<LoopSpec>& loops,
                         const ProbeConfig& config) {
  SpanReport rep;
  rep.dim_gL = probe.algebra_dim();
  rep.samples.resize(loops.size());
  parallel_for(loops.size(), [&](std::size_t k) { rep.samples[k] = probe.parallel_transport(loops[k]); });

  const std::size_t n = probe.metric().n;
  Eigen::MatrixXd stack(loops.size(), n * n);
  for (std::size_t k = 0; k < rep.samples.size(); ++k) {
    const auto& s = rep.samples[k];
    rep.max_membership_residual = std::max(rep.max_membership_residual, s.membership_residual);
    rep.max_metric_defect = std::max(rep.max_metric_defect, s.metric_defect);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stack(k, r * n + c) = s.log_approx(r, c);
  }
  if (loops.empty()) {
    rep.gap = std::numeric_limits<double>::infinity();
    return rep;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
  const Eigen::VectorXd sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  rep.span_rank = 0;
  if (top > 0)
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv[k] > config.rank_threshold * top) ++rep.span_rank;
  const auto r = static_cast<Eigen::Index>(rep.span_rank);
  if (r == 0 || r >= sv.size() || sv[r] == 0)
    rep.gap = std::numeric_limits<double>::infinity();
  else
    rep.gap = sv[r - 1] / sv[r];
  return rep;
}

double nablaL_residual(const FloatMetric& m, const Eigen::MatrixXd& L, const Eigen::VectorXd& x) {
  const std::size_t n = m.n;
  const Christoffel c = christoffel(m, x);
  double worst = 0;
  // (nabla_k L)^i_j = Gamma^i_{km} L^m_j - Gamma^m_{kj} L^i_m
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0;
        for (std::size_t mm = 0; mm < n; ++mm) v += c(i, k, mm) * L(mm, j) - c(mm, k, j) * L(i, mm);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

}  // namespace holo
