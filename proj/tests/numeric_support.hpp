#pragma once

// Finite-difference oracles for the numerical probe.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "holo/probe.hpp"

namespace testsupport {

/// Gamma^k_ij from central differences of the metric itself (not of its
/// analytic gradient), stored at (k*n + i)*n + j.
inline std::vector<double> christoffel_fd(const holo::FloatMetric& m, const Eigen::VectorXd& x, double h = 1e-5) {
  const std::size_t n = m.n;
  std::vector<Eigen::MatrixXd> dg(n);
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::VectorXd xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    dg[a] = (m.metric(xp) - m.metric(xm)) / (2 * h);
  }
  const Eigen::MatrixXd ginv = m.metric(x).inverse();
  std::vector<double> out(n * n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0;
        for (std::size_t s = 0; s < n; ++s) acc += ginv(k, s) * 0.5 * (dg[i](s, j) + dg[j](s, i) - dg[s](i, j));
        out[(k * n + i) * n + j] = acc;
      }
  return out;
}

/// R^i_{k a b} at the origin, flattened as ((i*n + k)*n + a)*n + b, from
/// central differences of the analytic Christoffel symbols. The quadratic
/// Christoffel terms vanish at the origin.
inline std::vector<double> riemann_fd(const holo::FloatMetric& fm, double h = 1e-4) {
  const std::size_t n = fm.n;
  std::vector<holo::Christoffel> plus, minus;
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x[a] = h;
    plus.push_back(holo::christoffel(fm, x));
    minus.push_back(holo::christoffel(fm, -x));
  }
  auto d = [&](std::size_t a, std::size_t i, std::size_t b, std::size_t k) {
    return (plus[a](i, b, k) - minus[a](i, b, k)) / (2 * h);
  };
  std::vector<double> r(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r[((i * n + k) * n + a) * n + b] = d(a, i, b, k) - d(b, i, a, k);
  return r;
}

/// Matrix R(e_a ^ e_b) read off a flattened Riemann tensor.
inline Eigen::MatrixXd riemann_slice(const std::vector<double>& r, std::size_t n, std::size_t a, std::size_t b) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = r[((i * n + k) * n + a) * n + b];
  return m;
}

}  // namespace testsupport
