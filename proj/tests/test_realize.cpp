#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holo/io.hpp"
#include "holo/pipeline.hpp"
#include "holo/probe.hpp"
#include "holo/realize.hpp"
#include "numeric_support.hpp"
#include "support.hpp"

using namespace holo;
using testsupport::e_ab;
using testsupport::Gen;

namespace {

CanonicalPair nilpotent(std::vector<BlockSpec> blocks) {
  return build_canonical(normalized(PencilSpec{{EigenSpec{0, std::move(blocks)}}}));
}

RatMatrix adjoint(const RatMatrix& x, const RatMatrix& g) { return inverse(g) * x.transpose() * g; }

QuadraticMetric metric_for(const CanonicalPair& p) { return lower_B(build_B(p), p.g); }

double max_diff(const Tensor4& exact, const std::vector<double>& approx) {
  double worst = 0;
  for (std::size_t k = 0; k < approx.size(); ++k)
    worst = std::max(worst, std::abs(exact.data()[k].get_d() - approx[k]));
  return worst;
}

}  // namespace

TEST_CASE("B for L = 0, n = 2") {
  const auto p = nilpotent({{1, 1}, {1, 1}});
  const auto b = build_B(p);
  Gen gen(51);
  for (int t = 0; t < 5; ++t) {
    const RatMatrix x = gen.matrix(2, 2);
    CHECK(b.apply(x) == Rational(-1, 2) * x);
  }
  const auto qm = lower_B(b, p.g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t q = 0; q < 2; ++q)
          CHECK(qm.lowered(i, j, s, q) == Rational(-1, 2) * p.g(i, j) * p.g(s, q));
}

TEST_CASE("curvature operator from B") {
  Gen gen(52);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto p = nilpotent({{n, -1}});
    const auto b = build_B(p);
    for (const auto& x : so_basis(p.g).elements) {
      const RatMatrix bx = b.apply(x);
      CHECK((adjoint(bx, p.g) - bx).is_zero());
    }
  }
  const auto p = nilpotent({{1, 1}, {2, 1}});
  const auto b = build_B(p);
  const auto r = r_formal(p);
  const auto base = so_basis(p.g);
  for (std::size_t k = 0; k < base.size(); ++k) {
    const RatMatrix bx = b.apply(base.elements[k]);
    CHECK(adjoint(bx, p.g) - bx == r.values()[k]);
  }
}

TEST_CASE("lowering") {
  const auto p = nilpotent({{1, 1}, {2, 1}});
  BTensor zero{p.dim(), {}, {}};
  CHECK(lower_B(zero, p.g).lowered.is_zero());

  // Each term contributes (g0 C)_{ij} (g0 D)_{pq} with symmetric factors.
  const auto b = build_B(p);
  for (const auto& t : b.terms) {
    const RatMatrix gl = p.g * t.left, gr = p.g * t.right;
    CHECK(gl == gl.transpose());
    CHECK(gr == gr.transpose());
  }
  CHECK(has_metric_symmetries(lower_B(b, p.g)));
}

TEST_CASE("metric evaluation") {
  const auto p = nilpotent({{1, 1}, {1, 1}});
  const auto qm = metric_for(p);
  CHECK(metric_at(qm, {0, 0}).g == p.g);
  Gen gen(53);
  for (int t = 0; t < 10; ++t) {
    const Rational x1 = gen.rational(1, 7), x2 = gen.rational(1, 7);
    CHECK(metric_at(qm, {x1, x2}).g == (1 - (x1 * x1 + x2 * x2) / 2) * RatMatrix::identity(2));
  }
  const auto q3 = metric_for(nilpotent({{1, 1}, {2, -1}}));
  for (int t = 0; t < 10; ++t) {
    RatVector x{gen.rational(), gen.rational(), gen.rational()};
    const Rational s = gen.nonzero_rational();
    RatVector sx = x;
    for (auto& v : sx) v *= s;
    CHECK(metric_at(q3, sx).g - q3.g0 == s * s * (metric_at(q3, x).g - q3.g0));
  }
  CHECK(std::isinf(validity_radius(metric_for(nilpotent({{3, 1}})))));
  const double rad = validity_radius(q3);
  CHECK(rad > 0);
  CHECK(std::isfinite(rad));
  CHECK(metric_at(q3, {Rational(0), Rational(0), Rational(0)}).in_neighborhood);
  CHECK_FALSE(metric_at(q3, {Rational(100), Rational(0), Rational(0)}).in_neighborhood);
}

TEST_CASE("nabla L and g-symmetry checks") {
  const auto flat = nilpotent({{1, 1}, {1, -1}, {1, 1}});
  const auto qf = metric_for(flat);
  CHECK(check_nablaL(qf, flat.L).ok);
  CHECK(check_gsym(qf, flat.L).ok);

  const auto p = nilpotent({{1, 1}, {2, 1}});
  const auto qm = metric_for(p);
  CHECK(check_nablaL(qm, p.L).ok);
  CHECK(check_gsym(qm, p.L).ok);

  Gen gen(54);
  const RatMatrix m = gen.matrix(3, 3);
  const auto bad = check_gsym(qm, m);
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_failure.has_value());
}

TEST_CASE("nabla L detects corruption, cross-checked numerically") {
  const auto p = nilpotent({{1, 1}, {1, -1}, {2, 1}});
  const auto qm = metric_for(p);
  const std::size_t n = p.dim();
  const Eigen::MatrixXd L = to_eigen(p.L);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  std::vector<Eigen::VectorXd> points;
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd x(n);
    for (std::size_t c = 0; c < n; ++c) x[c] = u(rng);
    points.push_back(x);
  }
  int detected = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          QuadraticMetric bad = qm;
          // One entry of the symmetric tensor, with its mirrored copies.
          for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}})
            for (auto [s, t] : {std::pair{a, b}, std::pair{b, a}}) bad.lowered(x, y, s, t) = qm.lowered(x, y, s, t) + 1;
          const bool exact_ok = check_nablaL(bad, p.L).ok && check_gsym(bad, p.L).ok;
          double residual = 0;
          for (const auto& x : points) residual = std::max(residual, nablaL_residual(FloatMetric::from_exact(bad), L, x));
          CAPTURE(i);
          CAPTURE(j);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(exact_ok == (residual < 1e-9));
          if (!check_nablaL(bad, p.L).ok) ++detected;
        }
  CHECK(detected > 0);
}

TEST_CASE("curvature at the origin") {
  {
    QuadraticMetric flat{RatMatrix{{0, 1}, {1, 0}}, Tensor4(2), true};
    CHECK(riemann_from_coefficients(flat).is_zero());
    CHECK(riemann_from_christoffel(flat).is_zero());
  }
  const auto p = nilpotent({{1, 1}, {1, 1}});
  const auto qm = metric_for(p);
  const auto oc = riemann_at_origin(qm, p.L);
  CHECK(oc.routes_agree);
  REQUIRE(oc.map.values().size() == 1);
  CHECK(oc.map.values()[0] == wedge(unit_vector(2, 0), unit_vector(2, 1), p.g));
  CHECK(max_diff(riemann_from_coefficients(qm), testsupport::riemann_fd(FloatMetric::from_exact(qm))) < 1e-6);
}

TEST_CASE("verify_realization examples") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto rep = verify_realization(nilpotent({{n, 1}}));
    CHECK(rep.passes());
    CHECK(rep.curvature_rank == 0);
  }
  const auto rep = verify_realization(nilpotent({{1, 1}, {2, 1}}));
  CHECK(rep.passes());
  CHECK(rep.curvature_rank == 1);
}

TEST_CASE("property: corpus realizations") {
  for (const auto& entry : corpus(6)) {
    CAPTURE(entry.name);
    const auto p = build_canonical(entry.spec);
    QuadraticMetric qm;
    const auto rep = verify_realization(p, &qm);
    CHECK(rep.passes());
    CHECK(rep.symmetrization_noop);
    CHECK(has_metric_symmetries(qm));

    const auto b = build_B(p);
    const std::size_t n = p.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        const RatMatrix k = commutator(b.apply(e_ab(n, a, c)), p.L);
        CHECK((k + adjoint(k, p.g)).is_zero());
      }
    for (const auto& t : b.terms) {
      CHECK(commutator(t.left, p.L).is_zero());
      CHECK(commutator(t.right, p.L).is_zero());
    }
    const auto r = r_formal(p);
    const auto base = so_basis(p.g);
    for (std::size_t k = 0; k < base.size(); ++k) {
      const RatMatrix bx = b.apply(base.elements[k]);
      CHECK(is_g_skew(bx, p.g));
      CHECK(Rational(-2) * bx == r.values()[k]);
    }
    if (n <= 5) CHECK(max_diff(riemann_from_coefficients(qm), testsupport::riemann_fd(FloatMetric::from_exact(qm))) < 1e-6);
  }
}

TEST_CASE("property: curvature is linear in the coefficient tensor") {
  Gen gen(56);
  const auto p = nilpotent({{1, 1}, {2, -1}, {2, 1}});
  const std::size_t n = p.dim();
  for (int t = 0; t < 5; ++t) {
    QuadraticMetric q1{p.g, Tensor4(n), true}, q2{p.g, Tensor4(n), true};
    for (auto& v : q1.lowered.data()) v = gen.integer(0, 3) == 0 ? gen.rational() : Rational(0);
    for (auto& v : q2.lowered.data()) v = gen.integer(0, 3) == 0 ? gen.rational() : Rational(0);
    QuadraticMetric sum{p.g, q1.lowered, true};
    sum.lowered += q2.lowered;
    Tensor4 expect = riemann_from_coefficients(q1);
    expect += riemann_from_coefficients(q2);
    CHECK(riemann_from_coefficients(sum) == expect);
    Tensor4 expect2 = riemann_from_christoffel(q1);
    expect2 += riemann_from_christoffel(q2);
    CHECK(riemann_from_christoffel(sum) == expect2);
  }
}

TEST_CASE("metric JSON round trip") {
  const auto qm = metric_for(nilpotent({{1, -1}, {2, 1}}));
  const auto back = metric_from_json(Json::parse(metric_to_json(qm).dump()));
  CHECK(back.g0 == qm.g0);
  CHECK(back.lowered == qm.lowered);
  CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"g0":[["1"]]})")), SpecError);
  CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"g0":[["1"]],"B_lowered":[[["1"]]]})")), SpecError);
}

TEST_CASE("multi-eigenvalue realization") {
  PencilSpec spec{{EigenSpec{1, {{1, 1}, {2, -1}}}, EigenSpec{-1, {{1, 1}, {1, 1}}}}};
  const auto rep = verify_realization(build_canonical(normalized(spec)));
  CHECK(rep.passes());
  CHECK(rep.curvature_rank == 2);
}
