#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holo/canonical.hpp"
#include "holo/io.hpp"
#include "holo/pipeline.hpp"
#include "support.hpp"

using namespace holo;

namespace {

PencilSpec single(const Rational& lambda, std::vector<BlockSpec> blocks) {
  return normalized(PencilSpec{{EigenSpec{lambda, std::move(blocks)}}});
}

Rational det(RatMatrix m) {
  const std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("one block of size one") {
  auto p = build_canonical(single(0, {{1, 1}}));
  CHECK(p.g == RatMatrix{{1}});
  CHECK(p.L == RatMatrix{{0}});
}

TEST_CASE("blocks (1,+1),(2,+1) at zero") {
  auto p = build_canonical(single(0, {{1, 1}, {2, 1}}));
  CHECK(p.g == RatMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  RatMatrix l(3, 3);
  l(1, 2) = 1;
  CHECK(p.L == l);
}

TEST_CASE("two eigenvalues assemble block-diagonally") {
  PencilSpec spec{{EigenSpec{0, {{2, 1}}}, EigenSpec{1, {{1, -1}}}}};
  auto p = build_canonical(normalized(spec));
  CHECK(p.L == RatMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
  CHECK(p.g == RatMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});
  CHECK(validate_pair(p.g, p.L).ok());
}

TEST_CASE("validate_pair reports the failing condition") {
  auto bad = validate_pair(RatMatrix::identity(2), RatMatrix{{0, 1}, {0, 0}});
  CHECK(bad.g_symmetric);
  CHECK(bad.g_nondegenerate);
  CHECK_FALSE(bad.l_g_symmetric);
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.failure().empty());

  auto good = validate_pair(RatMatrix{{0, 1}, {1, 0}}, RatMatrix{{0, 1}, {0, 0}});
  CHECK(good.ok());
  CHECK(good.failure().empty());

  auto degenerate = validate_pair(RatMatrix{{1, 1}, {1, 1}}, RatMatrix::zero(2, 2));
  CHECK_FALSE(degenerate.g_nondegenerate);
  auto asym = validate_pair(RatMatrix{{1, 2}, {0, 1}}, RatMatrix::zero(2, 2));
  CHECK_FALSE(asym.g_symmetric);
  CHECK_THROWS_AS(validate_pair(RatMatrix::identity(2), RatMatrix::zero(3, 3)), std::invalid_argument);
}

TEST_CASE("shift to nilpotent") {
  auto p0 = build_canonical(single(0, {{2, 1}}));
  CHECK(shift_to_nilpotent(p0) == p0);

  auto p1 = build_canonical(single(1, {{2, 1}}));
  CHECK(shift_to_nilpotent(p1).L == jordan_block(2));

  auto p2 = build_canonical(single(Rational(-3, 2), {{1, 1}, {1, 1}}));
  CHECK(shift_to_nilpotent(p2).L.is_zero());

  PencilSpec two{{EigenSpec{0, {{1, 1}}}, EigenSpec{1, {{1, 1}}}}};
  CHECK_THROWS(shift_to_nilpotent(build_canonical(normalized(two))));
}

TEST_CASE("eigen split and reassemble") {
  auto one = build_canonical(single(2, {{1, 1}, {3, -1}}));
  auto parts = eigen_split(one);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0] == one);

  PencilSpec two{{EigenSpec{0, {{2, 1}}}, EigenSpec{1, {{1, -1}}}}};
  auto p = build_canonical(normalized(two));
  auto split = eigen_split(p);
  REQUIRE(split.size() == 2);
  CHECK(split[0].dim() == 2);
  CHECK(split[1].dim() == 1);
  CHECK(reassemble(split) == p);
}

TEST_CASE("normalization sorts blocks and rejects duplicates") {
  auto spec = single(0, {{3, -1}, {1, -1}, {1, 1}, {3, 1}});
  const std::vector<BlockSpec> expect{{1, 1}, {1, -1}, {3, 1}, {3, -1}};
  CHECK(spec.eigens[0].blocks == expect);

  PencilSpec dup{{EigenSpec{0, {{1, 1}}}, EigenSpec{0, {{1, 1}}}}};
  CHECK_THROWS_AS(normalized(dup), SpecError);
  CHECK_THROWS_AS(normalized(PencilSpec{}), SpecError);
  CHECK_THROWS_AS(normalized(PencilSpec{{EigenSpec{0, {}}}}), SpecError);
  CHECK_THROWS_AS(normalized(PencilSpec{{EigenSpec{0, {{0, 1}}}}}), SpecError);
  CHECK_THROWS_AS(normalized(PencilSpec{{EigenSpec{0, {{1, 2}}}}}), SpecError);
}

TEST_CASE("JSON specs") {
  const auto j = Json::parse(R"({"eigenvalues":[{"lambda":"1/2","blocks":[{"size":2,"sign":-1},{"size":1,"sign":1}]}]})");
  auto spec = pencil_from_json(j);
  CHECK(spec.eigens[0].lambda == Rational(1, 2));
  CHECK(spec.eigens[0].blocks[0] == BlockSpec{1, 1});
  CHECK(pencil_from_json(pencil_to_json(spec)) == spec);

  CHECK_THROWS_AS(pencil_from_json(Json::parse(R"({"eigenvalues":[{"lambda":"1+2i","blocks":[{"size":1,"sign":1}]}]})")),
                  UnsupportedError);
  CHECK_THROWS_AS(
      pencil_from_json(Json::parse(R"({"eigenvalues":[{"lambda":"0","imag":"1","blocks":[{"size":1,"sign":1}]}]})")),
      UnsupportedError);
  CHECK_THROWS_AS(pencil_from_json(Json::parse(R"({"eigenvalues":[{"lambda":"0","blocks":[{"size":1,"sign":0}]}]})")),
                  SpecError);
  CHECK_THROWS_AS(pencil_from_json(Json::parse(R"({"blocks":[]})")), SpecError);
  CHECK_THROWS_AS(pencil_from_json(Json::parse(R"({"eigenvalues":[{"lambda":"x","blocks":[]}]})")), SpecError);
}

TEST_CASE("property: corpus pairs are valid and well shaped") {
  for (const auto& entry : corpus(8)) {
    CAPTURE(entry.name);
    const auto p = build_canonical(entry.spec);
    std::size_t total = 0;
    std::size_t largest = 0;
    for (const auto& b : entry.spec.eigens[0].blocks) {
      total += b.size;
      largest = std::max(largest, b.size);
    }
    CHECK(p.dim() == total);
    CHECK(validate_pair(p.g, p.L).ok());

    RatMatrix shifted = p.L - entry.spec.eigens[0].lambda * RatMatrix::identity(p.dim());
    RatMatrix power = RatMatrix::identity(p.dim());
    for (std::size_t k = 0; k < largest; ++k) power = power * shifted;
    CHECK(power.is_zero());

    for (const auto& b : p.blocks()) {
      const Rational d = det(p.g.block(b.offset, b.offset, b.size, b.size));
      CHECK((d == 1 || d == -1));
    }
  }
}

TEST_CASE("property: random multi-eigenvalue specs are valid") {
  testsupport::Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    PencilSpec spec;
    const long eigs = gen.integer(1, 3);
    for (long e = 0; e < eigs; ++e) {
      EigenSpec es{Rational(e * 3 + gen.integer(0, 2), gen.integer(1, 3)), {}};
      es.lambda.canonicalize();
      for (long b = gen.integer(1, 3); b > 0; --b)
        es.blocks.push_back({static_cast<std::size_t>(gen.integer(1, 3)), gen.integer(0, 1) ? 1 : -1});
      spec.eigens.push_back(es);
    }
    try {
      spec = normalized(spec);
    } catch (const SpecError&) {
      continue;  // two eigenvalues collided
    }
    const auto p = build_canonical(spec);
    CHECK(validate_pair(p.g, p.L).ok());
    CHECK(reassemble(eigen_split(p)) == p);
    CHECK(p.dim() == spec.dimension());
  }
}
