#include "holo/canonical.hpp"

#include <algorithm>

namespace holo {

std::size_t PencilSpec::dimension() const {
  std::size_t n = 0;
  for (const auto& e : eigens)
    for (const auto& b : e.blocks) n += b.size;
  return n;
}

std::size_t PencilSpec::block_count() const {
  std::size_t k = 0;
  for (const auto& e : eigens) k += e.blocks.size();
  return k;
}

PencilSpec normalized(PencilSpec spec) {
  if (spec.eigens.empty()) throw SpecError("spec has no eigenvalues");
  for (std::size_t a = 0; a < spec.eigens.size(); ++a) {
    auto& e = spec.eigens[a];
    if (e.blocks.empty()) throw SpecError("eigenvalue " + to_string(e.lambda) + " has no blocks");
    for (const auto& b : e.blocks) {
      if (b.size < 1) throw SpecError("block size must be >= 1");
      if (b.sign != 1 && b.sign != -1) throw SpecError("block sign must be +1 or -1");
    }
    std::stable_sort(e.blocks.begin(), e.blocks.end(), [](const BlockSpec& x, const BlockSpec& y) {
      if (x.size != y.size) return x.size < y.size;
      return x.sign > y.sign;
    });
    for (std::size_t b = 0; b < a; ++b)
      if (spec.eigens[b].lambda == e.lambda)
        throw SpecError("duplicate eigenvalue " + to_string(e.lambda));
  }
  return spec;
}

std::vector<BlockLayout> CanonicalPair::blocks() const {
  std::vector<BlockLayout> out;
  for (const auto& e : layout) out.insert(out.end(), e.blocks.begin(), e.blocks.end());
  return out;
}

std::size_t CanonicalPair::eigen_of_block(std::size_t b) const {
  for (std::size_t e = 0; e < layout.size(); ++e) {
    if (b < layout[e].blocks.size()) return e;
    b -= layout[e].blocks.size();
  }
  throw std::out_of_range("block index out of range");
}

RatMatrix jordan_block(std::size_t n) {
  RatMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1;
  return j;
}

RatMatrix signed_antidiagonal(std::size_t n, int sign) {
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1 - i) = sign;
  return a;
}

CanonicalPair build_canonical(const PencilSpec& raw) {
  PencilSpec spec = normalized(raw);
  const std::size_t n = spec.dimension();
  CanonicalPair pair{RatMatrix(n, n), RatMatrix(n, n), {}};
  std::size_t off = 0;
  for (const auto& e : spec.eigens) {
    EigenLayout el{e.lambda, off, 0, {}};
    for (const auto& b : e.blocks) {
      RatMatrix lb = jordan_block(b.size);
      for (std::size_t i = 0; i < b.size; ++i) lb(i, i) = e.lambda;
      pair.L.set_block(off, off, lb);
      pair.g.set_block(off, off, signed_antidiagonal(b.size, b.sign));
      el.blocks.push_back({off, b.size, b.sign});
      off += b.size;
      el.dim += b.size;
    }
    pair.layout.push_back(std::move(el));
  }
  return pair;
}

std::string PairValidation::failure() const {
  if (!g_symmetric) return "g is not symmetric";
  if (!g_nondegenerate) return "g is degenerate";
  if (!l_g_symmetric) return "gL is not symmetric";
  return {};
}

PairValidation validate_pair(const RatMatrix& g, const RatMatrix& L) {
  if (!g.is_square() || !L.is_square() || g.rows() != L.rows())
    throw std::invalid_argument("validate_pair: g and L must be square of equal size");
  PairValidation v;
  v.g_symmetric = g.transpose() == g;
  v.g_nondegenerate = rank(g) == g.rows();
  RatMatrix gl = g * L;
  v.l_g_symmetric = gl.transpose() == gl;
  return v;
}

CanonicalPair shift_to_nilpotent(const CanonicalPair& pair) {
  if (pair.layout.size() != 1)
    throw std::invalid_argument("shift_to_nilpotent: pair must have exactly one eigenvalue");
  CanonicalPair out = pair;
  const Rational lambda = pair.layout[0].lambda;
  for (std::size_t i = 0; i < out.dim(); ++i) out.L(i, i) -= lambda;
  out.layout[0].lambda = 0;
  return out;
}

std::vector<CanonicalPair> eigen_split(const CanonicalPair& pair) {
  std::vector<CanonicalPair> parts;
  for (const auto& e : pair.layout) {
    CanonicalPair p{pair.g.block(e.offset, e.offset, e.dim, e.dim),
                    pair.L.block(e.offset, e.offset, e.dim, e.dim),
                    {e}};
    p.layout[0].offset = 0;
    for (auto& b : p.layout[0].blocks) b.offset -= e.offset;
    parts.push_back(std::move(p));
  }
  return parts;
}

CanonicalPair reassemble(const std::vector<CanonicalPair>& parts) {
  std::vector<RatMatrix> gs, ls;
  CanonicalPair out;
  std::size_t off = 0;
  for (const auto& p : parts) {
    gs.push_back(p.g);
    ls.push_back(p.L);
    for (auto e : p.layout) {
      e.offset += off;
      for (auto& b : e.blocks) b.offset += off;
      out.layout.push_back(std::move(e));
    }
    off += p.dim();
  }
  out.g = direct_sum(gs);
  out.L = direct_sum(ls);
  return out;
}

}  // namespace holo
