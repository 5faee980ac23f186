#include "holo/exactla.hpp"

#include <stdexcept>
#include <utility>

namespace holo {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // Accept the typographic minus sign as well as '-'.
  const std::string unicode_minus = "\xE2\x88\x92";
  if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto all_digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t k = from; k < to; ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!all_digits(start, s.size())) throw std::invalid_argument("bad rational: " + s);
  } else {
    if (!all_digits(start, slash) || !all_digits(slash + 1, s.size()))
      throw std::invalid_argument("bad rational: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::column(const RatVector& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RatVector RatMatrix::column_vector(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (sgn(e) != 0) return false;
  return true;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  RatMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void RatMatrix::set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("block outside matrix");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
RatMatrix operator-(RatMatrix a) { return a *= Rational(-1); }
RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  RatMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) p(i, j) += aik * b(k, j);
    }
  return p;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("shape mismatch in matrix*vector");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0) out[i] += a(i, k) * v[k];
  return out;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

RatMatrix direct_sum(std::span<const RatMatrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw std::invalid_argument("direct_sum needs square blocks");
    n += b.rows();
  }
  RatMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    m.set_block(off, off, b);
    off += b.rows();
  }
  return m;
}

void Poly::trim() {
  while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
}

RatMatrix Poly::evaluate(const RatMatrix& m) const {
  if (!m.is_square()) throw std::invalid_argument("polynomial of non-square matrix");
  // Horner.
  RatMatrix acc = RatMatrix::zero(m.rows(), m.cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

namespace {

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

// Reduced row echelon form in place. Pivots are chosen among the nonzero
// candidates of smallest numerator+denominator bit length to limit growth.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    std::size_t best_bits = 0;
    for (std::size_t r = row; r < a.rows(); ++r) {
      if (sgn(a(r, col)) == 0) continue;
      std::size_t bits = bit_size(a(r, col));
      if (best == a.rows() || bits < best_bits) {
        best = r;
        best_bits = bits;
      }
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(row, c));
    Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (sgn(a(row, c)) != 0) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t r = 0; r < m.rows(); ++r) aug(r, m.cols()) = b[r];
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

std::vector<RatMatrix> matrix_powers(const RatMatrix& l, std::size_t d) {
  if (!l.is_square()) throw std::invalid_argument("matrix_powers: non-square");
  std::vector<RatMatrix> out;
  out.reserve(d + 1);
  out.push_back(RatMatrix::identity(l.rows()));
  for (std::size_t k = 1; k <= d; ++k) out.push_back(out.back() * l);
  return out;
}

Poly minimal_polynomial(const RatMatrix& l) {
  if (!l.is_square()) throw std::invalid_argument("minimal_polynomial: non-square");
  const std::size_t n = l.rows();
  std::vector<RatMatrix> powers{RatMatrix::identity(n)};
  for (std::size_t deg = 1; deg <= n; ++deg) {
    powers.push_back(powers.back() * l);
    // Columns vec(L^0..L^{deg-1}); look for vec(L^deg) in their span.
    RatMatrix cols(n * n, deg);
    for (std::size_t k = 0; k < deg; ++k) {
      auto e = powers[k].entries();
      for (std::size_t r = 0; r < n * n; ++r) cols(r, k) = e[r];
    }
    auto target = powers[deg].flatten();
    if (auto c = solve(cols, target)) {
      Poly p;
      p.coeffs.resize(deg + 1);
      for (std::size_t k = 0; k < deg; ++k) p.coeffs[k] = -(*c)[k];
      p.coeffs[deg] = 1;
      return p;
    }
  }
  // Cayley-Hamilton guarantees termination by degree n; n == 0 lands here.
  return Poly{{Rational(1)}};
}

void RowSpace::reduce(RatVector& v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational& f = v[pivots_[k]];
    if (sgn(f) == 0) continue;
    Rational factor = f;
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(rows_[k][c]) != 0) v[c] -= factor * rows_[k][c];
  }
}

bool RowSpace::add(RatVector v) {
  if (v.size() != dim_) throw std::invalid_argument("RowSpace: dimension mismatch");
  reduce(v);
  std::size_t p = 0;
  while (p < dim_ && sgn(v[p]) == 0) ++p;
  if (p == dim_) return false;
  Rational inv = 1 / v[p];
  for (auto& e : v) e *= inv;
  // Keep existing rows reduced against the new pivot.
  for (auto& row : rows_) {
    if (sgn(row[p]) == 0) continue;
    Rational f = row[p];
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(v[c]) != 0) row[c] -= f * v[c];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::contains(RatVector v) const {
  if (v.size() != dim_) throw std::invalid_argument("RowSpace: dimension mismatch");
  reduce(v);
  for (const auto& e : v)
    if (sgn(e) != 0) return false;
  return true;
}

}  // namespace holo
