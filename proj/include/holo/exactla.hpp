#pragma once

// Exact rational scalars, dense rational matrices and the handful of
// elimination routines the algebraic checks are built on.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holo {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses "p/q", "p", with an optional leading '-' (ASCII or U+2212).
/// The result is canonicalized. Throws std::invalid_argument on bad input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
  static RatMatrix column(const RatVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  // Row-major.
  std::span<const Rational> entries() const { return entries_; }
  RatVector flatten() const { return entries_; }
  RatVector column_vector(std::size_t c) const;

  RatMatrix transpose() const;
  bool is_zero() const;

  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b);

  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator-=(const RatMatrix& o);
  RatMatrix& operator*=(const Rational& s);

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator+(RatMatrix a, const RatMatrix& b);
RatMatrix operator-(RatMatrix a, const RatMatrix& b);
RatMatrix operator-(RatMatrix a);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, RatMatrix a);
RatVector operator*(const RatMatrix& a, const RatVector& v);

/// [a, b] = ab - ba
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

/// Block-diagonal direct sum.
RatMatrix direct_sum(std::span<const RatMatrix> blocks);

/// Polynomial with rational coefficients, lowest degree first. The zero
/// polynomial has no coefficients; trailing zeros are trimmed.
struct Poly {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  RatMatrix evaluate(const RatMatrix& m) const;
  void trim();

  friend bool operator==(const Poly& a, const Poly& b) = default;
};

std::size_t rank(const RatMatrix& m);

/// Basis of {v : m v = 0}; one vector per free column of the reduced echelon
/// form, in column order.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

/// [L^0, ..., L^d]
std::vector<RatMatrix> matrix_powers(const RatMatrix& l, std::size_t d);

/// Monic annihilating polynomial of least degree, found by the first linear
/// dependence among vec(I), vec(L), vec(L^2), ...
Poly minimal_polynomial(const RatMatrix& l);

/// Incrementally maintained row echelon basis of a subspace of Q^dim.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}

  /// Adds v; returns true when v was independent of what is already held.
  bool add(RatVector v);
  bool contains(RatVector v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  void reduce(RatVector& v) const;

  std::size_t dim_;
  std::vector<RatVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace holo
