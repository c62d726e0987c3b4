#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "xtrid/field.hpp"

namespace xtrid {

using Vector = std::vector<Scalar>;

// Dense exact matrix, row-major, rows and columns indexed from 0. Most of the
// library works with square matrices of order d+1; rectangular shapes show up
// as coefficient matrices of linear systems.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec spec, std::size_t rows, std::size_t cols);

  static Matrix zero(FieldSpec spec, std::size_t n) { return Matrix(spec, n, n); }
  static Matrix identity(FieldSpec spec, std::size_t n);
  static Matrix diagonal(FieldSpec spec, std::span<const Scalar> entries);
  static Matrix from_integers(FieldSpec spec,
                              std::initializer_list<std::initializer_list<long long>> rows);
  // Inverse of vectorize(): fills an n x n matrix from n*n row-major entries.
  static Matrix from_vector(FieldSpec spec, std::size_t n, std::span<const Scalar> entries);
  static Matrix from_rows(FieldSpec spec, std::size_t cols, std::span<const Vector> rows);

  const FieldSpec& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  // Throws IncompatibleOperands for rectangular matrices.
  std::size_t order() const;

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  // Row-major flattening.
  const Vector& vectorize() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Scalar& factor);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, const Scalar& factor) { return lhs *= factor; }
  friend Matrix operator*(const Scalar& factor, Matrix rhs) { return rhs *= factor; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend Vector operator*(const Matrix& lhs, const Vector& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs) = default;

 private:
  FieldSpec spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

// Exact product. Throws IncompatibleOperands on field or shape mismatch.
Matrix mat_mul(const Matrix& a, const Matrix& b);

Matrix pow(const Matrix& m, unsigned exponent);

struct EchelonForm {
  Matrix reduced;                   // reduced row-echelon form, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

EchelonForm rref(Matrix m);

std::size_t rank(const Matrix& m);

// Basis of the right nullspace {v : m v = 0}. The basis vectors, stacked as
// rows, are in reduced row-echelon form, so equal inputs give equal output.
std::vector<Vector> nullspace(const Matrix& m);

// Brings a list of vectors of equal length to reduced row-echelon form and
// drops zero rows. The result is a canonical basis of their span.
std::vector<Vector> canonical_basis(FieldSpec spec, std::size_t length,
                                    std::span<const Vector> vectors);

// Dimension of the span of a list of equally shaped matrices.
std::size_t span_dimension(std::span<const Matrix> matrices);

// Solves m x = rhs; free variables are set to zero. nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

struct SpanMembership {
  bool member = false;
  // Coefficients w.r.t. the spanners; the unique representation when the
  // spanners are independent, otherwise the one with free coordinates zero.
  Vector coords;
};

SpanMembership in_span(const Matrix& target, std::span<const Matrix> spanners);

// Throws SingularMatrix.
Matrix inverse(const Matrix& m);

// Linear combination sum_k coeffs[k] * terms[k]; terms must be non-empty.
Matrix combine(std::span<const Scalar> coeffs, std::span<const Matrix> terms);

}  // namespace xtrid
