#include "xtrid/matrix.hpp"

#include <string>
#include <utility>

#include "xtrid/errors.hpp"

namespace xtrid {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) {
    throw IncompatibleOperands("field mismatch: " + a.name() + " vs " + b.name());
  }
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  require_same_field(a.spec(), b.spec());
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw IncompatibleOperands("shape mismatch: " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

Matrix::Matrix(FieldSpec spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(spec)) {}

Matrix Matrix::identity(FieldSpec spec, std::size_t n) {
  Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(spec);
  return m;
}

Matrix Matrix::diagonal(FieldSpec spec, std::span<const Scalar> entries) {
  Matrix m(spec, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    require_same_field(spec, entries[i].spec());
    m(i, i) = entries[i];
  }
  return m;
}

Matrix Matrix::from_integers(FieldSpec spec,
                             std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(spec, rows.size(), cols);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw InvalidArgument("ragged matrix literal");
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = Scalar(spec, v);
    ++i;
  }
  return m;
}

Matrix Matrix::from_vector(FieldSpec spec, std::size_t n, std::span<const Scalar> entries) {
  if (entries.size() != n * n) {
    throw InvalidArgument("expected " + std::to_string(n * n) + " entries, got " +
                          std::to_string(entries.size()));
  }
  Matrix m(spec, n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    require_same_field(spec, entries[k].spec());
    m.data_[k] = entries[k];
  }
  return m;
}

Matrix Matrix::from_rows(FieldSpec spec, std::size_t cols, std::span<const Vector> rows) {
  Matrix m(spec, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) {
      require_same_field(spec, rows[i][j].spec());
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::size_t Matrix::order() const {
  if (!is_square()) throw IncompatibleOperands("expected a square matrix, got " + shape(*this));
  return rows_;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& factor) {
  require_same_field(spec_, factor.spec());
  for (auto& x : data_) x *= factor;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require_same_field(lhs.spec_, rhs.spec_);
  if (lhs.cols_ != rhs.rows_) {
    throw IncompatibleOperands("cannot multiply " + shape(lhs) + " by " + shape(rhs));
  }
  Matrix out(lhs.spec_, lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Scalar& a = lhs(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& lhs, const Vector& rhs) {
  if (lhs.cols_ != rhs.size()) throw IncompatibleOperands("vector length mismatch");
  Vector out(lhs.rows_, Scalar::zero(lhs.spec_));
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t j = 0; j < lhs.cols_; ++j) {
      if (!lhs(i, j).is_zero()) out[i] += lhs(i, j) * rhs[j];
    }
  }
  return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw IncompatibleOperands("mat_mul needs square matrices of equal order, got " + shape(a) +
                               " and " + shape(b));
  }
  return a * b;
}

Matrix pow(const Matrix& m, unsigned exponent) {
  Matrix result = Matrix::identity(m.spec(), m.order());
  for (unsigned k = 0; k < exponent; ++k) result = result * m;
  return result;
}

EchelonForm rref(Matrix m) {
  EchelonForm out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(r, j), m(pivot, j));
    }
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> canonical_basis(FieldSpec spec, std::size_t length,
                                    std::span<const Vector> vectors) {
  if (vectors.empty()) return {};
  const auto echelon = rref(Matrix::from_rows(spec, length, vectors));
  std::vector<Vector> basis;
  basis.reserve(echelon.pivots.size());
  for (std::size_t i = 0; i < echelon.pivots.size(); ++i) basis.push_back(echelon.reduced.row(i));
  return basis;
}

std::vector<Vector> nullspace(const Matrix& m) {
  const auto spec = m.spec();
  const std::size_t n = m.cols();
  const auto echelon = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : echelon.pivots) is_pivot[c] = true;

  std::vector<Vector> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, Scalar::zero(spec));
    v[free] = Scalar::one(spec);
    for (std::size_t i = 0; i < echelon.pivots.size(); ++i) {
      v[echelon.pivots[i]] = -echelon.reduced(i, free);
    }
    kernel.push_back(std::move(v));
  }
  return canonical_basis(spec, n, kernel);
}

std::size_t span_dimension(std::span<const Matrix> matrices) {
  if (matrices.empty()) return 0;
  std::vector<Vector> rows;
  rows.reserve(matrices.size());
  const auto spec = matrices.front().spec();
  const auto length = matrices.front().vectorize().size();
  for (const auto& m : matrices) {
    require_same_shape(matrices.front(), m);
    rows.push_back(m.vectorize());
  }
  return rank(Matrix::from_rows(spec, length, rows));
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) throw IncompatibleOperands("right-hand side length mismatch");
  const auto spec = m.spec();
  const std::size_t n = m.cols();
  Matrix augmented(spec, m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = m(i, j);
    require_same_field(spec, rhs[i].spec());
    augmented(i, n) = rhs[i];
  }
  const auto echelon = rref(std::move(augmented));
  if (!echelon.pivots.empty() && echelon.pivots.back() == n) return std::nullopt;
  Vector x(n, Scalar::zero(spec));
  for (std::size_t i = 0; i < echelon.pivots.size(); ++i) {
    x[echelon.pivots[i]] = echelon.reduced(i, n);
  }
  return x;
}

SpanMembership in_span(const Matrix& target, std::span<const Matrix> spanners) {
  const auto spec = target.spec();
  const auto& t = target.vectorize();
  if (spanners.empty()) return {target.is_zero(), {}};
  Matrix system(spec, t.size(), spanners.size());
  for (std::size_t k = 0; k < spanners.size(); ++k) {
    require_same_shape(target, spanners[k]);
    const auto& v = spanners[k].vectorize();
    for (std::size_t i = 0; i < v.size(); ++i) system(i, k) = v[i];
  }
  auto x = solve(system, t);
  if (!x) return {};
  return {true, std::move(*x)};
}

Matrix inverse(const Matrix& m) {
  const auto spec = m.spec();
  const std::size_t n = m.order();
  if (n == 0) return m;
  Matrix augmented(spec, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = m(i, j);
    augmented(i, n + i) = Scalar::one(spec);
  }
  const auto echelon = rref(std::move(augmented));
  if (echelon.pivots.size() < n || echelon.pivots[n - 1] != n - 1) {
    throw SingularMatrix("matrix of order " + std::to_string(n) + " is singular");
  }
  Matrix out(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = echelon.reduced(i, n + j);
  }
  return out;
}

Matrix combine(std::span<const Scalar> coeffs, std::span<const Matrix> terms) {
  if (terms.empty() || coeffs.size() != terms.size()) {
    throw InvalidArgument("combine needs matching non-empty coefficient and term lists");
  }
  Matrix out(terms.front().spec(), terms.front().rows(), terms.front().cols());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!coeffs[k].is_zero()) out += coeffs[k] * terms[k];
  }
  return out;
}

}  // namespace xtrid
