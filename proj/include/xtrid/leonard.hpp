#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xtrid/errors.hpp"
#include "xtrid/matrix.hpp"

namespace xtrid {

// A pair (A, A*) written in a basis where A is tridiagonal and A* is
// diagonal, together with a claimed ordering of the eigenvalues of A.
// Nothing is checked at construction; validate() certifies it.
struct LeonardCandidate {
  std::size_t d = 0;
  Matrix a_mat;
  Matrix astar_mat;
  std::vector<Scalar> thetas;
  std::vector<Scalar> theta_stars;

  const FieldSpec& spec() const { return a_mat.spec(); }
  friend bool operator==(const LeonardCandidate&, const LeonardCandidate&) = default;
};

enum class Axiom {
  Shape,               // sizes, fields and d agree
  Tridiagonal,         // A vanishes off the three central diagonals
  Irreducible,         // sub- and superdiagonal of A are nonzero
  DiagonalDual,        // A* is diagonal with entries theta_stars
  MultiplicityFree,    // thetas (resp. theta_stars) mutually distinct
  Spectrum,            // prod_j (A - theta_j I) = 0
  DualTridiagonality,  // E_i A* E_j = 0 for |i-j| > 1, != 0 for |i-j| = 1
  Tridiagonality,      // E*_i A E*_j, same pattern
  Antiautomorphism,    // S A = A^T S, S A* = A*^T S has a unique invertible solution
};

const char* axiom_name(Axiom axiom);

class ValidationError : public Error {
 public:
  ValidationError(Axiom axiom, std::size_t i, std::size_t j, std::string detail);

  Axiom axiom() const { return axiom_; }
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  const std::string& detail() const { return detail_; }

 private:
  Axiom axiom_;
  std::size_t i_;
  std::size_t j_;
  std::string detail_;
};

// The antiautomorphism fixing A and A*, realized as X -> S^{-1} X^T S.
class Dagger {
 public:
  Dagger(Matrix s_mat, Matrix s_inverse)
      : s_mat_(std::move(s_mat)), s_inverse_(std::move(s_inverse)) {}

  const Matrix& s_mat() const { return s_mat_; }
  Matrix operator()(const Matrix& x) const { return s_inverse_ * x.transpose() * s_mat_; }

 private:
  Matrix s_mat_;
  Matrix s_inverse_;
};

struct LeonardSystem {
  LeonardCandidate candidate;
  std::vector<Matrix> e_mats;
  std::vector<Matrix> estar_mats;
  Dagger dagger;

  std::size_t d() const { return candidate.d; }
  const FieldSpec& spec() const { return candidate.spec(); }
  const Matrix& a() const { return candidate.a_mat; }
  const Matrix& astar() const { return candidate.astar_mat; }
  const std::vector<Scalar>& thetas() const { return candidate.thetas; }
  const std::vector<Scalar>& theta_stars() const { return candidate.theta_stars; }
  const Matrix& s_mat() const { return dagger.s_mat(); }
};

// A has (i, i-1) entry i, (i, i+1) entry d-i and zero diagonal;
// A* = diag(d - 2i); thetas = (d - 2i). Throws UnusableField when the
// construction degenerates modulo p.
LeonardCandidate krawtchouk_family(std::size_t d, FieldSpec spec);

// A -> uA + vI, A* -> u*A* + v*I, eigenvalues mapped alike.
LeonardCandidate affine_transform(const LeonardCandidate& c, const Scalar& u, const Scalar& v,
                                  const Scalar& ustar, const Scalar& vstar);

// Lagrange products E_i = prod_{j != i} (m - theta_j I) / (theta_i - theta_j).
// Throws NotMultiplicityFree on repeated thetas and WrongSpectrum when
// prod_j (m - theta_j I) != 0.
std::vector<Matrix> primitive_idempotents(const Matrix& m, const std::vector<Scalar>& thetas);

// Solves for S; throws AntiautomorphismNotUnique unless the solution space
// is one dimensional with an invertible member. S is scaled so that its
// first nonzero entry (row-major) is 1.
Dagger dagger_map(const LeonardCandidate& c);

// Throws ValidationError naming the first failed axiom.
LeonardSystem validate(const LeonardCandidate& c);

// rank(E_i E*_0) = rank(E*_i E_0) = 1 for all i.
bool verify_v_generation(const LeonardSystem& ls);

// Same candidate with A replaced by D A D^{-1} for D = diag(scales). The
// result has the same idempotent structure as the input.
LeonardCandidate diagonal_gauge(const LeonardCandidate& c, const std::vector<Scalar>& scales);

}  // namespace xtrid
