#pragma once

#include <cstddef>
#include <vector>

#include "xtrid/leonard.hpp"
#include "xtrid/xspace.hpp"

namespace xtrid {

// Scalars of the Askey-Wilson relations
//   A^2 A* - beta A A* A + A* A^2 - gamma (A A* + A* A) - rho A*
//       = gamma* A^2 + omega A + eta I
// and the mirror with the roles of A and A* exchanged.
struct AWParams {
  Scalar beta, gamma, gamma_star, rho, rho_star, omega, eta, eta_star;
  // The parameters are determined by the system only when d >= 3.
  bool unique = false;
};

// Left side minus right side of each relation; both vanish for genuine
// parameters of a Leonard system.
Matrix aw_residual(const LeonardSystem& ls, const AWParams& p);
Matrix aw_star_residual(const LeonardSystem& ls, const AWParams& p);

// All eight scalars solve a linear system read off the two relations. For
// d >= 3 the solution is unique and is cross-checked against the closed-form
// eigenvalue expressions for beta, gamma, gamma*, rho and rho*, each of which
// must agree across every admissible index. For d <= 2 the echelon-canonical
// solution (free parameters zero) is returned with unique = false.
// Throws InconsistentParameters or NotLeonardSystem.
AWParams aw_params(const LeonardSystem& ls);

enum class UpsilonKind { Upsilon, UpsilonStar };

// A^2 X - beta A X A + X A^2 - gamma (A X + X A) - rho X, or its starred
// mirror. Throws DomainError unless X lies in the space X, and
// InvariantViolation if the image escapes the algebra generated by A (A*).
Matrix upsilon_apply(const LeonardSystem& ls, const AWParams& p, const Matrix& x);
Matrix upsilon_star_apply(const LeonardSystem& ls, const AWParams& p, const Matrix& x);

struct UpsilonReport {
  UpsilonKind which = UpsilonKind::Upsilon;
  // Column k: coordinates of the image of the k-th spanner (I, A, A*, AA*,
  // A*A) in the target basis I, M, ..., M^t with t = min(d, 3), M = A or A*.
  Matrix matrix_of_map;
  std::vector<Vector> kernel_basis;  // 5-vectors over the spanners
  std::vector<Matrix> image_basis;
  std::size_t kernel_dim = 0;  // dimension of the kernel as a subspace of X
  std::size_t image_dim = 0;
  Matrix b_mat;              // (2 - beta) M^2 - 2 gamma M - rho I
  std::size_t b_pair_rank = 0;  // rank of {B, M B}
  bool containment_i = false;   // AA* - A*A lies in the kernel
  bool containment_ii = false;  // image inside span{I, M, M^2, M^3}
  bool equality_i = false;      // kernel is exactly span{AA* - A*A}
  bool equality_ii = false;     // image is all of span{I, M, M^2, M^3}
};

// Requires d >= 1. Throws InvariantViolation if a containment fails or, for
// d >= 3, if equality_i and equality_ii disagree.
UpsilonReport upsilon_report(const LeonardSystem& ls, const AWParams& p, UpsilonKind which);

struct BipartiteFlags {
  bool bipartite = false;       // E*_i A E*_i = 0 for all i
  bool dual_bipartite = false;  // E_i A* E_i = 0 for all i
};

BipartiteFlags bipartite_flags(const LeonardSystem& ls);

// For 1 <= i <= d-1: (2-beta) theta_i^2 - 2 gamma theta_i - rho equals
// (theta_i - theta_{i-1})(theta_i - theta_{i+1}) and is nonzero.
// Requires d >= 3 (OutOfRange otherwise).
bool verify_bipartite_nonvanishing(const LeonardSystem& ls, const AWParams& p);

}  // namespace xtrid
