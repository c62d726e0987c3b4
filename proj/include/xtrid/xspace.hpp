#pragma once

#include <cstddef>
#include <vector>

#include "xtrid/leonard.hpp"

namespace xtrid {

// The space of X with E_i X E_j = 0 and E*_i X E*_j = 0 whenever |i-j| > 1.
struct XSpaceBasis {
  const LeonardSystem* system = nullptr;
  std::vector<Matrix> solution_basis;  // echelon-normalized
  std::vector<Matrix> spanning_set;    // I, A, A*, AA*, A*A
  std::size_t dim = 0;
};

// I, A, A*, AA*, A*A in this order.
std::vector<Matrix> spanning_set(const LeonardSystem& ls);

// True iff x satisfies both families of support constraints, checked by
// direct evaluation of E_i x E_j and E*_i x E*_j.
bool in_x(const LeonardSystem& ls, const Matrix& x);

// The returned basis keeps a pointer to ls; ls must outlive it.
XSpaceBasis compute_x(const LeonardSystem& ls);

struct MainTheoremReport {
  bool spans = false;
  bool independent = false;
};

MainTheoremReport verify_main_theorem(const XSpaceBasis& xb);

// X -> (X E*_0, X A E*_0) is injective on the computed space.
bool verify_key_injectivity(const XSpaceBasis& xb);

struct DimBoundReport {
  std::size_t dim_xe0star = 0;
  std::size_t dim_xae0star = 0;
  // dim X <= dim_xe0star + dim_xae0star, from the two kernels meeting trivially.
  std::size_t derived_bound = 0;
};

// Requires d >= 2 (OutOfRange otherwise). Throws InvariantViolation if
// either dimension exceeds its bound (2 and 3).
DimBoundReport verify_dim_bound_mechanism(const XSpaceBasis& xb);

}  // namespace xtrid
