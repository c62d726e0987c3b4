#include "xtrid/xspace.hpp"

#include <string>

namespace xtrid {

namespace {

std::size_t distance(std::size_t i, std::size_t j) { return i > j ? i - j : j - i; }

// For a rank-one idempotent E = u w^T, returns (a nonzero row of E, a nonzero
// column of E): w_i^T X u_j = 0 iff E_i X E_j = 0.
struct RankOneFactors {
  Vector row;
  Vector column;
};

RankOneFactors factor(const Matrix& e) {
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      if (!e(r, c).is_zero()) return {e.row(r), e.column(c)};
    }
  }
  throw InvariantViolation("primitive idempotent is zero");
}

}  // namespace

std::vector<Matrix> spanning_set(const LeonardSystem& ls) {
  const auto& a = ls.a();
  const auto& as = ls.astar();
  return {Matrix::identity(ls.spec(), ls.d() + 1), a, as, a * as, as * a};
}

bool in_x(const LeonardSystem& ls, const Matrix& x) {
  const auto n = ls.d() + 1;
  if (!(x.spec() == ls.spec()) || !x.is_square() || x.rows() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance(i, j) <= 1) continue;
      if (!(ls.e_mats[i] * x * ls.e_mats[j]).is_zero()) return false;
      if (!(ls.estar_mats[i] * x * ls.estar_mats[j]).is_zero()) return false;
    }
  }
  return true;
}

XSpaceBasis compute_x(const LeonardSystem& ls) {
  const auto spec = ls.spec();
  const auto n = ls.d() + 1;
  const auto unknowns = n * n;

  std::vector<RankOneFactors> factors;
  factors.reserve(n);
  for (const auto& e : ls.e_mats) factors.push_back(factor(e));

  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance(i, j) <= 1) continue;
      // A* is diagonal in the working basis, so the starred constraint
      // pins entry (i, j) of X to zero.
      Vector entry(unknowns, Scalar::zero(spec));
      entry[i * n + j] = Scalar::one(spec);
      rows.push_back(std::move(entry));

      Vector conjugated(unknowns, Scalar::zero(spec));
      const auto& w = factors[i].row;
      const auto& u = factors[j].column;
      for (std::size_t k = 0; k < n; ++k) {
        if (w[k].is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) conjugated[k * n + l] = w[k] * u[l];
      }
      rows.push_back(std::move(conjugated));
    }
  }

  XSpaceBasis xb;
  xb.system = &ls;
  xb.spanning_set = spanning_set(ls);
  if (rows.empty()) {
    for (std::size_t k = 0; k < unknowns; ++k) {
      Vector unit(unknowns, Scalar::zero(spec));
      unit[k] = Scalar::one(spec);
      xb.solution_basis.push_back(Matrix::from_vector(spec, n, unit));
    }
  } else {
    for (const auto& v : nullspace(Matrix::from_rows(spec, unknowns, rows))) {
      xb.solution_basis.push_back(Matrix::from_vector(spec, n, v));
    }
  }
  xb.dim = xb.solution_basis.size();
  return xb;
}

MainTheoremReport verify_main_theorem(const XSpaceBasis& xb) {
  MainTheoremReport report;
  report.spans = true;
  for (const auto& x : xb.solution_basis) {
    if (!in_span(x, xb.spanning_set).member) {
      report.spans = false;
      break;
    }
  }
  report.independent = span_dimension(xb.spanning_set) == xb.spanning_set.size();
  return report;
}

bool verify_key_injectivity(const XSpaceBasis& xb) {
  const auto& ls = *xb.system;
  const auto spec = ls.spec();
  const auto& e0 = ls.estar_mats.front();
  const Matrix ae0 = ls.a() * e0;
  if (xb.dim == 0) return true;

  // Column k holds vec(X_k E*_0) stacked on vec(X_k A E*_0).
  const auto n2 = (ls.d() + 1) * (ls.d() + 1);
  Matrix map(spec, 2 * n2, xb.dim);
  for (std::size_t k = 0; k < xb.dim; ++k) {
    const Vector top = (xb.solution_basis[k] * e0).vectorize();
    const Vector bottom = (xb.solution_basis[k] * ae0).vectorize();
    for (std::size_t r = 0; r < n2; ++r) {
      map(r, k) = top[r];
      map(n2 + r, k) = bottom[r];
    }
  }
  return rank(map) == xb.dim;
}

DimBoundReport verify_dim_bound_mechanism(const XSpaceBasis& xb) {
  const auto& ls = *xb.system;
  if (ls.d() < 2) {
    throw OutOfRange("dimension bound mechanism needs d >= 2, got d = " + std::to_string(ls.d()));
  }
  const auto& e0 = ls.estar_mats.front();
  const Matrix ae0 = ls.a() * e0;
  std::vector<Matrix> images0, images1;
  for (const auto& x : xb.solution_basis) {
    images0.push_back(x * e0);
    images1.push_back(x * ae0);
  }
  DimBoundReport report;
  report.dim_xe0star = span_dimension(images0);
  report.dim_xae0star = span_dimension(images1);
  report.derived_bound = report.dim_xe0star + report.dim_xae0star;
  if (report.dim_xe0star > 2 || report.dim_xae0star > 3) {
    throw InvariantViolation("dim X E*_0 = " + std::to_string(report.dim_xe0star) +
                             ", dim X A E*_0 = " + std::to_string(report.dim_xae0star) +
                             " exceed the bounds 2 and 3");
  }
  return report;
}

}  // namespace xtrid
