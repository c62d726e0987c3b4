#include "xtrid/leonard.hpp"

#include <utility>

namespace xtrid {

namespace {

std::string entry_text(const Matrix& m, std::size_t r, std::size_t c) {
  return "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " + m(r, c).to_string();
}

// First nonzero entry of m, row-major.
std::optional<std::pair<std::size_t, std::size_t>> first_nonzero(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) return std::pair{r, c};
    }
  }
  return std::nullopt;
}

std::size_t distance(std::size_t i, std::size_t j) { return i > j ? i - j : j - i; }

std::optional<std::pair<std::size_t, std::size_t>> repeated(const std::vector<Scalar>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

Matrix shifted(const Matrix& m, const Scalar& theta) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= theta;
  return out;
}

Matrix annihilator(const Matrix& m, const std::vector<Scalar>& thetas) {
  Matrix product = Matrix::identity(m.spec(), m.order());
  for (const auto& theta : thetas) product = product * shifted(m, theta);
  return product;
}

// Checks the E_i M E_j support pattern of a Leonard system for one family.
void check_support(const std::vector<Matrix>& idempotents, const Matrix& m, Axiom axiom,
                   const char* label) {
  const std::size_t n = idempotents.size();
  std::vector<Matrix> right;
  right.reserve(n);
  for (const auto& e : idempotents) right.push_back(m * e);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto dist = distance(i, j);
      if (dist == 0) continue;
      const Matrix block = idempotents[i] * right[j];
      const auto nz = first_nonzero(block);
      if (dist > 1 && nz) {
        throw ValidationError(axiom, i, j,
                              std::string(label) + " must vanish for |i-j| > 1; " +
                                  entry_text(block, nz->first, nz->second));
      }
      if (dist == 1 && !nz) {
        throw ValidationError(axiom, i, j,
                              std::string(label) + " must be nonzero for |i-j| = 1");
      }
    }
  }
}

}  // namespace

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::Shape: return "shape";
    case Axiom::Tridiagonal: return "tridiagonal";
    case Axiom::Irreducible: return "irreducibility";
    case Axiom::DiagonalDual: return "diagonal-dual";
    case Axiom::MultiplicityFree: return "multiplicity-free";
    case Axiom::Spectrum: return "spectrum";
    case Axiom::DualTridiagonality: return "dual-tridiagonality";
    case Axiom::Tridiagonality: return "tridiagonality";
    case Axiom::Antiautomorphism: return "antiautomorphism";
  }
  return "unknown";
}

ValidationError::ValidationError(Axiom axiom, std::size_t i, std::size_t j, std::string detail)
    : Error(std::string("axiom ") + axiom_name(axiom) + " violated at (" + std::to_string(i) +
            "," + std::to_string(j) + "): " + detail),
      axiom_(axiom),
      i_(i),
      j_(j),
      detail_(std::move(detail)) {}

LeonardCandidate krawtchouk_family(std::size_t d, FieldSpec spec) {
  const std::size_t n = d + 1;
  LeonardCandidate c;
  c.d = d;
  c.a_mat = Matrix::zero(spec, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto value = static_cast<long long>(d) - 2 * static_cast<long long>(i);
    c.thetas.emplace_back(spec, value);
    c.theta_stars.emplace_back(spec, value);
    if (i > 0) c.a_mat(i, i - 1) = Scalar(spec, static_cast<long long>(i));
    if (i + 1 < n) c.a_mat(i, i + 1) = Scalar(spec, static_cast<long long>(d - i));
  }
  c.astar_mat = Matrix::diagonal(spec, c.theta_stars);
  if (auto clash = repeated(c.thetas)) {
    throw UnusableField("Krawtchouk eigenvalues " + std::to_string(clash->first) + " and " +
                        std::to_string(clash->second) + " coincide in " + spec.name());
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (c.a_mat(i, i + 1).is_zero() || c.a_mat(i + 1, i).is_zero()) {
      throw UnusableField("Krawtchouk off-diagonal entry vanishes in " + spec.name());
    }
  }
  return c;
}

LeonardCandidate affine_transform(const LeonardCandidate& c, const Scalar& u, const Scalar& v,
                                  const Scalar& ustar, const Scalar& vstar) {
  if (u.is_zero() || ustar.is_zero()) throw InvalidArgument("affine scaling must be nonzero");
  const auto n = c.a_mat.order();
  const auto identity = Matrix::identity(c.spec(), n);
  LeonardCandidate out = c;
  out.a_mat = u * c.a_mat + v * identity;
  out.astar_mat = ustar * c.astar_mat + vstar * identity;
  for (auto& t : out.thetas) t = u * t + v;
  for (auto& t : out.theta_stars) t = ustar * t + vstar;
  return out;
}

std::vector<Matrix> primitive_idempotents(const Matrix& m, const std::vector<Scalar>& thetas) {
  const auto n = m.order();
  if (thetas.size() != n) {
    throw InvalidArgument("expected " + std::to_string(n) + " eigenvalues, got " +
                          std::to_string(thetas.size()));
  }
  if (auto clash = repeated(thetas)) {
    throw NotMultiplicityFree("eigenvalues " + std::to_string(clash->first) + " and " +
                              std::to_string(clash->second) + " coincide");
  }
  const Matrix residual = annihilator(m, thetas);
  if (auto nz = first_nonzero(residual)) {
    throw WrongSpectrum("claimed eigenvalues do not annihilate the matrix; " +
                        entry_text(residual, nz->first, nz->second));
  }

  std::vector<Matrix> factors;
  factors.reserve(n);
  for (const auto& theta : thetas) factors.push_back(shifted(m, theta));

  std::vector<Matrix> idempotents;
  idempotents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix e = Matrix::identity(m.spec(), n);
    Scalar denominator = Scalar::one(m.spec());
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      e = e * factors[j];
      denominator *= thetas[i] - thetas[j];
    }
    idempotents.push_back(e * denominator.inverse());
  }
  return idempotents;
}

Dagger dagger_map(const LeonardCandidate& c) {
  const auto spec = c.spec();
  const auto n = c.a_mat.order();
  const std::size_t unknowns = n * n;
  // Rows encode (S M - M^T S)_{ij} for M = A, then M = A*.
  Matrix system(spec, 2 * unknowns, unknowns);
  std::size_t row = 0;
  for (const Matrix* m : {&c.a_mat, &c.astar_mat}) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t k = 0; k < n; ++k) {
          system(row, i * n + k) += (*m)(k, j);
          system(row, k * n + j) -= (*m)(k, i);
        }
      }
    }
  }
  const auto solutions = nullspace(system);
  if (solutions.size() != 1) {
    throw AntiautomorphismNotUnique("solution space for S has dimension " +
                                    std::to_string(solutions.size()) + ", expected 1");
  }
  Matrix s = Matrix::from_vector(spec, n, solutions.front());
  try {
    Matrix s_inv = inverse(s);
    return Dagger(std::move(s), std::move(s_inv));
  } catch (const SingularMatrix&) {
    throw AntiautomorphismNotUnique("the solution S is singular");
  }
}

LeonardSystem validate(const LeonardCandidate& c) {
  const auto spec = c.spec();
  const std::size_t n = c.d + 1;
  if (!c.a_mat.is_square() || c.a_mat.rows() != n || !c.astar_mat.is_square() ||
      c.astar_mat.rows() != n || c.thetas.size() != n || c.theta_stars.size() != n) {
    throw ValidationError(Axiom::Shape, 0, 0,
                          "matrices must have order d+1 and both eigenvalue lists length d+1");
  }
  if (!(c.astar_mat.spec() == spec)) {
    throw ValidationError(Axiom::Shape, 0, 0, "A and A* live over different fields");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c.thetas[i].spec() == spec) || !(c.theta_stars[i].spec() == spec)) {
      throw ValidationError(Axiom::Shape, i, i, "eigenvalue over the wrong field");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance(i, j) > 1 && !c.a_mat(i, j).is_zero()) {
        throw ValidationError(Axiom::Tridiagonal, i, j,
                              "A is not tridiagonal; " + entry_text(c.a_mat, i, j));
      }
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (c.a_mat(i, i + 1).is_zero()) {
      throw ValidationError(Axiom::Irreducible, i, i + 1, "superdiagonal entry of A is zero");
    }
    if (c.a_mat(i + 1, i).is_zero()) {
      throw ValidationError(Axiom::Irreducible, i + 1, i, "subdiagonal entry of A is zero");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !c.astar_mat(i, j).is_zero()) {
        throw ValidationError(Axiom::DiagonalDual, i, j,
                              "A* is not diagonal; " + entry_text(c.astar_mat, i, j));
      }
    }
    if (!(c.astar_mat(i, i) == c.theta_stars[i])) {
      throw ValidationError(Axiom::DiagonalDual, i, i,
                            "theta_stars disagree with the diagonal of A*; " +
                                entry_text(c.astar_mat, i, i));
    }
  }
  if (auto clash = repeated(c.thetas)) {
    throw ValidationError(Axiom::MultiplicityFree, clash->first, clash->second,
                          "thetas repeat the value " + c.thetas[clash->first].to_string());
  }
  if (auto clash = repeated(c.theta_stars)) {
    throw ValidationError(Axiom::MultiplicityFree, clash->first, clash->second,
                          "theta_stars repeat the value " +
                              c.theta_stars[clash->first].to_string());
  }

  const Matrix residual = annihilator(c.a_mat, c.thetas);
  if (auto nz = first_nonzero(residual)) {
    throw ValidationError(Axiom::Spectrum, nz->first, nz->second,
                          "prod_j (A - theta_j I) is nonzero; " +
                              entry_text(residual, nz->first, nz->second));
  }
  auto e_mats = primitive_idempotents(c.a_mat, c.thetas);

  std::vector<Matrix> estar_mats;
  estar_mats.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix unit = Matrix::zero(spec, n);
    unit(i, i) = Scalar::one(spec);
    estar_mats.push_back(std::move(unit));
  }

  check_support(e_mats, c.astar_mat, Axiom::DualTridiagonality, "E_i A* E_j");
  check_support(estar_mats, c.a_mat, Axiom::Tridiagonality, "E*_i A E*_j");

  try {
    Dagger dagger = dagger_map(c);
    return LeonardSystem{c, std::move(e_mats), std::move(estar_mats), std::move(dagger)};
  } catch (const AntiautomorphismNotUnique& err) {
    throw ValidationError(Axiom::Antiautomorphism, 0, 0, err.what());
  }
}

bool verify_v_generation(const LeonardSystem& ls) {
  const auto n = ls.d() + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank(ls.e_mats[i] * ls.estar_mats[0]) != 1) return false;
    if (rank(ls.estar_mats[i] * ls.e_mats[0]) != 1) return false;
  }
  return true;
}

LeonardCandidate diagonal_gauge(const LeonardCandidate& c, const std::vector<Scalar>& scales) {
  const auto n = c.a_mat.order();
  if (scales.size() != n) throw InvalidArgument("gauge needs one scale per basis vector");
  LeonardCandidate out = c;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!c.a_mat(i, j).is_zero()) out.a_mat(i, j) = scales[i] * c.a_mat(i, j) / scales[j];
    }
  }
  return out;
}

}  // namespace xtrid
