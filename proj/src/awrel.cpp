#include "xtrid/awrel.hpp"

#include <array>
#include <string>

namespace xtrid {

namespace {

constexpr std::size_t kParamCount = 8;

// Unknown order in the matching system.
enum Param { kBeta, kGamma, kGammaStar, kRho, kRhoStar, kOmega, kEta, kEtaStar };

Matrix identity_like(const LeonardSystem& ls) { return Matrix::identity(ls.spec(), ls.d() + 1); }

// Closed-form value that must be the same for every admissible index.
class Consensus {
 public:
  explicit Consensus(const char* name) : name_(name) {}

  void offer(const Scalar& value, std::size_t index) {
    if (!value_) {
      value_ = value;
      first_index_ = index;
    } else if (!(*value_ == value)) {
      throw InconsistentParameters(std::string(name_) + " is " + value_->to_string() +
                                   " at index " + std::to_string(first_index_) + " but " +
                                   value.to_string() + " at index " + std::to_string(index));
    }
  }
  const std::optional<Scalar>& value() const { return value_; }

 private:
  const char* name_;
  std::optional<Scalar> value_;
  std::size_t first_index_ = 0;
};

void require_match(const char* name, const Scalar& solved, const Scalar& closed_form) {
  if (!(solved == closed_form)) {
    throw InconsistentParameters(std::string(name) + " from the relations is " +
                                 solved.to_string() + " but the eigenvalue formula gives " +
                                 closed_form.to_string());
  }
}

// beta, gamma, rho from one eigenvalue sequence; gamma and rho use beta.
struct ClosedForm {
  Scalar beta, gamma, rho;
};

ClosedForm closed_form(const std::vector<Scalar>& th, const char* suffix) {
  const std::size_t d = th.size() - 1;
  const auto label = [&](const char* base) { return std::string(base) + suffix; };
  const std::string beta_name = label("beta");
  Consensus beta(beta_name.c_str());
  for (std::size_t i = 2; i + 1 <= d; ++i) {
    const Scalar one = Scalar::one(th[i].spec());
    beta.offer((th[i - 2] - th[i + 1]) / (th[i - 1] - th[i]) - one, i);
  }
  const Scalar b = *beta.value();
  const std::string gamma_name = label("gamma");
  Consensus gamma(gamma_name.c_str());
  for (std::size_t i = 1; i + 1 <= d; ++i) gamma.offer(th[i - 1] - b * th[i] + th[i + 1], i);
  const Scalar g = *gamma.value();
  const std::string rho_name = label("rho");
  Consensus rho(rho_name.c_str());
  for (std::size_t i = 1; i <= d; ++i) {
    rho.offer(th[i - 1] * th[i - 1] - b * th[i - 1] * th[i] + th[i] * th[i] -
                  g * (th[i - 1] + th[i]),
              i);
  }
  return {b, g, *rho.value()};
}

// Upsilon for the pair (m, other) with parameters (beta, gamma, rho).
Matrix upsilon_raw(const Matrix& m, const Scalar& beta, const Scalar& gamma, const Scalar& rho,
                   const Matrix& x) {
  const Matrix mx = m * x;
  const Matrix xm = x * m;
  return m * mx - beta * (mx * m) + xm * m - gamma * (mx + xm) - rho * x;
}

struct Side {
  const Matrix& m;
  Scalar gamma, rho;
};

Side side_of(const LeonardSystem& ls, const AWParams& p, UpsilonKind which) {
  if (which == UpsilonKind::Upsilon) return {ls.a(), p.gamma, p.rho};
  return {ls.astar(), p.gamma_star, p.rho_star};
}

std::vector<Matrix> powers(const Matrix& m, std::size_t top) {
  std::vector<Matrix> out{Matrix::identity(m.spec(), m.order())};
  for (std::size_t k = 1; k <= top; ++k) out.push_back(out.back() * m);
  return out;
}

Matrix apply(const LeonardSystem& ls, const AWParams& p, const Matrix& x, UpsilonKind which) {
  if (!in_x(ls, x)) throw DomainError("matrix does not lie in the space X");
  const auto side = side_of(ls, p, which);
  Matrix image = upsilon_raw(side.m, p.beta, side.gamma, side.rho, x);
  const auto algebra = powers(side.m, ls.d());
  if (!in_span(image, algebra).member) {
    throw InvariantViolation(which == UpsilonKind::Upsilon
                                 ? "image escapes the algebra generated by A"
                                 : "image escapes the algebra generated by A*");
  }
  return image;
}

}  // namespace

Matrix aw_residual(const LeonardSystem& ls, const AWParams& p) {
  const auto& a = ls.a();
  const auto& as = ls.astar();
  const Matrix a2 = a * a;
  return a2 * as - p.beta * (a * as * a) + as * a2 - p.gamma * (a * as + as * a) - p.rho * as -
         p.gamma_star * a2 - p.omega * a - p.eta * identity_like(ls);
}

Matrix aw_star_residual(const LeonardSystem& ls, const AWParams& p) {
  const auto& a = ls.a();
  const auto& as = ls.astar();
  const Matrix as2 = as * as;
  return as2 * a - p.beta * (as * a * as) + a * as2 - p.gamma_star * (as * a + a * as) -
         p.rho_star * a - p.gamma * as2 - p.omega * as - p.eta_star * identity_like(ls);
}

AWParams aw_params(const LeonardSystem& ls) {
  const auto spec = ls.spec();
  const auto& a = ls.a();
  const auto& as = ls.astar();
  const Matrix id = identity_like(ls);
  const Matrix zero = Matrix::zero(spec, ls.d() + 1);
  const Matrix a_as = a * as;
  const Matrix as_a = as * a;

  // Each relation reads  constant = sum_k param_k * column_k.
  const std::array<Matrix, kParamCount> first{
      a_as * a, a_as + as_a, a * a, as, zero, a, id, zero};
  const std::array<Matrix, kParamCount> second{
      as_a * as, as * as, as_a + a_as, zero, a, as, zero, id};
  const Matrix first_constant = a * a_as + as_a * a;
  const Matrix second_constant = as * as_a + a_as * as;

  const auto n2 = first_constant.vectorize().size();
  Matrix system(spec, 2 * n2, kParamCount);
  Vector rhs;
  rhs.reserve(2 * n2);
  for (std::size_t r = 0; r < n2; ++r) {
    for (std::size_t k = 0; k < kParamCount; ++k) {
      system(r, k) = first[k].vectorize()[r];
      system(n2 + r, k) = second[k].vectorize()[r];
    }
  }
  rhs.insert(rhs.end(), first_constant.vectorize().begin(), first_constant.vectorize().end());
  rhs.insert(rhs.end(), second_constant.vectorize().begin(), second_constant.vectorize().end());

  const auto solution = solve(system, rhs);
  if (!solution) {
    throw NotLeonardSystem("no scalars satisfy the Askey-Wilson relations");
  }
  const bool determined = nullspace(system).empty();
  const auto& s = *solution;
  AWParams p{s[kBeta], s[kGamma], s[kGammaStar], s[kRho], s[kRhoStar],
             s[kOmega], s[kEta], s[kEtaStar], ls.d() >= 3};

  if (ls.d() >= 3) {
    if (!determined) {
      throw NotLeonardSystem("Askey-Wilson scalars are not unique although d >= 3");
    }
    const auto plain = closed_form(ls.thetas(), "");
    const auto starred = closed_form(ls.theta_stars(), "*");
    require_match("beta", p.beta, plain.beta);
    require_match("beta (dual eigenvalues)", p.beta, starred.beta);
    require_match("gamma", p.gamma, plain.gamma);
    require_match("gamma*", p.gamma_star, starred.gamma);
    require_match("rho", p.rho, plain.rho);
    require_match("rho*", p.rho_star, starred.rho);
  }
  if (!aw_residual(ls, p).is_zero() || !aw_star_residual(ls, p).is_zero()) {
    throw InvariantViolation("Askey-Wilson residual is nonzero after solving");
  }
  return p;
}

Matrix upsilon_apply(const LeonardSystem& ls, const AWParams& p, const Matrix& x) {
  return apply(ls, p, x, UpsilonKind::Upsilon);
}

Matrix upsilon_star_apply(const LeonardSystem& ls, const AWParams& p, const Matrix& x) {
  return apply(ls, p, x, UpsilonKind::UpsilonStar);
}

UpsilonReport upsilon_report(const LeonardSystem& ls, const AWParams& p, UpsilonKind which) {
  if (ls.d() < 1) throw OutOfRange("upsilon report needs d >= 1");
  const auto spec = ls.spec();
  const auto side = side_of(ls, p, which);
  const auto spanners = spanning_set(ls);
  const std::size_t top = ls.d() < 3 ? ls.d() : 3;
  const auto target = powers(side.m, top);

  UpsilonReport report;
  report.which = which;
  report.matrix_of_map = Matrix(spec, target.size(), spanners.size());
  std::vector<Matrix> images;
  for (std::size_t k = 0; k < spanners.size(); ++k) {
    images.push_back(apply(ls, p, spanners[k], which));
    const auto coords = in_span(images.back(), target);
    if (!coords.member) {
      throw InvariantViolation("image of spanner " + std::to_string(k) +
                               " lies outside span{I, M, M^2, M^3}");
    }
    for (std::size_t r = 0; r < target.size(); ++r) report.matrix_of_map(r, k) = coords.coords[r];
  }
  report.containment_ii = true;
  report.containment_i = (images[3] - images[4]).is_zero();
  if (!report.containment_i) {
    throw InvariantViolation("AA* - A*A is not in the kernel");
  }

  report.kernel_basis = nullspace(report.matrix_of_map);
  std::vector<Matrix> kernel_elements;
  for (const auto& c : report.kernel_basis) kernel_elements.push_back(combine(c, spanners));
  report.kernel_dim = span_dimension(kernel_elements);

  std::vector<Vector> columns;
  for (std::size_t k = 0; k < spanners.size(); ++k) {
    columns.push_back(report.matrix_of_map.column(k));
  }
  for (const auto& v : canonical_basis(spec, target.size(), columns)) {
    report.image_basis.push_back(combine(v, target));
  }
  report.image_dim = report.image_basis.size();

  const Scalar two(spec, 2);
  report.b_mat = (two - p.beta) * (side.m * side.m) - two * side.gamma * side.m -
                 side.rho * target[0];
  const std::array<Matrix, 2> pair{report.b_mat, side.m * report.b_mat};
  report.b_pair_rank = span_dimension(pair);

  report.equality_i = report.kernel_dim == 1;
  // span{I, M, M^2, M^3} has dimension t + 1 since M has d + 1 distinct eigenvalues.
  report.equality_ii = report.image_dim == target.size();
  if (ls.d() >= 3 && report.equality_i != report.equality_ii) {
    throw InvariantViolation("kernel equality and image equality disagree for d >= 3");
  }
  return report;
}

BipartiteFlags bipartite_flags(const LeonardSystem& ls) {
  BipartiteFlags flags{true, true};
  for (std::size_t i = 0; i <= ls.d(); ++i) {
    if (!(ls.estar_mats[i] * ls.a() * ls.estar_mats[i]).is_zero()) flags.bipartite = false;
    if (!(ls.e_mats[i] * ls.astar() * ls.e_mats[i]).is_zero()) flags.dual_bipartite = false;
  }
  return flags;
}

bool verify_bipartite_nonvanishing(const LeonardSystem& ls, const AWParams& p) {
  if (ls.d() < 3) throw OutOfRange("nonvanishing check needs d >= 3");
  const auto spec = ls.spec();
  const Scalar two(spec, 2);
  const auto& th = ls.thetas();
  for (std::size_t i = 1; i + 1 <= ls.d(); ++i) {
    const Scalar lhs = (two - p.beta) * th[i] * th[i] - two * p.gamma * th[i] - p.rho;
    const Scalar rhs = (th[i] - th[i - 1]) * (th[i] - th[i + 1]);
    if (!(lhs == rhs) || lhs.is_zero()) return false;
  }
  return true;
}

}  // namespace xtrid
