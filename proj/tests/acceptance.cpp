// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "xtrid/awrel.hpp"
#include "xtrid/explorer.hpp"
#include "xtrid/xspace.hpp"

using namespace xtrid;
using support::GF;
using support::Q;
using support::s;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool passed() const { return failed_ == 0; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::size_t failed() const { return failed_; }
  std::string note;

 private:
  std::string name_;
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string tag(const LeonardSystem& ls) {
  return "d=" + std::to_string(ls.d()) + " " + ls.spec().name();
}

// Krawtchouk d = 0..6 over Q and GF(101), plus affine images.
std::vector<LeonardSystem> test_systems() {
  std::vector<LeonardSystem> out;
  for (const auto spec : {Q(), GF(101)}) {
    for (std::size_t d = 0; d <= 6; ++d) {
      out.push_back(support::krawtchouk(d, spec));
      out.push_back(support::affine_krawtchouk(d, 2, 5, 1, 0, spec));
      out.push_back(support::affine_krawtchouk(d, 1, 1, 1, 1, spec));
      out.push_back(support::affine_krawtchouk(d, 3, -2, 5, 1, spec));
    }
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_1(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto spec : {Q(), GF(101)}) {
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto ls = support::krawtchouk(d, spec);
      const auto xb = compute_x(ls);
      const auto r = verify_main_theorem(xb);
      c.require(xb.dim == 5, tag(ls) + ": dim " + std::to_string(xb.dim));
      c.require(r.spans && r.independent, tag(ls) + ": spanning set is not a basis");
    }
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  c.note = std::to_string(elapsed) + " s";
}

void criterion_2(Criterion& c) {
  for (const auto spec : {Q(), GF(101)}) {
    const auto ls1 = support::krawtchouk(1, spec);
    const auto x1 = compute_x(ls1);
    const auto r1 = verify_main_theorem(x1);
    c.require(x1.dim == 4, tag(ls1) + ": dim " + std::to_string(x1.dim));
    c.require(r1.spans && !r1.independent, tag(ls1) + ": wrong span/independence");
    const auto ls1b = support::affine_krawtchouk(1, 3, 1, 2, 7, spec);
    c.require(compute_x(ls1b).dim == 4, tag(ls1b) + " affine: dim");
    const auto ls0 = support::krawtchouk(0, spec);
    c.require(compute_x(ls0).dim == 1, tag(ls0) + ": dim");
  }
  // Independent constraint assembly agrees.
  c.require(oracle::x_dimension({oracle::identity(2)}, 1) == 1, "oracle d=0");
  const auto ls1 = support::krawtchouk(1);
  c.require(oracle::x_dimension(oracle::idempotents(oracle::to_qmat(ls1.a()), {1, -1}), 2) == 4,
            "oracle d=1");
}

void criterion_3(Criterion& c) {
  for (const auto& ls : test_systems()) {
    const auto spec = ls.spec();
    const std::size_t n = ls.d() + 1;
    Matrix sum = Matrix::zero(spec, n), weighted = Matrix::zero(spec, n);
    Matrix sum_s = Matrix::zero(spec, n), weighted_s = Matrix::zero(spec, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = ls.e_mats[i];
      const auto& es = ls.estar_mats[i];
      c.require(ls.a() * e == e * ls.thetas()[i], tag(ls) + ": A E_i != theta_i E_i");
      c.require(ls.astar() * es == es * ls.theta_stars()[i], tag(ls) + ": starred (i)");
      c.require(rank(e) == 1 && rank(es) == 1, tag(ls) + ": rank(E_i) != 1");
      for (std::size_t j = 0; j < n; ++j) {
        const auto expect = i == j ? e : Matrix::zero(spec, n);
        const auto expect_s = i == j ? es : Matrix::zero(spec, n);
        c.require(e * ls.e_mats[j] == expect, tag(ls) + ": E_i E_j");
        c.require(es * ls.estar_mats[j] == expect_s, tag(ls) + ": E*_i E*_j");
      }
      sum += e;
      sum_s += es;
      weighted += e * ls.thetas()[i];
      weighted_s += es * ls.theta_stars()[i];
    }
    c.require(sum == Matrix::identity(spec, n) && sum_s == Matrix::identity(spec, n),
              tag(ls) + ": sum E_i != I");
    c.require(weighted == ls.a() && weighted_s == ls.astar(), tag(ls) + ": sum theta_i E_i != A");
    c.require(verify_v_generation(ls), tag(ls) + ": V-generation rank conditions");
    if (spec.is_rational()) {
      std::vector<mpq_class> thetas;
      for (const auto& t : ls.thetas()) thetas.push_back(t.rational());
      const auto ref = oracle::idempotents(oracle::to_qmat(ls.a()), thetas);
      for (std::size_t i = 0; i < n; ++i)
        c.require(oracle::to_qmat(ls.e_mats[i]) == ref[i], tag(ls) + ": E_i differs from oracle");
    }
  }
}

// Dimension of {S : S A = A^T S, S A* = A*^T S} by independent elimination.
std::size_t dagger_solution_dim(const LeonardSystem& ls) {
  const std::size_t n = ls.d() + 1;
  const auto a = oracle::to_qmat(ls.a());
  const auto as = oracle::to_qmat(ls.astar());
  oracle::QMat rows;
  for (const auto* m : {&a, &as}) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (S M)_{ij} - (M^T S)_{ij} = sum_k S_{ik} M_{kj} - M_{ki} S_{kj}
        std::vector<mpq_class> row(n * n, 0);
        for (std::size_t k = 0; k < n; ++k) {
          row[i * n + k] += (*m)[k][j];
          row[k * n + j] -= (*m)[k][i];
        }
        rows.push_back(std::move(row));
      }
  }
  return n * n - oracle::rank(rows);
}

void criterion_4(Criterion& c) {
  std::mt19937_64 rng(0);
  for (const auto& ls : test_systems()) {
    if (ls.d() < 1) continue;
    const auto spec = ls.spec();
    if (spec.is_rational())
      c.require(dagger_solution_dim(ls) == 1, tag(ls) + ": solution space dimension != 1");
    const auto& dag = ls.dagger;
    c.require(ls.s_mat() * ls.a() == ls.a().transpose() * ls.s_mat() &&
                  ls.s_mat() * ls.astar() == ls.astar().transpose() * ls.s_mat(),
              tag(ls) + ": S does not intertwine");
    for (std::size_t i = 0; i <= ls.d(); ++i) {
      c.require(dag(ls.e_mats[i]) == ls.e_mats[i], tag(ls) + ": E_i not fixed");
      c.require(dag(ls.estar_mats[i]) == ls.estar_mats[i], tag(ls) + ": E*_i not fixed");
    }
    for (int k = 0; k < 100; ++k) {
      const auto x = support::random_matrix(rng, spec, ls.d() + 1);
      const auto y = support::random_matrix(rng, spec, ls.d() + 1);
      c.require(dag(dag(x)) == x, tag(ls) + ": dagger is not an involution");
      c.require(dag(x * y) == dag(y) * dag(x), tag(ls) + ": dagger does not reverse products");
    }
  }
}

void criterion_5(Criterion& c) {
  for (const auto& ls : test_systems()) {
    if (ls.d() < 3) continue;
    const auto p = aw_params(ls);
    c.require(p.unique, tag(ls) + ": parameters not unique");
    c.require(aw_residual(ls, p).is_zero(), tag(ls) + ": first relation residual");
    c.require(aw_star_residual(ls, p).is_zero(), tag(ls) + ": second relation residual");
  }
  const auto k3 = support::krawtchouk(3);
  const auto p = aw_params(k3);
  // Closed forms at i = 2 (beta) and i = 1 (gamma, rho) on thetas (3, 1, -1, -3).
  const auto& t = k3.thetas();
  const auto beta = (t[0] - t[3]) / (t[1] - t[2]) - s(Q(), 1);
  const auto gamma = t[0] - beta * t[1] + t[2];
  const auto rho = t[0] * t[0] - beta * t[0] * t[1] + t[1] * t[1] - gamma * (t[0] + t[1]);
  c.require(beta == s(Q(), 2) && gamma == s(Q(), 0) && rho == s(Q(), 4), "oracle closed forms");
  c.require(p.beta == beta, "beta");
  c.require(p.gamma == gamma && p.gamma_star == gamma, "gamma, gamma*");
  c.require(p.rho == rho && p.rho_star == rho, "rho, rho*");
  c.require(p.omega.is_zero() && p.eta.is_zero() && p.eta_star.is_zero(), "omega, eta, eta*");
}

void criterion_6(Criterion& c) {
  for (const auto& ls : test_systems()) {
    if (ls.d() < 3 || ls.d() > 5) continue;
    const auto spec = ls.spec();
    const auto p = aw_params(ls);
    const auto& a = ls.a();
    const auto& as = ls.astar();
    const auto id = Matrix::identity(spec, ls.d() + 1);
    const auto two = s(spec, 2);
    const auto a2 = a * a, a3 = a2 * a, s2 = as * as, s3 = s2 * as;
    const auto up = [&](const Matrix& x) { return upsilon_apply(ls, p, x); };
    const auto ups = [&](const Matrix& x) { return upsilon_star_apply(ls, p, x); };
    c.require(up(a * as) == up(as * a), tag(ls) + ": Upsilon(AA*) != Upsilon(A*A)");
    c.require(ups(as * a) == ups(a * as), tag(ls) + ": Upsilon*(A*A) != Upsilon*(AA*)");
    c.require(up(id) == a2 * (two - p.beta) - a * (two * p.gamma) - id * p.rho,
              tag(ls) + ": Upsilon(I)");
    c.require(up(a) == a3 * (two - p.beta) - a2 * (two * p.gamma) - a * p.rho,
              tag(ls) + ": Upsilon(A)");
    c.require(up(as) == a2 * p.gamma_star + a * p.omega + id * p.eta, tag(ls) + ": Upsilon(A*)");
    c.require(up(a * as) == a3 * p.gamma_star + a2 * p.omega + a * p.eta,
              tag(ls) + ": Upsilon(AA*)");
    c.require(up(as * a) == a3 * p.gamma_star + a2 * p.omega + a * p.eta,
              tag(ls) + ": Upsilon(A*A)");
    c.require(ups(id) == s2 * (two - p.beta) - as * (two * p.gamma_star) - id * p.rho_star,
              tag(ls) + ": Upsilon*(I)");
    c.require(ups(as) == s3 * (two - p.beta) - s2 * (two * p.gamma_star) - as * p.rho_star,
              tag(ls) + ": Upsilon*(A*)");
    c.require(ups(a) == s2 * p.gamma + as * p.omega + id * p.eta_star, tag(ls) + ": Upsilon*(A)");
    c.require(ups(as * a) == s3 * p.gamma + s2 * p.omega + as * p.eta_star,
              tag(ls) + ": Upsilon*(A*A)");
    c.require(ups(a * as) == s3 * p.gamma + s2 * p.omega + as * p.eta_star,
              tag(ls) + ": Upsilon*(AA*)");
  }
}

bool same_span(std::vector<Matrix> a, const std::vector<Matrix>& b) {
  const std::size_t da = span_dimension(a), db = span_dimension(b);
  a.insert(a.end(), b.begin(), b.end());
  return da == db && span_dimension(a) == da;
}

void criterion_7(Criterion& c) {
  for (const auto& ls : test_systems()) {
    if (ls.d() < 1) continue;
    const auto p = aw_params(ls);
    for (const auto which : {UpsilonKind::Upsilon, UpsilonKind::UpsilonStar}) {
      const auto r = upsilon_report(ls, p, which);
      c.require(r.containment_i, tag(ls) + ": kernel misses AA* - A*A");
      c.require(r.containment_ii, tag(ls) + ": image escapes the algebra of M");
      if (ls.d() >= 3) c.require(r.equality_i == r.equality_ii, tag(ls) + ": equivalence fails");
    }
  }
  for (std::size_t d = 3; d <= 5; ++d) {
    for (const auto spec : {Q(), GF(101)}) {
      const auto ls = support::krawtchouk(d, spec);
      const auto p = aw_params(ls);
      const auto& a = ls.a();
      const auto& as = ls.astar();
      const auto id = Matrix::identity(spec, d + 1);
      const auto two = s(spec, 2);

      const auto spanners = spanning_set(ls);
      const auto star = upsilon_report(ls, p, UpsilonKind::UpsilonStar);
      c.require(star.kernel_dim == 3 && star.image_dim == 2, tag(ls) + ": Upsilon* dims");
      std::vector<Matrix> ker_star;
      for (const auto& v : star.kernel_basis) ker_star.push_back(combine(v, spanners));
      c.require(same_span(ker_star, {a, a * as, as * a}), tag(ls) + ": Ker(Upsilon*)");
      const auto bs = as * as * (two - p.beta) - as * (two * p.gamma_star) - id * p.rho_star;
      c.require(same_span(star.image_basis, {bs, as * bs}), tag(ls) + ": Im(Upsilon*)");

      const auto plain = upsilon_report(ls, p, UpsilonKind::Upsilon);
      c.require(plain.kernel_dim == 3 && plain.image_dim == 2, tag(ls) + ": Upsilon dims");
      std::vector<Matrix> ker_plain;
      for (const auto& v : plain.kernel_basis) ker_plain.push_back(combine(v, spanners));
      c.require(same_span(ker_plain, {as, as * a, a * as}), tag(ls) + ": Ker(Upsilon)");
      const auto b = a * a * (two - p.beta) - a * (two * p.gamma) - id * p.rho;
      c.require(same_span(plain.image_basis, {b, a * b}), tag(ls) + ": Im(Upsilon)");

      c.require(verify_bipartite_nonvanishing(ls, p), tag(ls) + ": nonvanishing identity");
    }
  }
}

}  // namespace

namespace {

void criterion_8(Criterion& c) {
  for (const auto& ls : test_systems()) {
    if (ls.d() < 2) continue;
    const auto xb = compute_x(ls);
    c.require(verify_key_injectivity(xb), tag(ls) + ": X -> (X E*_0, X A E*_0) not injective");
    const auto r = verify_dim_bound_mechanism(xb);
    c.require(r.dim_xe0star <= 2, tag(ls) + ": dim X E*_0 > 2");
    c.require(r.dim_xae0star <= 3, tag(ls) + ": dim X A E*_0 > 3");
    c.require(r.derived_bound <= 5, tag(ls) + ": derived bound > 5");
  }
}

void criterion_9(Criterion& c) {
  const std::string dir = XTRID_TEST_TMP;
  support::fresh_dir(dir);
  const auto make_job = [&](const std::string& name) {
    CensusJob job;
    job.field = GF(5);
    job.d = 2;
    job.mode = CensusMode::Exhaustive;
    job.output = dir + "/" + name + ".ndjson";
    return job;
  };
  const auto start = std::chrono::steady_clock::now();
  const auto first = run_census(make_job("first"), {.workers = 1});
  const double elapsed = seconds_since(start);
  c.require(first.complete, "census did not complete");
  c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  c.require(first.stats.hits > 0, "no hits");
  c.require(first.summary.dim_x_not_five == 0, "a hit has dim X != 5");

  std::ifstream in(make_job("first").output);
  std::string line;
  std::uint64_t records = 0;
  while (std::getline(in, line)) {
    ++records;
    c.require(record_from_json(io::parse_json(line)).dim_x == 5, "record with dim X != 5");
  }
  c.require(records == first.stats.hits, "record count differs from hits");

  const auto rerun = run_census(make_job("rerun"), {.workers = 1});
  const auto parallel = run_census(make_job("parallel"), {.workers = 4});
  const auto report = [](const CensusOutcome& o) {
    return io::canonical_dump(to_json(o.summary)) + "\n" + summary_table(o.summary);
  };
  c.require(report(first) == report(rerun), "report differs across re-runs");
  c.require(report(first) == report(parallel), "report differs across worker counts");
  c.require(slurp(make_job("first").output) == slurp(make_job("parallel").output),
            "records differ across worker counts");
  c.note = std::to_string(first.stats.hits) + " hits in " + std::to_string(elapsed) + " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"five-element basis of X (d = 2..6, Q and GF(101))", criterion_1},
      {"degenerate diameters d = 0, 1", criterion_2},
      {"primitive idempotent suite and V-generation", criterion_3},
      {"antiautomorphism uniqueness, involution, fixed idempotents", criterion_4},
      {"Askey-Wilson relations and d = 3 parameters", criterion_5},
      {"Upsilon / Upsilon* image formulas", criterion_6},
      {"kernel / image laws and bipartite dimensions", criterion_7},
      {"injectivity and dimension bound mechanism", criterion_8},
      {"exhaustive census d = 2 over GF(5)", criterion_9},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Criterion c(criteria[k].first);
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k + 1 << ": " << (c.passed() ? "PASS" : "FAIL") << " - "
              << c.name();
    if (!c.note.empty()) std::cout << " (" << c.note << ")";
    std::cout << "\n";
    for (const auto& f : c.failures()) std::cout << "    " << f << "\n";
    if (c.failed() > c.failures().size())
      std::cout << "    ... " << c.failed() - c.failures().size() << " more\n";
    all = all && c.passed();
  }
  return all ? 0 : 1;
}
