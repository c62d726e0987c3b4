#include "xtrid/serialize.hpp"

#include <utility>

namespace xtrid::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::size_t require_size(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

FieldSpec field_of(const Json& j) {
  const auto& f = require(j, "field");
  if (!f.is_string()) throw ParseError("field must be a string");
  try {
    return FieldSpec::parse(f.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Json scalars_to_json(const std::vector<Scalar>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::vector<Scalar> scalars_from_json(FieldSpec spec, const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from_json(spec, x));
  return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

Json vectors_to_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(scalars_to_json(v));
  return out;
}

const char* kind_name(UpsilonKind k) {
  return k == UpsilonKind::Upsilon ? "Upsilon" : "UpsilonStar";
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const Scalar& s) {
  if (s.spec().is_rational()) return s.to_string();
  return s.residue();
}

Scalar scalar_from_json(FieldSpec spec, const Json& j) {
  if (j.is_string()) return Scalar::parse(spec, j.get<std::string>());
  if (j.is_number_integer()) {
    if (spec.is_rational()) {
      throw ParseError("rational entries must be strings \"num/den\"");
    }
    return Scalar(spec, j.get<long long>());
  }
  throw ParseError("scalar must be a string or an integer, got " + j.dump());
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(scalars_to_json(m.row(i)));
  Json out{{"field", m.spec().name()}, {"rows", std::move(rows)}};
  if (m.is_square()) {
    out["order"] = m.rows();
  } else {
    out["cols"] = m.cols();
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  const auto spec = field_of(j);
  const auto& rows = require(j, "rows");
  if (!rows.is_array()) throw ParseError("rows must be an array");
  std::size_t cols = 0;
  if (j.contains("order")) {
    cols = require_size(j, "order");
    if (rows.size() != cols) throw ParseError("row count does not match order");
  } else if (j.contains("cols")) {
    cols = require_size(j, "cols");
  } else {
    throw ParseError("matrix needs \"order\" or \"cols\"");
  }
  std::vector<Vector> parsed;
  for (const auto& r : rows) {
    auto row = scalars_from_json(spec, r);
    if (row.size() != cols) throw ParseError("row length does not match the matrix width");
    parsed.push_back(std::move(row));
  }
  return Matrix::from_rows(spec, cols, parsed);
}

Json to_json(const LeonardCandidate& c) {
  return Json{{"d", c.d},
              {"field", c.spec().name()},
              {"a_mat", to_json(c.a_mat)},
              {"astar_mat", to_json(c.astar_mat)},
              {"thetas", scalars_to_json(c.thetas)},
              {"theta_stars", scalars_to_json(c.theta_stars)}};
}

LeonardCandidate candidate_from_json(const Json& j) {
  const auto spec = field_of(j);
  LeonardCandidate c;
  c.d = require_size(j, "d");
  c.a_mat = matrix_from_json(require(j, "a_mat"));
  c.astar_mat = matrix_from_json(require(j, "astar_mat"));
  if (!(c.a_mat.spec() == spec) || !(c.astar_mat.spec() == spec)) {
    throw ParseError("matrix field differs from the document field");
  }
  c.thetas = scalars_from_json(spec, require(j, "thetas"));
  c.theta_stars = scalars_from_json(spec, require(j, "theta_stars"));
  return c;
}

Json to_json(const LeonardSystem& ls) {
  Json out = to_json(ls.candidate);
  out["e_mats"] = matrices_to_json(ls.e_mats);
  out["s_mat"] = to_json(ls.s_mat());
  return out;
}

LeonardSystem system_from_json(const Json& j) {
  LeonardSystem ls = validate(candidate_from_json(j));
  if (j.contains("e_mats")) {
    const auto& cached = j.at("e_mats");
    if (!cached.is_array() || cached.size() != ls.e_mats.size()) {
      throw ParseError("cached e_mats has the wrong length");
    }
    for (std::size_t i = 0; i < ls.e_mats.size(); ++i) {
      if (!(matrix_from_json(cached[i]) == ls.e_mats[i])) {
        throw ParseError("cached E_" + std::to_string(i) + " disagrees with the recomputed one");
      }
    }
  }
  if (j.contains("s_mat") && !(matrix_from_json(j.at("s_mat")) == ls.s_mat())) {
    throw ParseError("cached s_mat disagrees with the recomputed one");
  }
  return ls;
}

Json to_json(const XSpaceBasis& xb, const MainTheoremReport& report) {
  return Json{{"d", xb.system->d()},
              {"field", xb.system->spec().name()},
              {"dim", xb.dim},
              {"basis", matrices_to_json(xb.solution_basis)},
              {"spans", report.spans},
              {"independent", report.independent}};
}

Json to_json(const AWParams& p) {
  return Json{{"beta", to_json(p.beta)},       {"gamma", to_json(p.gamma)},
              {"gamma_star", to_json(p.gamma_star)}, {"rho", to_json(p.rho)},
              {"rho_star", to_json(p.rho_star)}, {"omega", to_json(p.omega)},
              {"eta", to_json(p.eta)},         {"eta_star", to_json(p.eta_star)},
              {"unique", p.unique}};
}

AWParams aw_params_from_json(FieldSpec spec, const Json& j) {
  const auto get = [&](const char* key) { return scalar_from_json(spec, require(j, key)); };
  const auto& unique = require(j, "unique");
  if (!unique.is_boolean()) throw ParseError("unique must be a boolean");
  return AWParams{get("beta"),     get("gamma"), get("gamma_star"), get("rho"),
                  get("rho_star"), get("omega"), get("eta"),        get("eta_star"),
                  unique.get<bool>()};
}

Json to_json(const UpsilonReport& r) {
  return Json{{"which", kind_name(r.which)},
              {"matrix_of_map", to_json(r.matrix_of_map)},
              {"kernel_basis", vectors_to_json(r.kernel_basis)},
              {"kernel_dim", r.kernel_dim},
              {"image_basis", matrices_to_json(r.image_basis)},
              {"image_dim", r.image_dim},
              {"b_mat", to_json(r.b_mat)},
              {"b_pair_rank", r.b_pair_rank},
              {"containment_i", r.containment_i},
              {"containment_ii", r.containment_ii},
              {"equality_i", r.equality_i},
              {"equality_ii", r.equality_ii}};
}

}  // namespace xtrid::io
