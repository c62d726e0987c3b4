#pragma once

#include <string>

#include "json.hpp"

#include "xtrid/awrel.hpp"
#include "xtrid/leonard.hpp"
#include "xtrid/matrix.hpp"
#include "xtrid/xspace.hpp"

// JSON encodings. Rationals are strings "num/den" (den omitted when 1),
// prime-field residues are JSON integers. All output goes through
// canonical_dump(): sorted keys, no insignificant whitespace.
namespace xtrid::io {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);
// Throws ParseError.
Json parse_json(const std::string& text);

Json to_json(const Scalar& s);
Scalar scalar_from_json(FieldSpec spec, const Json& j);

// {"field", "order", "rows"} for square matrices; rectangular matrices
// carry "cols" instead of "order".
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const LeonardCandidate& c);
LeonardCandidate candidate_from_json(const Json& j);

// Candidate fields plus cached e_mats and s_mat.
Json to_json(const LeonardSystem& ls);
// Accepts a candidate or a system document. The system is re-validated and
// any cached e_mats / s_mat must agree with the recomputed ones.
LeonardSystem system_from_json(const Json& j);

Json to_json(const XSpaceBasis& xb, const MainTheoremReport& report);
Json to_json(const AWParams& p);
AWParams aw_params_from_json(FieldSpec spec, const Json& j);
Json to_json(const UpsilonReport& r);

}  // namespace xtrid::io
