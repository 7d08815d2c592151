#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tetralab/hardy.hpp"
#include "tetralab/invariants.hpp"
#include "tetralab/report.hpp"

namespace tetra {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "data": [[re, im], ...]} in row-major order. Doubles are
/// written in shortest round-trip form, so reading back is bit-exact.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

struct TripleFile {
  CMatrix A;
  CMatrix B;
  CMatrix P;
  Json meta = Json::object();  // seed, family, N when known
};

Json triple_to_json(const TripleFile& t);
TripleFile triple_from_json(const Json& j);

/// {"coeffs": [matrix, ...]}, index = Taylor degree.
Json symbol_to_json(const AnalyticSymbol& s);
AnalyticSymbol symbol_from_json(const Json& j);

/// {"F1": matrix, "F2": matrix}
Json symbol_pair_to_json(const CMatrix& f1, const CMatrix& f2);
std::pair<CMatrix, CMatrix> symbol_pair_from_json(const Json& j);

/// {"u": matrix, "u_star": matrix}
Json witness_to_json(const CoincidenceWitness& w);
CoincidenceWitness witness_from_json(const Json& j);

/// {"N", "d", "coeffs": [[[re, im] x d] per degree]}
Json hardy_vector_to_json(const TruncatedHardy& space, const CVector& v);
CVector hardy_vector_from_json(const Json& j, TruncatedHardy* space = nullptr);

/// Residuals that are not finite are written as the strings "inf", "-inf", "nan".
Json report_to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);

/// Fixed-width table, one line per entry.
std::string render_text(const CheckReport& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tetra
