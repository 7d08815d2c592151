#include "tetralab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace tetra {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

Index count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_error(std::string("field '") + key + "' must be a count");
  return static_cast<Index>(v.get<long long>());
}

cplx complex_from(const Json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    parse_error("complex entries must be [re, im] pairs of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Json complex_to(cplx z) { return Json::array({z.real(), z.imag()}); }

Json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number_from(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a number");
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  require_finite(m, "serialized matrix");
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) data.push_back(complex_to(m(i, k)));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

CMatrix matrix_from_json(const Json& j) {
  const Index rows = count_field(j, "rows");
  const Index cols = count_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    parse_error("matrix data length differs from rows x cols");
  }
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from(data[static_cast<std::size_t>(i * cols + k)]);
  }
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
  return m;
}

Json triple_to_json(const TripleFile& t) {
  Json j;
  j["A"] = matrix_to_json(t.A);
  j["B"] = matrix_to_json(t.B);
  j["P"] = matrix_to_json(t.P);
  if (!t.meta.empty()) j["meta"] = t.meta;
  return j;
}

TripleFile triple_from_json(const Json& j) {
  TripleFile t;
  t.A = matrix_from_json(field(j, "A"));
  t.B = matrix_from_json(field(j, "B"));
  t.P = matrix_from_json(field(j, "P"));
  if (j.contains("meta")) t.meta = j.at("meta");
  return t;
}

Json symbol_to_json(const AnalyticSymbol& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(matrix_to_json(c));
  Json j;
  j["coeffs"] = std::move(coeffs);
  return j;
}

AnalyticSymbol symbol_from_json(const Json& j) {
  const Json& c = field(j, "coeffs");
  if (!c.is_array() || c.empty()) parse_error("symbol needs a non-empty coefficient list");
  std::vector<CMatrix> coeffs;
  for (const auto& m : c) coeffs.push_back(matrix_from_json(m));
  try {
    return AnalyticSymbol(std::move(coeffs));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

Json symbol_pair_to_json(const CMatrix& f1, const CMatrix& f2) {
  Json j;
  j["F1"] = matrix_to_json(f1);
  j["F2"] = matrix_to_json(f2);
  return j;
}

std::pair<CMatrix, CMatrix> symbol_pair_from_json(const Json& j) {
  return {matrix_from_json(field(j, "F1")), matrix_from_json(field(j, "F2"))};
}

Json witness_to_json(const CoincidenceWitness& w) {
  Json j;
  j["u"] = matrix_to_json(w.u);
  j["u_star"] = matrix_to_json(w.u_star);
  return j;
}

CoincidenceWitness witness_from_json(const Json& j) {
  return {matrix_from_json(field(j, "u")), matrix_from_json(field(j, "u_star"))};
}

Json hardy_vector_to_json(const TruncatedHardy& space, const CVector& v) {
  if (v.size() != space.dim()) throw Error(ErrorKind::ShapeMismatch, "vector length differs from the space");
  Json coeffs = Json::array();
  for (Index k = 0; k <= space.N; ++k) {
    Json block = Json::array();
    for (Index a = 0; a < space.d; ++a) block.push_back(complex_to(v(space.offset(k) + a)));
    coeffs.push_back(std::move(block));
  }
  Json j;
  j["N"] = space.N;
  j["d"] = space.d;
  j["coeffs"] = std::move(coeffs);
  return j;
}

CVector hardy_vector_from_json(const Json& j, TruncatedHardy* space) {
  TruncatedHardy s{count_field(j, "N"), count_field(j, "d")};
  const Json& c = field(j, "coeffs");
  if (!c.is_array() || static_cast<Index>(c.size()) != s.N + 1) parse_error("expected N+1 coefficient blocks");
  CVector v(s.dim());
  for (Index k = 0; k <= s.N; ++k) {
    const Json& block = c[static_cast<std::size_t>(k)];
    if (!block.is_array() || static_cast<Index>(block.size()) != s.d) parse_error("coefficient block length differs from d");
    for (Index a = 0; a < s.d; ++a) v(s.offset(k) + a) = complex_from(block[static_cast<std::size_t>(a)]);
  }
  if (space != nullptr) *space = s;
  return v;
}

Json report_to_json(const CheckReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries()) {
    Json x;
    x["name"] = e.name;
    x["status"] = std::string(to_string(e.status));
    x["residual"] = e.residual ? number_or_string(*e.residual) : Json(nullptr);
    x["tolerance"] = number_or_string(e.tolerance);
    if (!e.note.empty()) x["note"] = e.note;
    entries.push_back(std::move(x));
  }
  Json j;
  j["title"] = r.title();
  if (!r.header().empty()) j["header"] = r.header();
  j["overall"] = r.overall() ? "pass" : "fail";
  j["failures"] = r.failures();
  j["skipped"] = r.skipped();
  j["entries"] = std::move(entries);
  return j;
}

CheckReport report_from_json(const Json& j) {
  const Json& title = field(j, "title");
  if (!title.is_string()) parse_error("report title must be a string");
  CheckReport r(title.get<std::string>(), j.contains("header") ? j.at("header").get<std::string>() : std::string());
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) parse_error("report entries must be a list");
  for (const auto& e : entries) {
    const std::string name = field(e, "name").get<std::string>();
    const std::string status = field(e, "status").get<std::string>();
    const std::string note = e.contains("note") ? e.at("note").get<std::string>() : std::string();
    if (status == "skipped") {
      r.skip(name, note);
      continue;
    }
    const Json& res = field(e, "residual");
    CheckEntry& x = r.add(name, res.is_null() ? 0.0 : number_from(res), number_from(field(e, "tolerance")), note);
    if (status == "pass") {
      x.status = CheckStatus::Pass;
    } else if (status == "fail") {
      x.status = CheckStatus::Fail;
    } else {
      parse_error("unknown entry status '" + status + "'");
    }
    if (res.is_null()) x.residual.reset();
  }
  return r;
}

std::string render_text(const CheckReport& r) {
  std::size_t width = 4;
  for (const auto& e : r.entries()) width = std::max(width, e.name.size());
  std::ostringstream os;
  os << "== " << r.title() << " ==\n";
  if (!r.header().empty()) os << "(" << r.header() << ")\n";
  for (const auto& e : r.entries()) {
    os << std::left << std::setw(8) << to_string(e.status) << std::setw(static_cast<int>(width) + 2) << e.name;
    if (e.residual) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%11.3e <= %9.2e", *e.residual, e.tolerance);
      os << buf;
    }
    if (!e.note.empty()) os << "  " << e.note;
    os << "\n";
  }
  os << "overall: " << (r.overall() ? "pass" : "fail") << " (" << r.entries().size() << " checks, " << r.failures()
     << " failed, " << r.skipped() << " skipped)\n";
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace tetra
