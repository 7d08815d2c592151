#include "test_util.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "tetralab/io.hpp"

using namespace tetra;

namespace {

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(cplx) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST(MatrixJson, RoundTripIsBitExact) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    CMatrix m = random_gaussian(rng, 3, 4);
    m(0, 0) = cplx(1.0 / 3.0, -std::numeric_limits<double>::denorm_min());
    m(1, 1) = cplx(std::numeric_limits<double>::max(), 1e-300);
    m(2, 3) = cplx(-0.0, 0.1);
    const std::string text = matrix_to_json(m).dump();
    const CMatrix back = matrix_from_json(Json::parse(text));
    EXPECT_TRUE(bit_equal(m, back));
  }
}

TEST(MatrixJson, LayoutIsRowMajorPairs) {
  CMatrix m(2, 2);
  m << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8);
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 2);
  EXPECT_EQ(j["data"][1][0], 3.0);
  EXPECT_EQ(j["data"][2][1], 6.0);
}

TEST(MatrixJson, EmptyMatrix) {
  const CMatrix back = matrix_from_json(matrix_to_json(CMatrix(0, 3)));
  EXPECT_EQ(back.rows(), 0);
  EXPECT_EQ(back.cols(), 3);
}

TEST(MatrixJson, MalformedInputIsAParseError) {
  const char* bad[] = {
      R"({"rows": 1, "cols": 1})",
      R"({"rows": 1, "cols": 2, "data": [[1, 0]]})",
      R"({"rows": 1, "cols": 1, "data": [[1]]})",
      R"({"rows": -1, "cols": 1, "data": []})",
      R"({"rows": 1, "cols": 1, "data": [["a", 0]]})",
      R"([1, 2])",
  };
  for (const char* s : bad) {
    try {
      matrix_from_json(Json::parse(s));
      ADD_FAILURE() << "accepted " << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << s;
    }
  }
}

TEST(MatrixJson, NonFiniteIsRefusedOnWrite) {
  CMatrix m = CMatrix::Zero(1, 1);
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(matrix_to_json(m), Error);
}

TEST(TripleJson, RoundTripWithMeta) {
  Rng rng(2);
  TripleFile t{random_gaussian(rng, 2, 2), random_gaussian(rng, 2, 2), random_gaussian(rng, 2, 2), Json::object()};
  t.meta["seed"] = 17;
  t.meta["family"] = "scalars";
  const TripleFile back = triple_from_json(Json::parse(triple_to_json(t).dump()));
  EXPECT_TRUE(bit_equal(t.A, back.A));
  EXPECT_TRUE(bit_equal(t.P, back.P));
  EXPECT_EQ(back.meta["seed"], 17);
  EXPECT_THROW(triple_from_json(Json::parse(R"({"A": {"rows":0,"cols":0,"data":[]}})")), Error);
}

TEST(SymbolJson, RoundTrips) {
  Rng rng(3);
  const AnalyticSymbol s({random_gaussian(rng, 2, 1), random_gaussian(rng, 2, 1), random_gaussian(rng, 2, 1)});
  const AnalyticSymbol back = symbol_from_json(Json::parse(symbol_to_json(s).dump()));
  ASSERT_EQ(back.degree(), 2);
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(bit_equal(s.coeffs[k], back.coeffs[k]));
  EXPECT_THROW(symbol_from_json(Json::parse(R"({"coeffs": []})")), Error);

  const CMatrix f1 = random_gaussian(rng, 2, 2), f2 = random_gaussian(rng, 2, 2);
  const auto [g1, g2] = symbol_pair_from_json(Json::parse(symbol_pair_to_json(f1, f2).dump()));
  EXPECT_TRUE(bit_equal(f1, g1));
  EXPECT_TRUE(bit_equal(f2, g2));
}

TEST(WitnessJson, RoundTrips) {
  Rng rng(4);
  const CoincidenceWitness w{random_unitary(rng, 2), random_unitary(rng, 3)};
  const CoincidenceWitness back = witness_from_json(Json::parse(witness_to_json(w).dump()));
  EXPECT_TRUE(bit_equal(w.u, back.u));
  EXPECT_TRUE(bit_equal(w.u_star, back.u_star));
}

TEST(HardyJson, RoundTripsByDegree) {
  Rng rng(5);
  const TruncatedHardy h{3, 2};
  const CVector v = random_gaussian(rng, h.dim(), 1);
  const Json j = hardy_vector_to_json(h, v);
  EXPECT_EQ(j["coeffs"].size(), 4u);
  EXPECT_EQ(j["coeffs"][1].size(), 2u);
  TruncatedHardy back_space;
  const CVector back = hardy_vector_from_json(Json::parse(j.dump()), &back_space);
  EXPECT_EQ(back_space.N, 3);
  EXPECT_EQ(back_space.d, 2);
  EXPECT_TRUE(bit_equal(v, back));
  EXPECT_THROW(hardy_vector_to_json(h, CVector::Zero(3)), Error);
}

TEST(ReportJson, RoundTripKeepsStatusAndNonFiniteResiduals) {
  CheckReport r("demo", "header text");
  r.add("small", 1e-13, 1e-10, "note");
  r.add("big", 1.0, 1e-10);
  r.add("not finite", std::numeric_limits<double>::infinity(), 1e-10);
  r.skip("skipped one", "reason");
  r.add_flag("flag", true);
  const Json j = report_to_json(r);
  EXPECT_EQ(j["overall"], "fail");
  EXPECT_EQ(j["entries"][2]["residual"], "inf");
  EXPECT_TRUE(j["entries"][3]["residual"].is_null());
  const CheckReport back = report_from_json(Json::parse(j.dump()));
  ASSERT_EQ(back.entries().size(), r.entries().size());
  for (std::size_t k = 0; k < r.entries().size(); ++k) {
    EXPECT_EQ(back.entries()[k].name, r.entries()[k].name);
    EXPECT_EQ(back.entries()[k].status, r.entries()[k].status);
    EXPECT_EQ(back.entries()[k].note, r.entries()[k].note);
  }
  EXPECT_EQ(back.header(), "header text");
  EXPECT_TRUE(std::isinf(*back.entries()[2].residual));
  EXPECT_EQ(report_to_json(back).dump(), j.dump());
}

TEST(ReportText, OneLinePerEntryAndSummary) {
  CheckReport r("demo");
  r.add("alpha", 1e-13, 1e-10);
  r.add("beta", 2.0, 1e-10);
  const std::string s = render_text(r);
  EXPECT_NE(s.find("pass    alpha"), std::string::npos);
  EXPECT_NE(s.find("fail    beta"), std::string::npos);
  EXPECT_NE(s.find("overall: fail (2 checks, 1 failed, 0 skipped)"), std::string::npos);
}

TEST(Files, MissingAndMalformed) {
  try {
    read_json_file("/nonexistent/dir/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  const std::string path = ::testing::TempDir() + "tetralab_bad.json";
  write_text_file(path, "{not json");
  try {
    read_json_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.json", "x"), Error);
}
