#include "test_util.hpp"

#include "tetralab/bidisc.hpp"
#include "tetralab/fundamental.hpp"

using namespace tetra;
using tetra::testing::max_abs;

TEST(BidiscOps, DegreeOnePHasASingleOne) {
  const BidiscOperators ops = bidisc_operators(1);
  const BidiscSpace s{1};
  ASSERT_EQ(ops.P.rows(), 4);
  EXPECT_EQ(ops.P.cwiseAbs().sum(), 1.0);
  EXPECT_EQ(ops.P(s.index(1, 1), s.index(0, 0)), cplx(1.0));
}

TEST(BidiscOps, AStarAIsTheProjectionOntoLowRows) {
  for (Index N = 1; N <= 5; ++N) {
    const BidiscSpace s{N};
    const BidiscOperators ops = bidisc_operators(N);
    CMatrix want = CMatrix::Zero(s.dim(), s.dim());
    for (Index i = 0; i < N; ++i)
      for (Index j = 0; j <= N; ++j) want(s.index(i, j), s.index(i, j)) = 1.0;
    EXPECT_EQ(max_abs(ops.A.adjoint() * ops.A - want), 0.0);
  }
}

TEST(BidiscOps, PIsNilpotentAndAB) {
  for (Index N = 1; N <= 5; ++N) {
    const BidiscOperators ops = bidisc_operators(N);
    CMatrix pw = CMatrix::Identity(ops.P.rows(), ops.P.cols());
    for (Index k = 0; k < N; ++k) pw = pw * ops.P;
    EXPECT_GT(max_abs(pw), 0.0);
    EXPECT_EQ(max_abs(pw * ops.P), 0.0);
    EXPECT_EQ(max_abs(ops.A * ops.B - ops.P), 0.0);
  }
}

TEST(DefectProjectionTest, DegreeOneBorder) {
  const CMatrix d = defect_projection(1);
  const BidiscSpace s{1};
  EXPECT_EQ(d.trace(), cplx(3.0));
  EXPECT_EQ(d(s.index(0, 0), s.index(0, 0)), cplx(1.0));
  EXPECT_EQ(d(s.index(1, 0), s.index(1, 0)), cplx(1.0));
  EXPECT_EQ(d(s.index(0, 1), s.index(0, 1)), cplx(1.0));
  EXPECT_EQ(d(s.index(1, 1), s.index(1, 1)), cplx(0.0));
}

TEST(DefectProjectionTest, TraceAndIdentity) {
  for (Index N = 1; N <= 6; ++N) {
    const CMatrix d = defect_projection(N);
    const CMatrix p = bidisc_operators(N).P;
    EXPECT_EQ(d.trace(), cplx(2.0 * N + 1.0));
    EXPECT_EQ(max_abs(d * p - (p - p * p.adjoint() * p)), 0.0);
    EXPECT_LE(max_abs(build(N).defect_P_star().D - d), 1e-15);
  }
}

TEST(FundamentalOpsTest, PatternEntries) {
  const Index N = 3;
  const BidiscSpace s{N};
  const auto [g1, g2] = fundamental_ops(N);
  auto e = [&](Index i, Index j) {
    CVector v = CVector::Zero(s.border_size());
    v(s.border_index(i, j)) = 1.0;
    return v;
  };
  EXPECT_EQ(max_abs(g1 * e(1, 0) - e(0, 0)), 0.0);
  EXPECT_EQ(max_abs(g1 * e(3, 0) - e(2, 0)), 0.0);
  for (Index j = 1; j <= N; ++j) EXPECT_EQ(max_abs(g1 * e(0, j)), 0.0);
  EXPECT_EQ(max_abs(g1 * e(0, 0)), 0.0);
  EXPECT_EQ(max_abs(g2 * e(0, 1) - e(0, 0)), 0.0);
  for (Index i = 1; i <= N; ++i) EXPECT_EQ(max_abs(g2 * e(i, 0)), 0.0);
}

TEST(FundamentalOpsTest, SolverReproducesThePatternOnInterior) {
  for (Index N = 2; N <= 7; ++N) {
    const TetrablockTriple t = build(N);
    const FundamentalPair g = solve_fundamental(t.adjoint());
    const CMatrix v = g.space.basis.adjoint() * border_embedding(N);
    const auto [g1, g2] = fundamental_ops(N);
    const CMatrix ei = border_interior_embedding(N);
    EXPECT_LE(max_abs(ei.adjoint() * (v.adjoint() * g.F1 * v - g1) * ei), 1e-12);
    EXPECT_LE(max_abs(ei.adjoint() * (v.adjoint() * g.F2 * v - g2) * ei), 1e-12);
  }
}

TEST(UnitaryU, IndexArithmetic) {
  const Index N = 3;
  const BidiscSpace s{N};
  const CMatrix u = unitary_U(N);
  const Index b = s.border_size();
  auto column_target = [&](Index i, Index j) {
    Index row = -1;
    for (Index r = 0; r < u.rows(); ++r)
      if (std::abs(u(r, s.index(i, j))) > 0.5) row = r;
    return std::pair<Index, Index>{row / b, row % b};
  };
  EXPECT_EQ(column_target(0, 0), (std::pair<Index, Index>{0, s.border_index(0, 0)}));
  EXPECT_EQ(column_target(2, 1), (std::pair<Index, Index>{1, s.border_index(1, 0)}));
  EXPECT_EQ(column_target(1, 3), (std::pair<Index, Index>{1, s.border_index(0, 2)}));
  EXPECT_EQ(column_target(3, 3), (std::pair<Index, Index>{3, s.border_index(0, 0)}));
}

TEST(UnitaryU, IsometricAndMatchesTheSeries) {
  for (Index N = 1; N <= 6; ++N) {
    const CMatrix u = unitary_U(N);
    EXPECT_LE(isometry_residual(u), 1e-15);
    EXPECT_LE(max_abs(u - unitary_U_series(N)), 1e-15);
  }
}

TEST(Example, DegreeThreeInteriorIsExact) {
  const CheckReport r = verify_example(3);
  EXPECT_REPORT_PASSES(r);
  double worst = 0.0;
  for (const auto& e : r.entries())
    if (e.name.rfind("interior/", 0) == 0 && e.residual) worst = std::max(worst, *e.residual);
  EXPECT_LE(worst, 1e-14);
}

TEST(Example, DegreeOneIsBoundaryOnly) {
  const CheckReport r = verify_example(1);
  EXPECT_TRUE(r.overall()) << tetra::testing::failures(r);
  for (const auto& e : r.entries())
    if (e.name.rfind("interior/", 0) == 0) EXPECT_EQ(e.status, CheckStatus::Skipped) << e.name;
  EXPECT_NE(r.find("boundary/[G1,G1*] - [G2,G2*] = E_(0,N) - E_(N,0)"), nullptr);
}

TEST(Example, PassesAcrossDegrees) {
  for (Index N = 2; N <= 8; ++N) EXPECT_REPORT_PASSES(verify_example(N)) << "N = " << N;
}

TEST(Example, BoundarySupportFractionShrinks) {
  double last = 1.0;
  for (Index N = 1; N <= 10; ++N) {
    const BidiscSpace s{N};
    const double frac = static_cast<double>(s.border_size()) / static_cast<double>(s.dim());
    EXPECT_DOUBLE_EQ(frac, (2.0 * N + 1.0) / ((N + 1.0) * (N + 1.0)));
    EXPECT_LT(frac, last);
    last = frac;
  }
}

TEST(Consistency, RestrictionsAgreeForThreeToEight) {
  for (Index N = 3; N <= 8; ++N) {
    const CheckReport r = truncation_consistency(N);
    EXPECT_REPORT_PASSES(r) << "N = " << N;
  }
  EXPECT_THROW(truncation_consistency(1), Error);
}
