#include "test_util.hpp"

#include <cmath>

#include "tetralab/bidisc.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/generators.hpp"

using namespace tetra;
using tetra::testing::max_abs;

namespace {

CMatrix scalar(cplx c) {
  CMatrix m(1, 1);
  m(0, 0) = c;
  return m;
}

}  // namespace

TEST(Theta, ZeroScalarIsTheIdentityFunction) {
  const ContractionData c = ContractionData::analyze(scalar(0.0));
  const AnalyticSymbol th = theta_taylor(c, 4);
  EXPECT_LE(std::abs(th.coeffs[0](0, 0)), 1e-15);
  EXPECT_LE(std::abs(std::abs(th.coeffs[1](0, 0)) - 1.0), 1e-15);
  for (int n = 2; n <= 4; ++n) EXPECT_LE(std::abs(th.coeffs[n](0, 0)), 1e-15);
}

TEST(Theta, ScalarMobiusCoefficients) {
  // (z - c)/(1 - conj(c) z): Theta_0 = -c, Theta_n = (1 - |c|^2) conj(c)^{n-1}, up to the basis phases
  const cplx c(0.4, -0.3);
  const ContractionData d = ContractionData::analyze(scalar(c));
  const cplx phase = std::conj(d.def_star.space.basis(0, 0)) * d.def.space.basis(0, 0);
  EXPECT_LE(std::abs(theta_coefficient(d, 0)(0, 0) - phase * (-c)), 1e-15);
  for (int n = 1; n <= 8; ++n) {
    const cplx want = phase * (1.0 - std::norm(c)) * std::pow(std::conj(c), n - 1);
    EXPECT_LE(std::abs(theta_coefficient(d, n)(0, 0) - want), 1e-15) << "n = " << n;
  }
  const cplx z(0.2, 0.5);
  EXPECT_LE(std::abs(theta_eval(d, z)(0, 0) - phase * (z - c) / (1.0 - std::conj(c) * z)), 1e-14);
}

TEST(Theta, HornerMatchesResolventOnBidiscAdjoint) {
  const Index N = 4;
  const ContractionData c = build(N).contraction().adjoint();
  const AnalyticSymbol th = theta_taylor(c, N + 2);  // P nilpotent: finite Taylor series
  Rng rng(1);
  for (cplx z : random_disc_points(rng, 10)) {
    EXPECT_LE(op_norm(th.evaluate(z) - theta_eval(c, z)), 1e-10);
  }
}

TEST(Theta, TaylorMatchesEvaluationOnRandomContractions) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const CMatrix p = tetra::testing::random_contraction(rng, 4, 0.7);
    const ContractionData c = ContractionData::analyze(p);
    const AnalyticSymbol th = theta_taylor(c, 120);
    for (cplx z : random_disc_points(rng, 5, 0.8)) EXPECT_LE(op_norm(th.evaluate(z) - theta_eval(c, z)), 1e-10);
  }
}

TEST(Theta, EvaluationNeedsTheOpenDisc) {
  EXPECT_THROW(theta_eval(scalar(0.5), cplx(1.0, 0.0)), Error);
}

TEST(KernelIdentity, OriginGivesTheConstantTerm) {
  Rng rng(2);
  const CMatrix p = tetra::testing::random_contraction(rng, 3, 0.8);
  const ContractionData c = ContractionData::analyze(p);
  EXPECT_LE(kernel_identity_check(c, 0.0, 0.0), 1e-12);
  // I - Theta(0)Theta(0)* = D_{P*}^2 on the defect space
  const CMatrix t0 = theta_eval(c, 0.0);
  const CMatrix& qs = c.def_star.space.basis;
  const CMatrix ds2 = qs.adjoint() * c.def_star.D * c.def_star.D * qs;
  EXPECT_LE(op_norm(CMatrix::Identity(qs.cols(), qs.cols()) - t0 * t0.adjoint() - ds2), 1e-12);
}

TEST(KernelIdentity, ScalarAndBidisc) {
  Rng rng(3);
  const ContractionData s = ContractionData::analyze(scalar(cplx(0.3, 0.6)));
  const ContractionData b = build(4).contraction().adjoint();
  for (int k = 0; k < 20; ++k) {
    const cplx z = rng.in_disc(0.9), w = rng.in_disc(0.9);
    EXPECT_LE(kernel_identity_check(s, z, w), 1e-12);
    EXPECT_LE(kernel_identity_check(b, z, w), 1e-10);
  }
}

TEST(TailProfileTest, NilpotentAndGeometric) {
  const TailProfile nil = tail_profile(build(3).P());
  ASSERT_TRUE(nil.nilpotency_order.has_value());
  EXPECT_EQ(*nil.nilpotency_order, 4);
  EXPECT_EQ(nil.tail(3), 0.0);
  EXPECT_EQ(suggest_degree(build(3).P(), 1e-10), 3);

  const TailProfile g = tail_profile(scalar(0.5));
  EXPECT_NEAR(g.norms[3], 0.125, 1e-15);
  // sum_{n > N} 0.25^n = 0.25^{N+1} / 0.75
  const Index N = 10;
  EXPECT_NEAR(g.tail(N), std::sqrt(std::pow(0.25, N + 1) / 0.75), 1e-12);
  EXPECT_GE(g.tail(N), std::sqrt(std::pow(0.25, N + 1) / 0.75) * (1 - 1e-9));
  const Index s = suggest_degree(scalar(0.5), 1e-10);
  EXPECT_LE(truncation_tail(scalar(0.5), s), 1e-10);
  EXPECT_GT(truncation_tail(scalar(0.5), s - 1), 1e-10);
}

TEST(Model, ZeroPIsTheDegreeZeroInclusion) {
  const Index k = 3;
  const ModelData m = build_model(CMatrix::Zero(k, k), 4);
  EXPECT_EQ(m.fiber(), k);
  EXPECT_EQ(m.H_P_basis.rank(), k);
  EXPECT_LE(max_abs(m.W.bottomRows(4 * k)), 0.0);
  EXPECT_LE(unitarity_residual(m.W.topRows(k)), 1e-14);
  const CheckReport r = verify_L0(m);
  EXPECT_REPORT_PASSES(r);
  EXPECT_LE(r.max_residual(), 1e-14);
}

TEST(Model, BidiscModelSpaceHasTheDimensionOfTheSpace) {
  for (Index N = 1; N <= 5; ++N) {
    const ModelData m = build_model(build(N).contraction(), N);
    EXPECT_EQ(m.H_P_basis.rank(), (N + 1) * (N + 1));
    EXPECT_LE(m.tail, 0.0);
    const CheckReport r = verify_L0(m);
    EXPECT_REPORT_PASSES(r);
    EXPECT_LE(r.max_residual(), 1e-10);
  }
}

TEST(Model, ScalarGeometricTail) {
  const Index N = 40;  // 0.5^{41} < 1e-12
  const ModelData m = build_model(scalar(0.5), N);
  EXPECT_LE(isometry_residual(m.W), 1e-10);
  const CheckReport r = verify_L0(m);
  EXPECT_REPORT_PASSES(r);
  EXPECT_LE(r.max_residual(), 1e-8);
}

TEST(Model, NonPureIsRejected) {
  try {
    build_model(CMatrix::Identity(2, 2), 3);
    FAIL() << "expected NotPure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPure);
  }
}

TEST(Model, RoundingNoiseInTheSymbolIsNotRank) {
  // conjugated nilpotent P: M_Theta is zero up to rounding once W is unitary
  Rng rng(4);
  const TetrablockTriple t = conjugate(from_symbols(CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), 2),
                                       random_unitary(rng, 3));
  const ModelData m = build_model(t.contraction(), 2);
  EXPECT_EQ(m.H_P_basis.rank(), 3);
  EXPECT_LE(m.cross_angle, 1e-12);
}

TEST(ModelOperatorsTest, ZeroSymbolsGiveTheShift) {
  const ModelOperators x = model_operators(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), 3);
  EXPECT_EQ(max_abs(x.X1), 0.0);
  EXPECT_EQ(max_abs(x.X2), 0.0);
  EXPECT_EQ(max_abs(x.X3 - shift(TruncatedHardy{3, 2})), 0.0);
}

TEST(ModelOperatorsTest, AdjointRelation) {
  Rng rng(5);
  const CMatrix g1 = random_gaussian(rng, 2, 2), g2 = random_gaussian(rng, 2, 2);
  const Index N = 4;
  const ModelOperators x = model_operators(g1, g2, N);
  CMatrix want = kron_identity(N + 1, g1);
  for (Index k = 0; k < N; ++k) want.block(2 * k, 2 * (k + 1), 2, 2) = g2.adjoint();
  EXPECT_LE(max_abs(x.X1.adjoint() - want), 1e-15);
}

TEST(ModelOperatorsTest, BidiscPatternIsBlockBidiagonal) {
  const Index N = 3;
  const auto [g1, g2] = fundamental_ops(N);
  const ModelOperators x = model_operators(g1, g2, N);
  const Index b = 2 * N + 1;
  for (Index k = 0; k <= N; ++k) EXPECT_EQ(max_abs(x.X1.block(k * b, k * b, b, b) - g1.adjoint()), 0.0);
  for (Index k = 0; k < N; ++k) EXPECT_EQ(max_abs(x.X1.block((k + 1) * b, k * b, b, b) - g2), 0.0);
}

TEST(FunctionalModel, ZeroPTripleReducesToTheAdjoints) {
  Rng rng(6);
  const CMatrix u = random_unitary(rng, 2);
  CMatrix a = CMatrix::Zero(2, 2), bm = CMatrix::Zero(2, 2);
  a(0, 0) = 0.3;
  a(1, 1) = cplx(0.0, 0.2);
  bm(0, 0) = -0.4;
  bm(1, 1) = 0.1;
  const TetrablockTriple t = validate(u * a * u.adjoint(), u * bm * u.adjoint(), CMatrix::Zero(2, 2));
  const FundamentalPair g = solve_fundamental(t.adjoint());
  EXPECT_LE(max_abs(g.ambient1() - t.A().adjoint()), 1e-14);
  const ModelData m = build_model(t.contraction(), 3);
  const CheckReport r = verify_fm(t, m, g);
  EXPECT_REPORT_PASSES(r);
  EXPECT_LE(r.max_residual(), 1e-12);
}

TEST(FunctionalModel, BidiscAndRandomPureTriples) {
  const TetrablockTriple b = build(4);
  EXPECT_REPORT_PASSES(verify_fm(b, build_model(b.contraction(), 4), solve_fundamental(b.adjoint())));
  for (std::uint64_t i = 0; i < 15; ++i) {
    const GeneratedInstance inst = generate_instance(61, i, 2, 6);
    const Index N = suggest_degree(inst.triple.P(), 1e-10);
    const ModelData m = build_model(inst.triple.contraction(), N);
    const CheckReport r = verify_fm(inst.triple, m, solve_fundamental(inst.triple.adjoint()));
    EXPECT_REPORT_PASSES(r);
    EXPECT_LE(r.max_residual(), 1e-8);
  }
}

TEST(Intertwining, ZeroPForcesAdjointPair) {
  const TetrablockTriple t = validate(CMatrix::Identity(2, 2) * 0.3, CMatrix::Identity(2, 2) * 0.2,
                                      CMatrix::Zero(2, 2));
  const FundamentalPair f = solve_fundamental(t);
  const FundamentalPair g = solve_fundamental(t.adjoint());
  Rng rng(7);
  const CheckReport r = verify_scor1(t, f, g, random_disc_points(rng, 10));
  EXPECT_REPORT_PASSES(r);
  EXPECT_LE(r.max_residual(), 1e-12);
}

TEST(Intertwining, BidiscAndRandom) {
  Rng rng(8);
  const std::vector<cplx> zs = random_disc_points(rng, 20);
  const TetrablockTriple b = build(4);
  const CheckReport rb = verify_scor1(b, solve_fundamental(b), solve_fundamental(b.adjoint()), zs);
  EXPECT_REPORT_PASSES(rb);
  EXPECT_LE(rb.max_residual(), 1e-10);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const GeneratedInstance inst = generate_instance(71, i, 2, 8);
    const CheckReport r = verify_scor1(inst.triple, solve_fundamental(inst.triple),
                                       solve_fundamental(inst.triple.adjoint()), zs);
    EXPECT_REPORT_PASSES(r);
    EXPECT_LE(r.max_residual(), 1e-8);
  }
}

TEST(IsometryModel, BidiscOnInterior) {
  const Index N = 4;
  const TetrablockTriple t = build(N);
  const FundamentalPair g = solve_fundamental(t.adjoint());
  const CMatrix v = g.space.basis.adjoint() * border_embedding(N);
  const CheckReport r = pure_isometry_model(t, N, interior_embedding(N), CMatrix(v * border_interior_embedding(N)));
  EXPECT_REPORT_PASSES(r);
}

TEST(IsometryModel, SymbolTripleOnLowDegrees) {
  Rng rng(9);
  const SymbolPair f = random_normal_symbols(rng, 2);
  const Index N = 4;
  const TetrablockTriple t = from_symbols(f.F1, f.F2, N);
  const TruncatedHardy h{N, 2};
  const CheckReport r = pure_isometry_model(t, N, h.low_degree_injection(N - 1));
  EXPECT_REPORT_PASSES(r);
}

TEST(IsometryModel, ZeroPIsRejected) {
  const CMatrix z = CMatrix::Zero(2, 2);
  const TetrablockTriple t = validate(z, z, z);
  try {
    pure_isometry_model(t, 2);
    FAIL() << "expected NotIsometryLike";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIsometryLike);
  }
}
