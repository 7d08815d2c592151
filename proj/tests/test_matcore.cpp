#include "test_util.hpp"

#include <cmath>

#include "tetralab/hardy.hpp"
#include "tetralab/matcore.hpp"

using namespace tetra;
using tetra::testing::max_abs;

TEST(HermitianSqrt, IdentityIsFixed) {
  const CMatrix i3 = CMatrix::Identity(3, 3);
  EXPECT_LE(max_abs(hermitian_sqrt(i3) - i3), 1e-15);
}

TEST(HermitianSqrt, DiagonalPsd) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 0) = 4.0;
  h(1, 1) = 9.0;
  CMatrix want = CMatrix::Zero(2, 2);
  want(0, 0) = 2.0;
  want(1, 1) = 3.0;
  EXPECT_LE(max_abs(hermitian_sqrt(h) - want), 1e-14);
}

TEST(HermitianSqrt, MultipliesBackOnRandomGram) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const CMatrix m = random_gaussian(rng, 5, 5);
    const CMatrix h = m.adjoint() * m;
    const CMatrix r = hermitian_sqrt(h);
    EXPECT_LE(op_norm(r * r - h), 1e-10 * (1.0 + op_norm(h)));
    EXPECT_LE(op_norm(r - r.adjoint()), 1e-12 * (1.0 + op_norm(r)));
  }
}

TEST(HermitianSqrt, RejectsClearlyNegative) {
  CMatrix h = CMatrix::Identity(2, 2);
  h(1, 1) = -0.5;
  EXPECT_THROW(hermitian_sqrt(h), Error);
}

TEST(HermitianSqrt, RejectsNonHermitian) {
  CMatrix h = CMatrix::Identity(2, 2);
  h(0, 1) = 0.5;
  try {
    hermitian_sqrt(h);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(Defect, ZeroOperatorHasFullDefect) {
  const Defect d = defect(CMatrix::Zero(3, 3));
  EXPECT_LE(max_abs(d.D - CMatrix::Identity(3, 3)), 1e-15);
  EXPECT_EQ(d.space.rank(), 3);
}

TEST(Defect, TruncatedShiftKillsTopCoordinate) {
  const Index N = 4;
  const CMatrix s = shift(TruncatedHardy{N, 1});
  const Defect d = defect(s);
  CMatrix want = CMatrix::Zero(N + 1, N + 1);
  want(N, N) = 1.0;
  EXPECT_LE(max_abs(d.D - want), 1e-15);
  EXPECT_EQ(d.space.rank(), 1);
}

TEST(Defect, ScalarContraction) {
  CMatrix c(1, 1);
  c(0, 0) = cplx(0.3, -0.4);
  const Defect d = defect(c);
  EXPECT_NEAR(d.D(0, 0).real(), std::sqrt(1.0 - 0.25), 1e-15);
  EXPECT_EQ(d.space.rank(), 1);
}

TEST(Defect, SquareEqualsIMinusTStarTOnRandomContractions) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(100 + s);
    const CMatrix t = tetra::testing::random_contraction(rng, 4, 0.95);
    const Defect d = defect(t);
    EXPECT_LE(op_norm(d.D * d.D - (CMatrix::Identity(4, 4) - t.adjoint() * t)), 1e-12);
    EXPECT_LE(op_norm(d.space.projector() * d.D - d.D), 1e-12);
  }
}

TEST(Defect, RejectsNonContraction) {
  EXPECT_THROW(defect(CMatrix::Identity(2, 2) * 1.5), Error);
}

TEST(NumericalRadius, Identity) {
  const NumericalRadius w = numerical_radius(CMatrix::Identity(3, 3));
  EXPECT_NEAR(w.value, 1.0, 1e-12);
}

TEST(NumericalRadius, NilpotentJordanBlockIsOneHalf) {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  const NumericalRadius w = numerical_radius(x);
  EXPECT_NEAR(w.value, 0.5, 1e-12);
  EXPECT_LE(w.value, 0.5 + 1e-12);
}

TEST(NumericalRadius, NormalMatrixEqualsSpectralRadius) {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = 0.3;
  x(1, 1) = cplx(0.0, -0.7);
  const NumericalRadius w = numerical_radius(x);
  EXPECT_NEAR(w.value, 0.7, 1e-12);
}

TEST(NumericalRadius, BracketsDenseGridOracle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(200 + s);
    const CMatrix x = random_gaussian(rng, 4, 4);
    const NumericalRadius w = numerical_radius(x);
    double oracle = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const double th = 2.0 * M_PI * k / 20000.0;
      const CMatrix h = (std::polar(1.0, th) * x + std::polar(1.0, -th) * x.adjoint()) * 0.5;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
      oracle = std::max(oracle, es.eigenvalues().maxCoeff());
    }
    EXPECT_GE(w.value + 1e-12, oracle);
    EXPECT_LE(w.value, oracle + w.error_bound + 1e-12);
    EXPECT_LE(w.value, op_norm(x) + 1e-12);
  }
}

TEST(Basics, CommutatorWithIdentityVanishes) {
  Rng rng(3);
  const CMatrix x = random_gaussian(rng, 3, 3);
  EXPECT_EQ(max_abs(commutator(CMatrix::Identity(3, 3), x)), 0.0);
}

TEST(Basics, OpNormOfDiagonal) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = cplx(0.0, 4.0);
  EXPECT_NEAR(op_norm(d), 4.0, 1e-14);
}

TEST(Basics, RangeOfRankOneOuterProduct) {
  Rng rng(4);
  const CMatrix u = random_gaussian(rng, 5, 1);
  const CMatrix v = random_gaussian(rng, 4, 1);
  const SubspaceBasis r = range_basis(u * v.adjoint());
  EXPECT_EQ(r.rank(), 1);
  EXPECT_LE(max_principal_angle(r, SubspaceBasis(5, u / u.norm())), 1e-12);
}

TEST(Basics, AbsoluteFloorDropsRoundingNoise) {
  Rng rng(5);
  const CMatrix noise = random_gaussian(rng, 4, 4) * 1e-17;
  EXPECT_EQ(range_basis(noise).rank(), 4);
  EXPECT_EQ(range_basis(noise, {}, 1e-9).rank(), 0);
}

TEST(Basics, ComplementAndAngles) {
  Rng rng(6);
  const SubspaceBasis a = range_basis(random_gaussian(rng, 6, 2));
  const SubspaceBasis c = orthogonal_complement(a);
  EXPECT_EQ(c.rank(), 4);
  EXPECT_LE(op_norm(a.basis.adjoint() * c.basis), 1e-13);
  EXPECT_NEAR(max_principal_angle(a, c), M_PI / 2, 1e-12);
  EXPECT_LE(max_principal_angle(a, a), 1e-7);
  EXPECT_EQ(orthogonal_complement(SubspaceBasis::empty(3)).rank(), 3);
  EXPECT_EQ(orthogonal_complement(SubspaceBasis::full(3)).rank(), 0);
}

TEST(Basics, KroneckerIdentity) {
  Rng rng(7);
  const CMatrix x = random_gaussian(rng, 2, 3);
  const CMatrix k = kron_identity(3, x);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 9);
  EXPECT_EQ(max_abs(k.block(2, 3, 2, 3) - x), 0.0);
  EXPECT_EQ(max_abs(k.block(0, 3, 2, 3)), 0.0);
}

TEST(Basics, UnitarityResiduals) {
  Rng rng(8);
  const CMatrix u = random_unitary(rng, 5);
  EXPECT_LE(unitarity_residual(u), 1e-13);
  EXPECT_LE(isometry_residual(u.leftCols(3)), 1e-13);
  EXPECT_GT(unitarity_residual(u * 1.01), 1e-3);
}

TEST(Basics, ShapeAndFinitenessGuards) {
  EXPECT_THROW(require_square(CMatrix::Zero(2, 3), "x"), Error);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(require_finite(bad, "x"), Error);
  EXPECT_THROW(require_same_shape(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3), "x"), Error);
}

TEST(TolerancePolicy, RejectsNonPositive) {
  TolerancePolicy p;
  p.eq_tol = 0.0;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_THROW(TolerancePolicy{}.with_eq_tol(-1.0), Error);
  EXPECT_DOUBLE_EQ(TolerancePolicy{}.with_eq_tol(1e-6).eq_tol, 1e-6);
}
