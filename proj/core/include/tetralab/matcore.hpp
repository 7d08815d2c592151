#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

#include "tetralab/error.hpp"

namespace tetra {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerances shared by every residual check and rank decision.
///
/// eq_tol governs identity residuals, always used relatively:
/// residual <= eq_tol * (1 + largest operand norm). rank_tol decides numerical
/// rank relative to the largest eigenvalue or singular value involved.
/// clamp_tol bounds the negative eigenvalues that may be rounded up to zero.
struct TolerancePolicy {
  double eq_tol = 1e-10;
  double rank_tol = 1e-9;
  double clamp_tol = 1e-12;

  void validate() const;
  TolerancePolicy with_eq_tol(double tol) const;
};

/// Orthonormal basis (as columns) of a subspace of C^ambient_dim.
struct SubspaceBasis {
  Index ambient_dim = 0;
  CMatrix basis;  // ambient_dim x rank

  SubspaceBasis() = default;
  SubspaceBasis(Index ambient, CMatrix columns);

  Index rank() const noexcept { return basis.cols(); }
  CMatrix projector() const;

  static SubspaceBasis full(Index n);
  static SubspaceBasis empty(Index n);
};

struct Defect {
  CMatrix D;            // (I - T*T)^{1/2} with sub-threshold eigenvalues zeroed
  SubspaceBasis space;  // orthonormal basis of Ran D
};

struct NumericalRadius {
  double value = 0.0;        // lower bound on w(X)
  double error_bound = 0.0;  // w(X) <= value + error_bound
};

// Shape and finiteness guards.
void require_square(const CMatrix& m, const char* what);
void require_finite(const CMatrix& m, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// 1 + max operand norm; the scale used by every relative equality check.
double relative_scale(std::initializer_list<const CMatrix*> operands);

CMatrix commutator(const CMatrix& x, const CMatrix& y);

/// Hermitian square root of a numerically PSD matrix by unitary
/// eigendecomposition. Eigenvalues in [-clamp_tol*|H|, 0) are set to zero.
CMatrix hermitian_sqrt(const CMatrix& h, const TolerancePolicy& pol = {});

/// Defect operator of a contraction and an orthonormal basis of its range.
/// The rank is decided on the eigenvalues of I - T*T (which live in [0, 1]),
/// keeping those above rank_tol; discarded directions are zeroed in D so that
/// Ran D is exactly the returned subspace.
Defect defect(const CMatrix& t, const TolerancePolicy& pol = {});

/// Numerical radius by a theta grid of lambda_max(Re(e^{i theta} X)) with
/// golden-section refinement around the best grid point.
NumericalRadius numerical_radius(const CMatrix& x, int grid_size = 256, int refine_iters = 48);

/// Orthonormal basis of Ran M via SVD, singular values above
/// rank_tol * sigma_max count towards the rank. absolute_floor is a second,
/// absolute threshold, for operators whose singular values are known to lie
/// in [0, 1] (a matrix of pure rounding noise then has rank zero).
SubspaceBasis range_basis(const CMatrix& m, const TolerancePolicy& pol = {}, double absolute_floor = 0.0);

/// Orthonormal basis of the orthogonal complement of a subspace.
SubspaceBasis orthogonal_complement(const SubspaceBasis& s);

/// Largest principal angle (radians) between two subspaces; pi/2 when the
/// ranks differ and the smaller one is not contained in the larger.
double max_principal_angle(const SubspaceBasis& a, const SubspaceBasis& b);

/// max(|U*U - I|, |UU* - I|); meaningful for square U.
double unitarity_residual(const CMatrix& u);

/// |U*U - I| only.
double isometry_residual(const CMatrix& u);

/// Spectral radius from the complex eigenvalues.
double spectral_radius(const CMatrix& m);

/// Kronecker product I_k (x) X.
CMatrix kron_identity(Index k, const CMatrix& x);

}  // namespace tetra
