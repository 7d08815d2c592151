#include "tetralab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace tetra {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotAContraction: return "NotAContraction";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::NotContractive: return "NotContractive";
    case ErrorKind::NotCoinvariant: return "NotCoinvariant";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::RestrictionLeak: return "RestrictionLeak";
    case ErrorKind::ResolventSingular: return "ResolventSingular";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::NotIsometryLike: return "NotIsometryLike";
    case ErrorKind::NotInner: return "NotInner";
    case ErrorKind::NotDegreeOne: return "NotDegreeOne";
    case ErrorKind::NotIntertwining: return "NotIntertwining";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  if (!(eq_tol > 0.0) || !(rank_tol > 0.0) || !(clamp_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  }
  if (!(rank_tol > clamp_tol)) {
    throw Error(ErrorKind::InvalidArgument, "rank_tol must exceed clamp_tol");
  }
}

TolerancePolicy TolerancePolicy::with_eq_tol(double tol) const {
  TolerancePolicy out = *this;
  out.eq_tol = tol;
  out.validate();
  return out;
}

SubspaceBasis::SubspaceBasis(Index ambient, CMatrix columns)
    : ambient_dim(ambient), basis(std::move(columns)) {
  if (basis.rows() != ambient_dim) {
    throw Error(ErrorKind::ShapeMismatch, "subspace basis rows differ from ambient dimension");
  }
}

CMatrix SubspaceBasis::projector() const { return basis * basis.adjoint(); }

SubspaceBasis SubspaceBasis::full(Index n) { return {n, CMatrix::Identity(n, n)}; }

SubspaceBasis SubspaceBasis::empty(Index n) { return {n, CMatrix(n, 0)}; }

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": operand shapes differ");
  }
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // BDCSVD in Eigen 3.4.0 can overshoot by ~1e-7 on clustered singular values
  const CMatrix g = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double relative_scale(std::initializer_list<const CMatrix*> operands) {
  double s = 0.0;
  for (const CMatrix* m : operands) s = std::max(s, op_norm(*m));
  return 1.0 + s;
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) {
  require_square(x, "commutator operand");
  require_same_shape(x, y, "commutator");
  return x * y - y * x;
}

CMatrix hermitian_sqrt(const CMatrix& h, const TolerancePolicy& pol) {
  require_square(h, "hermitian_sqrt input");
  require_finite(h, "hermitian_sqrt input");
  if (h.size() == 0) return h;
  const double hn = op_norm(h);
  const double asym = op_norm(h - h.adjoint());
  if (asym > pol.eq_tol * (1.0 + hn)) {
    throw ResidualError(ErrorKind::NotHermitian, "H", asym, "symmetry residual too large");
  }
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  RVector ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -pol.clamp_tol * hn) {
      throw ResidualError(ErrorKind::NotPSD, "H", ev(i), "eigenvalue below clamping threshold");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  const CMatrix& v = es.eigenvectors();
  return v * ev.cast<cplx>().asDiagonal() * v.adjoint();
}

Defect defect(const CMatrix& t, const TolerancePolicy& pol) {
  require_square(t, "defect input");
  require_finite(t, "defect input");
  const Index n = t.rows();
  if (n == 0) return {CMatrix(0, 0), SubspaceBasis::empty(0)};
  const double tn = op_norm(t);
  if (tn > 1.0 + pol.eq_tol) {
    throw ResidualError(ErrorKind::NotAContraction, "T", tn, "operator norm exceeds 1");
  }
  CMatrix h = CMatrix::Identity(n, n) - t.adjoint() * t;
  h = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector& mu = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();

  RVector sigma(n);
  std::vector<Index> kept;
  for (Index i = 0; i < n; ++i) {
    if (mu(i) > pol.rank_tol) {
      sigma(i) = std::sqrt(mu(i));
      kept.push_back(i);
    } else {
      sigma(i) = 0.0;
    }
  }
  CMatrix basis(n, static_cast<Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) basis.col(static_cast<Index>(k)) = v.col(kept[k]);
  CMatrix d = v * sigma.cast<cplx>().asDiagonal() * v.adjoint();
  return {std::move(d), SubspaceBasis(n, std::move(basis))};
}

namespace {

double lambda_max_re(const CMatrix& x, double theta) {
  const cplx phase = std::polar(1.0, theta);
  const CMatrix h = 0.5 * (phase * x + std::conj(phase) * x.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

}  // namespace

NumericalRadius numerical_radius(const CMatrix& x, int grid_size, int refine_iters) {
  require_square(x, "numerical_radius input");
  if (grid_size < 8) throw Error(ErrorKind::InvalidArgument, "numerical_radius grid_size must be >= 8");
  if (x.size() == 0) return {};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double h = two_pi / grid_size;

  double best = -1.0;
  double best_theta = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    const double th = h * k;
    const double v = lambda_max_re(x, th);
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }

  // golden-section search on [best_theta - h, best_theta + h]
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_theta - h;
  double b = best_theta + h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = lambda_max_re(x, c);
  double fd = lambda_max_re(x, d);
  for (int it = 0; it < refine_iters; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = lambda_max_re(x, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = lambda_max_re(x, d);
    }
  }
  best = std::max({best, fc, fd});
  return {std::max(best, 0.0), std::numbers::pi * op_norm(x) / grid_size};
}

SubspaceBasis range_basis(const CMatrix& m, const TolerancePolicy& pol, double absolute_floor) {
  require_finite(m, "range_basis input");
  const Index n = m.rows();
  if (m.size() == 0) return SubspaceBasis::empty(n);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double smax = s(0);
  Index r = 0;
  if (smax > 0.0) {
    const double cut = std::max(pol.rank_tol * smax, absolute_floor);
    while (r < s.size() && s(r) > cut) ++r;
  }
  return {n, svd.matrixU().leftCols(r)};
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& s) {
  const Index n = s.ambient_dim;
  const Index r = s.rank();
  if (r == 0) return SubspaceBasis::full(n);
  if (r == n) return SubspaceBasis::empty(n);
  Eigen::HouseholderQR<CMatrix> qr(s.basis);
  CMatrix q = qr.householderQ();
  return {n, q.rightCols(n - r)};
}

double max_principal_angle(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim != b.ambient_dim) {
    throw Error(ErrorKind::ShapeMismatch, "principal angles need a common ambient space");
  }
  if (a.rank() != b.rank()) return std::numbers::pi / 2.0;
  if (a.rank() == 0) return 0.0;
  // sine of the largest angle = |(I - P_b) A| for equal dimensions
  const CMatrix resid = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  return std::asin(std::min(1.0, op_norm(resid)));
}

double isometry_residual(const CMatrix& u) {
  return op_norm(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

double unitarity_residual(const CMatrix& u) {
  return std::max(isometry_residual(u),
                  op_norm(u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())));
}

double spectral_radius(const CMatrix& m) {
  require_square(m, "spectral_radius input");
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix kron_identity(Index k, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(k * x.rows(), k * x.cols());
  for (Index i = 0; i < k; ++i) out.block(i * x.rows(), i * x.cols(), x.rows(), x.cols()) = x;
  return out;
}

}  // namespace tetra
