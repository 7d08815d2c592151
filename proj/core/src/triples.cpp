#include "tetralab/triples.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "tetralab/hardy.hpp"

namespace tetra {

ContractionData ContractionData::analyze(const CMatrix& t, const TolerancePolicy& pol) {
  require_square(t, "contraction");
  return {t, defect(t, pol), defect(t.adjoint(), pol)};
}

ContractionData ContractionData::adjoint() const { return {T.adjoint(), def_star, def}; }

TetrablockTriple TetrablockTriple::adjoint() const {
  return TetrablockTriple(a_.adjoint(), b_.adjoint(), contraction_.adjoint());
}

namespace {

void check_shapes(const CMatrix& a, const CMatrix& b, const CMatrix& p) {
  require_square(a, "A");
  require_square(b, "B");
  require_square(p, "P");
  if (a.rows() != b.rows() || a.rows() != p.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "A, B, P must act on the same space");
  }
  require_finite(a, "A");
  require_finite(b, "B");
  require_finite(p, "P");
}

}  // namespace

CheckReport necessary_conditions(const CMatrix& a, const CMatrix& b, const CMatrix& p,
                                 const TolerancePolicy& pol) {
  check_shapes(a, b, p);
  CheckReport rep("necessary conditions", std::string(kNecessaryConditionsHeader));
  const double na = op_norm(a);
  const double nb = op_norm(b);
  const double np = op_norm(p);
  const double tol = pol.eq_tol * (1.0 + std::max({na, nb, np}));
  rep.add("[A,B]", op_norm(a * b - b * a), tol);
  rep.add("[A,P]", op_norm(a * p - p * a), tol);
  rep.add("[B,P]", op_norm(b * p - p * b), tol);
  rep.add("|A|-1", std::max(0.0, na - 1.0), pol.eq_tol);
  rep.add("|B|-1", std::max(0.0, nb - 1.0), pol.eq_tol);
  rep.add("|P|-1", std::max(0.0, np - 1.0), pol.eq_tol);
  return rep;
}

TetrablockTriple validate(const CMatrix& a, const CMatrix& b, const CMatrix& p, const TolerancePolicy& pol) {
  const CheckReport rep = necessary_conditions(a, b, p, pol);
  for (const auto& e : rep.entries()) {
    if (e.passed()) continue;
    const bool comm = e.name.front() == '[';
    std::ostringstream os;
    os << e.name << " residual " << *e.residual << " exceeds " << e.tolerance;
    throw ResidualError(comm ? ErrorKind::NonCommuting : ErrorKind::NotContractive,
                        comm ? e.name : e.name.substr(1, 1), *e.residual, os.str());
  }
  return TetrablockTriple(a, b, ContractionData::analyze(p, pol));
}

PurityCertificate is_pure(const CMatrix& p, const TolerancePolicy& pol) {
  require_square(p, "P");
  PurityCertificate cert;
  const Index n = p.rows();
  if (n == 0) {
    cert.pure = true;
    cert.power = 0;
    cert.nilpotency_order = 0;
    return cert;
  }

  // A nilpotent n x n matrix satisfies P^n = 0; look for an exact zero power.
  CMatrix pw = p;
  for (Index k = 1; k <= n; ++k) {
    if ((pw.array() == cplx(0.0, 0.0)).all()) {
      cert.nilpotency_order = k;
      break;
    }
    pw = pw * p;
  }
  if (cert.nilpotency_order) {
    cert.pure = true;
    cert.spectral_radius = 0.0;
    cert.power = static_cast<std::uint64_t>(*cert.nilpotency_order);
    return cert;
  }

  cert.spectral_radius = spectral_radius(p);
  cert.pure = cert.spectral_radius < 1.0 - pol.rank_tol;
  if (!cert.pure) return cert;

  // Certificate: |P^n| is nonincreasing for a contraction, so find the
  // smallest n with |P^n| <= 1e-12 by binary lifting over squarings.
  constexpr double target = 1e-12;
  std::vector<CMatrix> squares{p};  // P^(2^k)
  while (op_norm(squares.back()) > target && squares.size() < 63) {
    squares.push_back(squares.back() * squares.back());
  }
  if (op_norm(squares.back()) > target) return cert;
  std::uint64_t reached = 0;
  CMatrix acc = CMatrix::Identity(n, n);
  for (std::size_t k = squares.size(); k-- > 0;) {
    const CMatrix cand = acc * squares[k];
    if (op_norm(cand) > target) {
      acc = cand;
      reached += std::uint64_t{1} << k;
    }
  }
  cert.power = reached + 1;
  return cert;
}

TetrablockTriple from_symbols(const CMatrix& f1, const CMatrix& f2, Index N, const TolerancePolicy& pol) {
  require_square(f1, "F1");
  require_same_shape(f1, f2, "from_symbols");
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
  const TruncatedHardy space{N, f1.rows()};
  const CMatrix a = toeplitz(AnalyticSymbol::pencil(f1.adjoint(), f2), N);
  const CMatrix b = toeplitz(AnalyticSymbol::pencil(f2.adjoint(), f1), N);
  return validate(a, b, shift(space), pol);
}

TetrablockTriple compress(const TetrablockTriple& t, const SubspaceBasis& subspace, const TolerancePolicy& pol) {
  if (subspace.ambient_dim != t.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "subspace lives in a different ambient space");
  }
  const CMatrix& q = subspace.basis;
  const CMatrix proj = subspace.projector();
  const CMatrix perp = CMatrix::Identity(t.dim(), t.dim()) - proj;
  const std::pair<const char*, const CMatrix*> ops[] = {{"A", &t.A()}, {"B", &t.B()}, {"P", &t.P()}};
  for (const auto& [name, x] : ops) {
    const double leak = op_norm(perp * x->adjoint() * q);
    if (leak > pol.eq_tol * (1.0 + op_norm(*x))) {
      std::ostringstream os;
      os << "subspace is not invariant under " << name << "*, leak " << leak;
      throw ResidualError(ErrorKind::NotCoinvariant, name, leak, os.str());
    }
  }
  return validate(q.adjoint() * t.A() * q, q.adjoint() * t.B() * q, q.adjoint() * t.P() * q, pol);
}

TetrablockTriple conjugate(const TetrablockTriple& t, const CMatrix& u, const TolerancePolicy& pol) {
  if (u.rows() != t.dim() || u.cols() != t.dim()) throw Error(ErrorKind::ShapeMismatch, "conjugating unitary");
  const double ur = unitarity_residual(u);
  if (ur > pol.eq_tol * 10.0) throw ResidualError(ErrorKind::NotUnitary, "U", ur, "conjugation by a non-unitary");
  return validate(u * t.A() * u.adjoint(), u * t.B() * u.adjoint(), u * t.P() * u.adjoint(), pol);
}

}  // namespace tetra
