#include "tetralab/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tetra {

CMatrix FundamentalPair::ambient1() const { return space.basis * F1 * space.basis.adjoint(); }
CMatrix FundamentalPair::ambient2() const { return space.basis * F2 * space.basis.adjoint(); }

namespace {

struct Rhs {
  CMatrix r1;  // A - B*P
  CMatrix r2;  // B - A*P
};

Rhs rhs_of(const TetrablockTriple& t) {
  return {t.A() - t.B().adjoint() * t.P(), t.B() - t.A().adjoint() * t.P()};
}

double solve_residual_of(const TetrablockTriple& t, const SubspaceBasis& q, const CMatrix& f1, const CMatrix& f2) {
  const Rhs r = rhs_of(t);
  const CMatrix& d = t.defect_P().D;
  const CMatrix e1 = d * q.basis * f1 * q.basis.adjoint() * d - r.r1;
  const CMatrix e2 = d * q.basis * f2 * q.basis.adjoint() * d - r.r2;
  return std::max(op_norm(e1), op_norm(e2));
}

FundamentalPair finish(const TetrablockTriple& t, const SubspaceBasis& q, CMatrix f1, CMatrix f2) {
  FundamentalPair out;
  out.solve_residual = solve_residual_of(t, q, f1, f2);
  out.w1 = numerical_radius(f1);
  out.w2 = numerical_radius(f2);
  out.F1 = std::move(f1);
  out.F2 = std::move(f2);
  out.space = q;
  return out;
}

void check_solved(const TetrablockTriple& t, const FundamentalPair& f, const TolerancePolicy& pol) {
  const double bound = pol.eq_tol * (1.0 + op_norm(t.A()) + op_norm(t.B()));
  if (!(f.solve_residual <= bound)) {
    std::ostringstream os;
    os << "fundamental equations not solvable on the defect space (residual " << f.solve_residual << ")";
    throw ResidualError(ErrorKind::SolveFailed, "F", f.solve_residual, os.str());
  }
}

}  // namespace

FundamentalPair solve_fundamental(const TetrablockTriple& t, const TolerancePolicy& pol) {
  const SubspaceBasis& q = t.defect_P().space;
  const Index r = q.rank();
  if (r == 0) {
    FundamentalPair out = finish(t, q, CMatrix(0, 0), CMatrix(0, 0));
    check_solved(t, out, pol);
    return out;
  }
  const CMatrix dt = q.basis.adjoint() * t.defect_P().D * q.basis;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (dt + dt.adjoint()));
  const RVector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  RVector inv(r);
  for (Index i = 0; i < r; ++i) inv(i) = ev(i) > pol.rank_tol * top ? 1.0 / ev(i) : 0.0;
  const CMatrix dinv = es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();

  const Rhs rhs = rhs_of(t);
  CMatrix f1 = dinv * (q.basis.adjoint() * rhs.r1 * q.basis) * dinv;
  CMatrix f2 = dinv * (q.basis.adjoint() * rhs.r2 * q.basis) * dinv;
  FundamentalPair out = finish(t, q, std::move(f1), std::move(f2));
  check_solved(t, out, pol);
  return out;
}

FundamentalPair solve_fundamental_lsq(const TetrablockTriple& t, const TolerancePolicy& pol) {
  const SubspaceBasis& q = t.defect_P().space;
  const Index n = t.dim();
  const Index r = q.rank();
  if (r == 0) return solve_fundamental(t, pol);
  const CMatrix m = t.defect_P().D * q.basis;               // n x r
  const CMatrix nn = q.basis.adjoint() * t.defect_P().D;    // r x n
  // vec(M X N) = (N^T kron M) vec(X), column-major vec
  CMatrix k(n * n, r * r);
  for (Index b = 0; b < r; ++b) {
    for (Index a = 0; a < r; ++a) {
      // column for X(a, b): M e_a e_b^T N = M.col(a) * N.row(b)
      const CMatrix outer = m.col(a) * nn.row(b);
      k.col(b * r + a) = Eigen::Map<const CVector>(outer.data(), n * n);
    }
  }
  const CMatrix normal = k.adjoint() * k;
  Eigen::LDLT<CMatrix> ldlt(0.5 * (normal + normal.adjoint()));
  const Rhs rhs = rhs_of(t);
  auto solve_one = [&](const CMatrix& rr) {
    const CVector v = Eigen::Map<const CVector>(rr.data(), n * n);
    const CVector x = ldlt.solve(k.adjoint() * v);
    return CMatrix(Eigen::Map<const CMatrix>(x.data(), r, r));
  };
  FundamentalPair out = finish(t, q, solve_one(rhs.r1), solve_one(rhs.r2));
  check_solved(t, out, pol);
  return out;
}

FundamentalPair with_operators(const TetrablockTriple& t, const FundamentalPair& base, CMatrix f1, CMatrix f2) {
  require_same_shape(base.F1, f1, "with_operators F1");
  require_same_shape(base.F2, f2, "with_operators F2");
  return finish(t, base.space, std::move(f1), std::move(f2));
}

namespace {

double scale_of(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair* g = nullptr) {
  double s = std::max({op_norm(t.A()), op_norm(t.B()), op_norm(t.P()), op_norm(f.F1), op_norm(f.F2)});
  if (g != nullptr) s = std::max({s, op_norm(g->F1), op_norm(g->F2)});
  return 1.0 + s;
}

CheckReport new_report(std::string title) {
  return CheckReport(std::move(title), std::string(kNecessaryConditionsHeader));
}

}  // namespace

bool has_full_rank(const CMatrix& p, const TolerancePolicy& pol) {
  if (p.size() == 0) return true;
  Eigen::JacobiSVD<CMatrix> svd(p);
  const RVector& s = svd.singularValues();
  return s(s.size() - 1) > pol.rank_tol * std::max(s(0), 1.0);
}

CheckReport verify_tetra_characterization(const TetrablockTriple& t, const FundamentalPair& f,
                                          const TolerancePolicy& pol) {
  CheckReport rep = new_report("defect characterization");
  const double tol = pol.eq_tol * scale_of(t, f);
  const CMatrix& d = t.defect_P().D;
  const CMatrix f1 = f.ambient1();
  const CMatrix f2 = f.ambient2();
  rep.add("DpA = F1 Dp + F2* Dp P", op_norm(d * t.A() - f1 * d - f2.adjoint() * d * t.P()), tol);
  rep.add("DpB = F2 Dp + F1* Dp P", op_norm(d * t.B() - f2 * d - f1.adjoint() * d * t.P()), tol);
  return rep;
}

CheckReport verify_difference_identity(const TetrablockTriple& t, const FundamentalPair& f,
                                       const TolerancePolicy& pol) {
  CheckReport rep = new_report("difference identity");
  const double s = scale_of(t, f);
  const double tol = pol.eq_tol * s;
  const double comm = op_norm(commutator(f.F1, f.F2));
  if (comm > tol) {
    std::ostringstream os;
    os << "HypothesisViolated: [F1,F2] = " << comm;
    rep.skip("A*A - B*B = Dp(F1*F1 - F2*F2)Dp", os.str());
    return rep;
  }
  const CMatrix& d = t.defect_P().D;
  const CMatrix f1 = f.ambient1();
  const CMatrix f2 = f.ambient2();
  const CMatrix lhs = t.A().adjoint() * t.A() - t.B().adjoint() * t.B();
  const CMatrix rhs = d * (f1.adjoint() * f1 - f2.adjoint() * f2) * d;
  rep.add("A*A - B*B = Dp(F1*F1 - F2*F2)Dp", op_norm(lhs - rhs), tol);
  return rep;
}

CheckReport verify_cross_relations(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                   const TolerancePolicy& pol) {
  CheckReport rep = new_report("cross relations");
  const double tol = pol.eq_tol * scale_of(t, f, &g);
  const CMatrix& a = t.A();
  const CMatrix& b = t.B();
  const CMatrix& p = t.P();
  const CMatrix& d = t.defect_P().D;
  const CMatrix& ds = t.defect_P_star().D;
  const CMatrix& q = f.space.basis;
  const CMatrix& qs = g.space.basis;
  const CMatrix f1 = f.ambient1();
  const CMatrix f2 = f.ambient2();
  const CMatrix g1 = g.ambient1();
  const CMatrix g2 = g.ambient2();

  rep.add("Dp F1 = (A Dp - Dp* G2 P)|", op_norm(d * q * f.F1 - (a * d - ds * g2 * p) * q), tol);
  rep.add("Dp F2 = (B Dp - Dp* G1 P)|", op_norm(d * q * f.F2 - (b * d - ds * g1 * p) * q), tol);
  rep.add("P F1 = G1* P|", op_norm(p * q * f.F1 - g1.adjoint() * p * q), tol);
  rep.add("P F2 = G2* P|", op_norm(p * q * f.F2 - g2.adjoint() * p * q), tol);
  const CMatrix dds = d * ds;
  rep.add("(F1* Dp Dp* - F2 P*)| = Dp Dp* G1 - P* G2*",
          op_norm((f1.adjoint() * dds - f2 * p.adjoint()) * qs - (dds * g1 - p.adjoint() * g2.adjoint()) * qs), tol);
  rep.add("(F2* Dp Dp* - F1 P*)| = Dp Dp* G2 - P* G1*",
          op_norm((f2.adjoint() * dds - f1 * p.adjoint()) * qs - (dds * g2 - p.adjoint() * g1.adjoint()) * qs), tol);
  return rep;
}

namespace {

void transfer_entries(CheckReport& rep, const std::string& prefix, const CMatrix& p, const FundamentalPair& f,
                      const FundamentalPair& g, double tol, const TolerancePolicy& pol) {
  const std::string names[3] = {prefix + "[F1,F1*] = [F2,F2*]", prefix + "[G1,G2] = 0", prefix + "[G1,G1*] = [G2,G2*]"};
  std::string reason;
  const double comm = op_norm(commutator(f.F1, f.F2));
  if (comm > tol) {
    std::ostringstream os;
    os << "HypothesisViolated: [F1,F2] = " << comm;
    reason = os.str();
  } else if (!has_full_rank(p, pol)) {
    reason = "HypothesisViolated: P is not of full rank";
  }
  if (!reason.empty()) {
    for (const auto& n : names) rep.skip(n, reason);
    return;
  }
  rep.add(names[0], op_norm(commutator(f.F1, f.F1.adjoint()) - commutator(f.F2, f.F2.adjoint())), tol);
  rep.add(names[1], op_norm(commutator(g.F1, g.F2)), tol);
  rep.add(names[2], op_norm(commutator(g.F1, g.F1.adjoint()) - commutator(g.F2, g.F2.adjoint())), tol);
}

}  // namespace

CheckReport verify_commutator_transfer(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                       const TolerancePolicy& pol) {
  CheckReport rep = new_report("commutator transfer");
  const double s = scale_of(t, f, &g);
  const double tol = pol.eq_tol * s * s;
  transfer_entries(rep, "", t.P(), f, g, tol, pol);
  // finite dimension: full rank means invertible, so the swapped statement applies
  if (has_full_rank(t.P(), pol)) {
    transfer_entries(rep, "converse/", t.P().adjoint(), g, f, tol, pol);
  } else {
    rep.skip("converse", "HypothesisViolated: P is not invertible");
  }
  return rep;
}

CheckReport verify_pair_bounds(const TetrablockTriple& t, const FundamentalPair& f, const TolerancePolicy& pol) {
  CheckReport rep = new_report("pair bounds");
  auto radius = [&](const char* name, const NumericalRadius& w) {
    std::ostringstream os;
    os.precision(17);
    os << "w = " << w.value << " (+" << w.error_bound << ")";
    rep.add(name, std::max(0.0, w.value - 1.0 - w.error_bound), pol.eq_tol, os.str());
  };
  radius("w(F1) <= 1", f.w1);
  radius("w(F2) <= 1", f.w2);
  rep.add("solve residual", f.solve_residual, pol.eq_tol * (1.0 + op_norm(t.A()) + op_norm(t.B())));
  return rep;
}

CheckReport fundamental_battery(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                const TolerancePolicy& pol) {
  CheckReport rep = new_report("fundamental operators");
  const TetrablockTriple ta = t.adjoint();
  rep.merge(verify_pair_bounds(t, f, pol), "F");
  rep.merge(verify_pair_bounds(ta, g, pol), "G");
  rep.merge(verify_tetra_characterization(t, f, pol), "characterization");
  rep.merge(verify_tetra_characterization(ta, g, pol), "characterization*");
  rep.merge(verify_difference_identity(t, f, pol), "difference");
  rep.merge(verify_cross_relations(t, f, g, pol), "cross");
  rep.merge(verify_commutator_transfer(t, f, g, pol), "transfer");
  return rep;
}

}  // namespace tetra
