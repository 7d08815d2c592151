#include "tetralab/invariants.hpp"

#include <algorithm>
#include <sstream>

namespace tetra {

namespace {

CheckReport new_report(std::string title) {
  return CheckReport(std::move(title), std::string(kNecessaryConditionsHeader));
}

}  // namespace

CheckReport verify_coincidence(const ContractionData& p, const ContractionData& q, const CoincidenceWitness& wit,
                               const std::vector<cplx>& samples, Index N, const TolerancePolicy& pol) {
  CheckReport rep = new_report("coincidence");
  const Index r = p.defect_rank();
  const Index rs = p.defect_star_rank();
  if (wit.u.rows() != q.defect_rank() || wit.u.cols() != r || wit.u_star.rows() != q.defect_star_rank() ||
      wit.u_star.cols() != rs) {
    rep.add_flag("witness shapes", false, "witness shapes do not match the defect dimensions");
    return rep;
  }
  if (r == 0 && rs == 0) {
    rep.add_flag("coincidence", true, "vacuous: both defect spaces are zero-dimensional");
    return rep;
  }
  const double tol = pol.eq_tol * 2.0;
  rep.add("u unitary", r == 0 ? 0.0 : unitarity_residual(wit.u), tol);
  rep.add("u_* unitary", rs == 0 ? 0.0 : unitarity_residual(wit.u_star), tol);
  double pointwise = 0.0;
  for (const cplx z : samples) {
    pointwise = std::max(pointwise, op_norm(wit.u_star * theta_eval(p, z, pol) - theta_eval(q, z, pol) * wit.u));
  }
  if (samples.empty()) {
    rep.skip("u_* Theta_P(z) = Theta_P'(z) u", "no sample points");
  } else {
    rep.add("u_* Theta_P(z) = Theta_P'(z) u", pointwise, tol);
  }
  const AnalyticSymbol a = theta_taylor(p, N, pol);
  const AnalyticSymbol b = theta_taylor(q, N, pol);
  double taylor = 0.0;
  for (Index n = 0; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    taylor = std::max(taylor, op_norm(wit.u_star * a.coeffs[k] - b.coeffs[k] * wit.u));
  }
  rep.add("u_* Theta_n = Theta'_n u", taylor, tol);
  return rep;
}

CoincidenceWitness induced_defect_unitary(const CMatrix& U, const TetrablockTriple& t, const TetrablockTriple& t2,
                                          const TolerancePolicy& pol) {
  if (U.rows() != t2.dim() || U.cols() != t.dim()) throw Error(ErrorKind::ShapeMismatch, "U has the wrong shape");
  const double ur = unitarity_residual(U);
  if (ur > pol.eq_tol * 2.0) throw ResidualError(ErrorKind::NotUnitary, "U", ur, "U is not unitary");
  const CMatrix* xs[3] = {&t.A(), &t.B(), &t.P()};
  const CMatrix* ys[3] = {&t2.A(), &t2.B(), &t2.P()};
  const char* names[3] = {"A", "B", "P"};
  for (int k = 0; k < 3; ++k) {
    const double res = op_norm(U * *xs[k] - *ys[k] * U);
    if (res > pol.eq_tol * (1.0 + std::max(op_norm(*xs[k]), op_norm(*ys[k])))) {
      throw ResidualError(ErrorKind::NotIntertwining, names[k], res,
                          std::string("U does not intertwine ") + names[k]);
    }
  }
  CoincidenceWitness w;
  w.u = t2.defect_P().space.basis.adjoint() * U * t.defect_P().space.basis;
  w.u_star = t2.defect_P_star().space.basis.adjoint() * U * t.defect_P_star().space.basis;
  const double a = w.u.size() == 0 ? 0.0 : unitarity_residual(w.u);
  const double b = w.u_star.size() == 0 ? 0.0 : unitarity_residual(w.u_star);
  if (std::max(a, b) > pol.eq_tol * 2.0) {
    throw ResidualError(ErrorKind::NotUnitary, a > b ? "u" : "u_*", std::max(a, b),
                        "restriction of U to the defect spaces is not unitary");
  }
  return w;
}

CheckReport verify_fundamental_equivalence(const CMatrix& w, const FundamentalPair& f, const FundamentalPair& f2,
                                           const TolerancePolicy& pol) {
  CheckReport rep = new_report("fundamental equivalence");
  if (w.rows() != f2.rank() || w.cols() != f.rank()) {
    rep.add_flag("witness shape", false, "witness does not map between the defect spaces");
    return rep;
  }
  if (f.rank() == 0 && f2.rank() == 0) {
    rep.add_flag("equivalence", true, "vacuous: zero-dimensional defect spaces");
    return rep;
  }
  const double scale = 1.0 + std::max({op_norm(f.F1), op_norm(f.F2), op_norm(f2.F1), op_norm(f2.F2)});
  rep.add("w F1 w* = F1'", op_norm(w * f.F1 * w.adjoint() - f2.F1), pol.eq_tol * scale);
  rep.add("w F2 w* = F2'", op_norm(w * f.F2 * w.adjoint() - f2.F2), pol.eq_tol * scale);
  return rep;
}

CheckReport converse_construction(const TetrablockTriple& t, const TetrablockTriple& t2, const CoincidenceWitness& wit,
                                  Index N, const std::vector<cplx>& samples, const TolerancePolicy& pol) {
  CheckReport rep = new_report("converse construction");
  rep.merge(verify_coincidence(t.contraction(), t2.contraction(), wit, samples, N, pol), "hypothesis/coincidence");
  const FundamentalPair g = solve_fundamental(t.adjoint(), pol);
  const FundamentalPair g2 = solve_fundamental(t2.adjoint(), pol);
  rep.merge(verify_fundamental_equivalence(wit.u_star, g, g2, pol), "hypothesis/G");
  if (!rep.overall()) {
    rep.skip("construction", "HypothesisViolated: witnesses do not satisfy the coincidence requirements");
    return rep;
  }
  if (t.dim() != t2.dim()) {
    rep.add_flag("dimensions", false, "triples act on spaces of different dimension");
    return rep;
  }

  const ModelData m = build_model(t.contraction(), N, pol);
  const ModelData m2 = build_model(t2.contraction(), N, pol);
  const double tails = m.tail + m2.tail;
  const CMatrix us = kron_identity(N + 1, wit.u_star);

  const CMatrix image = us * m.H_P_basis.basis;
  const SubspaceBasis img(image.rows(), image);
  rep.add("U_* H_P = H_P' (angle)", max_principal_angle(img, m2.H_P_basis), 1e-6 + tails);

  const ModelOperators x = model_operators(g.F1, g.F2, N);
  const ModelOperators y = model_operators(g2.F1, g2.F2, N);
  const CMatrix* xs[3] = {&x.X1, &x.X2, &x.X3};
  const CMatrix* ys[3] = {&y.X1, &y.X2, &y.X3};
  const double gs = 1.0 + std::max({op_norm(g.F1), op_norm(g.F2), op_norm(g2.F1), op_norm(g2.F2)});
  for (int k = 0; k < 3; ++k) {
    rep.add("U_* X" + std::to_string(k + 1) + "* = X" + std::to_string(k + 1) + "'* U_*",
            op_norm(us * xs[k]->adjoint() - ys[k]->adjoint() * us), pol.eq_tol * gs);
  }

  const CMatrix v = m2.W.adjoint() * us * m.W;
  const double scale = 1.0 + std::max({op_norm(t.A()), op_norm(t.B()), op_norm(t2.A()), op_norm(t2.B())});
  const double tol = pol.eq_tol * scale + scale * tails;
  rep.add("V = W'* U_* W unitary", unitarity_residual(v), pol.eq_tol * 2.0 + 2.0 * tails);
  const CMatrix* as[3] = {&t.A(), &t.B(), &t.P()};
  const CMatrix* bs[3] = {&t2.A(), &t2.B(), &t2.P()};
  const char* names[3] = {"A", "B", "P"};
  for (int k = 0; k < 3; ++k) {
    rep.add(std::string("V ") + names[k] + " = " + names[k] + "' V", op_norm(v * *as[k] - *bs[k] * v), tol);
  }
  return rep;
}

CheckReport unitary_invariant_suite(const TetrablockTriple& t, const TetrablockTriple& t2, const CMatrix& U, Index N,
                                    const std::vector<cplx>& samples, const TolerancePolicy& pol) {
  CheckReport rep = new_report("unitary invariants");
  CoincidenceWitness wit;
  try {
    wit = induced_defect_unitary(U, t, t2, pol);
  } catch (const Error& e) {
    rep.add_flag("forward/intertwining", false, e.what());
    return rep;
  }
  rep.add_flag("forward/intertwining", true);
  const FundamentalPair f = solve_fundamental(t, pol);
  const FundamentalPair f2 = solve_fundamental(t2, pol);
  const FundamentalPair g = solve_fundamental(t.adjoint(), pol);
  const FundamentalPair g2 = solve_fundamental(t2.adjoint(), pol);
  rep.merge(verify_fundamental_equivalence(wit.u, f, f2, pol), "forward/F");
  rep.merge(verify_fundamental_equivalence(wit.u_star, g, g2, pol), "forward/G");
  rep.merge(verify_coincidence(t.contraction(), t2.contraction(), wit, samples, N, pol), "forward/coincidence");
  rep.merge(converse_construction(t, t2, wit, N, samples, pol), "converse");
  return rep;
}

}  // namespace tetra
