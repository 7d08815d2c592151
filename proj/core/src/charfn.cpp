#include "tetralab/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tetra {

namespace {

void check_restriction(const ContractionData& c, const TolerancePolicy& pol) {
  const CMatrix& q = c.def.space.basis;
  const CMatrix& qs = c.def_star.space.basis;
  const CMatrix pq = c.T * q;
  const double leak = op_norm(pq - qs * (qs.adjoint() * pq));
  if (leak > pol.eq_tol * (1.0 + op_norm(c.T))) {
    throw ResidualError(ErrorKind::RestrictionLeak, "P", leak, "P does not map D_P into D_{P*}");
  }
}

}  // namespace

CMatrix theta_coefficient(const ContractionData& c, Index n, const TolerancePolicy& pol) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Taylor index must be non-negative");
  check_restriction(c, pol);
  const CMatrix& q = c.def.space.basis;
  const CMatrix& qs = c.def_star.space.basis;
  if (n == 0) return -(qs.adjoint() * c.T * q);
  CMatrix v = c.def.D * q;
  const CMatrix ps = c.T.adjoint();
  for (Index k = 1; k < n; ++k) v = ps * v;
  return qs.adjoint() * c.def_star.D * v;
}

CMatrix theta_coefficient(const CMatrix& p, Index n, const TolerancePolicy& pol) {
  return theta_coefficient(ContractionData::analyze(p, pol), n, pol);
}

AnalyticSymbol theta_taylor(const ContractionData& c, Index N, const TolerancePolicy& pol) {
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "degree must be non-negative");
  check_restriction(c, pol);
  const CMatrix& q = c.def.space.basis;
  const CMatrix& qs = c.def_star.space.basis;
  std::vector<CMatrix> coeffs;
  coeffs.reserve(static_cast<std::size_t>(N + 1));
  coeffs.push_back(-(qs.adjoint() * c.T * q));
  const CMatrix left = qs.adjoint() * c.def_star.D;
  const CMatrix ps = c.T.adjoint();
  CMatrix v = c.def.D * q;
  for (Index k = 1; k <= N; ++k) {
    coeffs.push_back(left * v);
    v = ps * v;
  }
  return AnalyticSymbol(std::move(coeffs));
}

namespace {

Eigen::PartialPivLU<CMatrix> resolvent(const CMatrix& x, cplx z) {
  const Index n = x.rows();
  const CMatrix m = CMatrix::Identity(n, n) - z * x;
  Eigen::PartialPivLU<CMatrix> lu(m);
  if (n > 0 && !(lu.rcond() > 1e-14)) {
    throw Error(ErrorKind::ResolventSingular, "I - zX is numerically singular");
  }
  return lu;
}

}  // namespace

CMatrix theta_eval(const ContractionData& c, cplx z, const TolerancePolicy& pol) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "theta_eval needs |z| < 1");
  check_restriction(c, pol);
  const CMatrix& q = c.def.space.basis;
  const CMatrix& qs = c.def_star.space.basis;
  if (c.dim() == 0) return CMatrix::Zero(qs.cols(), q.cols());
  const auto lu = resolvent(c.T.adjoint(), z);
  const CMatrix inner = lu.solve(CMatrix(c.def.D * q));
  return -(qs.adjoint() * c.T * q) + z * (qs.adjoint() * c.def_star.D * inner);
}

CMatrix theta_eval(const CMatrix& p, cplx z, const TolerancePolicy& pol) {
  return theta_eval(ContractionData::analyze(p, pol), z, pol);
}

double kernel_identity_check(const ContractionData& c, cplx z, cplx w, const TolerancePolicy& pol) {
  const CMatrix tz = theta_eval(c, z, pol);
  const CMatrix tw = theta_eval(c, w, pol);
  const CMatrix& qs = c.def_star.space.basis;
  const Index rs = qs.cols();
  if (rs == 0) return 0.0;
  const CMatrix lhs = CMatrix::Identity(rs, rs) - tw * tz.adjoint();
  const auto lu_w = resolvent(c.T.adjoint(), w);
  const auto lu_z = resolvent(c.T, std::conj(z));
  const CMatrix ds_q = c.def_star.D * qs;
  const CMatrix rhs = (1.0 - w * std::conj(z)) * (ds_q.adjoint() * lu_w.solve(CMatrix(lu_z.solve(ds_q))));
  return op_norm(lhs - rhs);
}

double kernel_identity_check(const CMatrix& p, cplx z, cplx w, const TolerancePolicy& pol) {
  return kernel_identity_check(ContractionData::analyze(p, pol), z, w, pol);
}

double TailProfile::tail(Index N) const {
  double acc = remainder_sq;
  for (std::size_t n = static_cast<std::size_t>(std::max<Index>(N + 1, 0)); n < norms.size(); ++n) {
    acc += norms[n] * norms[n];
  }
  return std::sqrt(acc);
}

TailProfile tail_profile(const CMatrix& p, Index max_power) {
  require_square(p, "P");
  TailProfile prof;
  const Index n = p.rows();
  prof.norms.push_back(1.0);
  if (n == 0) {
    prof.nilpotency_order = 0;
    prof.norms[0] = 0.0;
    return prof;
  }
  CMatrix pw = CMatrix::Identity(n, n);
  for (Index k = 1; k <= max_power; ++k) {
    pw = pw * p;
    if ((pw.array() == cplx(0.0, 0.0)).all()) {
      prof.norms.push_back(0.0);
      prof.nilpotency_order = k;
      return prof;
    }
    const double s = op_norm(pw);
    prof.norms.push_back(s);
    if (s <= 1e-14) break;
  }
  const double sm = prof.norms.back();
  if (!(sm < 1.0)) {
    prof.remainder_sq = std::numeric_limits<double>::infinity();
    return prof;
  }
  double head = 0.0;
  for (std::size_t k = 0; k + 1 < prof.norms.size(); ++k) head += prof.norms[k] * prof.norms[k];
  prof.remainder_sq = head * sm * sm / (1.0 - sm * sm);
  return prof;
}

double truncation_tail(const CMatrix& p, Index N) { return tail_profile(p).tail(N); }

Index suggest_degree(const CMatrix& p, double accuracy) {
  const TailProfile prof = tail_profile(p);
  if (prof.nilpotency_order) return std::max<Index>(*prof.nilpotency_order - 1, 0);
  for (Index N = 0; N < static_cast<Index>(prof.norms.size()); ++N) {
    if (prof.tail(N) <= accuracy) return N;
  }
  throw Error(ErrorKind::InvalidArgument, "no truncation degree reaches the requested accuracy");
}

ModelData build_model(const ContractionData& c, Index N, const TolerancePolicy& pol) {
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "degree must be non-negative");
  const PurityCertificate cert = is_pure(c.T, pol);
  if (!cert.pure) {
    std::ostringstream os;
    os << "P is not pure (spectral radius " << cert.spectral_radius << ")";
    throw Error(ErrorKind::NotPure, os.str());
  }
  ModelData m;
  m.contraction = c;
  m.N = N;
  const Index n = c.dim();
  const Index rs = c.defect_star_rank();
  const CMatrix& qs = c.def_star.space.basis;

  m.W = CMatrix::Zero((N + 1) * rs, n);
  CMatrix row = qs.adjoint() * c.def_star.D;  // Qs* D_{P*} P*^k
  const CMatrix ps = c.T.adjoint();
  for (Index k = 0; k <= N; ++k) {
    m.W.middleRows(k * rs, rs) = row;
    row = row * ps;
  }
  m.theta = theta_taylor(c, N, pol);
  m.theta_toeplitz = toeplitz(m.theta, N);
  m.tail = tail_profile(c.T).tail(N);
  const SubspaceBasis ran_theta = m.theta_toeplitz.cols() == 0 ? SubspaceBasis::empty(m.W.rows())
                                                                : range_basis(m.theta_toeplitz, pol, pol.rank_tol);
  m.H_P_basis = orthogonal_complement(ran_theta);
  m.cross_angle = max_principal_angle(m.H_P_basis, range_basis(m.W, pol, pol.rank_tol));
  if (m.cross_angle > 1e-6 + m.tail) {
    std::ostringstream os;
    os << "model space and Ran W disagree (angle " << m.cross_angle << ", tail " << m.tail << ")";
    throw ResidualError(ErrorKind::ModelMismatch, "W", m.cross_angle, os.str());
  }
  return m;
}

ModelData build_model(const CMatrix& p, Index N, const TolerancePolicy& pol) {
  return build_model(ContractionData::analyze(p, pol), N, pol);
}

CheckReport verify_L0(const ModelData& m, const TolerancePolicy& pol) {
  CheckReport rep("model identity", std::string(kNecessaryConditionsHeader));
  const Index dim = m.W.rows();
  const CMatrix& t = m.theta_toeplitz;
  const CMatrix sum = m.W * m.W.adjoint() + t * t.adjoint() - CMatrix::Identity(dim, dim);
  const double wn = op_norm(m.W);
  const double tn = op_norm(t);
  const double scale = 1.0 + std::max(wn * wn, tn * tn);
  rep.add("WW* + M_Theta M_Theta* = I", op_norm(sum), pol.eq_tol * scale + m.tail);
  if (m.N >= 1) {
    const CMatrix j = m.space().low_degree_injection(m.N - 1);
    rep.add("WW* + M_Theta M_Theta* = I (degrees <= N-1)", op_norm(j.adjoint() * sum * j), pol.eq_tol * scale);
  } else {
    rep.skip("WW* + M_Theta M_Theta* = I (degrees <= N-1)", "no interior degrees at N = 0");
  }
  rep.add("W*W = I", isometry_residual(m.W), pol.eq_tol * scale + m.tail);
  rep.add("model space = Ran W (angle)", m.cross_angle, 1e-6 + m.tail);
  return rep;
}

ModelOperators model_operators(const CMatrix& g1, const CMatrix& g2, Index N) {
  require_square(g1, "G1");
  require_same_shape(g1, g2, "model_operators");
  const Index d = g1.rows();
  return {toeplitz(AnalyticSymbol::pencil(g1.adjoint(), g2), N),
          toeplitz(AnalyticSymbol::pencil(g2.adjoint(), g1), N), shift(TruncatedHardy{N, d})};
}

CheckReport verify_fm(const TetrablockTriple& t, const ModelData& m, const FundamentalPair& g,
                      const TolerancePolicy& pol) {
  CheckReport rep("functional model", std::string(kNecessaryConditionsHeader));
  if (g.rank() != m.fiber()) throw Error(ErrorKind::ShapeMismatch, "G pair does not live on D_{P*}");
  const ModelOperators ops = model_operators(g.F1, g.F2, m.N);
  const CMatrix* xs[3] = {&ops.X1, &ops.X2, &ops.X3};
  const CMatrix* targets[3] = {&t.A(), &t.B(), &t.P()};
  const char* names[3] = {"A", "B", "P"};
  const CMatrix& w = m.W;
  for (int k = 0; k < 3; ++k) {
    const double scale = 1.0 + std::max(op_norm(*xs[k]), op_norm(*targets[k]));
    const double tol = pol.eq_tol * scale + scale * m.tail;
    rep.add(std::string("W* X") + std::to_string(k + 1) + " W = " + names[k],
            op_norm(w.adjoint() * *xs[k] * w - *targets[k]), tol);
    rep.add(std::string("X") + std::to_string(k + 1) + "* W = W " + names[k] + "*",
            op_norm(xs[k]->adjoint() * w - w * targets[k]->adjoint()), tol);
  }
  return rep;
}

CheckReport verify_scor1(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                         const std::vector<cplx>& samples, const TolerancePolicy& pol) {
  CheckReport rep("pencil intertwining", std::string(kNecessaryConditionsHeader));
  const ContractionData cs = t.contraction().adjoint();
  const double scale = 1.0 + std::max({op_norm(f.F1), op_norm(f.F2), op_norm(g.F1), op_norm(g.F2)});
  double e1 = 0.0;
  double e2 = 0.0;
  for (const cplx z : samples) {
    const CMatrix th = theta_eval(cs, z, pol);
    e1 = std::max(e1, op_norm((f.F1.adjoint() + z * f.F2) * th - th * (g.F1 + z * g.F2.adjoint())));
    e2 = std::max(e2, op_norm((f.F2.adjoint() + z * f.F1) * th - th * (g.F2 + z * g.F1.adjoint())));
  }
  if (samples.empty()) {
    rep.skip("(F1* + F2 z) Theta_{P*} = Theta_{P*} (G1 + G2* z)", "no sample points");
    rep.skip("(F2* + F1 z) Theta_{P*} = Theta_{P*} (G2 + G1* z)", "no sample points");
    return rep;
  }
  rep.add("(F1* + F2 z) Theta_{P*} = Theta_{P*} (G1 + G2* z)", e1, pol.eq_tol * scale * scale);
  rep.add("(F2* + F1 z) Theta_{P*} = Theta_{P*} (G2 + G1* z)", e2, pol.eq_tol * scale * scale);
  return rep;
}

CheckReport verify_kernel_identity(const ContractionData& c, const std::vector<cplx>& zs, const std::vector<cplx>& ws,
                                   const TolerancePolicy& pol) {
  CheckReport rep("kernel identity", std::string(kNecessaryConditionsHeader));
  if (zs.size() != ws.size()) throw Error(ErrorKind::InvalidArgument, "sample lists differ in length");
  if (zs.empty()) {
    rep.skip("I - Theta(w)Theta(z)* = (1 - w conj z) kernel", "no sample points");
    return rep;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) worst = std::max(worst, kernel_identity_check(c, zs[k], ws[k], pol));
  double amp = 1.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    amp = std::max(amp, 1.0 / ((1.0 - std::abs(zs[k])) * (1.0 - std::abs(ws[k]))));
  }
  rep.add("I - Theta(w)Theta(z)* = (1 - w conj z) kernel", worst, pol.eq_tol * amp);
  return rep;
}

CheckReport pure_isometry_model(const TetrablockTriple& t, Index N, const std::optional<CMatrix>& interior,
                                const std::optional<CMatrix>& fiber_interior, const TolerancePolicy& pol) {
  const Index n = t.dim();
  const CMatrix j = interior ? *interior : CMatrix::Identity(n, n);
  if (j.rows() != n) throw Error(ErrorKind::ShapeMismatch, "interior embedding rows differ from dimension");
  if (j.cols() == 0) throw Error(ErrorKind::NotIsometryLike, "interior is empty");
  const CMatrix& p = t.P();
  const double iso = op_norm((p.adjoint() * p - CMatrix::Identity(n, n)) * j);
  if (iso > pol.eq_tol * 2.0) {
    throw ResidualError(ErrorKind::NotIsometryLike, "P", iso, "P*P = I fails on the interior");
  }

  CheckReport rep("pure isometry model", std::string(kNecessaryConditionsHeader));
  rep.add("P*P = I on interior", iso, pol.eq_tol * 2.0);
  rep.add("Dp vanishes on interior", op_norm(t.defect_P().D * j), pol.eq_tol * 2.0);

  const FundamentalPair g = solve_fundamental(t.adjoint(), pol);
  const ModelData m = build_model(t.contraction(), N, pol);
  rep.merge(verify_L0(m, pol), "model");
  rep.merge(verify_fm(t, m, g, pol), "fm");

  const ModelOperators ops = model_operators(g.F1, g.F2, N);
  const CMatrix* xs[3] = {&ops.X1, &ops.X2, &ops.X3};
  const CMatrix* targets[3] = {&t.A(), &t.B(), &t.P()};
  const char* names[3] = {"A", "B", "P"};
  for (int k = 0; k < 3; ++k) {
    const double scale = 1.0 + std::max(op_norm(*xs[k]), op_norm(*targets[k]));
    rep.add(std::string("X") + std::to_string(k + 1) + " W = W " + names[k] + " on interior",
            op_norm(*xs[k] * m.W * j - m.W * *targets[k] * j), pol.eq_tol * scale + scale * m.tail);
  }

  const Index rs = g.rank();
  const CMatrix e = fiber_interior ? *fiber_interior : CMatrix::Identity(rs, rs);
  if (e.rows() != rs) throw Error(ErrorKind::ShapeMismatch, "fiber interior rows differ from defect rank");
  const double scale = 1.0 + std::max(op_norm(g.F1), op_norm(g.F2));
  rep.add("[G1,G2] = 0", op_norm(e.adjoint() * commutator(g.F1, g.F2) * e), pol.eq_tol * scale * scale);
  rep.add("[G1,G1*] = [G2,G2*]",
          op_norm(e.adjoint() * (commutator(g.F1, g.F1.adjoint()) - commutator(g.F2, g.F2.adjoint())) * e),
          pol.eq_tol * scale * scale);
  return rep;
}

std::vector<cplx> random_disc_points(Rng& rng, std::size_t count, double radius) {
  std::vector<cplx> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(rng.in_disc(radius));
  return out;
}

}  // namespace tetra
