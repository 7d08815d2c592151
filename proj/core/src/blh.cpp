#include "tetralab/blh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tetralab/triples.hpp"

namespace tetra {

InvariantSubspace InvariantSubspace::from_symbol(const AnalyticSymbol& theta, Index N, const TolerancePolicy& pol) {
  if (theta.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol");
  InvariantSubspace m;
  m.space = TruncatedHardy{N, theta.rows()};
  m.basis = range_basis(toeplitz(theta, N), pol, pol.rank_tol);
  m.theta = theta;
  return m;
}

namespace {

// Columns of b (orthonormal) combined to have no mass in rows [lo, end).
CMatrix without_rows_from(const CMatrix& b, Index lo, const TolerancePolicy& pol) {
  if (b.cols() == 0 || lo >= b.rows()) return b;
  const CMatrix top = b.bottomRows(b.rows() - lo);
  Eigen::JacobiSVD<CMatrix> svd(top, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > pol.rank_tol) ++r;
  const CMatrix v = svd.matrixV();
  return b * v.rightCols(b.cols() - r);
}

}  // namespace

CheckReport check_invariance(const InvariantSubspace& m, const CMatrix& f1, const CMatrix& f2,
                             const TolerancePolicy& pol) {
  require_square(f1, "F1");
  require_same_shape(f1, f2, "check_invariance");
  if (f1.rows() != m.space.d) throw Error(ErrorKind::ShapeMismatch, "symbol fiber differs from the space");
  if (m.basis.ambient_dim != m.space.dim()) throw Error(ErrorKind::ShapeMismatch, "basis ambient dimension");
  CheckReport rep("invariance", std::string(kNecessaryConditionsHeader));
  const Index N = m.space.N;
  const CMatrix x1 = toeplitz(AnalyticSymbol::pencil(f1.adjoint(), f2), N);
  const CMatrix x2 = toeplitz(AnalyticSymbol::pencil(f2.adjoint(), f1), N);
  const CMatrix x3 = shift(m.space);
  const CMatrix& q = m.basis.basis;
  const CMatrix inner = without_rows_from(q, m.space.offset(N), pol);
  const double tol = pol.eq_tol * (1.0 + std::max({op_norm(x1), op_norm(x2), 1.0}));
  auto leak = [&](const CMatrix& x) {
    const CMatrix img = x * inner;
    return op_norm(img - q * (q.adjoint() * img));
  };
  rep.add("M_{F1*+F2z} M in M", leak(x1), tol);
  rep.add("M_{F2*+F1z} M in M", leak(x2), tol);
  rep.add("M_z M in M", leak(x3), tol);
  return rep;
}

SymbolExtraction extract_symbols(const AnalyticSymbol& theta, const CMatrix& f1, const CMatrix& f2, Index N,
                                 const TolerancePolicy& pol) {
  require_square(f1, "F1");
  require_same_shape(f1, f2, "extract_symbols");
  if (theta.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol");
  if (theta.rows() != f1.rows()) throw Error(ErrorKind::ShapeMismatch, "Theta maps into a different fiber");
  const Index d = theta.rows();
  const Index ds = theta.cols();
  const CMatrix t = toeplitz(theta, N);
  const CMatrix x1 = toeplitz(AnalyticSymbol::pencil(f1.adjoint(), f2), N);
  const CMatrix x2 = toeplitz(AnalyticSymbol::pencil(f2.adjoint(), f1), N);
  const double scale = 1.0 + std::max(op_norm(f1), op_norm(f2));
  const double iso_tol = pol.eq_tol * scale;

  // interior: leading blocks on which T*T = I (Frobenius bound, cumulative)
  const CMatrix gram = t.adjoint() * t - CMatrix::Identity(t.cols(), t.cols());
  Index interior = -1;
  double iso = 0.0;
  for (Index k = 0; k <= N; ++k) {
    const double e = gram.topLeftCorner((k + 1) * ds, (k + 1) * ds).norm();
    if (e > iso_tol) break;
    interior = k;
    iso = e;
  }
  if (interior < 1) {
    std::ostringstream os;
    os << "M_Theta is not isometric on low degrees at truncation " << N;
    throw Error(ErrorKind::NotInner, os.str());
  }

  SymbolExtraction out;
  out.interior = interior;
  out.Phi = t.adjoint() * x1 * t;
  out.Psi = t.adjoint() * x2 * t;
  auto blk = [&](const CMatrix& m, Index a, Index b) { return m.block(a * ds, b * ds, ds, ds); };
  out.G1 = blk(out.Phi, 0, 0);
  out.G2 = blk(out.Psi, 0, 0);

  const Index last = interior - 1;  // blocks m, n <= last are exact
  double non_analytic = 0.0;
  double high = 0.0;
  double toep = 0.0;
  double cons_phi = 0.0;
  double cons_psi = 0.0;
  for (Index a = 0; a <= last; ++a) {
    for (Index b = 0; b <= last; ++b) {
      for (const CMatrix* m : {&out.Phi, &out.Psi}) {
        const CMatrix x = blk(*m, a, b);
        if (a < b) non_analytic = std::max(non_analytic, op_norm(x));
        if (a - b >= 2) high = std::max(high, op_norm(x));
        if (a >= b) toep = std::max(toep, op_norm(x - blk(*m, a - b, 0)));
      }
      if (b + 1 <= last) {
        cons_phi = std::max(cons_phi, op_norm(blk(out.Phi, a, b) - blk(out.Psi, b + 1, a).adjoint()));
        cons_psi = std::max(cons_psi, op_norm(blk(out.Psi, a, b) - blk(out.Phi, b + 1, a).adjoint()));
      }
    }
  }
  const double tol = pol.eq_tol * scale * scale + scale * iso;
  CheckReport& rep = out.report;
  rep = CheckReport("symbol extraction", std::string(kNecessaryConditionsHeader));
  std::ostringstream note;
  note << "interior degree " << interior << " of " << N << ", fibers " << d << " -> " << ds;
  rep.add("M_Theta isometric on interior", iso, iso_tol, note.str());
  rep.add("Phi, Psi analytic", non_analytic, tol);
  rep.add("Phi, Psi Toeplitz", toep, tol);
  if (last >= 2) {
    rep.add("Phi, Psi degree >= 2 blocks vanish", high, tol);
  } else {
    rep.skip("Phi, Psi degree >= 2 blocks vanish", "interior too short for degree-2 blocks");
  }
  if (last >= 1) {
    rep.add("M_Phi = M_Psi* M_z", cons_phi, tol);
    rep.add("M_Psi = M_Phi* M_z", cons_psi, tol);
    rep.add("Phi_1 = G2*", op_norm(blk(out.Phi, 1, 0) - out.G2.adjoint()), tol);
    rep.add("Psi_1 = G1*", op_norm(blk(out.Psi, 1, 0) - out.G1.adjoint()), tol);
  } else {
    rep.skip("M_Phi = M_Psi* M_z", "interior too short");
    rep.skip("M_Psi = M_Phi* M_z", "interior too short");
  }
  const double worst = std::max(non_analytic, high);
  if (worst > tol) {
    throw ResidualError(ErrorKind::NotDegreeOne, "Phi", worst,
                        "compressed pencils are not of degree one; the subspace is not invariant");
  }
  return out;
}

NumericalRadius pencil_norm(const CMatrix& f1, const CMatrix& f2, int grid, int refine_iters) {
  require_same_shape(f1, f2, "pencil_norm");
  if (grid < 8) throw Error(ErrorKind::InvalidArgument, "pencil_norm grid must be >= 8");
  if (f1.size() == 0) return {};
  const CMatrix a = f1.adjoint();
  auto f = [&](double th) { return op_norm(a + std::polar(1.0, th) * f2); };
  const double h = 2.0 * std::numbers::pi / grid;
  double best = -1.0;
  double best_th = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double v = f(h * k);
    if (v > best) {
      best = v;
      best_th = h * k;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_th - h;
  double hi = best_th + h;
  double c = hi - inv_phi * (hi - lo);
  double dd = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(dd);
  for (int it = 0; it < refine_iters; ++it) {
    if (fc > fd) {
      hi = dd;
      dd = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = dd;
      fc = fd;
      dd = lo + inv_phi * (hi - lo);
      fd = f(dd);
    }
  }
  best = std::max({best, fc, fd});
  return {best, std::numbers::pi * op_norm(f2) / grid};
}

CheckReport symbol_battery(const CMatrix& f1, const CMatrix& f2, const TolerancePolicy& pol) {
  require_square(f1, "F1");
  require_same_shape(f1, f2, "symbol_battery");
  CheckReport rep("symbol isometry battery", std::string(kNecessaryConditionsHeader));
  const double scale = 1.0 + std::max(op_norm(f1), op_norm(f2));
  const double tol = pol.eq_tol * scale * scale;
  rep.add("[F1,F2] = 0", op_norm(commutator(f1, f2)), tol);
  rep.add("[F1,F1*] = [F2,F2*]", op_norm(commutator(f1, f1.adjoint()) - commutator(f2, f2.adjoint())), tol);
  const NumericalRadius sup = pencil_norm(f1, f2);
  std::ostringstream os;
  os.precision(17);
  os << "sup = " << sup.value << " (+" << sup.error_bound << ")";
  rep.add("|F1* + F2 z| <= 1 on the circle", std::max(0.0, sup.value - 1.0), pol.eq_tol * scale, os.str());
  return rep;
}

CheckReport verify_isometry_propagation(const CMatrix& f1, const CMatrix& f2, const CMatrix& g1, const CMatrix& g2,
                                        Index N, const TolerancePolicy& pol) {
  CheckReport rep("isometry propagation", std::string(kNecessaryConditionsHeader));
  const CheckReport source = symbol_battery(f1, f2, pol);
  if (!source.overall()) {
    rep.add_flag("source battery", true, "source symbol triple fails the isometry battery; implication is vacuous");
    rep.skip("target battery", "source is not a tetrablock isometry");
    return rep;
  }
  rep.merge(source, "source");
  const CMatrix t1 = g1.adjoint();
  const CMatrix t2 = g2.adjoint();
  rep.merge(symbol_battery(t1, t2, pol), "target");
  // truncated target triple (M_{G1+G2*z}, M_{G2+G1*z}, M_z)
  const CMatrix a = toeplitz(AnalyticSymbol::pencil(g1, t2), N);
  const CMatrix b = toeplitz(AnalyticSymbol::pencil(g2, t1), N);
  const CMatrix p = shift(TruncatedHardy{N, g1.rows()});
  rep.merge(necessary_conditions(a, b, p, pol), "target truncated");
  return rep;
}

AnalyticSymbol wandering_symbol(const TruncatedHardy& space, const SubspaceBasis& m, Index max_degree,
                                const TolerancePolicy& pol) {
  if (m.ambient_dim != space.dim()) throw Error(ErrorKind::ShapeMismatch, "basis ambient dimension");
  if (max_degree < 0) max_degree = space.N - 1;
  max_degree = std::min(max_degree, space.N);
  const CMatrix& q = m.basis;
  const CMatrix sq = shift(space) * q;
  const SubspaceBasis ran = sq.cols() == 0 ? SubspaceBasis::empty(space.dim()) : range_basis(sq, pol);
  const CMatrix l = q - ran.basis * (ran.basis.adjoint() * q);
  const SubspaceBasis wand = l.cols() == 0 ? SubspaceBasis::empty(space.dim()) : range_basis(l, pol);
  const CMatrix kept = without_rows_from(wand.basis, space.offset(max_degree + 1), pol);
  // re-orthonormalize after the restriction
  const CMatrix cols = kept.cols() == 0 ? kept : range_basis(kept, pol).basis;
  std::vector<CMatrix> coeffs;
  for (Index k = 0; k <= space.N; ++k) coeffs.push_back(cols.middleRows(space.offset(k), space.d));
  return AnalyticSymbol(std::move(coeffs));
}

}  // namespace tetra
