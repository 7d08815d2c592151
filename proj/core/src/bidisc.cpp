#include "tetralab/bidisc.hpp"

#include <algorithm>
#include <sstream>

#include "tetralab/blh.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"
#include "tetralab/random.hpp"

namespace tetra {

namespace {

void require_degree(Index N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "bidisc truncation needs N >= 1");
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string residual_note(double r) {
  std::ostringstream os;
  os.precision(6);
  os << "boundary residual " << r;
  return os.str();
}

}  // namespace

BidiscOperators bidisc_operators(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  const Index n = s.dim();
  BidiscOperators ops{CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  for (Index i = 0; i <= N; ++i) {
    for (Index j = 0; j <= N; ++j) {
      const Index k = s.index(i, j);
      if (i + 1 <= N) ops.A(s.index(i + 1, j), k) = 1.0;
      if (j + 1 <= N) ops.B(s.index(i, j + 1), k) = 1.0;
      if (i + 1 <= N && j + 1 <= N) ops.P(s.index(i + 1, j + 1), k) = 1.0;
    }
  }
  return ops;
}

TetrablockTriple build(Index N, const TolerancePolicy& pol) {
  const BidiscOperators ops = bidisc_operators(N);
  return validate(ops.A, ops.B, ops.P, pol);
}

CMatrix border_embedding(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  CMatrix e = CMatrix::Zero(s.dim(), s.border_size());
  for (Index b = 0; b < s.border_size(); ++b) {
    const auto [i, j] = s.border_coords(b);
    e(s.index(i, j), b) = 1.0;
  }
  return e;
}

CMatrix defect_projection(Index N) {
  const CMatrix e = border_embedding(N);
  return e * e.adjoint();
}

std::pair<CMatrix, CMatrix> fundamental_ops(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  const Index m = s.border_size();
  CMatrix g1 = CMatrix::Zero(m, m);
  CMatrix g2 = CMatrix::Zero(m, m);
  for (Index p = 1; p <= N; ++p) g1(s.border_index(p - 1, 0), s.border_index(p, 0)) = 1.0;
  for (Index k = 1; k <= N; ++k) g2(s.border_index(0, k - 1), s.border_index(0, k)) = 1.0;
  return {g1, g2};
}

CMatrix unitary_U(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  const Index m = s.border_size();
  CMatrix u = CMatrix::Zero((N + 1) * m, s.dim());
  for (Index i = 0; i <= N; ++i) {
    for (Index j = 0; j <= N; ++j) {
      const Index n = std::min(i, j);
      u(n * m + s.border_index(i - n, j - n), s.index(i, j)) = 1.0;
    }
  }
  return u;
}

CMatrix unitary_U_series(Index N) {
  const BidiscOperators ops = bidisc_operators(N);
  const CMatrix e = border_embedding(N);
  const Index m = e.cols();
  const CMatrix head = e.adjoint() * defect_projection(N);
  const CMatrix ps = ops.P.adjoint();
  CMatrix u((N + 1) * m, ops.P.cols());
  CMatrix row = head;
  for (Index n = 0; n <= N; ++n) {
    u.middleRows(n * m, m) = row;
    row = row * ps;
  }
  return u;
}

CMatrix interior_embedding(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  CMatrix j = CMatrix::Zero(s.dim(), N * N);
  Index c = 0;
  for (Index a = 0; a < N; ++a) {
    for (Index b = 0; b < N; ++b) j(s.index(a, b), c++) = 1.0;
  }
  return j;
}

CMatrix border_interior_embedding(Index N) {
  require_degree(N);
  const BidiscSpace s{N};
  CMatrix e = CMatrix::Zero(s.border_size(), 2 * N - 1);
  Index c = 0;
  for (Index b = 0; b < s.border_size(); ++b) {
    const auto [i, j] = s.border_coords(b);
    if (i <= N - 1 && j <= N - 1) e(b, c++) = 1.0;
  }
  return e;
}

CheckReport verify_example(Index N, const TolerancePolicy& pol) {
  require_degree(N);
  CheckReport rep("bidisc example", std::string(kNecessaryConditionsHeader));
  const BidiscSpace s{N};
  const bool has_interior = N >= 2;
  const BidiscOperators ops = bidisc_operators(N);
  const TetrablockTriple t = validate(ops.A, ops.B, ops.P, pol);
  const TetrablockTriple ta = t.adjoint();
  const CMatrix e = border_embedding(N);
  const CMatrix proj = defect_projection(N);
  const auto [g1d, g2d] = fundamental_ops(N);
  const CMatrix j = interior_embedding(N);
  const CMatrix jj = j * j.adjoint();
  const CMatrix eint = border_interior_embedding(N);
  const double tol = pol.eq_tol * 2.0;

  auto interior_entry = [&](const std::string& name, const CMatrix& resid, bool columns_only) {
    const CMatrix inner = columns_only ? CMatrix(resid * j) : CMatrix(j.adjoint() * resid * j);
    const CMatrix outer = columns_only ? CMatrix(resid - resid * jj) : CMatrix(resid - jj * resid * jj);
    if (has_interior) {
      rep.add("interior/" + name, op_norm(inner), tol, residual_note(op_norm(outer)));
    } else {
      rep.skip("interior/" + name, "N = 1: no interior indices");
    }
    rep.add_flag("boundary/" + name, true, residual_note(op_norm(outer)));
  };

  // structure
  const PurityCertificate cert = is_pure(ops.P, pol);
  rep.add_flag("P nilpotent of order N+1", cert.nilpotency_order && *cert.nilpotency_order == N + 1);
  rep.add("P P* P = P", op_norm(ops.P * ops.P.adjoint() * ops.P - ops.P), tol);
  rep.add("D_{P*} = border projection", op_norm(t.defect_P_star().D - proj), tol);
  rep.add_flag("rank D_{P*} = 2N+1", t.contraction().defect_star_rank() == s.border_size());

  // fundamental equations with the explicit pair
  const CMatrix g1a = e * g1d * e.adjoint();
  const CMatrix g2a = e * g2d * e.adjoint();
  interior_entry("A* - B P* = D_{P*} G1 D_{P*}", ops.A.adjoint() - ops.B * ops.P.adjoint() - proj * g1a * proj, false);
  interior_entry("B* - A P* = D_{P*} G2 D_{P*}", ops.B.adjoint() - ops.A * ops.P.adjoint() - proj * g2a * proj, false);

  // solver against the explicit pattern
  const FundamentalPair g = solve_fundamental(ta, pol);
  const FundamentalPair f = solve_fundamental(t, pol);
  const CMatrix v = g.space.basis.adjoint() * e;  // canonical border -> solver basis
  const CMatrix c1 = v.adjoint() * g.F1 * v;
  const CMatrix c2 = v.adjoint() * g.F2 * v;
  if (has_interior) {
    rep.add("interior/solved G1 = pattern (entrywise)", max_abs(eint.adjoint() * (c1 - g1d) * eint), tol);
    rep.add("interior/solved G2 = pattern (entrywise)", max_abs(eint.adjoint() * (c2 - g2d) * eint), tol);
  } else {
    rep.skip("interior/solved G1 = pattern (entrywise)", "N = 1: no interior indices");
    rep.skip("interior/solved G2 = pattern (entrywise)", "N = 1: no interior indices");
  }
  rep.add_flag("boundary/solved G = pattern", true,
               residual_note(std::max(max_abs(c1 - g1d), max_abs(c2 - g2d))));
  rep.add("defect basis change is unitary", unitarity_residual(v), tol);

  // the regrouping map
  const CMatrix u = unitary_U(N);
  rep.add("U*U = I", isometry_residual(u), tol);
  rep.add("U explicit = U series", max_abs(u - unitary_U_series(N)), tol);
  const ModelOperators x = model_operators(g1d, g2d, N);
  const CMatrix* xs[3] = {&x.X1, &x.X2, &x.X3};
  const CMatrix* ts[3] = {&ops.A, &ops.B, &ops.P};
  const char* names[3] = {"A", "B", "P"};
  for (int k = 0; k < 3; ++k) {
    const std::string idx = std::to_string(k + 1);
    interior_entry("U* X" + idx + " U = " + names[k], u.adjoint() * *xs[k] * u - *ts[k], false);
    interior_entry("X" + idx + " U = U " + names[k], *xs[k] * u - u * *ts[k], true);
  }

  // boundary artifact of the truncated commutators
  CMatrix artifact = CMatrix::Zero(s.border_size(), s.border_size());
  artifact(s.border_index(0, N), s.border_index(0, N)) = 1.0;
  artifact(s.border_index(N, 0), s.border_index(N, 0)) = -1.0;
  rep.add("boundary/[G1,G1*] - [G2,G2*] = E_(0,N) - E_(N,0)",
          op_norm(commutator(c1, c1.adjoint()) - commutator(c2, c2.adjoint()) - artifact), tol);

  // the general pipeline on the truncated triple
  rep.merge(fundamental_battery(t, f, g, pol), "battery");
  const ModelData m = build_model(t.contraction(), N, pol);
  rep.merge(verify_L0(m, pol), "model");
  rep.merge(verify_fm(t, m, g, pol), "fm");
  rep.add("W = (I (x) basis change) U", op_norm(m.W - kron_identity(N + 1, v) * u), tol);
  Rng rng(0x5eedULL + static_cast<std::uint64_t>(N));
  const std::vector<cplx> zs = random_disc_points(rng, 20);
  const std::vector<cplx> ws = random_disc_points(rng, 20);
  rep.merge(verify_kernel_identity(t.contraction(), zs, ws, pol), "kernel");
  rep.merge(verify_scor1(t, f, g, zs, pol), "intertwining");
  if (has_interior) {
    rep.merge(pure_isometry_model(t, N, j, CMatrix(v * eint), pol), "isometry");
  } else {
    rep.skip("isometry", "N = 1: no interior indices");
  }

  // Beurling-Lax-Halmos with Theta_{P*}
  try {
    const ContractionData cs = t.contraction().adjoint();
    const AnalyticSymbol theta = theta_taylor(cs, N + 1, pol);
    const Index nb = N + 5;
    const SymbolExtraction ex = extract_symbols(theta, f.F1, f.F2, nb, pol);
    rep.merge(ex.report, "blh");
    rep.add("blh/G1 = solved G1", op_norm(ex.G1 - g.F1), tol);
    rep.add("blh/G2 = solved G2", op_norm(ex.G2 - g.F2), tol);
    rep.merge(check_invariance(InvariantSubspace::from_symbol(theta, nb, pol), f.F1, f.F2, pol), "blh/invariance");
    rep.merge(verify_isometry_propagation(f.F1, f.F2, ex.G1, ex.G2, nb, pol), "blh/propagation");
  } catch (const Error& err) {
    rep.add_flag("blh", false, err.what());
  }
  return rep;
}

CheckReport truncation_consistency(Index N, const TolerancePolicy& pol) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "truncation consistency needs N >= 2");
  CheckReport rep("bidisc truncation consistency");
  const BidiscOperators hi = bidisc_operators(N);
  const BidiscOperators lo = bidisc_operators(N - 1);
  const CMatrix j = interior_embedding(N);
  const CMatrix eint = border_interior_embedding(N);
  rep.add("A", max_abs(j.adjoint() * hi.A * j - lo.A), 0.0);
  rep.add("B", max_abs(j.adjoint() * hi.B * j - lo.B), 0.0);
  rep.add("P", max_abs(j.adjoint() * hi.P * j - lo.P), 0.0);
  rep.add("D_{P*}", max_abs(j.adjoint() * defect_projection(N) * j - defect_projection(N - 1)), 0.0);
  const auto [g1h, g2h] = fundamental_ops(N);
  const auto [g1l, g2l] = fundamental_ops(N - 1);
  rep.add("G1", max_abs(eint.adjoint() * g1h * eint - g1l), 0.0);
  rep.add("G2", max_abs(eint.adjoint() * g2h * eint - g2l), 0.0);
  // degrees <= N-1 with the interior border fiber
  const CMatrix rows = kron_identity(N, eint);
  CMatrix s2 = CMatrix::Zero((N + 1) * eint.rows(), rows.cols());
  s2.topRows(rows.rows()) = rows;
  rep.add("U", max_abs(s2.adjoint() * unitary_U(N) * j - unitary_U(N - 1)), 0.0);

  auto solved = [&](Index deg) {
    const TetrablockTriple t = build(deg, pol);
    const FundamentalPair g = solve_fundamental(t.adjoint(), pol);
    const CMatrix v = g.space.basis.adjoint() * border_embedding(deg);
    return std::pair<CMatrix, CMatrix>{v.adjoint() * g.F1 * v, v.adjoint() * g.F2 * v};
  };
  const auto sh = solved(N);
  const auto sl = solved(N - 1);
  rep.add("solved G1", max_abs(eint.adjoint() * sh.first * eint - sl.first), pol.eq_tol);
  rep.add("solved G2", max_abs(eint.adjoint() * sh.second * eint - sl.second), pol.eq_tol);
  return rep;
}

}  // namespace tetra
