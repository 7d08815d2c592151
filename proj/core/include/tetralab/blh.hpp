#pragma once

#include <optional>

#include "tetralab/hardy.hpp"
#include "tetralab/report.hpp"

namespace tetra {

/// Subspace of the truncated H^2_E with an optional inner representation.
struct InvariantSubspace {
  TruncatedHardy space;
  SubspaceBasis basis;
  std::optional<AnalyticSymbol> theta;

  /// Ran of the truncated M_Theta.
  static InvariantSubspace from_symbol(const AnalyticSymbol& theta, Index N, const TolerancePolicy& pol = {});
};

/// |(I - Q) X Q_int| for X in {M_{F1*+F2z}, M_{F2*+F1z}, M_z}, Q_int spanning
/// the vectors of M with no mass in the top degree.
CheckReport check_invariance(const InvariantSubspace& m, const CMatrix& f1, const CMatrix& f2,
                             const TolerancePolicy& pol = {});

struct SymbolExtraction {
  CMatrix G1;
  CMatrix G2;
  CMatrix Phi;  // M_Theta* M_{F1*+F2z} M_Theta, truncated
  CMatrix Psi;  // M_Theta* M_{F2*+F1z} M_Theta, truncated
  Index interior = 0;  // largest degree k with M_Theta isometric on degrees <= k
  CheckReport report;
};

/// Phi(z) = G1 + G2* z and Psi(z) = G2 + G1* z read off the compressed
/// pencils. Only blocks (m, n) with m, n <= interior - 1 are asserted; the
/// top degrees are unconstrained by truncation. Throws NotInner when M_Theta
/// is not isometric on degree 0 (or the interior is empty) and NotDegreeOne
/// when Phi or Psi has non-analytic or degree >= 2 blocks.
SymbolExtraction extract_symbols(const AnalyticSymbol& theta, const CMatrix& f1, const CMatrix& f2, Index N,
                                 const TolerancePolicy& pol = {});

/// sup over |z| = 1 of |F1* + F2 z| (grid maximum with refinement, a lower
/// bound) and its Lipschitz error bound.
NumericalRadius pencil_norm(const CMatrix& f1, const CMatrix& f2, int grid = 512, int refine_iters = 48);

/// [F1,F2] = 0, [F1,F1*] = [F2,F2*] and |F1* + F2 z| <= 1 on the circle: the
/// conditions under which the symbol triple of (F1, F2) is a tetrablock isometry.
CheckReport symbol_battery(const CMatrix& f1, const CMatrix& f2, const TolerancePolicy& pol = {});

/// If the symbol triple of (F1, F2) passes symbol_battery, the triple
/// (M_{G1+G2*z}, M_{G2+G1*z}, M_z), i.e. the symbol triple of (G1*, G2*),
/// must pass it too. A failing source makes the implication vacuous (reported).
/// N sets the truncation of the cross-check on the truncated target triple.
CheckReport verify_isometry_propagation(const CMatrix& f1, const CMatrix& f2, const CMatrix& g1, const CMatrix& g2,
                                        Index N, const TolerancePolicy& pol = {});

/// Truncated wandering-subspace construction: an orthonormal basis of
/// M minus S_N M, restricted to vectors supported on degrees <= max_degree,
/// read as the coefficient columns of Theta. max_degree < 0 means N - 1.
AnalyticSymbol wandering_symbol(const TruncatedHardy& space, const SubspaceBasis& m, Index max_degree = -1,
                                const TolerancePolicy& pol = {});

}  // namespace tetra
