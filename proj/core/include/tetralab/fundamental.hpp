#pragma once

#include "tetralab/matcore.hpp"
#include "tetralab/report.hpp"
#include "tetralab/triples.hpp"

namespace tetra {

/// Solutions of A - B*P = D_P F1 D_P and B - A*P = D_P F2 D_P, stored in the
/// orthonormal basis of the defect space of P.
struct FundamentalPair {
  CMatrix F1;
  CMatrix F2;
  SubspaceBasis space;
  double solve_residual = 0.0;
  NumericalRadius w1;
  NumericalRadius w2;

  Index rank() const noexcept { return F1.rows(); }
  /// Q F Q*, the operators extended by zero to the ambient space.
  CMatrix ambient1() const;
  CMatrix ambient2() const;
};

/// Solves on the defect space: F = Dt^{-1} Q*(RHS)Q Dt^{-1} with Dt = Q* D_P Q.
/// The residual is measured on the full ambient space. Throws SolveFailed when
/// it exceeds eq_tol * (1 + |A| + |B|).
FundamentalPair solve_fundamental(const TetrablockTriple& t, const TolerancePolicy& pol = {});

/// Independent solve path: least squares on the vectorized equation
/// (D_P Q) X (Q* D_P) = RHS through the normal equations. Used as a cross-check.
FundamentalPair solve_fundamental_lsq(const TetrablockTriple& t, const TolerancePolicy& pol = {});

/// Pair with F1, F2 replaced (radii and residual recomputed against the triple).
FundamentalPair with_operators(const TetrablockTriple& t, const FundamentalPair& base, CMatrix f1, CMatrix f2);

/// D_P A = F1 D_P + F2* D_P P and D_P B = F2 D_P + F1* D_P P.
CheckReport verify_tetra_characterization(const TetrablockTriple& t, const FundamentalPair& f,
                                          const TolerancePolicy& pol = {});

/// A*A - B*B = D_P (F1*F1 - F2*F2) D_P, skipped unless [F1, F2] = 0.
CheckReport verify_difference_identity(const TetrablockTriple& t, const FundamentalPair& f,
                                       const TolerancePolicy& pol = {});

/// The six relations tying (F1, F2) to the pair (G1, G2) of the adjoint triple:
///   D_P F1 = (A D_P - D_{P*} G2 P)|, D_P F2 = (B D_P - D_{P*} G1 P)|,
///   P F_i = G_i* P| (i = 1, 2),
///   (F1* D_P D_{P*} - F2 P*)| = D_P D_{P*} G1 - P* G2*, and the 1 <-> 2 swap.
CheckReport verify_cross_relations(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                   const TolerancePolicy& pol = {});

/// With [F1, F2] = 0 and P of full rank: [F1,F1*] = [F2,F2*], [G1,G2] = 0 and
/// [G1,G1*] = [G2,G2*]. For invertible P the roles are swapped as well
/// (entries prefixed "converse/"). Violated hypotheses yield skipped entries.
CheckReport verify_commutator_transfer(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                       const TolerancePolicy& pol = {});

/// w(F1), w(F2) <= 1 up to the radius error bound, and the solve residuals.
CheckReport verify_pair_bounds(const TetrablockTriple& t, const FundamentalPair& f, const TolerancePolicy& pol = {});

/// Full battery: bounds for both pairs, characterization, difference identity,
/// cross relations and commutator transfer.
CheckReport fundamental_battery(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                                const TolerancePolicy& pol = {});

/// True when the numerical rank of P (at rank_tol) is full.
bool has_full_rank(const CMatrix& p, const TolerancePolicy& pol = {});

}  // namespace tetra
