#pragma once

#include <vector>

#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"
#include "tetralab/report.hpp"
#include "tetralab/triples.hpp"

namespace tetra {

/// u: D_P -> D_{P'} and u_star: D_{P*} -> D_{P'*}, in the defect bases.
struct CoincidenceWitness {
  CMatrix u;
  CMatrix u_star;
};

/// u_* Theta_P(z) = Theta_{P'}(z) u at the samples and u_* Theta_n = Theta'_n u
/// for n <= N, plus unitarity of both witnesses. Zero-dimensional defect
/// spaces give an explicit vacuous pass.
CheckReport verify_coincidence(const ContractionData& p, const ContractionData& q, const CoincidenceWitness& wit,
                               const std::vector<cplx>& samples, Index N, const TolerancePolicy& pol = {});

/// Restrictions of an intertwining unitary U (UA = A'U, UB = B'U, UP = P'U)
/// to the defect spaces. Throws NotUnitary or NotIntertwining naming the operator.
CoincidenceWitness induced_defect_unitary(const CMatrix& U, const TetrablockTriple& t, const TetrablockTriple& t2,
                                          const TolerancePolicy& pol = {});

/// |w F1 w* - F1'| and |w F2 w* - F2'|.
CheckReport verify_fundamental_equivalence(const CMatrix& w, const FundamentalPair& f, const FundamentalPair& f2,
                                           const TolerancePolicy& pol = {});

/// Converse construction from witnesses: checks the hypotheses (coincidence
/// and u_* G_i = G_i' u_*), builds U_* = I (x) u_* on the truncated models,
/// and checks U_* H_P = H_P', U_* X_k* = X_k'* U_*, and that V = W'* U_* W is
/// a unitary intertwining the triples.
CheckReport converse_construction(const TetrablockTriple& t, const TetrablockTriple& t2, const CoincidenceWitness& wit,
                                  Index N, const std::vector<cplx>& samples, const TolerancePolicy& pol = {});

/// Forward direction from U, then the converse construction on the witnesses
/// it induces (prefixed "forward/" and "converse/").
CheckReport unitary_invariant_suite(const TetrablockTriple& t, const TetrablockTriple& t2, const CMatrix& U, Index N,
                                    const std::vector<cplx>& samples, const TolerancePolicy& pol = {});

}  // namespace tetra
