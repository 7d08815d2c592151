#pragma once

#include <utility>

#include "tetralab/report.hpp"
#include "tetralab/triples.hpp"

namespace tetra {

/// Coefficients a_ij of z1^i z2^j with 0 <= i, j <= N, flattened as i*(N+1)+j.
struct BidiscSpace {
  Index N = 1;
  Index dim() const noexcept { return (N + 1) * (N + 1); }
  Index index(Index i, Index j) const noexcept { return i * (N + 1) + j; }
  std::pair<Index, Index> coords(Index k) const noexcept { return {k / (N + 1), k % (N + 1)}; }
  /// Border points (i = 0 or j = 0) in canonical order (0,0),(1,0)..(N,0),(0,1)..(0,N).
  Index border_size() const noexcept { return 2 * N + 1; }
  Index border_index(Index i, Index j) const noexcept { return j == 0 ? i : N + j; }
  std::pair<Index, Index> border_coords(Index b) const noexcept {
    return b <= N ? std::pair<Index, Index>{b, 0} : std::pair<Index, Index>{0, b - N};
  }
};

struct BidiscOperators {
  CMatrix A;  // a_ij -> a_(i-1)j, i.e. e_ij -> e_(i+1)j
  CMatrix B;  // e_ij -> e_i(j+1)
  CMatrix P;  // e_ij -> e_(i+1)(j+1)
};

/// 0/1 matrices of the truncated shifts (terms past degree N dropped).
BidiscOperators bidisc_operators(Index N);

/// The validated triple.
TetrablockTriple build(Index N, const TolerancePolicy& pol = {});

/// Projection onto the border {i = 0 or j = 0}; equals D_{P*} of the truncation.
CMatrix defect_projection(Index N);

/// Columns e_(i,j) of the border points in canonical order: dim x (2N+1).
CMatrix border_embedding(Index N);

/// G1, G2 on the border in canonical coordinates: G1 e_(p,0) = e_(p-1,0),
/// G2 e_(0,k) = e_(0,k-1), all other border vectors mapped to zero.
std::pair<CMatrix, CMatrix> fundamental_ops(Index N);

/// e_ij -> z^n (x) e_(i-n, j-n) with n = min(i, j); rows are degree-major
/// blocks of canonical border coordinates, degrees 0..N.
CMatrix unitary_U(Index N);

/// The same map from the series sum_n z^n (x) D_{P*} P*^n.
CMatrix unitary_U_series(Index N);

/// Columns e_(i,j) with i, j <= N-1.
CMatrix interior_embedding(Index N);

/// Columns of the border coordinates with index <= N-1.
CMatrix border_interior_embedding(Index N);

/// The full battery for the truncated example. Identities are asserted on
/// interior indices; boundary residuals are reported separately. N = 1 has no
/// interior and yields a boundary-only report.
CheckReport verify_example(Index N, const TolerancePolicy& pol = {});

/// Results at degree N restricted to indices <= N-1 against the results at N-1.
CheckReport truncation_consistency(Index N, const TolerancePolicy& pol = {});

}  // namespace tetra
