#pragma once

#include <vector>

#include "tetralab/matcore.hpp"

namespace tetra {

/// H^2_E(D) truncated at degree N with fiber dimension d. Vectors are stored
/// degree-major: block k (rows k*d .. k*d+d-1) holds the z^k coefficient.
struct TruncatedHardy {
  Index N = 0;
  Index d = 1;

  Index dim() const noexcept { return d * (N + 1); }
  Index offset(Index degree) const noexcept { return degree * d; }

  /// Orthogonal projection onto the coefficient blocks lo..hi (inclusive).
  CMatrix degree_projector(Index lo, Index hi) const;
  /// Columns selecting blocks 0..hi, i.e. an isometry C^{d(hi+1)} -> space.
  CMatrix low_degree_injection(Index hi) const;
};

/// Operator-valued analytic polynomial; coeffs[k] multiplies z^k.
struct AnalyticSymbol {
  std::vector<CMatrix> coeffs;

  AnalyticSymbol() = default;
  explicit AnalyticSymbol(std::vector<CMatrix> c);

  Index rows() const noexcept { return coeffs.empty() ? 0 : coeffs.front().rows(); }
  Index cols() const noexcept { return coeffs.empty() ? 0 : coeffs.front().cols(); }
  Index degree() const noexcept { return static_cast<Index>(coeffs.size()) - 1; }

  CMatrix evaluate(cplx z) const;

  static AnalyticSymbol constant(const CMatrix& c);
  /// c0 + c1 z
  static AnalyticSymbol pencil(const CMatrix& c0, const CMatrix& c1);
};

/// Cauchy product, keeping degrees <= max_degree (all degrees when negative).
AnalyticSymbol multiply(const AnalyticSymbol& a, const AnalyticSymbol& b, Index max_degree = -1);

/// Truncated M_z (x) I_d: identity blocks on the first block subdiagonal.
CMatrix shift(const TruncatedHardy& space);

/// Block lower-triangular Toeplitz matrix of the symbol, truncated at degree N
/// on both sides: block (m, n) = coeffs[m - n].
CMatrix toeplitz(const AnalyticSymbol& sym, Index N);

/// |T(s1) T(s2) - T(s1 s2)| with the product truncated at N. For analytic
/// symbols the truncated lower-triangular product is exact, so this measures
/// rounding only; the value is returned rather than asserted.
double toeplitz_compose_residual(const AnalyticSymbol& s1, const AnalyticSymbol& s2, Index N);

}  // namespace tetra
