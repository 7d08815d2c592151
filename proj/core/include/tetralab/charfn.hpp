#pragma once

#include <optional>
#include <vector>

#include "tetralab/fundamental.hpp"
#include "tetralab/hardy.hpp"
#include "tetralab/random.hpp"
#include "tetralab/report.hpp"
#include "tetralab/triples.hpp"

namespace tetra {

/// Taylor coefficient n of Theta_P in the defect bases (D_P -> D_{P*}):
/// Theta_0 = -P|, Theta_n = D_{P*} P*^{n-1} D_P for n >= 1.
/// Throws RestrictionLeak when P maps D_P outside D_{P*}.
CMatrix theta_coefficient(const ContractionData& c, Index n, const TolerancePolicy& pol = {});
CMatrix theta_coefficient(const CMatrix& p, Index n, const TolerancePolicy& pol = {});

/// Coefficients 0..N as a symbol.
AnalyticSymbol theta_taylor(const ContractionData& c, Index N, const TolerancePolicy& pol = {});

/// -P + z D_{P*} (I - z P*)^{-1} D_P restricted to the defect bases.
/// Throws ResolventSingular when I - z P* is numerically singular.
CMatrix theta_eval(const ContractionData& c, cplx z, const TolerancePolicy& pol = {});
CMatrix theta_eval(const CMatrix& p, cplx z, const TolerancePolicy& pol = {});

/// |I - Theta(w) Theta(z)* - (1 - w conj z) D_{P*}(I - wP*)^{-1}(I - conj(z) P)^{-1} D_{P*}| on D_{P*}.
double kernel_identity_check(const ContractionData& c, cplx z, cplx w, const TolerancePolicy& pol = {});
double kernel_identity_check(const CMatrix& p, cplx z, cplx w, const TolerancePolicy& pol = {});

/// Norms s_n = |P^n| and a bound on the squared remainder beyond the last one.
struct TailProfile {
  std::vector<double> norms;  // norms[n] = |P^n|, norms[0] = 1
  double remainder_sq = 0.0;  // upper bound on sum_{n >= norms.size()} |P^n|^2
  std::optional<Index> nilpotency_order;

  /// (sum_{n > N} |P^n|^2)^{1/2}, an upper bound.
  double tail(Index N) const;
};

/// Powers are summed until |P^n| <= 1e-14 (or P^n = 0 exactly); the rest is
/// bounded through submultiplicativity, |P^{jM+k}| <= |P^M|^j |P^k|.
TailProfile tail_profile(const CMatrix& p, Index max_power = 20000);

double truncation_tail(const CMatrix& p, Index N);

/// Exact N = order - 1 for nilpotent P, else the smallest N with tail <= accuracy.
Index suggest_degree(const CMatrix& p, double accuracy);

struct ModelData {
  ContractionData contraction;
  Index N = 0;
  AnalyticSymbol theta;       // Theta_P, coefficients 0..N
  CMatrix theta_toeplitz;     // truncated M_Theta
  CMatrix W;                  // H -> truncated H^2 (x) D_{P*}
  SubspaceBasis H_P_basis;    // complement of Ran M_Theta
  double tail = 0.0;
  double cross_angle = 0.0;   // largest principal angle between H_P and Ran W

  const CMatrix& P() const noexcept { return contraction.T; }
  Index fiber() const noexcept { return contraction.defect_star_rank(); }
  TruncatedHardy space() const noexcept { return {N, fiber()}; }
};

/// W(h) = sum_n z^n (x) D_{P*} P*^n h up to degree N, Theta up to N, and the
/// model space. Throws NotPure, or ModelMismatch when H_P and Ran W differ by
/// more than 1e-6 + tail.
ModelData build_model(const ContractionData& c, Index N, const TolerancePolicy& pol = {});
ModelData build_model(const CMatrix& p, Index N, const TolerancePolicy& pol = {});

/// W W* + M_Theta M_Theta* = I on the full truncation and on degrees <= N-1,
/// plus W*W = I within the tail.
CheckReport verify_L0(const ModelData& m, const TolerancePolicy& pol = {});

struct ModelOperators {
  CMatrix X1;  // I (x) G1* + M_z (x) G2
  CMatrix X2;  // I (x) G2* + M_z (x) G1
  CMatrix X3;  // M_z (x) I
};

ModelOperators model_operators(const CMatrix& g1, const CMatrix& g2, Index N);

/// W* X W = (A, B, P) and X* W = W (A*, B*, P*) for the model operators of (G1, G2).
CheckReport verify_fm(const TetrablockTriple& t, const ModelData& m, const FundamentalPair& g,
                      const TolerancePolicy& pol = {});

/// (F1* + F2 z) Theta_{P*}(z) = Theta_{P*}(z)(G1 + G2* z) and
/// (F2* + F1 z) Theta_{P*}(z) = Theta_{P*}(z)(G2 + G1* z) at the samples.
CheckReport verify_scor1(const TetrablockTriple& t, const FundamentalPair& f, const FundamentalPair& g,
                         const std::vector<cplx>& samples, const TolerancePolicy& pol = {});

/// Kernel identity at sample pairs (z_k, w_k).
CheckReport verify_kernel_identity(const ContractionData& c, const std::vector<cplx>& zs, const std::vector<cplx>& ws,
                                   const TolerancePolicy& pol = {});

/// Model of a truncated pure isometry. interior: isometry whose columns span
/// the vectors on which P*P = I must hold (whole space when absent);
/// fiber_interior: columns of D_{P*} (in its basis) on which the symbol
/// relations are asserted (all when absent). Throws NotIsometryLike when the
/// interior hypothesis fails or is empty.
CheckReport pure_isometry_model(const TetrablockTriple& t, Index N, const std::optional<CMatrix>& interior = {},
                                const std::optional<CMatrix>& fiber_interior = {}, const TolerancePolicy& pol = {});

/// Points of the disc with modulus <= radius.
std::vector<cplx> random_disc_points(Rng& rng, std::size_t count, double radius = 0.9);

}  // namespace tetra
