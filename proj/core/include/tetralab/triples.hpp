#pragma once

#include <cstdint>
#include <optional>

#include "tetralab/matcore.hpp"
#include "tetralab/report.hpp"

namespace tetra {

/// A contraction together with both defect operators and their ranges.
struct ContractionData {
  CMatrix T;
  Defect def;       // D_T on Ran D_T
  Defect def_star;  // D_{T*} on Ran D_{T*}

  static ContractionData analyze(const CMatrix& t, const TolerancePolicy& pol = {});
  /// Data for T*, reusing the cached defects (bases are swapped, not recomputed).
  ContractionData adjoint() const;

  Index dim() const noexcept { return T.rows(); }
  Index defect_rank() const noexcept { return def.space.rank(); }
  Index defect_star_rank() const noexcept { return def_star.space.rank(); }
};

/// Commuting triple (A, B, P) that passed the necessary-condition checks.
class TetrablockTriple {
 public:
  const CMatrix& A() const noexcept { return a_; }
  const CMatrix& B() const noexcept { return b_; }
  const CMatrix& P() const noexcept { return contraction_.T; }
  const ContractionData& contraction() const noexcept { return contraction_; }
  const Defect& defect_P() const noexcept { return contraction_.def; }
  const Defect& defect_P_star() const noexcept { return contraction_.def_star; }
  Index dim() const noexcept { return a_.rows(); }

  /// (A*, B*, P*) with the defect data swapped.
  TetrablockTriple adjoint() const;

 private:
  friend TetrablockTriple validate(const CMatrix&, const CMatrix&, const CMatrix&, const TolerancePolicy&);
  TetrablockTriple(CMatrix a, CMatrix b, ContractionData c)
      : a_(std::move(a)), b_(std::move(b)), contraction_(std::move(c)) {}

  CMatrix a_;
  CMatrix b_;
  ContractionData contraction_;
};

/// Checks squareness, pairwise commutation and |A|, |B|, |P| <= 1 (the
/// coordinates of the closed tetrablock have modulus at most one).
/// Throws NonCommuting / NotContractive as ResidualError naming the operator.
TetrablockTriple validate(const CMatrix& a, const CMatrix& b, const CMatrix& p,
                          const TolerancePolicy& pol = {});

/// Residual form of the checks validate() enforces.
CheckReport necessary_conditions(const CMatrix& a, const CMatrix& b, const CMatrix& p,
                                 const TolerancePolicy& pol = {});

struct PurityCertificate {
  bool pure = false;
  double spectral_radius = 0.0;
  std::optional<std::uint64_t> power;              // some n with |P^n| <= 1e-12
  std::optional<Index> nilpotency_order;           // smallest k with P^k == 0 exactly
};

/// Finite-dimensional purity: spectral radius below 1 - rank_tol. Exact
/// nilpotency is detected first and certified with the order.
PurityCertificate is_pure(const CMatrix& p, const TolerancePolicy& pol = {});

/// (M_{F1*+F2 z}, M_{F2*+F1 z}, M_z) truncated at degree N on H^2_E, E = C^d.
TetrablockTriple from_symbols(const CMatrix& f1, const CMatrix& f2, Index N,
                              const TolerancePolicy& pol = {});

/// Compression (Q*AQ, Q*BQ, Q*PQ) to a subspace co-invariant for A, B, P.
TetrablockTriple compress(const TetrablockTriple& t, const SubspaceBasis& subspace,
                          const TolerancePolicy& pol = {});

/// (U A U*, U B U*, U P U*) for a unitary U.
TetrablockTriple conjugate(const TetrablockTriple& t, const CMatrix& u, const TolerancePolicy& pol = {});

}  // namespace tetra
