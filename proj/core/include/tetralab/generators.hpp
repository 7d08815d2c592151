#pragma once

#include <array>
#include <string>
#include <vector>

#include "tetralab/random.hpp"
#include "tetralab/triples.hpp"

namespace tetra {

struct SymbolPair {
  CMatrix F1;
  CMatrix F2;
};

/// sup over |z| = 1 of |F1* + F2 z|, as a grid maximum plus its Lipschitz
/// error bound (so the returned value is an upper bound).
double pencil_sup_norm(const CMatrix& f1, const CMatrix& f2, int grid = 1024);

/// F1 = U diag(a) U*, F2 = U diag(b) U* with |a_k| + |b_k| <= 0.95: commuting
/// normal symbols for which the symbol triple is a tetrablock isometry.
SymbolPair random_normal_symbols(Rng& rng, Index d);

/// F1 = c F + alpha, F2 = c e^{i phi} F + beta with a generic (non-normal) F,
/// scaled so the pencil sup norm is <= 0.95. [F1,F2] = 0 and
/// [F1,F1*] = [F2,F2*] hold by construction.
SymbolPair random_polynomial_symbols(Rng& rng, Index d);

/// The point (f1 + conj(f2) p, f2 + conj(f1) p, p) of the closed tetrablock for
/// |f1| + |f2| <= 1, |p| <= 1. Its fundamental operators are f1 and f2.
std::array<cplx, 3> tetrablock_point(cplx f1, cplx f2, cplx p);

/// Diagonal triple of tetrablock points (|p| in [0.1, 0.6]) conjugated by a
/// random unitary: normal, invertible P, commuting fundamental operators.
TetrablockTriple random_scalar_triple(Rng& rng, Index dim, const TolerancePolicy& pol = {});

/// Exact compression of the symbol triple on the full H^2_E to the co-invariant
/// span of kernel vectors k_lambda (x) E, lambda in points. Written in the
/// orthonormal rational basis of that span, so no truncation is involved.
TetrablockTriple kernel_compression(const CMatrix& f1, const CMatrix& f2, const std::vector<cplx>& points,
                                    const TolerancePolicy& pol = {});

/// kernel_compression with random separated points of modulus <= 0.5 and
/// random (normal or polynomial) symbols; dim must be a multiple of d.
TetrablockTriple random_kernel_compression(Rng& rng, Index dim, Index d, const TolerancePolicy& pol = {});

/// Truncated symbol triple of total dimension dim (a multiple of d).
TetrablockTriple random_symbol_triple(Rng& rng, Index dim, Index d, const TolerancePolicy& pol = {});

/// Co-invariant subspace spanned by the eigenspaces of P* for a subset of its
/// distinct eigenvalues (chosen by mask bits). Requires diagonalizable P* whose
/// eigenspaces are joint for A*, B*; the result is checked by compress().
SubspaceBasis coinvariant_from_eigenspaces(const TetrablockTriple& t, std::uint64_t mask,
                                           const TolerancePolicy& pol = {});

enum class Family { Symbols, Compressions, Scalars };
std::string to_string(Family f);

struct GeneratedInstance {
  Family family;
  Index dim;
  std::uint64_t seed;
  TetrablockTriple triple;
};

/// Deterministic instance for (suite seed, index); families rotate with index.
GeneratedInstance generate_instance(std::uint64_t suite_seed, std::uint64_t index, Index min_dim, Index max_dim,
                                    const TolerancePolicy& pol = {});

}  // namespace tetra
