#include "tetralab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tetra {

double pencil_sup_norm(const CMatrix& f1, const CMatrix& f2, int grid) {
  double best = 0.0;
  for (int k = 0; k < grid; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / grid);
    best = std::max(best, op_norm(f1.adjoint() + z * f2));
  }
  return best + std::numbers::pi * op_norm(f2) / grid;
}

SymbolPair random_normal_symbols(Rng& rng, Index d) {
  const CMatrix u = random_unitary(rng, d);
  CVector a(d);
  CVector b(d);
  for (Index k = 0; k < d; ++k) {
    cplx x = rng.in_disc(1.0);
    cplx y = rng.in_disc(1.0);
    const double budget = 0.95 * rng.uniform(0.3, 1.0);
    const double s = std::abs(x) + std::abs(y);
    if (s > 0.0) {
      x *= budget / s;
      y *= budget / s;
    }
    a(k) = x;
    b(k) = y;
  }
  return {u * a.asDiagonal() * u.adjoint(), u * b.asDiagonal() * u.adjoint()};
}

SymbolPair random_polynomial_symbols(Rng& rng, Index d) {
  const CMatrix f = random_gaussian(rng, d, d);
  const cplx c = rng.complex_normal();
  const cplx phase = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  const cplx alpha = rng.complex_normal();
  const cplx beta = rng.complex_normal();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix f1 = c * f + alpha * id;
  CMatrix f2 = c * phase * f + beta * id;
  const double s = pencil_sup_norm(f1, f2);
  const double target = 0.95 * rng.uniform(0.5, 1.0);
  if (s > 0.0) {
    f1 *= target / s;
    f2 *= target / s;
  }
  return {f1, f2};
}

std::array<cplx, 3> tetrablock_point(cplx f1, cplx f2, cplx p) {
  return {f1 + std::conj(f2) * p, f2 + std::conj(f1) * p, p};
}

TetrablockTriple random_scalar_triple(Rng& rng, Index dim, const TolerancePolicy& pol) {
  CVector a(dim);
  CVector b(dim);
  CVector p(dim);
  for (Index k = 0; k < dim; ++k) {
    cplx f1 = rng.in_disc(1.0);
    cplx f2 = rng.in_disc(1.0);
    const double s = std::abs(f1) + std::abs(f2);
    const double budget = 0.95 * rng.uniform(0.2, 1.0);
    if (s > 0.0) {
      f1 *= budget / s;
      f2 *= budget / s;
    }
    const cplx pk = std::polar(rng.uniform(0.1, 0.6), rng.uniform(0.0, 2.0 * std::numbers::pi));
    const auto x = tetrablock_point(f1, f2, pk);
    a(k) = x[0];
    b(k) = x[1];
    p(k) = x[2];
  }
  const CMatrix u = random_unitary(rng, dim);
  return validate(u * a.asDiagonal() * u.adjoint(), u * b.asDiagonal() * u.adjoint(),
                  u * p.asDiagonal() * u.adjoint(), pol);
}

TetrablockTriple kernel_compression(const CMatrix& f1, const CMatrix& f2, const std::vector<cplx>& points,
                                    const TolerancePolicy& pol) {
  require_square(f1, "F1");
  require_same_shape(f1, f2, "kernel_compression");
  const Index d = f1.rows();
  const Index m = static_cast<Index>(points.size());
  const Index n = m * d;
  for (const cplx& l : points) {
    if (!(std::abs(l) < 1.0)) throw Error(ErrorKind::InvalidArgument, "kernel points must lie in the open disc");
  }

  for (Index j = 0; j < m; ++j) {
    for (Index l = 0; l < j; ++l) {
      if (std::abs(points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(l)]) < 1e-8) {
        throw Error(ErrorKind::InvalidArgument, "kernel points must be distinct");
      }
    }
  }

  // X k_lambda = lambda k_lambda, written in the orthonormal rational basis of the
  // span (Gram-Schmidt of the kernels in order). X is upper triangular with closed
  // form entries, so nothing ill-conditioned is inverted even for clustered points.
  CMatrix x = CMatrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    const cplx lj = points[static_cast<std::size_t>(j)];
    x(j, j) = lj;
    cplx prod(1.0, 0.0);
    for (Index i = j - 1; i >= 0; --i) {
      const cplx li = points[static_cast<std::size_t>(i)];
      x(i, j) = std::sqrt((1.0 - std::norm(li)) * (1.0 - std::norm(lj))) * prod;
      prod *= -std::conj(li);
    }
  }
  auto kron = [&](const CMatrix& s, const CMatrix& t) {
    CMatrix k(n, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) k.block(i * d, j * d, d, d) = s(i, j) * t;
    return k;
  };
  const CMatrix id_m = CMatrix::Identity(m, m);
  const CMatrix da = kron(id_m, f1.adjoint()) + kron(x, f2);
  const CMatrix db = kron(id_m, f2.adjoint()) + kron(x, f1);
  const CMatrix dp = kron(x, CMatrix::Identity(d, d));
  return validate(da, db, dp, pol);
}

namespace {

std::vector<cplx> separated_points(Rng& rng, Index m, double radius, double separation) {
  std::vector<cplx> pts;
  while (static_cast<Index>(pts.size()) < m) {
    const cplx c = rng.in_disc(radius);
    const bool ok = std::all_of(pts.begin(), pts.end(), [&](cplx q) { return std::abs(q - c) >= separation; });
    if (ok) pts.push_back(c);
  }
  return pts;
}

SymbolPair random_symbols(Rng& rng, Index d) {
  return rng.uniform() < 0.5 ? random_normal_symbols(rng, d) : random_polynomial_symbols(rng, d);
}

Index pick_divisor(Rng& rng, Index dim, Index min_quotient) {
  std::vector<Index> ds;
  for (Index d = 1; d <= dim; ++d) {
    if (dim % d == 0 && dim / d >= min_quotient && d <= 3) ds.push_back(d);
  }
  return ds[static_cast<std::size_t>(rng.below(ds.size()))];
}

}  // namespace

TetrablockTriple random_kernel_compression(Rng& rng, Index dim, Index d, const TolerancePolicy& pol) {
  if (d <= 0 || dim % d != 0) throw Error(ErrorKind::InvalidArgument, "dim must be a multiple of d");
  const SymbolPair s = random_symbols(rng, d);
  const std::vector<cplx> pts = separated_points(rng, dim / d, 0.5, 0.15);
  return kernel_compression(s.F1, s.F2, pts, pol);
}

TetrablockTriple random_symbol_triple(Rng& rng, Index dim, Index d, const TolerancePolicy& pol) {
  if (d <= 0 || dim % d != 0) throw Error(ErrorKind::InvalidArgument, "dim must be a multiple of d");
  const SymbolPair s = random_symbols(rng, d);
  return from_symbols(s.F1, s.F2, dim / d - 1, pol);
}

SubspaceBasis coinvariant_from_eigenspaces(const TetrablockTriple& t, std::uint64_t mask,
                                           const TolerancePolicy& pol) {
  const Index n = t.dim();
  Eigen::ComplexEigenSolver<CMatrix> es(t.P().adjoint());
  const CVector& ev = es.eigenvalues();
  std::vector<cplx> clusters;
  std::vector<Index> label(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    std::size_t c = 0;
    while (c < clusters.size() && std::abs(clusters[c] - ev(i)) > 1e-6) ++c;
    if (c == clusters.size()) clusters.push_back(ev(i));
    label[static_cast<std::size_t>(i)] = static_cast<Index>(c);
  }
  std::vector<Index> cols;
  for (Index i = 0; i < n; ++i) {
    if ((mask >> (label[static_cast<std::size_t>(i)] % 64)) & 1U) cols.push_back(i);
  }
  CMatrix chosen(n, static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) chosen.col(static_cast<Index>(k)) = es.eigenvectors().col(cols[k]);
  return range_basis(chosen, pol);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Symbols: return "symbols";
    case Family::Compressions: return "compressions";
    case Family::Scalars: return "scalars";
  }
  return "unknown";
}

GeneratedInstance generate_instance(std::uint64_t suite_seed, std::uint64_t index, Index min_dim, Index max_dim,
                                    const TolerancePolicy& pol) {
  if (min_dim < 2 || max_dim < min_dim) throw Error(ErrorKind::InvalidArgument, "dimension range");
  Rng rng = Rng(suite_seed).fork(index);
  const std::uint64_t seed = rng.seed();
  const Index dim = min_dim + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_dim - min_dim + 1)));
  switch (index % 3) {
    case 0: {
      const Index d = pick_divisor(rng, dim, 2);
      return {Family::Symbols, dim, seed, random_symbol_triple(rng, dim, d, pol)};
    }
    case 1: {
      const Index d = pick_divisor(rng, dim, 1);
      return {Family::Compressions, dim, seed, random_kernel_compression(rng, dim, d, pol)};
    }
    default:
      return {Family::Scalars, dim, seed, random_scalar_triple(rng, dim, pol)};
  }
}

}  // namespace tetra
