#include "tetralab/hardy.hpp"

#include <algorithm>

namespace tetra {

CMatrix TruncatedHardy::degree_projector(Index lo, Index hi) const {
  CMatrix p = CMatrix::Zero(dim(), dim());
  lo = std::max<Index>(lo, 0);
  hi = std::min(hi, N);
  for (Index k = lo; k <= hi; ++k) p.block(offset(k), offset(k), d, d).setIdentity();
  return p;
}

CMatrix TruncatedHardy::low_degree_injection(Index hi) const {
  hi = std::min(hi, N);
  const Index cols = hi < 0 ? 0 : d * (hi + 1);
  CMatrix j = CMatrix::Zero(dim(), cols);
  j.topRows(cols).setIdentity();
  return j;
}

AnalyticSymbol::AnalyticSymbol(std::vector<CMatrix> c) : coeffs(std::move(c)) {
  for (const auto& m : coeffs) {
    if (m.rows() != rows() || m.cols() != cols()) {
      throw Error(ErrorKind::ShapeMismatch, "symbol coefficients must share dimensions");
    }
    require_finite(m, "symbol coefficient");
  }
}

CMatrix AnalyticSymbol::evaluate(cplx z) const {
  CMatrix acc = CMatrix::Zero(rows(), cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

AnalyticSymbol AnalyticSymbol::constant(const CMatrix& c) { return AnalyticSymbol({c}); }

AnalyticSymbol AnalyticSymbol::pencil(const CMatrix& c0, const CMatrix& c1) {
  return AnalyticSymbol({c0, c1});
}

AnalyticSymbol multiply(const AnalyticSymbol& a, const AnalyticSymbol& b, Index max_degree) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "symbol product dimensions");
  Index deg = a.degree() + b.degree();
  if (max_degree >= 0) deg = std::min(deg, max_degree);
  std::vector<CMatrix> out(static_cast<std::size_t>(deg + 1), CMatrix::Zero(a.rows(), b.cols()));
  for (Index i = 0; i <= a.degree(); ++i) {
    for (Index j = 0; j <= b.degree() && i + j <= deg; ++j) {
      out[static_cast<std::size_t>(i + j)] += a.coeffs[static_cast<std::size_t>(i)] *
                                              b.coeffs[static_cast<std::size_t>(j)];
    }
  }
  return AnalyticSymbol(std::move(out));
}

CMatrix shift(const TruncatedHardy& space) {
  const Index d = space.d;
  CMatrix s = CMatrix::Zero(space.dim(), space.dim());
  for (Index k = 1; k <= space.N; ++k) s.block(space.offset(k), space.offset(k - 1), d, d).setIdentity();
  return s;
}

CMatrix toeplitz(const AnalyticSymbol& sym, Index N) {
  const Index r = sym.rows();
  const Index c = sym.cols();
  CMatrix t = CMatrix::Zero(r * (N + 1), c * (N + 1));
  for (Index n = 0; n <= N; ++n) {
    for (Index k = 0; k <= sym.degree() && n + k <= N; ++k) {
      t.block((n + k) * r, n * c, r, c) = sym.coeffs[static_cast<std::size_t>(k)];
    }
  }
  return t;
}

double toeplitz_compose_residual(const AnalyticSymbol& s1, const AnalyticSymbol& s2, Index N) {
  const AnalyticSymbol prod = multiply(s1, s2, N);
  return op_norm(toeplitz(s1, N) * toeplitz(s2, N) - toeplitz(prod, N));
}

}  // namespace tetra
