#include "igamg/spline_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace igamg {

SplineSpace::SplineSpace(int degree, int level, int coarse_intervals)
    : degree_(degree), level_(level) {
  if (degree < 1)
    throw std::invalid_argument("spline degree must be at least 1, got " + std::to_string(degree));
  if (coarse_intervals < 1)
    throw std::invalid_argument("coarse interval count must be at least 1");
  if (level < 0 || level > 40)
    throw std::invalid_argument("refinement level out of range: " + std::to_string(level));

  intervals_ = static_cast<Index>(coarse_intervals) << level;
  const double h = mesh_size();
  knots_.reserve(static_cast<std::size_t>(intervals_ + 2 * degree + 1));
  knots_.insert(knots_.end(), degree + 1, 0.0);
  for (Index i = 1; i < intervals_; ++i)
    knots_.push_back(static_cast<double>(i) * h);
  knots_.insert(knots_.end(), degree + 1, 1.0);
}

Index SplineSpace::span_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("evaluation point outside [0,1]: " + std::to_string(x));
  // Uniform knots: locate by division, then fix up rounding near knots.
  Index span = static_cast<Index>(std::floor(x * static_cast<double>(intervals_)));
  span = std::clamp<Index>(span, 0, intervals_ - 1);
  while (span + 1 < intervals_ && x >= span_begin(span + 1))
    ++span;
  while (span > 0 && x < span_begin(span))
    --span;
  return span;
}

SplineSpace build_space(int degree, int level, int coarse_intervals) {
  return SplineSpace(degree, level, coarse_intervals);
}

namespace {

// Cox-de Boor triangle with derivatives (The NURBS Book, A2.3). `span` is the
// knot-vector index of the active interval, i.e. knot span + p.
DenseMatrix basis_derivative_table(const std::vector<double>& U, int p, Index span, double x,
                                   int n) {
  std::vector<double> left(p + 1), right(p + 1);
  DenseMatrix ndu(p + 1, p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  DenseMatrix ders = DenseMatrix::Zero(n + 1, p + 1);
  for (int j = 0; j <= p; ++j)
    ders(0, j) = ndu(j, p);

  DenseMatrix a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= n; ++k) {
    ders.row(k) *= factor;
    factor *= (p - k);
  }
  return ders;
}

} // namespace

BasisValues eval_basis(const SplineSpace& space, double x) {
  const auto table = basis_derivative_table(space.knots(), space.degree(),
                                            space.span_of(x) + space.degree(), x, 0);
  BasisValues out;
  out.first_index = space.span_of(x);
  out.values.assign(table.data(), table.data() + table.size());
  return out;
}

BasisDerivatives eval_basis_derivatives(const SplineSpace& space, double x, int max_order) {
  if (max_order < 0 || max_order > space.degree())
    throw std::invalid_argument("derivative order must lie in [0, p], got " +
                                std::to_string(max_order));
  const Index span = space.span_of(x);
  return {span, basis_derivative_table(space.knots(), space.degree(), span + space.degree(), x,
                                       max_order)};
}

IndexSplit index_split(const SplineSpace& space) {
  const Index m = space.dim();
  const int p = space.degree();
  if (m <= 2 * p)
    throw std::invalid_argument("interior space empty (m = " + std::to_string(m) +
                                " <= 2p = " + std::to_string(2 * p) +
                                ") - refine or lower degree");
  IndexSplit split;
  for (Index i = 0; i < p; ++i)
    split.boundary.push_back(i);
  for (Index i = m - p; i < m; ++i)
    split.boundary.push_back(i);
  for (Index i = p; i < m - p; ++i)
    split.interior.push_back(i);
  return split;
}

} // namespace igamg
