#include "igamg/transfer.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <utility>

namespace igamg {

Prolongation::Prolongation(Index fine_dim, Index coarse_dim, std::vector<Index> row_ptr,
                           std::vector<Index> cols, std::vector<double> vals)
    : fine_dim_(fine_dim), coarse_dim_(coarse_dim), row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)), vals_(std::move(vals)) {
  if (static_cast<Index>(row_ptr_.size()) != fine_dim_ + 1 || cols_.size() != vals_.size())
    throw DimensionError("prolongation: inconsistent CSR arrays");
}

void Prolongation::apply(std::span<const double> x, std::span<double> y, Index k) const {
  if (static_cast<Index>(x.size()) != coarse_dim_ * k ||
      static_cast<Index>(y.size()) != fine_dim_ * k)
    throw DimensionError("prolong: dimension mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (Index r = 0; r < fine_dim_; ++r) {
    double* yr = y.data() + r * k;
    for (Index e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      const double v = vals_[e];
      const double* xc = x.data() + cols_[e] * k;
      for (Index c = 0; c < k; ++c)
        yr[c] += v * xc[c];
    }
  }
}

void Prolongation::apply_transpose(std::span<const double> x, std::span<double> y,
                                   Index k) const {
  if (static_cast<Index>(x.size()) != fine_dim_ * k ||
      static_cast<Index>(y.size()) != coarse_dim_ * k)
    throw DimensionError("restrict: dimension mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (Index r = 0; r < fine_dim_; ++r) {
    const double* xr = x.data() + r * k;
    for (Index e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      const double v = vals_[e];
      double* yc = y.data() + cols_[e] * k;
      for (Index c = 0; c < k; ++c)
        yc[c] += v * xr[c];
    }
  }
}

DenseMatrix Prolongation::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(fine_dim_, coarse_dim_);
  for (Index r = 0; r < fine_dim_; ++r)
    for (Index e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e)
      d(r, cols_[e]) = vals_[e];
  return d;
}

namespace {

using SparseRow = std::vector<std::pair<Index, double>>;

SparseRow combine(double a, const SparseRow& x, double b, const SparseRow& y) {
  std::map<Index, double> acc;
  for (const auto& [c, v] : x)
    acc[c] += a * v;
  for (const auto& [c, v] : y)
    acc[c] += b * v;
  SparseRow out;
  out.reserve(acc.size());
  for (const auto& [c, v] : acc)
    if (v != 0.0)
      out.emplace_back(c, v);
  return out;
}

} // namespace

Prolongation build_prolongation(const SplineSpace& coarse, const SplineSpace& fine) {
  if (coarse.degree() != fine.degree())
    throw std::invalid_argument("prolongation: degree mismatch (" +
                                std::to_string(coarse.degree()) + " vs " +
                                std::to_string(fine.degree()) + ")");
  if (fine.intervals() != 2 * coarse.intervals())
    throw std::invalid_argument("prolongation: fine space is not the dyadic refinement");

  const int p = coarse.degree();
  std::vector<double> knots = coarse.knots();
  // Row i of `rows` expresses the i-th control point of the current knot
  // vector in terms of the coarse coefficients.
  std::vector<SparseRow> rows(static_cast<std::size_t>(coarse.dim()));
  for (Index i = 0; i < coarse.dim(); ++i)
    rows[i] = {{i, 1.0}};

  const double hc = coarse.mesh_size();
  for (Index span = 0; span < coarse.intervals(); ++span) {
    const double x = (static_cast<double>(span) + 0.5) * hc;
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const Index k = static_cast<Index>(it - knots.begin()) - 1;  // knots[k] <= x < knots[k+1]

    std::vector<SparseRow> mixed;
    mixed.reserve(static_cast<std::size_t>(p));
    for (Index i = k - p + 1; i <= k; ++i) {
      const double alpha = (x - knots[i]) / (knots[i + p] - knots[i]);
      mixed.push_back(combine(alpha, rows[i], 1.0 - alpha, rows[i - 1]));
    }
    // Rows 0..k-p are kept, k-p+1..k are replaced by the p mixed rows and the
    // old rows from k on shift up by one.
    rows.erase(rows.begin() + (k - p + 1), rows.begin() + k);
    rows.insert(rows.begin() + (k - p + 1), std::make_move_iterator(mixed.begin()),
                std::make_move_iterator(mixed.end()));
    knots.insert(knots.begin() + k + 1, x);
  }

  std::vector<Index> row_ptr{0}, cols;
  std::vector<double> vals;
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) {
      cols.push_back(c);
      vals.push_back(v);
    }
    row_ptr.push_back(static_cast<Index>(cols.size()));
  }
  return Prolongation(fine.dim(), coarse.dim(), std::move(row_ptr), std::move(cols),
                      std::move(vals));
}

Vector prolong(const Prolongation& p, const Vector& coarse) {
  Vector out(p.fine_dim());
  p.apply(std::span<const double>(coarse.data(), coarse.size()),
          std::span<double>(out.data(), out.size()));
  return out;
}

Vector restrict(const Prolongation& p, const Vector& fine) {
  Vector out(p.coarse_dim());
  p.apply_transpose(std::span<const double>(fine.data(), fine.size()),
                    std::span<double>(out.data(), out.size()));
  return out;
}

Vector prolong_2d(const Prolongation& p, const Vector& coarse) { return kron_apply(p, p, coarse); }

Vector restrict_2d(const Prolongation& p, const Vector& fine) {
  const RestrictionView r(p);
  return kron_apply(r, r, fine);
}

} // namespace igamg
