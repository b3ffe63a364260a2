#include "igamg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace igamg {

// ---------------------------------------------------------------------------
// BandedSymMatrix

BandedSymMatrix::BandedSymMatrix(Index order, Index bandwidth)
    : order_(order), bandwidth_(bandwidth),
      band_(static_cast<std::size_t>(order * (bandwidth + 1)), 0.0) {
  if (order < 1 || bandwidth < 0)
    throw DimensionError("banded matrix needs order >= 1 and bandwidth >= 0");
}

double BandedSymMatrix::operator()(Index i, Index j) const {
  if (i < j)
    std::swap(i, j);
  if (i - j > bandwidth_)
    return 0.0;
  return at(i, j);
}

void BandedSymMatrix::add(Index i, Index j, double v) {
  if (i < j)
    std::swap(i, j);
  if (i - j > bandwidth_ || i >= order_ || j < 0)
    throw DimensionError("banded add outside band: (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
  at(i, j) += v;
}

void BandedSymMatrix::apply(std::span<const double> x, std::span<double> y, Index k) const {
  if (static_cast<Index>(x.size()) != order_ * k || static_cast<Index>(y.size()) != order_ * k)
    throw DimensionError("banded apply: dimension mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (Index i = 0; i < order_; ++i) {
    double* yi = y.data() + i * k;
    const double* xi = x.data() + i * k;
    const double dii = at(i, i);
    for (Index c = 0; c < k; ++c)
      yi[c] += dii * xi[c];
    for (Index j = std::max<Index>(0, i - bandwidth_); j < i; ++j) {
      const double a = at(i, j);
      double* yj = y.data() + j * k;
      const double* xj = x.data() + j * k;
      for (Index c = 0; c < k; ++c) {
        yi[c] += a * xj[c];
        yj[c] += a * xi[c];
      }
    }
  }
}

Vector BandedSymMatrix::operator*(const Vector& x) const {
  Vector y(order_);
  apply(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  return y;
}

BandedSymMatrix BandedSymMatrix::principal_block(Index begin, Index end) const {
  if (begin < 0 || end > order_ || end <= begin)
    throw DimensionError("principal_block: invalid range");
  BandedSymMatrix out(end - begin, bandwidth_);
  for (Index i = begin; i < end; ++i)
    for (Index j = std::max(begin, i - bandwidth_); j <= i; ++j)
      out.at(i - begin, j - begin) = at(i, j);
  return out;
}

DenseMatrix BandedSymMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(order_, order_);
  for (Index i = 0; i < order_; ++i)
    for (Index j = std::max<Index>(0, i - bandwidth_); j <= i; ++j) {
      d(i, j) = at(i, j);
      d(j, i) = at(i, j);
    }
  return d;
}

BandedSymMatrix& BandedSymMatrix::operator*=(double s) {
  for (auto& v : band_)
    v *= s;
  return *this;
}

BandedSymMatrix operator+(const BandedSymMatrix& a, const BandedSymMatrix& b) {
  if (a.order_ != b.order_)
    throw DimensionError("banded sum: order mismatch");
  BandedSymMatrix out(a.order_, std::max(a.bandwidth_, b.bandwidth_));
  for (Index i = 0; i < a.order_; ++i)
    for (Index j = std::max<Index>(0, i - out.bandwidth_); j <= i; ++j)
      out.at(i, j) = a(i, j) + b(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// BandedCholesky

BandedCholesky::BandedCholesky(const BandedSymMatrix& a, const std::string& name) : factor_(a) {
  const Index m = factor_.order();
  const Index b = factor_.bandwidth();
  auto& f = factor_;
  for (Index j = 0; j < m; ++j) {
    double s = f.at(j, j);
    for (Index k = std::max<Index>(0, j - b); k < j; ++k)
      s -= f.at(j, k) * f.at(j, k);
    if (!(s > 0.0))
      throw NotSpdError(name, j);
    const double ljj = std::sqrt(s);
    f.at(j, j) = ljj;
    for (Index i = j + 1; i <= std::min(m - 1, j + b); ++i) {
      double t = f.at(i, j);
      for (Index k = std::max<Index>(0, i - b); k < j; ++k)
        t -= f.at(i, k) * f.at(j, k);
      f.at(i, j) = t / ljj;
    }
  }
}

void BandedCholesky::solve_in_place(std::span<double> x, Index k) const {
  const Index m = factor_.order();
  const Index b = factor_.bandwidth();
  const auto& f = factor_;
  if (static_cast<Index>(x.size()) != m * k)
    throw DimensionError("banded solve: dimension mismatch");
  double* d = x.data();
  for (Index i = 0; i < m; ++i) {
    double* xi = d + i * k;
    for (Index j = std::max<Index>(0, i - b); j < i; ++j) {
      const double l = f.at(i, j);
      const double* xj = d + j * k;
      for (Index c = 0; c < k; ++c)
        xi[c] -= l * xj[c];
    }
    const double inv = 1.0 / f.at(i, i);
    for (Index c = 0; c < k; ++c)
      xi[c] *= inv;
  }
  for (Index i = m - 1; i >= 0; --i) {
    double* xi = d + i * k;
    for (Index j = i + 1; j <= std::min(m - 1, i + b); ++j) {
      const double l = f.at(j, i);
      const double* xj = d + j * k;
      for (Index c = 0; c < k; ++c)
        xi[c] -= l * xj[c];
    }
    const double inv = 1.0 / f.at(i, i);
    for (Index c = 0; c < k; ++c)
      xi[c] *= inv;
  }
}

Vector BandedCholesky::solve(const Vector& b) const {
  Vector x = b;
  solve_in_place(std::span<double>(x.data(), x.size()));
  return x;
}

DenseMatrix BandedCholesky::solve(const DenseMatrix& b) const {
  RowMajorMatrix x = b;
  solve_in_place(std::span<double>(x.data(), x.size()), x.cols());
  return x;
}

void BandedCholesky::apply(std::span<const double> x, std::span<double> y, Index k) const {
  if (x.size() != y.size())
    throw DimensionError("banded solve: dimension mismatch");
  std::copy(x.begin(), x.end(), y.begin());
  solve_in_place(y, k);
}

DenseMatrix BandedCholesky::lower() const {
  DenseMatrix l = factor_.to_dense();
  return l.triangularView<Eigen::Lower>();
}

// ---------------------------------------------------------------------------
// DenseCholesky

DenseCholesky::DenseCholesky(const DenseMatrix& a, const std::string& name) {
  if (a.rows() != a.cols())
    throw DimensionError(name + " must be square for Cholesky");
  const Index n = a.rows();
  lower_ = DenseMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double s = a(j, j) - lower_.row(j).head(j).squaredNorm();
    if (!(s > 0.0))
      throw NotSpdError(name, j);
    const double ljj = std::sqrt(s);
    lower_(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i)
      lower_(i, j) = (a(i, j) - lower_.row(i).head(j).dot(lower_.row(j).head(j))) / ljj;
  }
}

Vector DenseCholesky::solve(const Vector& b) const {
  if (b.size() != order())
    throw DimensionError("dense solve: dimension mismatch");
  const auto l = lower_.triangularView<Eigen::Lower>();
  return l.transpose().solve(l.solve(b));
}

DenseMatrix DenseCholesky::solve(const DenseMatrix& b) const {
  if (b.rows() != order())
    throw DimensionError("dense solve: dimension mismatch");
  const auto l = lower_.triangularView<Eigen::Lower>();
  return l.transpose().solve(l.solve(b));
}

void DenseCholesky::apply(std::span<const double> x, std::span<double> y, Index k) const {
  const Index n = order();
  if (static_cast<Index>(x.size()) != n * k || static_cast<Index>(y.size()) != n * k)
    throw DimensionError("dense solve: dimension mismatch");
  Eigen::Map<const RowMajorMatrix> xm(x.data(), n, k);
  Eigen::Map<RowMajorMatrix> ym(y.data(), n, k);
  ym = solve(DenseMatrix(xm));
}

BandedCholesky cholesky(const BandedSymMatrix& a) { return BandedCholesky(a); }
DenseCholesky cholesky(const DenseMatrix& a) { return DenseCholesky(a); }

// ---------------------------------------------------------------------------
// Kronecker helpers

void DenseOperator::apply(std::span<const double> x, std::span<double> y, Index k) const {
  if (static_cast<Index>(x.size()) != a_->cols() * k ||
      static_cast<Index>(y.size()) != a_->rows() * k)
    throw DimensionError("dense apply: dimension mismatch");
  Eigen::Map<const RowMajorMatrix> xm(x.data(), a_->cols(), k);
  Eigen::Map<RowMajorMatrix> ym(y.data(), a_->rows(), k);
  ym.noalias() = (*a_) * xm;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvalues and norms

namespace {

constexpr Index kDenseEigLimit = 500;

Vector start_vector(Index n) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = dist(rng);
  return v / v.norm();
}

} // namespace

double symmetric_eig_max(const DenseMatrix& a) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double generalized_eig_max(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("generalized_eig_max: shape mismatch");
  const DenseCholesky chol_b(b, "B");
  if (a.rows() <= kDenseEigLimit) {
    const auto l = chol_b.lower().triangularView<Eigen::Lower>();
    // C = L^{-1} A L^{-T}
    DenseMatrix c = l.solve(a);
    c = l.solve(DenseMatrix(c.transpose()));
    c = 0.5 * (c + c.transpose()).eval();
    return symmetric_eig_max(c);
  }
  return generalized_eig_max([&](const Vector& x) -> Vector { return a * x; },
                             [&](const Vector& x) { return chol_b.solve(x); },
                             [&](const Vector& x) -> Vector { return b * x; }, a.rows());
}

double generalized_eig_max(const VectorMap& apply_a, const VectorMap& solve_b,
                           const VectorMap& apply_b, Index order, double rel_tol, int max_iter) {
  Vector x = start_vector(order);
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector ax = apply_a(x);
    const Vector y = solve_b(ax);
    const Vector by = apply_b(y);
    const double bnorm = std::sqrt(y.dot(by));
    if (bnorm == 0.0)
      return 0.0;
    // Rayleigh quotient in the B inner product.
    const double next = y.dot(apply_a(y)) / y.dot(by);
    x = y / bnorm;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * (1.0 + std::abs(next)))
      return next;
    lambda = next;
  }
  return lambda;
}

double operator_norm(const VectorMap& apply, const VectorMap& apply_transpose, Index order,
                     double rel_tol, int max_iter) {
  Vector x = start_vector(order);
  double sigma2 = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector y = apply_transpose(apply(x));
    const double next = x.dot(y);
    const double ynorm = y.norm();
    if (ynorm == 0.0)
      return 0.0;
    x = y / ynorm;
    if (it > 0 && std::abs(next - sigma2) <= rel_tol * (1.0 + std::abs(next)))
      return std::sqrt(std::max(next, 0.0));
    sigma2 = next;
  }
  return std::sqrt(std::max(sigma2, 0.0));
}

double operator_norm(const DenseMatrix& m) {
  return operator_norm([&](const Vector& x) -> Vector { return m * x; },
                       [&](const Vector& x) -> Vector { return m.transpose() * x; }, m.cols());
}

} // namespace igamg
