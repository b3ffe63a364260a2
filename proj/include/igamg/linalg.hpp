#pragma once

#include <concepts>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "igamg/common.hpp"

namespace igamg {

// Block convention used throughout: a block of k vectors of length n is an
// n-by-k row-major array, entry (r, c) at data[r * k + c]. A matrix applied
// to such a block acts on each of the k columns.

/// Symmetric banded matrix, lower band stored row by row.
class BandedSymMatrix {
public:
  BandedSymMatrix() = default;
  BandedSymMatrix(Index order, Index bandwidth);

  Index order() const noexcept { return order_; }
  Index bandwidth() const noexcept { return bandwidth_; }
  Index rows() const noexcept { return order_; }
  Index cols() const noexcept { return order_; }

  /// Entry (i, j); zero outside the band.
  double operator()(Index i, Index j) const;
  /// Accumulates v into (i, j) and, implicitly, (j, i). Requires |i-j| <= bandwidth.
  void add(Index i, Index j, double v);

  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;
  Vector operator*(const Vector& x) const;

  /// Principal submatrix on the contiguous index range [begin, end).
  BandedSymMatrix principal_block(Index begin, Index end) const;
  DenseMatrix to_dense() const;

  BandedSymMatrix& operator*=(double s);
  friend BandedSymMatrix operator+(const BandedSymMatrix& a, const BandedSymMatrix& b);
  friend BandedSymMatrix operator*(double s, BandedSymMatrix a) { return a *= s; }

private:
  friend class BandedCholesky;

  double& at(Index i, Index j) { return band_[i * (bandwidth_ + 1) + (j - i + bandwidth_)]; }
  double at(Index i, Index j) const { return band_[i * (bandwidth_ + 1) + (j - i + bandwidth_)]; }

  Index order_ = 0;
  Index bandwidth_ = 0;
  std::vector<double> band_;
};

/// Band-preserving Cholesky factor A = L L^T without pivoting.
class BandedCholesky {
public:
  explicit BandedCholesky(const BandedSymMatrix& a, const std::string& name = "banded matrix");

  Index order() const noexcept { return factor_.order(); }
  Index rows() const noexcept { return order(); }
  Index cols() const noexcept { return order(); }

  /// Overwrites the block x (order-by-k) with A^{-1} x.
  void solve_in_place(std::span<double> x, Index k = 1) const;
  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& b) const;

  /// Operator interface: y = A^{-1} x.
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;

  DenseMatrix lower() const;

private:
  BandedSymMatrix factor_;  // lower triangle holds L
};

/// Dense Cholesky with the failing pivot reported on breakdown.
class DenseCholesky {
public:
  DenseCholesky() = default;
  explicit DenseCholesky(const DenseMatrix& a, const std::string& name = "dense matrix");

  Index order() const noexcept { return lower_.rows(); }
  Index rows() const noexcept { return order(); }
  Index cols() const noexcept { return order(); }

  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& b) const;
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;

  const DenseMatrix& lower() const noexcept { return lower_; }

private:
  DenseMatrix lower_;
};

BandedCholesky cholesky(const BandedSymMatrix& a);
DenseCholesky cholesky(const DenseMatrix& a);

// ---------------------------------------------------------------------------
// Kronecker-structured application.

template <class Op>
concept BlockOperator = requires(const Op& op, std::span<const double> x, std::span<double> y,
                                 Index k) {
  { op.rows() } -> std::convertible_to<Index>;
  { op.cols() } -> std::convertible_to<Index>;
  op.apply(x, y, k);
};

/// Non-owning view of a dense matrix as a block operator.
class DenseOperator {
public:
  explicit DenseOperator(const DenseMatrix& a) : a_(&a) {}
  Index rows() const noexcept { return a_->rows(); }
  Index cols() const noexcept { return a_->cols(); }
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;

private:
  const DenseMatrix* a_;
};

class IdentityOperator {
public:
  explicit IdentityOperator(Index n) : n_(n) {}
  Index rows() const noexcept { return n_; }
  Index cols() const noexcept { return n_; }
  void apply(std::span<const double> x, std::span<double> y, Index /*k*/ = 1) const {
    std::copy(x.begin(), x.end(), y.begin());
  }

private:
  Index n_;
};

/// out = (left ⊗ right) v. The vector v is read as a left.cols()-by-right.cols()
/// row-major array V, and out = left * V * right^T, so each factor is applied
/// along one axis only.
template <BlockOperator Left, BlockOperator Right>
void kron_apply(const Left& left, const Right& right, std::span<const double> v,
                std::span<double> out) {
  const Index lc = left.cols(), lr = left.rows();
  const Index rc = right.cols(), rr = right.rows();
  if (static_cast<Index>(v.size()) != lc * rc)
    throw DimensionError("kron_apply: input length " + std::to_string(v.size()) +
                         " does not match operator orders " + std::to_string(lc) + "x" +
                         std::to_string(rc));
  if (static_cast<Index>(out.size()) != lr * rr)
    throw DimensionError("kron_apply: output length does not match operator orders");
  std::vector<double> tmp(static_cast<std::size_t>(lc * rr));
  for (Index i = 0; i < lc; ++i)
    right.apply(v.subspan(i * rc, rc), std::span<double>(tmp).subspan(i * rr, rr), 1);
  left.apply(tmp, out, rr);
}

template <BlockOperator Left, BlockOperator Right>
Vector kron_apply(const Left& left, const Right& right, const Vector& v) {
  Vector out(left.rows() * right.rows());
  kron_apply(left, right, std::span<const double>(v.data(), v.size()),
             std::span<double>(out.data(), out.size()));
  return out;
}

/// Explicit Kronecker product; test and verification sizes only.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// ---------------------------------------------------------------------------
// Small eigenvalue / norm routines used for verification.

using VectorMap = std::function<Vector(const Vector&)>;

/// Largest lambda with A x = lambda B x. Dense reduction for order <= 500,
/// power iteration on B^{-1} A otherwise.
double generalized_eig_max(const DenseMatrix& a, const DenseMatrix& b);

/// Power iteration for the dominant eigenvalue of B^{-1} A given matrix-free
/// products with A and solves with B (A symmetric positive semidefinite).
double generalized_eig_max(const VectorMap& apply_a, const VectorMap& solve_b,
                           const VectorMap& apply_b, Index order, double rel_tol = 1e-10,
                           int max_iter = 20000);

/// Largest eigenvalue of a symmetric matrix.
double symmetric_eig_max(const DenseMatrix& a);

/// Largest singular value by power iteration on M^T M.
double operator_norm(const VectorMap& apply, const VectorMap& apply_transpose, Index order,
                     double rel_tol = 1e-8, int max_iter = 100000);
double operator_norm(const DenseMatrix& m);

} // namespace igamg
