#pragma once

#include <span>
#include <vector>

#include "igamg/linalg.hpp"
#include "igamg/spline_space.hpp"

namespace igamg {

/// Canonical embedding of a coarse spline space into its dyadic refinement,
/// stored as a CSR matrix of shape fine_dim x coarse_dim.
class Prolongation {
public:
  Prolongation(Index fine_dim, Index coarse_dim, std::vector<Index> row_ptr,
               std::vector<Index> cols, std::vector<double> vals);

  Index rows() const noexcept { return fine_dim_; }
  Index cols() const noexcept { return coarse_dim_; }
  Index fine_dim() const noexcept { return fine_dim_; }
  Index coarse_dim() const noexcept { return coarse_dim_; }
  Index nonzeros() const noexcept { return static_cast<Index>(vals_.size()); }

  /// y = P x on a block of k vectors.
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;
  /// y = P^T x on a block of k vectors.
  void apply_transpose(std::span<const double> x, std::span<double> y, Index k = 1) const;

  DenseMatrix to_dense() const;

private:
  Index fine_dim_;
  Index coarse_dim_;
  std::vector<Index> row_ptr_;
  std::vector<Index> cols_;
  std::vector<double> vals_;
};

/// Block-operator view of P^T, for use with kron_apply.
class RestrictionView {
public:
  explicit RestrictionView(const Prolongation& p) : p_(&p) {}
  Index rows() const noexcept { return p_->cols(); }
  Index cols() const noexcept { return p_->rows(); }
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const {
    p_->apply_transpose(x, y, k);
  }

private:
  const Prolongation* p_;
};

/// Builds P by inserting every coarse-span midpoint with Boehm's algorithm.
Prolongation build_prolongation(const SplineSpace& coarse, const SplineSpace& fine);

Vector prolong(const Prolongation& p, const Vector& coarse);
Vector restrict(const Prolongation& p, const Vector& fine);

/// Tensor-product transfers (P ⊗ P) and (P^T ⊗ P^T).
Vector prolong_2d(const Prolongation& p, const Vector& coarse);
Vector restrict_2d(const Prolongation& p, const Vector& fine);

} // namespace igamg
