#pragma once

#include <span>

#include "igamg/linalg.hpp"
#include "igamg/spline_space.hpp"

namespace igamg {

/// Galerkin matrices of one coordinate direction.
struct Discretization1D {
  SplineSpace space;
  BandedSymMatrix mass;       // (phi_i, phi_j)
  BandedSymMatrix stiffness;  // (phi_i', phi_j')
  BandedSymMatrix system;     // stiffness + mass
};

/// Assembles M, K and A = K + M with Gauss-Legendre quadrature using
/// p + 1 + extra_nodes points per knot span (p + 1 is exact).
Discretization1D assemble_1d(const SplineSpace& space, int extra_nodes = 0);

/// The tensor-product operator K⊗M + M⊗K + M⊗M, never materialized.
/// Vectors are indexed (i, j) -> i * m + j with i the first Kronecker factor.
class Operator2D {
public:
  explicit Operator2D(const Discretization1D& disc);

  Index dim_1d() const noexcept { return m_; }
  Index size() const noexcept { return m_ * m_; }
  const BandedSymMatrix& mass() const noexcept { return mass_; }
  const BandedSymMatrix& stiffness() const noexcept { return stiffness_; }

  void apply(std::span<const double> v, std::span<double> out) const;
  Vector apply(const Vector& v) const;

  DenseMatrix to_dense() const;

private:
  BandedSymMatrix mass_;
  BandedSymMatrix stiffness_;
  Index m_;
};

inline Vector apply_operator_2d(const Operator2D& op, const Vector& v) { return op.apply(v); }

/// Load vector of f(x) = d pi^2 prod_j sin(pi (x_j + 1/2)) for d in {1, 2}.
Vector assemble_load(const SplineSpace& space, int dimension);

} // namespace igamg
