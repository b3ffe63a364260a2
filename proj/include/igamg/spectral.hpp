#pragma once

#include "igamg/smoother.hpp"
#include "igamg/spline_space.hpp"

namespace igamg {

/// Largest dense system (unknowns) the verification routines will build.
inline constexpr Index kDenseLimit = 4000;

/// Coefficient vectors of splines whose odd derivatives of order < p vanish
/// at both endpoints.
class ConstraintBasis {
public:
  explicit ConstraintBasis(const SplineSpace& space);

  /// One normalized row per constraint (derivative order k odd, k < p; x = 0 then x = 1).
  const DenseMatrix& constraints() const noexcept { return constraints_; }
  /// m x dim columns spanning the nullspace of the constraints.
  const DenseMatrix& basis() const noexcept { return basis_; }
  Index dim() const noexcept { return basis_.cols(); }
  Index rank() const noexcept { return rank_; }

private:
  DenseMatrix constraints_;
  DenseMatrix basis_;
  Index rank_ = 0;
};

struct InverseInequality {
  double constrained;  // over the constrained space
  double interior;     // over splines with vanishing boundary coefficients
};

/// h * sqrt(lambda_max(K, M)) restricted to the constrained and interior
/// spaces, for n uniform spans.
InverseInequality verify_inverse_inequality(int degree, Index intervals);

/// h * sqrt(lambda_max(K, M)) over the full spline space.
double verify_counterexample(int degree, Index intervals);

/// sup ||(I - T) u||_{L2} / (h ||u||_{H1}) with T the H1-orthogonal projector
/// onto the constrained (or full) space on n spans; u ranges over the space
/// refined `refinements` more times.
double verify_approximation_constant(int degree, Index intervals, int refinements = 4,
                                     bool constrained = true);

/// ||L^{1/2} (I - T) A^{-1} L^{1/2}|| between n_fine and n_fine / 2 spans.
/// L is the matrix the smoothing step inverts: L_tau for mass-only damping
/// and L = h^{-2} M + C for plain damping in 1D, 𝓛 in 2D.
double measure_CA(int dimension, int degree, Index fine_intervals, double tau = 0.14,
                  Damping damping = Damping::MassOnly);

/// nu * ||L^{-1/2} A S^nu L^{-1/2}|| with S = I - step * L^{-1} A, where L
/// and step follow the damping mode (in 2D: L = 𝓛, step = tau).
double measure_smoothing_constant(int dimension, int degree, Index intervals, int nu, double tau,
                                  Damping damping = Damping::MassOnly);

/// ||S||_A for the same smoother.
double smoother_energy_norm(int dimension, int degree, Index intervals, double tau,
                            Damping damping = Damping::MassOnly);

/// lambda_max(A, L) for the smoother used in a step (L_tau for mass-only damping).
double smoother_spectral_bound(int dimension, int degree, Index intervals, double tau,
                               Damping damping = Damping::MassOnly);

} // namespace igamg
