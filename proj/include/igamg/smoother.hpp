#pragma once

#include <span>
#include <vector>

#include "igamg/assembly.hpp"
#include "igamg/linalg.hpp"

namespace igamg {

/// How the damping parameter tau enters a 1D smoothing step.
///  - MassOnly: u += L_tau^{-1} r with L_tau = tau^{-1} h^{-2} M + C.
///  - Plain:    u += tau L^{-1} r  with L     = h^{-2} M + C.
enum class Damping { MassOnly, Plain };

struct SmootherConfig {
  double tau = 0.14;
  Damping damping = Damping::MassOnly;
  bool boundary_correction = true;  // false gives the plain mass-Richardson smoother
};

/// Schur complement S_ΓΓ - S_IΓ^T S_II^{-1} S_IΓ of a spline matrix onto its
/// 2p boundary functions (left ascending, then right ascending).
DenseMatrix boundary_schur_complement(const BandedSymMatrix& a, int degree,
                                      const std::string& name);

/// Boundary-corrected mass-Richardson smoother in one dimension.
///
/// The smoother operator is L_s = s h^{-2} M + E Q E^T where E selects the
/// boundary functions, Q is the Schur complement of A onto them, and s is
/// 1/tau for mass-only damping (1 otherwise). L_s couples both ends of the
/// interval, so it is inverted by Sherman-Morrison-Woodbury around the banded
/// factor of M with a dense 2p x 2p capacitance matrix Q^{-1} + E^T (s h^{-2} M)^{-1} E.
class Smoother1D {
public:
  Smoother1D(const Discretization1D& disc, SmootherConfig config);

  const SmootherConfig& config() const noexcept { return config_; }
  Index dim() const noexcept { return m_; }
  int degree() const noexcept { return p_; }
  double mesh_size() const noexcept { return h_; }
  double mass_scale() const noexcept { return mass_scale_; }
  /// Factor applied to L_s^{-1} r in a step: tau for plain damping, 1 otherwise.
  double step_factor() const noexcept { return step_factor_; }

  const std::vector<Index>& boundary() const noexcept { return boundary_; }
  /// Q, or an empty matrix without boundary correction.
  const DenseMatrix& schur_complement() const noexcept { return q_; }
  /// L_s^{-1} E, an m x 2p matrix.
  const DenseMatrix& inverse_on_boundary() const noexcept { return inv_boundary_; }

  /// C = E Q E^T as a dense m x m matrix (verification sizes).
  DenseMatrix correction_dense() const;
  /// L_s as a dense matrix (verification sizes).
  DenseMatrix operator_dense() const;

  // Block-operator interface: y = L_s^{-1} x.
  Index rows() const noexcept { return m_; }
  Index cols() const noexcept { return m_; }
  void apply(std::span<const double> x, std::span<double> y, Index k = 1) const;
  Vector apply_inverse(const Vector& r) const;

  /// One step u += step_factor L_s^{-1} r, keeping r = f - A u up to date.
  void step(const BandedSymMatrix& a, Vector& u, Vector& r) const;

private:
  SmootherConfig config_;
  Index m_;
  int p_;
  double h_;
  double mass_scale_;
  double step_factor_;
  BandedSymMatrix mass_;
  BandedCholesky mass_factor_;
  std::vector<Index> boundary_;
  DenseMatrix q_;
  RowMajorMatrix scaled_mass_inv_boundary_;  // (s h^{-2} M)^{-1} E
  DenseCholesky capacitance_;
  DenseMatrix inv_boundary_;
};

Smoother1D build_smoother_1d(const Discretization1D& disc, double tau,
                             Damping damping = Damping::MassOnly);
Vector apply_Linv_1d(const Smoother1D& s, const Vector& r);
/// u <- u + step_factor L_s^{-1}(f - A u).
void smooth_step_1d(const Smoother1D& s, const Discretization1D& disc, Vector& u,
                    const Vector& f);

/// Tensor-product smoother with operator
///   𝓛 = h^{-2} M⊗M + C⊗M + M⊗C = h^2 (L⊗L - C⊗C),   L = h^{-2} M + C,
/// inverted through the Woodbury identity with the 4p^2 x 4p^2 matrix
///   𝓡 = Q^{-1}⊗Q^{-1} - W^{-1}⊗W^{-1},  W = Q + h^{-2} (mass Schur complement).
/// A step is the plain damped update u += tau 𝓛^{-1} r.
class Smoother2D {
public:
  Smoother2D(const Discretization1D& disc, double tau, bool boundary_correction = true);

  double tau() const noexcept { return tau_; }
  Index dim_1d() const noexcept { return line_.dim(); }
  Index size() const noexcept { return line_.dim() * line_.dim(); }
  const Smoother1D& line_smoother() const noexcept { return line_; }
  const DenseMatrix& w() const noexcept { return w_; }
  const DenseMatrix& woodbury_matrix() const noexcept { return r_; }

  /// 𝓛 as a dense matrix (verification sizes).
  DenseMatrix operator_dense() const;

  void apply(std::span<const double> x, std::span<double> y) const;
  Vector apply_inverse(const Vector& r) const;

  /// u += tau 𝓛^{-1} r, then r -= tau 𝒜 𝓛^{-1} r.
  void step(const Operator2D& op, Vector& u, Vector& r) const;

private:
  double tau_;
  bool corrected_;
  Smoother1D line_;
  BandedSymMatrix mass_;
  DenseMatrix w_;
  DenseMatrix r_;
  DenseCholesky r_factor_;
};

Smoother2D build_smoother_2d(const Discretization1D& disc, double tau);
Vector apply_Linv_2d(const Smoother2D& s, const Vector& r);
/// u <- u + tau 𝓛^{-1}(f - 𝒜 u).
void smooth_step_2d(const Smoother2D& s, const Operator2D& op, Vector& u, const Vector& f);

} // namespace igamg
