#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "igamg/assembly.hpp"
#include "igamg/smoother.hpp"
#include "igamg/transfer.hpp"

namespace igamg {

enum class CycleType { TwoGrid, V, W };

struct CycleConfig {
  CycleType cycle = CycleType::V;
  int pre_smooth = 1;
  int post_smooth = 1;
  double tol = 1e-8;
  int max_iter = 500;
};

/// One grid of a hierarchy. `prolongation` maps the next coarser level into
/// this one and is absent on the coarsest level, as is the smoother.
struct MgLevel {
  SplineSpace space;
  Discretization1D disc;
  std::optional<Operator2D> op2d;
  std::optional<Smoother1D> smoother1d;
  std::optional<Smoother2D> smoother2d;
  std::optional<Prolongation> prolongation;
};

/// Minimal coarsest level for degree p: one below the first level whose
/// interior space is nonempty (n >= p + 1).
int auto_coarse_level(int degree);

/// Nested tensor-product spline discretizations from coarse to fine with
/// smoothers on every level but the coarsest and a direct solver there.
class MgHierarchy {
public:
  MgHierarchy(int dimension, int degree, int coarse_level, int fine_level, double tau,
              Damping damping = Damping::MassOnly);

  int dimension() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  int coarse_level() const noexcept { return coarse_level_; }
  int fine_level() const noexcept { return coarse_level_ + num_levels() - 1; }
  double tau() const noexcept { return tau_; }
  /// Number of grids; index 0 is the coarsest.
  int num_levels() const noexcept { return static_cast<int>(levels_.size()); }
  const MgLevel& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  /// Unknowns on grid k (m or m^2).
  Index size(int k) const;

  Vector apply_operator(int k, const Vector& x) const;
  /// One smoothing step on grid k >= 1, keeping r = f - A u current.
  void smooth(int k, Vector& u, Vector& r) const;
  /// Transfers between grid k-1 and grid k.
  Vector prolong(int k, const Vector& coarse) const;
  Vector restrict(int k, const Vector& fine) const;
  /// Exact solve on the coarsest grid.
  Vector coarse_solve(const Vector& f) const;

  /// Dense system matrix of grid k (verification sizes).
  DenseMatrix operator_dense(int k) const;

private:
  int dim_;
  int degree_;
  int coarse_level_;
  double tau_;
  std::vector<MgLevel> levels_;
  std::optional<BandedCholesky> coarse_banded_;
  std::optional<DenseCholesky> coarse_dense_;
};

MgHierarchy build_hierarchy(int dimension, int degree, int coarse_level, int fine_level,
                            double tau, Damping damping = Damping::MassOnly);

/// One cycle on grid k: u is updated and r = f - A u is maintained.
void mg_cycle(const MgHierarchy& h, const CycleConfig& cfg, int k, Vector& u, Vector& r);

/// Convenience form: one cycle on the finest grid for right-hand side f.
void mg_cycle(const MgHierarchy& h, const CycleConfig& cfg, Vector& u, const Vector& f);

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // Euclidean norms, initial residual first
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

struct SolveResult {
  Vector u;
  SolveReport report;
};

/// Stand-alone multigrid iteration until ||f - A u|| <= tol ||f - A u0||.
SolveResult solve_mg(const MgHierarchy& h, const CycleConfig& cfg, const Vector& f,
                     const Vector& u0 = Vector());

using LinearMap = std::function<Vector(const Vector&)>;

/// Preconditioned conjugate gradients with the same stopping rule on the
/// unpreconditioned residual.
SolveResult solve_pcg(const LinearMap& apply_a, const LinearMap& precondition, const Vector& f,
                      const Vector& u0, double tol, int max_iter);

/// CG preconditioned by one cycle with zero initial guess. The cycle must be
/// symmetric (pre_smooth == post_smooth).
SolveResult solve_pcg(const MgHierarchy& h, const CycleConfig& cfg, const Vector& f,
                      const Vector& u0 = Vector());

/// The preconditioner used by solve_pcg: one cycle on A e = r from e = 0.
Vector mg_precondition(const MgHierarchy& h, const CycleConfig& cfg, const Vector& r);

} // namespace igamg
