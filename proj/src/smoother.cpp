#include "igamg/smoother.hpp"

#include <algorithm>

namespace igamg {

DenseMatrix boundary_schur_complement(const BandedSymMatrix& a, int degree,
                                      const std::string& name) {
  const Index m = a.order();
  const Index p = degree;
  if (m <= 2 * p)
    throw std::invalid_argument("interior space empty (m = " + std::to_string(m) +
                                ", p = " + std::to_string(p) + ")");
  const Index ni = m - 2 * p;
  std::vector<Index> gamma;
  for (Index i = 0; i < p; ++i)
    gamma.push_back(i);
  for (Index i = m - p; i < m; ++i)
    gamma.push_back(i);

  const BandedCholesky interior(a.principal_block(p, m - p), name + " interior block");
  // Coupling block A_IΓ; only the first and last p interior rows are nonzero.
  RowMajorMatrix coupling = RowMajorMatrix::Zero(ni, 2 * p);
  for (Index i = 0; i < ni; ++i)
    for (Index j = 0; j < 2 * p; ++j)
      coupling(i, j) = a(p + i, gamma[j]);
  RowMajorMatrix x = coupling;
  interior.solve_in_place(std::span<double>(x.data(), x.size()), 2 * p);

  DenseMatrix s(2 * p, 2 * p);
  for (Index i = 0; i < 2 * p; ++i)
    for (Index j = 0; j < 2 * p; ++j)
      s(i, j) = a(gamma[i], gamma[j]);
  s.noalias() -= coupling.transpose() * x;
  return 0.5 * (s + s.transpose());
}

// ---------------------------------------------------------------------------
// Smoother1D

Smoother1D::Smoother1D(const Discretization1D& disc, SmootherConfig config)
    : config_(config), m_(disc.space.dim()), p_(disc.space.degree()),
      h_(disc.space.mesh_size()),
      mass_scale_(config.damping == Damping::MassOnly ? 1.0 / config.tau : 1.0),
      step_factor_(config.damping == Damping::MassOnly ? 1.0 : config.tau), mass_(disc.mass),
      mass_factor_(disc.mass, "mass matrix") {
  if (!(config.tau > 0.0))
    throw std::invalid_argument("damping parameter tau must be positive");
  if (m_ <= 2 * p_)
    throw std::invalid_argument("interior space empty (m = " + std::to_string(m_) +
                                " <= 2p) - refine or lower degree");
  for (Index i = 0; i < p_; ++i)
    boundary_.push_back(i);
  for (Index i = m_ - p_; i < m_; ++i)
    boundary_.push_back(i);

  const Index nb = 2 * p_;
  const double inv_mass_scale = h_ * h_ / mass_scale_;
  if (config.boundary_correction) {
    q_ = boundary_schur_complement(disc.system, p_, "system matrix");
    const DenseCholesky q_factor(q_, "boundary Schur complement Q");
    const DenseMatrix q_inv = q_factor.solve(DenseMatrix(DenseMatrix::Identity(nb, nb)));

    scaled_mass_inv_boundary_ = RowMajorMatrix::Zero(m_, nb);
    for (Index j = 0; j < nb; ++j)
      scaled_mass_inv_boundary_(boundary_[j], j) = 1.0;
    mass_factor_.solve_in_place(
        std::span<double>(scaled_mass_inv_boundary_.data(), scaled_mass_inv_boundary_.size()),
        nb);
    scaled_mass_inv_boundary_ *= inv_mass_scale;

    DenseMatrix cap = q_inv;
    for (Index i = 0; i < nb; ++i)
      for (Index j = 0; j < nb; ++j)
        cap(i, j) += scaled_mass_inv_boundary_(boundary_[i], j);
    capacitance_ = DenseCholesky(0.5 * (cap + cap.transpose()), "capacitance matrix");
  }

  DenseMatrix e = DenseMatrix::Zero(m_, nb);
  for (Index j = 0; j < nb; ++j)
    e(boundary_[j], j) = 1.0;
  inv_boundary_.resize(m_, nb);
  for (Index j = 0; j < nb; ++j)
    inv_boundary_.col(j) = apply_inverse(e.col(j));
}

void Smoother1D::apply(std::span<const double> x, std::span<double> y, Index k) const {
  if (static_cast<Index>(x.size()) != m_ * k || static_cast<Index>(y.size()) != m_ * k)
    throw DimensionError("smoother: dimension mismatch");
  std::copy(x.begin(), x.end(), y.begin());
  mass_factor_.solve_in_place(y, k);
  const double inv_mass_scale = h_ * h_ / mass_scale_;
  for (auto& v : y)
    v *= inv_mass_scale;
  if (!config_.boundary_correction)
    return;

  const Index nb = 2 * p_;
  Eigen::Map<RowMajorMatrix> z(y.data(), m_, k);
  DenseMatrix t(nb, k);
  for (Index i = 0; i < nb; ++i)
    t.row(i) = z.row(boundary_[i]);
  const DenseMatrix corr = capacitance_.solve(t);
  z.noalias() -= scaled_mass_inv_boundary_ * corr;
}

Vector Smoother1D::apply_inverse(const Vector& r) const {
  Vector out(r.size());
  apply(std::span<const double>(r.data(), r.size()), std::span<double>(out.data(), out.size()));
  return out;
}

DenseMatrix Smoother1D::correction_dense() const {
  DenseMatrix c = DenseMatrix::Zero(m_, m_);
  if (!config_.boundary_correction)
    return c;
  for (std::size_t i = 0; i < boundary_.size(); ++i)
    for (std::size_t j = 0; j < boundary_.size(); ++j)
      c(boundary_[i], boundary_[j]) = q_(i, j);
  return c;
}

DenseMatrix Smoother1D::operator_dense() const {
  return (mass_scale_ / (h_ * h_)) * mass_.to_dense() + correction_dense();
}

void Smoother1D::step(const BandedSymMatrix& a, Vector& u, Vector& r) const {
  Vector d = apply_inverse(r);
  d *= step_factor_;
  u += d;
  r -= a * d;
}

Smoother1D build_smoother_1d(const Discretization1D& disc, double tau, Damping damping) {
  return Smoother1D(disc, SmootherConfig{tau, damping, true});
}

Vector apply_Linv_1d(const Smoother1D& s, const Vector& r) { return s.apply_inverse(r); }

void smooth_step_1d(const Smoother1D& s, const Discretization1D& disc, Vector& u,
                    const Vector& f) {
  if (u.size() != s.dim() || f.size() != s.dim())
    throw DimensionError("smooth_step_1d: dimension mismatch");
  Vector r = f - disc.system * u;
  s.step(disc.system, u, r);
}

// ---------------------------------------------------------------------------
// Smoother2D

Smoother2D::Smoother2D(const Discretization1D& disc, double tau, bool boundary_correction)
    : tau_(tau), corrected_(boundary_correction),
      line_(disc, SmootherConfig{1.0, Damping::Plain, boundary_correction}), mass_(disc.mass) {
  if (!(tau > 0.0))
    throw std::invalid_argument("damping parameter tau must be positive");
  if (!corrected_)
    return;
  const int p = disc.space.degree();
  const double h = disc.space.mesh_size();
  const DenseMatrix& q = line_.schur_complement();
  w_ = q + boundary_schur_complement(disc.mass, p, "mass matrix") / (h * h);

  const Index nb = 2 * p;
  const DenseMatrix eye = DenseMatrix::Identity(nb, nb);
  const DenseMatrix q_inv = DenseCholesky(q, "boundary Schur complement Q").solve(eye);
  const DenseMatrix w_inv = DenseCholesky(w_, "W").solve(eye);
  r_ = kron(q_inv, q_inv) - kron(w_inv, w_inv);
  r_ = 0.5 * (r_ + r_.transpose()).eval();
  r_factor_ = DenseCholesky(r_, "Woodbury matrix R");
}

DenseMatrix Smoother2D::operator_dense() const {
  const double h = line_.mesh_size();
  const DenseMatrix m = mass_.to_dense();
  const DenseMatrix c = line_.correction_dense();
  return kron(m, m) / (h * h) + kron(c, m) + kron(m, c);
}

void Smoother2D::apply(std::span<const double> x, std::span<double> y) const {
  const Index m = line_.dim();
  if (static_cast<Index>(x.size()) != m * m || static_cast<Index>(y.size()) != m * m)
    throw DimensionError("2D smoother: dimension mismatch");
  const double h = line_.mesh_size();
  kron_apply(line_, line_, x, y);
  const double scale = 1.0 / (h * h);
  for (auto& v : y)
    v *= scale;
  if (!corrected_)
    return;

  const auto& gamma = line_.boundary();
  const Index nb = static_cast<Index>(gamma.size());
  Vector corner(nb * nb);
  for (Index a = 0; a < nb; ++a)
    for (Index b = 0; b < nb; ++b)
      corner(a * nb + b) = y[gamma[a] * m + gamma[b]];
  corner = r_factor_.solve(corner);
  const DenseOperator lift(line_.inverse_on_boundary());
  std::vector<double> q(static_cast<std::size_t>(m * m));
  kron_apply(lift, lift, std::span<const double>(corner.data(), corner.size()), q);
  for (Index i = 0; i < m * m; ++i)
    y[i] += q[i];
}

Vector Smoother2D::apply_inverse(const Vector& r) const {
  Vector out(r.size());
  apply(std::span<const double>(r.data(), r.size()), std::span<double>(out.data(), out.size()));
  return out;
}

void Smoother2D::step(const Operator2D& op, Vector& u, Vector& r) const {
  Vector d = apply_inverse(r);
  d *= tau_;
  u += d;
  r -= op.apply(d);
}

Smoother2D build_smoother_2d(const Discretization1D& disc, double tau) {
  return Smoother2D(disc, tau, true);
}

Vector apply_Linv_2d(const Smoother2D& s, const Vector& r) { return s.apply_inverse(r); }

void smooth_step_2d(const Smoother2D& s, const Operator2D& op, Vector& u, const Vector& f) {
  if (u.size() != s.size() || f.size() != s.size())
    throw DimensionError("smooth_step_2d: dimension mismatch");
  Vector r = f - op.apply(u);
  s.step(op, u, r);
}

} // namespace igamg
