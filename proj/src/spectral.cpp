#include "igamg/spectral.hpp"

#include <cmath>

#include "igamg/assembly.hpp"
#include "igamg/transfer.hpp"

namespace igamg {

namespace {

void check_dense_size(Index n, const char* what) {
  if (n > kDenseLimit)
    throw std::invalid_argument(std::string(what) + ": size " + std::to_string(n) +
                                " too large for the dense path");
}

SplineSpace space_with(int degree, Index intervals) {
  if (intervals < 1 || intervals > (Index{1} << 20))
    throw std::invalid_argument("interval count out of range: " + std::to_string(intervals));
  return SplineSpace(degree, 0, static_cast<int>(intervals));
}

DenseMatrix symmetric_power(const DenseMatrix& a, double exponent) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a);
  const Vector d = es.eigenvalues().array().pow(exponent).matrix();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double spectral_norm(const DenseMatrix& a) {
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  return svd.singularValues()(0);
}

DenseMatrix sym(const DenseMatrix& a) { return 0.5 * (a + a.transpose()); }

// Smoother matrix L and step factor of one smoothing step, plus the system matrix.
struct DenseSmoothing {
  DenseMatrix a;
  DenseMatrix l;
  double step;
};

DenseSmoothing dense_smoothing(int dimension, int degree, Index intervals, double tau,
                               Damping damping) {
  const SplineSpace space = space_with(degree, intervals);
  const Index m = space.dim();
  check_dense_size(dimension == 1 ? m : m * m, "smoothing analysis");
  const Discretization1D disc = assemble_1d(space);
  if (dimension == 1) {
    const Smoother1D s(disc, SmootherConfig{tau, damping, true});
    return {disc.system.to_dense(), s.operator_dense(), s.step_factor()};
  }
  if (dimension != 2)
    throw std::invalid_argument("dimension must be 1 or 2");
  const Smoother2D s(disc, tau);
  return {Operator2D(disc).to_dense(), s.operator_dense(), tau};
}

} // namespace

ConstraintBasis::ConstraintBasis(const SplineSpace& space) {
  const int p = space.degree();
  const Index m = space.dim();
  std::vector<Vector> rows;
  for (int k = 1; k < p; k += 2) {
    for (double x : {0.0, 1.0}) {
      const BasisDerivatives d = eval_basis_derivatives(space, x, k);
      Vector row = Vector::Zero(m);
      for (int j = 0; j <= p; ++j)
        row(d.first_index + j) = d.values(k, j);
      row /= row.norm();
      rows.push_back(row);
    }
  }
  constraints_.resize(static_cast<Index>(rows.size()), m);
  for (std::size_t i = 0; i < rows.size(); ++i)
    constraints_.row(static_cast<Index>(i)) = rows[i].transpose();

  if (rows.empty()) {
    basis_ = DenseMatrix::Identity(m, m);
    return;
  }
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(constraints_.transpose());
  qr.setThreshold(1e-10);
  rank_ = qr.rank();
  if (rank_ >= m)
    throw std::invalid_argument("constrained spline space is empty");
  const DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(m, m);
  basis_ = q.rightCols(m - rank_);
}

InverseInequality verify_inverse_inequality(int degree, Index intervals) {
  const SplineSpace space = space_with(degree, intervals);
  check_dense_size(space.dim(), "inverse inequality");
  if (intervals < degree + 1)
    throw std::invalid_argument("inverse inequality check needs n >= p + 1");
  const Discretization1D disc = assemble_1d(space);
  const DenseMatrix k = disc.stiffness.to_dense();
  const DenseMatrix m = disc.mass.to_dense();
  const double h = space.mesh_size();

  const ConstraintBasis cb(space);
  const DenseMatrix& z = cb.basis();
  const double constrained =
      h * std::sqrt(generalized_eig_max(sym(z.transpose() * k * z), sym(z.transpose() * m * z)));

  const Index p = degree, n = space.dim() - 2 * p;
  const double interior =
      h * std::sqrt(generalized_eig_max(k.block(p, p, n, n), m.block(p, p, n, n)));
  return {constrained, interior};
}

double verify_counterexample(int degree, Index intervals) {
  const SplineSpace space = space_with(degree, intervals);
  check_dense_size(space.dim(), "counterexample");
  const Discretization1D disc = assemble_1d(space);
  return space.mesh_size() *
         std::sqrt(generalized_eig_max(disc.stiffness.to_dense(), disc.mass.to_dense()));
}

double verify_approximation_constant(int degree, Index intervals, int refinements,
                                     bool constrained) {
  if (refinements < 1)
    throw std::invalid_argument("need at least one refinement for the fine proxy");
  const SplineSpace coarse = space_with(degree, intervals);
  const SplineSpace fine(degree, refinements, static_cast<int>(intervals));
  check_dense_size(fine.dim(), "approximation constant");

  // Embedding of the coarse space into the fine proxy space.
  DenseMatrix e = DenseMatrix::Identity(coarse.dim(), coarse.dim());
  for (int r = 1; r <= refinements; ++r) {
    const Prolongation p =
        build_prolongation(SplineSpace(degree, r - 1, static_cast<int>(intervals)),
                           SplineSpace(degree, r, static_cast<int>(intervals)));
    e = p.to_dense() * e;
  }
  if (constrained)
    e = e * ConstraintBasis(coarse).basis();

  const Discretization1D disc = assemble_1d(fine);
  const DenseMatrix a = disc.system.to_dense();
  const DenseMatrix m = disc.mass.to_dense();
  // I - T with T the A-orthogonal projector onto range(e).
  const DenseMatrix ae = a * e;
  const DenseMatrix t = e * (e.transpose() * ae).llt().solve(ae.transpose());
  const DenseMatrix r = DenseMatrix::Identity(a.rows(), a.cols()) - t;
  const double lambda = generalized_eig_max(sym(r.transpose() * m * r), a);
  return std::sqrt(std::max(lambda, 0.0)) / coarse.mesh_size();
}

double measure_CA(int dimension, int degree, Index fine_intervals, double tau,
                  Damping damping) {
  if (fine_intervals % 2 != 0)
    throw std::invalid_argument("fine interval count must be even");
  const SplineSpace fine = space_with(degree, fine_intervals);
  const SplineSpace coarse = space_with(degree, fine_intervals / 2);
  const Index mf = fine.dim();
  check_dense_size(dimension == 1 ? mf : mf * mf, "approximation property");
  const Discretization1D disc = assemble_1d(fine);
  const DenseMatrix p1 = build_prolongation(coarse, fine).to_dense();

  DenseMatrix a, l, p;
  if (dimension == 1) {
    a = disc.system.to_dense();
    l = Smoother1D(disc, SmootherConfig{tau, damping, true}).operator_dense();
    p = p1;
  } else if (dimension == 2) {
    a = Operator2D(disc).to_dense();
    l = Smoother2D(disc, 1.0).operator_dense();
    p = kron(p1, p1);
  } else {
    throw std::invalid_argument("dimension must be 1 or 2");
  }
  // (I - T) A^{-1} = A^{-1} - P (P^T A P)^{-1} P^T
  const DenseMatrix ainv = a.llt().solve(DenseMatrix::Identity(a.rows(), a.cols()));
  const DenseMatrix ac = sym(p.transpose() * a * p);
  const DenseMatrix x = ainv - p * ac.llt().solve(p.transpose());
  const DenseMatrix g = symmetric_power(sym(l), 0.5);
  return symmetric_eig_max(sym(g * x * g));
}

double measure_smoothing_constant(int dimension, int degree, Index intervals, int nu, double tau,
                                  Damping damping) {
  if (nu < 1)
    throw std::invalid_argument("nu must be positive");
  const DenseSmoothing s = dense_smoothing(dimension, degree, intervals, tau, damping);
  const DenseMatrix g = symmetric_power(sym(s.l), -0.5);
  const DenseMatrix abar = sym(g * s.a * g);
  const DenseMatrix sbar =
      DenseMatrix::Identity(abar.rows(), abar.cols()) - s.step * abar;
  DenseMatrix x = abar;
  for (int i = 0; i < nu; ++i)
    x = x * sbar;
  return nu * spectral_norm(x);
}

double smoother_energy_norm(int dimension, int degree, Index intervals, double tau,
                            Damping damping) {
  const DenseSmoothing s = dense_smoothing(dimension, degree, intervals, tau, damping);
  // ||S||_A = ||A^{1/2} S A^{-1/2}||
  const DenseMatrix ah = symmetric_power(sym(s.a), 0.5);
  const DenseMatrix ahi = symmetric_power(sym(s.a), -0.5);
  const DenseMatrix sm = DenseMatrix::Identity(s.a.rows(), s.a.cols()) -
                         s.step * s.l.llt().solve(s.a);
  return spectral_norm(ah * sm * ahi);
}

double smoother_spectral_bound(int dimension, int degree, Index intervals, double tau,
                               Damping damping) {
  const DenseSmoothing s = dense_smoothing(dimension, degree, intervals, tau, damping);
  return s.step * generalized_eig_max(s.a, sym(s.l));
}

} // namespace igamg
