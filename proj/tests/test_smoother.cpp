#include <doctest.h>

#include <cmath>
#include <random>

#include "igamg/smoother.hpp"

using namespace igamg;

namespace {

Vector random_vector(Index n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = d(gen);
  return v;
}

// Dense block elimination onto the boundary indices.
DenseMatrix dense_schur(const DenseMatrix& a, int p) {
  const Index m = a.rows(), ni = m - 2 * p;
  std::vector<Index> g, in;
  for (Index i = 0; i < m; ++i)
    (i < p || i >= m - p ? g : in).push_back(i);
  DenseMatrix agg(2 * p, 2 * p), agi(2 * p, ni), aii(ni, ni);
  for (Index i = 0; i < 2 * p; ++i) {
    for (Index j = 0; j < 2 * p; ++j)
      agg(i, j) = a(g[i], g[j]);
    for (Index j = 0; j < ni; ++j)
      agi(i, j) = a(g[i], in[j]);
  }
  for (Index i = 0; i < ni; ++i)
    for (Index j = 0; j < ni; ++j)
      aii(i, j) = a(in[i], in[j]);
  return agg - agi * aii.inverse() * agi.transpose();
}

DenseMatrix embed_boundary(const DenseMatrix& q, Index m, int p) {
  DenseMatrix c = DenseMatrix::Zero(m, m);
  for (Index i = 0; i < 2 * p; ++i)
    for (Index j = 0; j < 2 * p; ++j)
      c(i < p ? i : m - 2 * p + i, j < p ? j : m - 2 * p + j) = q(i, j);
  return c;
}

double max_abs_eig(const DenseMatrix& a) {
  Eigen::EigenSolver<DenseMatrix> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("boundary schur complement") {
  const Discretization1D d = assemble_1d(SplineSpace(1, 2));
  const DenseMatrix q = boundary_schur_complement(d.system, 1, "A");
  const DenseMatrix ref = dense_schur(d.system.to_dense(), 1);
  CHECK((q - ref).norm() <= 1e-12 * ref.norm());
  CHECK(q.rows() == 2);

  for (int p = 1; p <= 6; ++p) {
    const Discretization1D dp = assemble_1d(SplineSpace(p, 4));
    const DenseMatrix qp = boundary_schur_complement(dp.system, p, "A");
    CHECK((qp - dense_schur(dp.system.to_dense(), p)).norm() <= 1e-10 * qp.norm());
    CHECK_NOTHROW(DenseCholesky(qp));
  }
  CHECK_THROWS_AS(boundary_schur_complement(assemble_1d(SplineSpace(3, 0, 3)).system, 3, "A"),
                  std::invalid_argument);
}

TEST_CASE("correction acts on the boundary block only") {
  const Discretization1D d = assemble_1d(SplineSpace(2, 3));
  const Smoother1D s(d, SmootherConfig{});
  const DenseMatrix c = s.correction_dense();
  Vector v = random_vector(s.dim(), 3);
  for (Index i : s.boundary())
    v(i) = 0.0;
  CHECK((c * v).norm() <= 1e-14);
}

TEST_CASE("energy minimization of the boundary correction") {
  // v^T C v equals the minimal energy over interior extensions of v_Γ.
  const int p = 2;
  const Discretization1D d = assemble_1d(SplineSpace(p, 3));
  const DenseMatrix a = d.system.to_dense();
  const Smoother1D s(d, SmootherConfig{});
  const Index m = s.dim(), ni = m - 2 * p;
  for (unsigned seed = 0; seed < 5; ++seed) {
    Vector v = random_vector(m, 10 + seed);
    // Normal equations for the interior block: A_II x_I = -A_IΓ v_Γ.
    Vector vg = v;
    vg.segment(p, ni).setZero();
    const Vector rhs = -(a * vg).segment(p, ni);
    Vector ext = vg;
    ext.segment(p, ni) = a.block(p, p, ni, ni).ldlt().solve(rhs);
    const double energy = ext.dot(a * ext);
    CHECK(std::abs(v.dot(s.correction_dense() * v) - energy) <= 1e-10 * energy);
  }
  // C <= A as quadratic forms.
  CHECK(generalized_eig_max(s.correction_dense(), a) <= 1.0 + 1e-10);
}

TEST_CASE("1D inverse matches dense solves") {
  for (int p = 1; p <= 4; ++p)
    for (int lvl : {2, 3, 4, 5}) {
      if ((1 << lvl) < p + 1)
        continue;
      const Discretization1D d = assemble_1d(SplineSpace(p, lvl));
      for (Damping damping : {Damping::MassOnly, Damping::Plain}) {
        const Smoother1D s(d, SmootherConfig{0.14, damping, true});
        const DenseMatrix l = s.operator_dense();
        const Vector r = random_vector(s.dim(), 100 + p + lvl);
        const Vector x = apply_Linv_1d(s, r);
        const Vector ref = l.ldlt().solve(r);
        CHECK((x - ref).norm() <= 1e-10 * ref.norm());
        CHECK((l * x - r).norm() <= 1e-10 * r.norm());
      }
    }
}

TEST_CASE("1D smoother configurations") {
  const Discretization1D d = assemble_1d(SplineSpace(2, 3));
  const double h = d.space.mesh_size();
  // Without correction: L^{-1} r = h^2 M^{-1} r.
  const Smoother1D plain(d, SmootherConfig{0.14, Damping::Plain, false});
  const Vector r = random_vector(plain.dim(), 5);
  const Vector ref = h * h * d.mass.to_dense().ldlt().solve(r);
  CHECK((plain.apply_inverse(r) - ref).norm() <= 1e-12 * ref.norm());

  const Smoother1D damped(d, SmootherConfig{0.14, Damping::MassOnly, true});
  CHECK(damped.mass_scale() == doctest::Approx(1.0 / 0.14));
  CHECK(damped.step_factor() == 1.0);
  const DenseMatrix lt = d.mass.to_dense() / (0.14 * h * h) + damped.correction_dense();
  CHECK((damped.operator_dense() - lt).norm() <= 1e-12 * lt.norm());

  CHECK_THROWS_AS(Smoother1D(d, SmootherConfig{0.0, Damping::MassOnly, true}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Smoother1D(assemble_1d(SplineSpace(3, 0, 3)), SmootherConfig{}),
                  std::invalid_argument);
}

TEST_CASE("1D smoothing steps") {
  SUBCASE("exact solution is a fixed point") {
    const Discretization1D d = assemble_1d(SplineSpace(3, 4));
    const Smoother1D s = build_smoother_1d(d, 0.14);
    const Vector u = random_vector(s.dim(), 1);
    const Vector f = d.system * u;
    Vector v = u;
    smooth_step_1d(s, d, v, f);
    CHECK((v - u).norm() <= 1e-12 * u.norm());
  }
  SUBCASE("error propagation is a contraction") {
    for (int p = 1; p <= 6; ++p) {
      const Discretization1D d = assemble_1d(SplineSpace(p, 5));
      const Smoother1D s = build_smoother_1d(d, 0.14);
      const DenseMatrix a = d.system.to_dense();
      const DenseMatrix e =
          DenseMatrix::Identity(s.dim(), s.dim()) - s.operator_dense().ldlt().solve(a);
      CHECK(max_abs_eig(e) < 1.0);
    }
  }
  SUBCASE("a step reduces the error in the smoother norm") {
    const Discretization1D d = assemble_1d(SplineSpace(3, 5));
    const Smoother1D s = build_smoother_1d(d, 0.14);
    const DenseMatrix l = s.operator_dense();
    const Vector f = Vector::Zero(s.dim());
    int reduced = 0;
    for (unsigned t = 0; t < 100; ++t) {
      Vector u = random_vector(s.dim(), 1000 + t);
      const double before = std::sqrt(u.dot(l * u));
      smooth_step_1d(s, d, u, f);
      reduced += std::sqrt(u.dot(l * u)) < before;
    }
    CHECK(reduced == 100);
  }
  SUBCASE("updated residual") {
    const Discretization1D d = assemble_1d(SplineSpace(2, 4));
    const Smoother1D s = build_smoother_1d(d, 0.14);
    const Vector f = random_vector(s.dim(), 2);
    Vector u = Vector::Zero(s.dim()), r = f;
    for (int i = 0; i < 10; ++i)
      s.step(d.system, u, r);
    CHECK((r - (f - d.system * u)).norm() <= 1e-11 * f.norm());
  }
}

TEST_CASE("1D spectral bound independent of p") {
  // lambda_max(A, L) over p = 1..10 at n = 2(p+1) stays within twice its p=1 value.
  double first = 0.0, worst = 0.0;
  for (int p = 1; p <= 10; ++p) {
    const Discretization1D d = assemble_1d(SplineSpace(p, 0, 2 * (p + 1)));
    const Smoother1D s(d, SmootherConfig{1.0, Damping::Plain, true});
    const double lam = generalized_eig_max(d.system.to_dense(), s.operator_dense());
    if (p == 1)
      first = lam;
    worst = std::max(worst, lam);
  }
  CHECK(worst <= 2.0 * first);
}

TEST_CASE("2D smoother setup") {
  for (int p = 1; p <= 10; ++p) {
    const Discretization1D d = assemble_1d(SplineSpace(p, 0, p + 2));
    const Smoother2D s = build_smoother_2d(d, 0.08);
    CHECK(s.w().rows() == 2 * p);
    CHECK(s.woodbury_matrix().rows() == 4 * p * p);
    CHECK_NOTHROW(DenseCholesky(s.woodbury_matrix()));
    CHECK_NOTHROW(DenseCholesky(s.w() - s.line_smoother().schur_complement()));
  }
  // W against block elimination on M and A.
  const Discretization1D d = assemble_1d(SplineSpace(3, 3));
  const Smoother2D s(d, 0.08);
  const double h = d.space.mesh_size();
  const DenseMatrix w = dense_schur(d.system.to_dense(), 3) + dense_schur(d.mass.to_dense(), 3) / (h * h);
  CHECK((s.w() - w).norm() <= 1e-11 * w.norm());
}

TEST_CASE("2D inverse matches dense solves") {
  for (int p = 1; p <= 3; ++p)
    for (Index n : {4, 8}) {
      if (n < p + 1)
        continue;
      const Discretization1D d = assemble_1d(SplineSpace(p, 0, static_cast<int>(n)));
      const Smoother2D s(d, 0.08);
      const Index m = d.space.dim();
      // h^2 (L⊗L - C⊗C) with the undamped L.
      const double h = d.space.mesh_size();
      const DenseMatrix l = s.line_smoother().operator_dense();
      const DenseMatrix c = s.line_smoother().correction_dense();
      const DenseMatrix big = h * h * (kron(l, l) - kron(c, c));
      CHECK((big - s.operator_dense()).norm() <= 1e-10 * big.norm());

      const Vector r = random_vector(m * m, 7 + p);
      const Vector x = apply_Linv_2d(s, r);
      CHECK((big * x - r).norm() <= 1e-9 * r.norm());
      const Vector ref = big.ldlt().solve(r);
      CHECK((x - ref).norm() <= 1e-9 * ref.norm());

      const Vector u = random_vector(m * m, 30 + p), v = random_vector(m * m, 40 + p);
      CHECK(std::abs(s.apply_inverse(u).dot(v) - u.dot(s.apply_inverse(v))) <=
            1e-11 * u.norm() * v.norm() * (s.apply_inverse(u).norm() / u.norm()));
    }
}

TEST_CASE("2D smoother without correction is the tensor mass smoother") {
  const Discretization1D d = assemble_1d(SplineSpace(2, 3));
  const Smoother2D s(d, 0.08, false);
  const double h = d.space.mesh_size();
  const DenseMatrix m = d.mass.to_dense();
  const Vector r = random_vector(s.size(), 4);
  const Vector ref = h * h * kron(m, m).ldlt().solve(r);
  CHECK((s.apply_inverse(r) - ref).norm() <= 1e-11 * ref.norm());
}

TEST_CASE("2D smoothing steps") {
  const Discretization1D d = assemble_1d(SplineSpace(2, 3));
  const Operator2D op(d);
  const Smoother2D s(d, 0.08);
  const Vector u = random_vector(op.size(), 1);
  const Vector f = op.apply(u);
  Vector v = u;
  smooth_step_2d(s, op, v, f);
  CHECK((v - u).norm() <= 1e-12 * u.norm());

  Vector w = Vector::Zero(op.size()), r = f;
  for (int i = 0; i < 10; ++i)
    s.step(op, w, r);
  CHECK((r - (f - op.apply(w))).norm() <= 1e-11 * f.norm());

  for (int p = 1; p <= 4; ++p) {
    const Discretization1D dp = assemble_1d(SplineSpace(p, 3));
    const Smoother2D sp(dp, 0.08);
    const DenseMatrix a = Operator2D(dp).to_dense();
    const DenseMatrix e =
        DenseMatrix::Identity(a.rows(), a.cols()) - 0.08 * sp.operator_dense().ldlt().solve(a);
    CHECK(max_abs_eig(e) < 1.0);
  }
}
