#include <doctest.h>

#include <cmath>
#include <numbers>

#include "igamg/spectral.hpp"

using namespace igamg;

namespace {

const double kInverseBound = 2.0 * std::sqrt(3.0);

} // namespace

TEST_CASE("constraint basis") {
  for (int p = 1; p <= 8; ++p) {
    const SplineSpace s(p, 0, 2 * (p + 1));
    const ConstraintBasis cb(s);
    int odd = 0;
    for (int k = 1; k < p; k += 2)
      ++odd;
    CHECK(cb.rank() == 2 * odd);
    CHECK(cb.dim() == s.dim() - 2 * odd);
    // Orthonormal columns, so in particular linearly independent.
    const DenseMatrix g = cb.basis().transpose() * cb.basis();
    CHECK((g - DenseMatrix::Identity(cb.dim(), cb.dim())).norm() <= 1e-12);
    if (odd > 0)
      CHECK((cb.constraints() * cb.basis()).cwiseAbs().maxCoeff() <= 1e-9);
  }
  // p = 1: nothing is constrained.
  const ConstraintBasis one(SplineSpace(1, 3));
  CHECK(one.dim() == 9);
}

TEST_CASE("constrained splines have vanishing odd endpoint derivatives") {
  const int p = 5;
  const SplineSpace s(p, 3);
  const ConstraintBasis cb(s);
  for (Index c = 0; c < cb.dim(); ++c)
    for (double x : {0.0, 1.0}) {
      const BasisDerivatives d = eval_basis_derivatives(s, x, p - 1);
      for (int k = 1; k < p; k += 2) {
        double v = 0.0, scale = 0.0;
        for (int j = 0; j <= p; ++j) {
          v += d.values(k, j) * cb.basis()(d.first_index + j, c);
          scale += std::abs(d.values(k, j));
        }
        CHECK(std::abs(v) <= 1e-9 * scale);
      }
    }
}

TEST_CASE("inverse inequality on the constrained space") {
  // Reference values from an independent dense computation.
  const double expected[] = {3.46410, 2.77603, 3.14357, 2.90906,
                             3.14159, 2.97407, 3.14159, 3.01073};
  for (int p = 1; p <= 8; ++p) {
    const InverseInequality r = verify_inverse_inequality(p, 2 * (p + 1));
    CHECK(r.constrained <= kInverseBound + 1e-8);
    CHECK(r.interior <= kInverseBound + 1e-8);
    CHECK(r.constrained == doctest::Approx(expected[p - 1]).epsilon(1e-4));
  }
  // p = 1 attains the bound: 2 sqrt(3).
  CHECK(verify_inverse_inequality(1, 4).constrained == doctest::Approx(kInverseBound));
  CHECK_THROWS_AS(verify_inverse_inequality(4, 3), std::invalid_argument);
}

TEST_CASE("full-space counterexample grows at least like p") {
  for (int p = 1; p <= 10; ++p) {
    const double v = verify_counterexample(p, 16);
    CHECK(v >= p);
    if (p == 1) {
      CHECK(v >= 1.0);
      CHECK(v <= kInverseBound + 1e-8);
    }
  }
  CHECK(verify_counterexample(5, 16) == doctest::Approx(12.282).epsilon(1e-3));
}

TEST_CASE("approximation constant") {
  const double bound = 2.0 * std::numbers::sqrt2 + 0.01;
  for (int p = 1; p <= 4; ++p) {
    const double constrained = verify_approximation_constant(p, 8, 4, true);
    const double full = verify_approximation_constant(p, 8, 4, false);
    CHECK(constrained <= bound);
    CHECK(full <= constrained + 1e-10);
  }
  // The proxy space equal to the space itself gives zero error.
  CHECK_THROWS_AS(verify_approximation_constant(2, 8, 0), std::invalid_argument);
}

TEST_CASE("approximation-property constant") {
  // Norm of the smoother actually used (mass-only damping).
  double first = 0.0;
  for (int p = 1; p <= 10; ++p) {
    const double v = measure_CA(1, p, 32);
    if (p == 1)
      first = v;
    CHECK(v > 0.0);
    CHECK(v <= 3.0 * first);
  }
  // Undamped L: bounded in p as well, but with a small p = 1 value.
  for (int p = 1; p <= 6; ++p) {
    const double v = measure_CA(1, p, 32, 1.0, Damping::Plain);
    CHECK(v > 0.0);
    CHECK(v < 1.2);
  }
  // h-independence: same value on a finer mesh.
  CHECK(measure_CA(1, 3, 64) == doctest::Approx(measure_CA(1, 3, 32)).epsilon(0.05));
  CHECK(measure_CA(1, 3, 64, 1.0, Damping::Plain) ==
        doctest::Approx(measure_CA(1, 3, 32, 1.0, Damping::Plain)).epsilon(0.01));
  for (int p = 1; p <= 3; ++p) {
    const double v = measure_CA(2, p, 8);
    CHECK(v > 0.0);
    CHECK(v < 2.0);
  }
  CHECK_THROWS_AS(measure_CA(1, 2, 15), std::invalid_argument);
}

TEST_CASE("smoothing property") {
  for (int p = 1; p <= 6; ++p)
    for (int nu = 1; nu <= 8; ++nu)
      CHECK(measure_smoothing_constant(1, p, 32, nu, 0.14) <= 1.0 / 0.14 + 1e-8);
  // Plain damping needs tau <= 1 / lambda_max(A, L); 0.14 is too large there.
  for (int p = 1; p <= 6; ++p) {
    const double tau = 1.0 / smoother_spectral_bound(1, p, 32, 1.0, Damping::Plain);
    CHECK(tau < 0.14);
    for (int nu = 1; nu <= 8; ++nu)
      CHECK(measure_smoothing_constant(1, p, 32, nu, tau, Damping::Plain) <= 1.0 / tau + 1e-8);
  }
  for (int p = 1; p <= 6; ++p)
    CHECK(smoother_energy_norm(1, p, 32, 0.14) <= 1.0 + 1e-10);
  // A damping parameter far above the admissible range breaks the bound.
  CHECK(measure_smoothing_constant(1, 2, 32, 1, 10.0) > 1.0 / 10.0);
  CHECK(smoother_energy_norm(1, 2, 32, 10.0) > 1.0);
}

TEST_CASE("smoother spectral bounds") {
  // Mass-only damping keeps lambda_max(A, L_tau) below 2.
  for (int p = 1; p <= 6; ++p)
    CHECK(smoother_spectral_bound(1, p, 32, 0.14) < 2.0);
  // In 2D the damped bound tau * lambda_max stays below 2 (a convergent
  // smoother) but exceeds 1 for low degrees.
  double first = 0.0, worst = 0.0;
  for (int p = 1; p <= 4; ++p) {
    const double v = smoother_spectral_bound(2, p, 8, 0.08);
    CHECK(v < 2.0);
    if (p == 1)
      first = v;
    worst = std::max(worst, v);
  }
  CHECK(first > 1.0);
  CHECK(worst <= 2.0 * first);
}
