#include <doctest.h>

#include <cmath>
#include <random>

#include "igamg/spline_space.hpp"

using namespace igamg;

TEST_CASE("knot vectors of small spaces") {
  const SplineSpace s1 = build_space(1, 1, 1);
  CHECK(s1.dim() == 3);
  CHECK(s1.knots() == std::vector<double>{0, 0, 0.5, 1, 1});

  const SplineSpace s2 = build_space(2, 2, 1);
  CHECK(s2.dim() == 6);
  CHECK(s2.knots() == std::vector<double>{0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1});

  const SplineSpace s3 = build_space(3, 3, 1);
  CHECK(s3.dim() == 11);
  CHECK(s3.knots().size() == static_cast<std::size_t>(s3.intervals() + 2 * 3 + 1));
  CHECK(s3.mesh_size() == doctest::Approx(0.125));
}

TEST_CASE("invalid spaces are rejected") {
  CHECK_THROWS_AS(SplineSpace(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(SplineSpace(2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(SplineSpace(2, -1), std::invalid_argument);
}

TEST_CASE("span lookup is right-continuous") {
  const SplineSpace s(2, 2);
  CHECK(s.span_of(0.0) == 0);
  CHECK(s.span_of(0.25) == 1);
  CHECK(s.span_of(0.2499) == 0);
  CHECK(s.span_of(1.0) == 3);
  CHECK_THROWS_AS(s.span_of(1.5), std::domain_error);
  CHECK_THROWS_AS(s.span_of(-0.1), std::domain_error);
}

TEST_CASE("basis values") {
  SUBCASE("hat at a knot") {
    const SplineSpace s(1, 1);
    const BasisValues b = eval_basis(s, 0.5);
    // Right-continuous: span 1 holds functions 1 and 2.
    CHECK(b.first_index == 1);
    CHECK(b.values[0] == doctest::Approx(1.0));
    CHECK(b.values[1] == doctest::Approx(0.0));
  }
  SUBCASE("endpoint interpolation") {
    const SplineSpace s(2, 2);
    const BasisValues b0 = eval_basis(s, 0.0);
    CHECK(b0.first_index == 0);
    CHECK(b0.values[0] == 1.0);
    CHECK(b0.values[1] == 0.0);
    CHECK(b0.values[2] == 0.0);
    const BasisValues b1 = eval_basis(s, 1.0);
    CHECK(b1.first_index + 2 == s.dim() - 1);
    CHECK(b1.values[2] == doctest::Approx(1.0));
  }
  SUBCASE("partition of unity and non-negativity") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int p = 1; p <= 8; ++p) {
      const SplineSpace s(p, 4);
      for (int i = 0; i < 1000; ++i) {
        const BasisValues b = eval_basis(s, u(gen));
        CHECK(b.values.size() == static_cast<std::size_t>(p + 1));
        double sum = 0.0;
        for (double v : b.values) {
          CHECK(v >= 0.0);
          sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(eval_basis(SplineSpace(2, 2), 1.01), std::domain_error);
}

TEST_CASE("basis derivatives") {
  SUBCASE("hat slopes") {
    const SplineSpace s(1, 2);
    const BasisDerivatives d = eval_basis_derivatives(s, 0.3, 1);
    CHECK(d.values(1, 0) == doctest::Approx(-4.0));
    CHECK(d.values(1, 1) == doctest::Approx(4.0));
  }
  SUBCASE("rows of order >= 1 sum to zero") {
    const SplineSpace s(4, 3);
    for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const BasisDerivatives d = eval_basis_derivatives(s, x, 4);
      for (int k = 1; k <= 4; ++k)
        CHECK(std::abs(d.values.row(k).sum()) <= 1e-9 * (1.0 + d.values.row(k).cwiseAbs().sum()));
    }
  }
  SUBCASE("finite-difference oracle") {
    // Compare derivative k with a central difference of derivative k-1 for
    // each of the p+1 functions active on the span of x.
    const double eps = 1e-6;
    for (int p = 1; p <= 5; ++p) {
      const SplineSpace s(p, 3);
      for (double x : {0.07, 0.31, 0.62, 0.94}) {
        const BasisDerivatives d = eval_basis_derivatives(s, x, p);
        const BasisDerivatives dp = eval_basis_derivatives(s, x + eps, p);
        const BasisDerivatives dm = eval_basis_derivatives(s, x - eps, p);
        REQUIRE(dp.first_index == d.first_index);
        REQUIRE(dm.first_index == d.first_index);
        for (int k = 1; k <= p; ++k)
          for (int j = 0; j <= p; ++j) {
            const double fd = (dp.values(k - 1, j) - dm.values(k - 1, j)) / (2 * eps);
            CHECK(std::abs(fd - d.values(k, j)) <= 1e-5 * (1.0 + std::abs(d.values(k, j))));
          }
      }
    }
  }
  SUBCASE("endpoint derivatives, one-sided differences for p=3") {
    const SplineSpace s(3, 2);
    const BasisDerivatives d = eval_basis_derivatives(s, 0.0, 1);
    const double eps = 1e-7;
    const BasisValues b0 = eval_basis(s, 0.0);
    const BasisValues b1 = eval_basis(s, eps);
    for (int j = 0; j <= 3; ++j) {
      const double fd = (b1.values[j] - b0.values[j]) / eps;
      CHECK(std::abs(fd - d.values(1, j)) <= 1e-5 * (1.0 + std::abs(d.values(1, j))));
    }
    CHECK(d.values(1, 0) == doctest::Approx(-3.0 / 0.25));
  }
  CHECK_THROWS_AS(eval_basis_derivatives(SplineSpace(2, 2), 0.5, 3), std::invalid_argument);
}

TEST_CASE("boundary / interior split") {
  const IndexSplit a = index_split(SplineSpace(2, 2));
  CHECK(a.boundary == std::vector<Index>{0, 1, 4, 5});
  CHECK(a.interior == std::vector<Index>{2, 3});

  const IndexSplit b = index_split(SplineSpace(1, 1));
  CHECK(b.boundary == std::vector<Index>{0, 2});
  CHECK(b.interior == std::vector<Index>{1});

  CHECK_THROWS_WITH_AS(index_split(SplineSpace(3, 0, 3)), doctest::Contains("interior"),
                       std::invalid_argument);
}

TEST_CASE("interior functions vanish with derivatives up to p-1 at both ends") {
  const int p = 3;
  const SplineSpace s(p, 3);
  const IndexSplit split = index_split(s);
  for (double x : {0.0, 1.0}) {
    const BasisDerivatives d = eval_basis_derivatives(s, x, p - 1);
    for (Index i : split.interior) {
      const Index local = i - d.first_index;
      if (local < 0 || local > p)
        continue;
      for (int k = 0; k < p; ++k)
        CHECK(d.values(k, local) == doctest::Approx(0.0));
    }
  }
}
