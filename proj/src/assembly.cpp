#include "igamg/assembly.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "igamg/quadrature.hpp"

namespace igamg {

Discretization1D assemble_1d(const SplineSpace& space, int extra_nodes) {
  const int p = space.degree();
  const Index m = space.dim();
  const double h = space.mesh_size();
  const GaussRule rule = gauss_legendre(p + 1 + extra_nodes);

  Discretization1D disc{space, BandedSymMatrix(m, p), BandedSymMatrix(m, p),
                        BandedSymMatrix(m, p)};
  for (Index span = 0; span < space.intervals(); ++span) {
    const double a = space.span_begin(span);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = a + 0.5 * h * (rule.nodes[q] + 1.0);
      const double w = 0.5 * h * rule.weights[q];
      const auto ders = eval_basis_derivatives(space, x, 1);
      for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= i; ++j) {
          const Index gi = ders.first_index + i, gj = ders.first_index + j;
          disc.mass.add(gi, gj, w * ders.values(0, i) * ders.values(0, j));
          disc.stiffness.add(gi, gj, w * ders.values(1, i) * ders.values(1, j));
        }
    }
  }
  disc.system = disc.stiffness + disc.mass;
  return disc;
}

Operator2D::Operator2D(const Discretization1D& disc)
    : mass_(disc.mass), stiffness_(disc.stiffness), m_(disc.space.dim()) {}

void Operator2D::apply(std::span<const double> v, std::span<double> out) const {
  const Index n = size();
  if (static_cast<Index>(v.size()) != n || static_cast<Index>(out.size()) != n)
    throw DimensionError("2D operator: vector length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(n));
  // (K⊗I)(I⊗M)v + (M⊗I)[(I⊗K)v + (I⊗M)v]
  std::vector<double> vm(n), vk(n), tmp(n);
  for (Index i = 0; i < m_; ++i) {
    mass_.apply(v.subspan(i * m_, m_), std::span<double>(vm).subspan(i * m_, m_));
    stiffness_.apply(v.subspan(i * m_, m_), std::span<double>(vk).subspan(i * m_, m_));
  }
  for (Index k = 0; k < n; ++k)
    vk[k] += vm[k];
  stiffness_.apply(vm, out, m_);
  mass_.apply(vk, tmp, m_);
  for (Index k = 0; k < n; ++k)
    out[k] += tmp[k];
}

Vector Operator2D::apply(const Vector& v) const {
  Vector out(v.size());
  apply(std::span<const double>(v.data(), v.size()), std::span<double>(out.data(), out.size()));
  return out;
}

DenseMatrix Operator2D::to_dense() const {
  const DenseMatrix m = mass_.to_dense();
  const DenseMatrix k = stiffness_.to_dense();
  return kron(k, m) + kron(m, k) + kron(m, m);
}

Vector assemble_load(const SplineSpace& space, int dimension) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("load vector only for dimension 1 or 2");
  const int p = space.degree();
  const double h = space.mesh_size();
  const GaussRule rule = gauss_legendre(p + 3);
  constexpr double pi = std::numbers::pi;

  // The right-hand side factorizes, so both cases reduce to the 1D moments
  // g_i = ∫ sin(pi (x + 1/2)) phi_i dx.
  Vector g = Vector::Zero(space.dim());
  for (Index span = 0; span < space.intervals(); ++span) {
    const double a = space.span_begin(span);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = a + 0.5 * h * (rule.nodes[q] + 1.0);
      const double w = 0.5 * h * rule.weights[q] * std::sin(pi * (x + 0.5));
      const auto basis = eval_basis(space, x);
      for (int i = 0; i <= p; ++i)
        g(basis.first_index + i) += w * basis.values[i];
    }
  }
  const double scale = dimension * pi * pi;
  if (dimension == 1)
    return scale * g;
  Vector out(g.size() * g.size());
  for (Index i = 0; i < g.size(); ++i)
    out.segment(i * g.size(), g.size()) = scale * g(i) * g;
  return out;
}

} // namespace igamg
